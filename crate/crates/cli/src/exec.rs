//! Task execution: each operation is a thin wrapper over the engine.

use std::sync::Arc;

use cohops_core::extensions::{ExalSpace, InfinitesimalExtension};
use cohops_core::homology::{resolve, CoverStrategy, ExtSpace, FinModule, TorSpace};
use cohops_core::linalg::Matrix;
use cohops_core::operators::{
    act, action_table, alpha_map, fin_gen_report, gamma, h1_compute, hh2_space, operator_target,
    phi, psi, s_map, verify_naturality_forget, verify_phi_eq_psi_alpha, verify_s_gamma_eq_psi,
    Verdict,
};
use cohops_core::suites::{criterion_of, run_suite, SUITES};
use cohops_core::Scalar;
use serde_json::{json, Map, Value};

use crate::document::{
    invalid, parse_scalar, presentation_of, Context, Extension, Failure, TaskSpec,
};

const STRATEGY: CoverStrategy = CoverStrategy::Minimal;

#[derive(Clone, Copy, Debug)]
pub struct Settings {
    pub max_degree: usize,
    pub budget: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Fail,
}

/// A finished task: its status, a one-line summary and the computed data.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub status: Status,
    pub summary: String,
    pub data: Map<String, Value>,
}

impl Outcome {
    fn ok(summary: impl Into<String>) -> Self {
        Outcome {
            status: Status::Ok,
            summary: summary.into(),
            data: Map::new(),
        }
    }

    fn with(mut self, key: &str, value: Value) -> Self {
        self.data.insert(key.into(), value);
        self
    }
}

pub fn render(v: &[Scalar]) -> Vec<String> {
    v.iter().map(Scalar::to_string).collect()
}

fn render_matrix(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect())
        .collect()
}

fn class_summary(coords: &[Scalar]) -> String {
    if coords.iter().all(Scalar::is_zero) {
        "class 0".into()
    } else {
        format!("class ({})", render(coords).join(", "))
    }
}

fn class_outcome(coords: &[Scalar], space_dim: usize) -> Outcome {
    Outcome::ok(class_summary(coords))
        .with("coords", json!(render(coords)))
        .with("space_dim", json!(space_dim))
}

fn verdict_outcome(v: &Verdict) -> Outcome {
    Outcome {
        status: if v.passed { Status::Ok } else { Status::Fail },
        summary: if v.passed { "passed" } else { "failed" }.into(),
        data: Map::new(),
    }
    .with("check", json!(v.name))
    .with("detail", json!(v.detail))
}

fn need<'a>(field: &'a Option<String>, name: &str, op: &str) -> Result<&'a str, Failure> {
    field
        .as_deref()
        .ok_or_else(|| invalid(format!("`{op}` needs `{name}`")))
}

struct Task<'a> {
    cx: &'a Context,
    spec: &'a TaskSpec,
    settings: Settings,
}

impl Task<'_> {
    fn need(&self, field: &Option<String>, name: &str) -> Result<String, Failure> {
        need(field, name, &self.spec.op).map(str::to_string)
    }

    fn module(&self) -> Result<Arc<FinModule>, Failure> {
        Ok(self
            .cx
            .module(&self.need(&self.spec.module, "module")?)?
            .clone())
    }

    /// The coefficient module, defaulting to the module itself.
    fn coefficients(&self, m: &Arc<FinModule>) -> Result<Arc<FinModule>, Failure> {
        match &self.spec.coefficients {
            Some(n) => Ok(self.cx.module(n)?.clone()),
            None => Ok(m.clone()),
        }
    }

    fn extension(&self) -> Result<&Extension, Failure> {
        self.cx
            .extension(&self.need(&self.spec.extension, "extension")?)
    }

    fn degrees(&self) -> Result<Vec<usize>, Failure> {
        match &self.spec.degrees {
            Some(d) => d.degrees().map_err(invalid),
            None => Ok((0..=self.settings.max_degree).collect()),
        }
    }

    fn coords(&self, dim: usize) -> Result<Option<Vec<Scalar>>, Failure> {
        let Some(cs) = &self.spec.coords else {
            return Ok(None);
        };
        if cs.len() != dim {
            return Err(invalid(format!(
                "{} coordinates for a space of dimension {dim}",
                cs.len()
            )));
        }
        let v = cs
            .iter()
            .map(|s| parse_scalar(self.cx.field, s))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Some(v))
    }

    fn run(&self) -> Result<Outcome, Failure> {
        match self.spec.op.as_str() {
            "build-algebra" => self.build_algebra(),
            "ext" => self.ext(),
            "tor" => self.tor(),
            "h1" => self.h1(),
            "psi" => self.psi(),
            "phi" => self.phi(),
            "alpha" => self.alpha(),
            "gamma" => self.gamma(),
            "s" => self.s(),
            "act" => self.act(),
            "fingen" => self.fingen(),
            "verify" => self.verify(),
            other => Err(invalid(format!("unknown op `{other}`"))),
        }
    }

    fn build_algebra(&self) -> Result<Outcome, Failure> {
        let b = self
            .cx
            .algebra(&self.need(&self.spec.algebra, "algebra")?)?;
        let pres = presentation_of(b)?;
        Ok(Outcome::ok(format!("dim {}", b.dim()))
            .with("dim", json!(b.dim()))
            .with("basis", json!(b.labels()))
            .with("local", json!(b.is_local()))
            .with("presentation", json!(pres.render())))
    }

    fn ext(&self) -> Result<Outcome, Failure> {
        let m = self.module()?;
        let n = self.coefficients(&m)?;
        let degrees = self.degrees()?;
        let top = degrees.iter().copied().max().unwrap_or(0);
        let res = Arc::new(resolve(&m, top + 1, STRATEGY));
        let dims = degrees
            .iter()
            .map(|&k| Ok(ExtSpace::new(&res, &n, k)?.dim()))
            .collect::<Result<Vec<_>, Failure>>()?;
        Ok(dims_outcome(&degrees, &dims).with("ranks", json!(res.ranks())))
    }

    fn tor(&self) -> Result<Outcome, Failure> {
        let m = self.module()?;
        let n = self.coefficients(&m)?;
        let degrees = self.degrees()?;
        let top = degrees.iter().copied().max().unwrap_or(0);
        let res = Arc::new(resolve(&m, top + 1, STRATEGY));
        let dims = degrees
            .iter()
            .map(|&k| Ok(TorSpace::new(&res, &n, k)?.dim()))
            .collect::<Result<Vec<_>, Failure>>()?;
        Ok(dims_outcome(&degrees, &dims).with("ranks", json!(res.ranks())))
    }

    fn h1(&self) -> Result<Outcome, Failure> {
        let b = self
            .cx
            .algebra(&self.need(&self.spec.algebra, "algebra")?)?;
        let m = match &self.spec.module {
            Some(name) => self.cx.module(name)?.clone(),
            None => Arc::new(FinModule::regular(b)),
        };
        let h1 = h1_compute(presentation_of(b)?, &m)?;
        Ok(Outcome::ok(format!("dim {}", h1.dim()))
            .with("dim", json!(h1.dim()))
            .with("hom_dim", json!(h1.hom_dim()))
            .with("derivation_image_dim", json!(h1.derivation_image_dim())))
    }

    fn psi(&self) -> Result<Outcome, Failure> {
        let xi = self.extension()?.infinitesimal();
        let n = self.module()?;
        let target = operator_target(&n, STRATEGY)?;
        let v = psi(xi, &target, STRATEGY)?;
        Ok(class_outcome(&v.class.coords, target.dim()))
    }

    fn phi(&self) -> Result<Outcome, Failure> {
        let Extension::OverRing { map, sequence, .. } = self.extension()? else {
            return Err(invalid("`phi` needs an ideal-map extension over a ring"));
        };
        let n = self.module()?;
        let target = operator_target(&n, STRATEGY)?;
        let v = phi(map, sequence, &target, STRATEGY)?;
        Ok(class_outcome(&v.class.coords, target.dim()))
    }

    fn alpha(&self) -> Result<Outcome, Failure> {
        let xi = match self.extension()? {
            Extension::OverRing {
                map,
                ideal_map,
                alpha,
                ..
            } => {
                // recompute from h so the class reflects the pivot section
                alpha_map(map, &alpha.kernel, ideal_map)?
            }
            Extension::Infinitesimal(xi) => xi.clone(),
        };
        let space = ExalSpace::new(&xi.base, &xi.kernel)?;
        let coords = space.class_of(&xi.cocycle())?;
        Ok(class_outcome(&coords, space.dim()))
    }

    fn gamma(&self) -> Result<Outcome, Failure> {
        let xi = self.extension()?.infinitesimal();
        let hh = hh2_space(&xi.base, self.settings.budget)?;
        let g = gamma(xi, &hh)?;
        Ok(class_outcome(&g.coords, hh.dim()))
    }

    /// `s` of `gamma(extension)`, or of the class with `coords` in `HH^2(algebra)`.
    fn s(&self) -> Result<Outcome, Failure> {
        let n = self.module()?;
        let budget = self.settings.budget;
        let h = match (&self.spec.extension, &self.spec.algebra) {
            (Some(_), _) => {
                let xi = self.extension()?.infinitesimal();
                gamma(xi, &hh2_space(&xi.base, budget)?)?
            }
            (None, Some(b)) => {
                let hh = hh2_space(self.cx.algebra(b)?, budget)?;
                let coords = self
                    .coords(hh.dim())?
                    .ok_or_else(|| invalid("`s` needs `extension` or `coords`"))?;
                hh.class(coords)
            }
            (None, None) => {
                return Err(invalid("`s` needs `extension` or `algebra` with `coords`"))
            }
        };
        let target = operator_target(&n, STRATEGY)?;
        let v = s_map(&h, &target, budget)?;
        Ok(class_outcome(&v.class.coords, target.dim()))
    }

    /// The action of `psi(extension)` on `Ext^degree(M, N)`: a class when
    /// `coords` is given, otherwise the full matrix.
    fn act(&self) -> Result<Outcome, Failure> {
        let xi = self.extension()?.infinitesimal();
        let m = self.module()?;
        let n = self.coefficients(&m)?;
        let k = self.spec.degree.unwrap_or(0);
        let res = Arc::new(resolve(&m, k + 3, STRATEGY));
        let src = ExtSpace::new(&res, &n, k)?;
        let dst = ExtSpace::new(&res, &n, k + 2)?;
        let op = psi(xi, &operator_target(&n, STRATEGY)?, STRATEGY)?.class;
        if let Some(c) = self.coords(src.dim())? {
            let out = act(&op, &src.class(c), &dst)?;
            return Ok(class_outcome(&out.coords, dst.dim()).with("degree", json!(k + 2)));
        }
        let cols = (0..src.dim())
            .map(|i| Ok(act(&op, &src.basis_class(i), &dst)?.coords))
            .collect::<Result<Vec<_>, Failure>>()?;
        let mat = Matrix::from_columns(n.field(), dst.dim(), &cols);
        Ok(Outcome::ok(format!("rank {}", mat.rank()))
            .with("matrix", json!(render_matrix(&mat)))
            .with("rank", json!(mat.rank()))
            .with("source_dim", json!(src.dim()))
            .with("target_dim", json!(dst.dim())))
    }

    fn operators(&self) -> Result<Vec<InfinitesimalExtension>, Failure> {
        if let Some(names) = &self.spec.extensions {
            return names
                .iter()
                .map(|e| Ok(self.cx.extension(e)?.infinitesimal().clone()))
                .collect();
        }
        let b = self
            .cx
            .algebra(&self.need(&self.spec.algebra, "algebra or extensions")?)?;
        let h1 = h1_compute(presentation_of(b)?, &Arc::new(FinModule::regular(b)))?;
        Ok(h1
            .representatives()
            .iter()
            .map(|h| alpha_map(&h1.projection, &h1.module, h))
            .collect::<Result<Vec<_>, _>>()?)
    }

    fn fingen(&self) -> Result<Outcome, Failure> {
        let m = match (&self.spec.module, &self.spec.algebra) {
            (Some(name), _) => self.cx.module(name)?.clone(),
            (None, Some(b)) => Arc::new(FinModule::residue_field(self.cx.algebra(b)?)?),
            (None, None) => return Err(invalid("`fingen` needs `module` or `algebra`")),
        };
        let n = self.coefficients(&m)?;
        let ops = self.operators()?;
        let l = self.spec.length.unwrap_or(self.settings.max_degree);
        let report = fin_gen_report(&action_table(&ops, &m, &n, l, STRATEGY)?);
        let summary = match report.minimal_degree {
            Some(d) => format!("generated in degree ≤ {d}"),
            None => format!("not generated in degree ≤ {}", l - 2),
        };
        Ok(Outcome::ok(summary)
            .with("dims", json!(report.dims))
            .with("covered", json!(report.covered))
            .with("generated", json!(report.generated))
            .with("minimal_degree", json!(report.minimal_degree))
            .with("operators", json!(ops.len()))
            .with("length", json!(l)))
    }

    fn verify(&self) -> Result<Outcome, Failure> {
        let suite = self.need(&self.spec.suite, "suite")?;
        if self.spec.extension.is_some() {
            return self.verify_instance(&suite);
        }
        if suite == "all" {
            let verdicts = SUITES
                .iter()
                .map(|s| Ok((*s, run_suite(s)?)))
                .collect::<Result<Vec<_>, Failure>>()?;
            let failed: Vec<&str> = verdicts
                .iter()
                .filter(|(_, v)| !v.passed)
                .map(|(s, _)| *s)
                .collect();
            let rows: Vec<Value> = verdicts
                .iter()
                .map(|(s, v)| {
                    json!({
                        "criterion": criterion_of(s),
                        "suite": s,
                        "passed": v.passed,
                        "detail": v.detail,
                    })
                })
                .collect();
            let summary = format!(
                "{} of {} passed",
                verdicts.len() - failed.len(),
                verdicts.len()
            );
            let status = if failed.is_empty() {
                Status::Ok
            } else {
                Status::Fail
            };
            return Ok(Outcome {
                status,
                summary,
                data: Map::new(),
            }
            .with("verdicts", Value::Array(rows))
            .with("failed", json!(failed)));
        }
        if criterion_of(&suite).is_none() {
            return Err(invalid(format!(
                "unknown suite `{suite}`; known: all, {}",
                SUITES.join(", ")
            )));
        }
        Ok(verdict_outcome(&run_suite(&suite)?)
            .with("criterion", json!(criterion_of(&suite)))
            .with("suite", json!(suite)))
    }

    /// Comparison checks on the document's own objects.
    fn verify_instance(&self, suite: &str) -> Result<Outcome, Failure> {
        let ext = self.extension()?;
        let n = self.module()?;
        let v = match suite {
            "phi_eq_psi_alpha" => {
                let Extension::OverRing { map, sequence, .. } = ext else {
                    return Err(invalid("phi_eq_psi_alpha needs an ideal-map extension"));
                };
                verify_phi_eq_psi_alpha(map, sequence, &n)?
            }
            "s_gamma_eq_psi" => {
                verify_s_gamma_eq_psi(ext.infinitesimal(), &n, self.settings.budget)?
            }
            "naturality_forget" => verify_naturality_forget(ext.infinitesimal(), &n)?,
            other => {
                return Err(invalid(format!(
                    "suite `{other}` has no instance form; use phi_eq_psi_alpha, s_gamma_eq_psi or naturality_forget"
                )))
            }
        };
        Ok(verdict_outcome(&v))
    }
}

fn dims_outcome(degrees: &[usize], dims: &[usize]) -> Outcome {
    let rendered: Vec<String> = dims.iter().map(usize::to_string).collect();
    Outcome::ok(format!("dims {}", rendered.join(" ")))
        .with("degrees", json!(degrees))
        .with("dims", json!(dims))
}

/// Runs one task and applies its `expect` field.
pub fn run_task(cx: &Context, spec: &TaskSpec, settings: Settings) -> Result<Outcome, Failure> {
    let mut out = Task { cx, spec, settings }.run()?;
    if let Some(e) = &spec.expect {
        out.data.insert("expected".into(), json!(e));
        if *e != out.summary {
            out.status = Status::Fail;
        }
    }
    Ok(out)
}
