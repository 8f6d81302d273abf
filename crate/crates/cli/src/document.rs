//! Instance documents: named algebras, maps, modules and extensions, plus a
//! task list, and the resolved objects they describe.

use std::collections::BTreeMap;
use std::sync::Arc;

use cohops_core::algebra::{AlgebraMap, FinAlgebra, PolyPresentation};
use cohops_core::extensions::{Cocycle2, InfinitesimalExtension, NExtension};
use cohops_core::homology::FinModule;
use cohops_core::linalg::Matrix;
use cohops_core::operators::{alpha_map, cyclic_ideal_map, h1_compute, ideal_extension};
use cohops_core::{Error, FieldSpec, Scalar};
use serde::Deserialize;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    #[serde(default)]
    pub field: Option<String>,
    #[serde(default)]
    pub algebras: BTreeMap<String, String>,
    #[serde(default)]
    pub maps: BTreeMap<String, MapSpec>,
    #[serde(default)]
    pub modules: BTreeMap<String, ModuleSpec>,
    #[serde(default)]
    pub extensions: BTreeMap<String, ExtensionSpec>,
    pub tasks: Vec<TaskSpec>,
}

/// An algebra map given by the images of the source variables.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    pub source: String,
    pub target: String,
    pub images: Vec<String>,
}

/// A scalar as a JSON integer or a string such as `"-3"` or `"1/2"`.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum ScalarSpec {
    Int(i64),
    Text(String),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ModuleSpec {
    ResidueField {
        algebra: String,
    },
    Regular {
        algebra: String,
    },
    Free {
        algebra: String,
        rank: usize,
    },
    /// `B / (generators)`.
    Quotient {
        algebra: String,
        generators: Vec<String>,
    },
    /// One square matrix per basis element of the algebra, rows first. The
    /// first basis vector that generates the module becomes its generator.
    Action {
        algebra: String,
        matrices: Vec<Vec<Vec<ScalarSpec>>>,
    },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ExtensionSpec {
    /// `k[x]/(x^{2m}) -> B = k[x]/(x^m)` with `m = dim B`.
    Truncation { algebra: String },
    /// `0 -> ker p -> E -> B -> 0` for a surjection with square-zero kernel.
    Surjection {
        map: String,
        #[serde(default)]
        generator: Option<String>,
    },
    /// The extension `M x B` of a symmetric 2-cocycle, values listed for
    /// basis pairs `(i, j)` in row-major order.
    Cocycle {
        algebra: String,
        module: String,
        values: Vec<Vec<ScalarSpec>>,
    },
    Split {
        algebra: String,
        #[serde(default)]
        module: Option<String>,
    },
    /// `alpha` of the `index`-th basis class of `H^1(k, B, M)`.
    H1Basis {
        algebra: String,
        index: usize,
        #[serde(default)]
        module: Option<String>,
    },
    /// `alpha` of the restriction of the derivation `x_j -> images[j]` to the conormal module.
    Derivation {
        algebra: String,
        images: Vec<String>,
    },
    /// The 1-extension `h_*(0 -> I -> R -> B -> 0)` for `h: I -> C`,
    /// `r generator -> p(r) image`.
    IdealMap {
        map: String,
        #[serde(default)]
        module: Option<String>,
        generator: String,
        image: String,
    },
}

/// A task: `op` selects the operation, the remaining fields are its arguments.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaskSpec {
    pub op: String,
    #[serde(default)]
    pub label: Option<String>,
    #[serde(default)]
    pub algebra: Option<String>,
    #[serde(default)]
    pub module: Option<String>,
    #[serde(default)]
    pub coefficients: Option<String>,
    #[serde(default)]
    pub extension: Option<String>,
    #[serde(default)]
    pub extensions: Option<Vec<String>>,
    #[serde(default)]
    pub degrees: Option<DegreeSpec>,
    #[serde(default)]
    pub degree: Option<usize>,
    #[serde(default)]
    pub length: Option<usize>,
    #[serde(default)]
    pub coords: Option<Vec<ScalarSpec>>,
    #[serde(default)]
    pub suite: Option<String>,
    /// Expected summary; a mismatch marks the task as failed.
    #[serde(default)]
    pub expect: Option<String>,
    /// Independent tasks may run concurrently under `--jobs`.
    #[serde(default)]
    pub independent: bool,
}

/// A single degree or an inclusive range `"a..b"`.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum DegreeSpec {
    One(usize),
    Range(String),
}

impl DegreeSpec {
    pub fn degrees(&self) -> Result<Vec<usize>, String> {
        match self {
            DegreeSpec::One(n) => Ok(vec![*n]),
            DegreeSpec::Range(s) => parse_degrees(s),
        }
    }
}

pub fn parse_degrees(s: &str) -> Result<Vec<usize>, String> {
    let bad = || format!("bad degree range `{s}`, expected `n` or `a..b`");
    match s.split_once("..") {
        Some((a, b)) => {
            let a: usize = a.trim().parse().map_err(|_| bad())?;
            let b: usize = b
                .trim()
                .trim_start_matches('=')
                .parse()
                .map_err(|_| bad())?;
            if a > b {
                return Err(bad());
            }
            Ok((a..=b).collect())
        }
        None => Ok(vec![s.trim().parse().map_err(|_| bad())?]),
    }
}

/// Why a document or task could not be evaluated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Failure {
    /// Malformed or ill-typed input.
    Invalid(String),
    /// Budget exhaustion or an engine invariant.
    Internal(String),
}

impl Failure {
    pub fn message(&self) -> &str {
        match self {
            Failure::Invalid(m) | Failure::Internal(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SizeBudgetExceeded { .. }
            | Error::DivisionByZero
            | Error::InexactSequence { .. } => Failure::Internal(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

pub fn invalid(msg: impl Into<String>) -> Failure {
    Failure::Invalid(msg.into())
}

fn within(what: &str, name: &str, e: Failure) -> Failure {
    match e {
        Failure::Invalid(m) => Failure::Invalid(format!("{what} `{name}`: {m}")),
        Failure::Internal(m) => Failure::Internal(format!("{what} `{name}`: {m}")),
    }
}

pub fn parse_scalar(field: FieldSpec, s: &ScalarSpec) -> Result<Scalar, Failure> {
    let text = match s {
        ScalarSpec::Int(n) => return Ok(field.from_i64(*n)),
        ScalarSpec::Text(t) => t.trim(),
    };
    let bad = || invalid(format!("bad scalar `{text}`"));
    let (num, den) = match text.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (text, "1"),
    };
    let num: i64 = num.parse().map_err(|_| bad())?;
    let den: i64 = den.parse().map_err(|_| bad())?;
    let den = field.from_i64(den);
    if den.is_zero() {
        return Err(invalid(format!("zero denominator in `{text}`")));
    }
    Ok(&field.from_i64(num) * &den.inv())
}

/// An extension as the operators consume it.
#[derive(Clone, Debug)]
pub enum Extension {
    Infinitesimal(InfinitesimalExtension),
    /// A 1-extension of `B` by `C` over `R`, with its map `h: I -> C` and `alpha(h)`.
    OverRing {
        map: AlgebraMap,
        sequence: NExtension,
        ideal_map: Matrix,
        alpha: InfinitesimalExtension,
    },
}

impl Extension {
    pub fn infinitesimal(&self) -> &InfinitesimalExtension {
        match self {
            Extension::Infinitesimal(xi) => xi,
            Extension::OverRing { alpha, .. } => alpha,
        }
    }
}

/// The resolved objects of a document.
#[derive(Debug)]
pub struct Context {
    pub field: FieldSpec,
    pub algebras: BTreeMap<String, Arc<FinAlgebra>>,
    pub maps: BTreeMap<String, AlgebraMap>,
    pub modules: BTreeMap<String, Arc<FinModule>>,
    pub extensions: BTreeMap<String, Extension>,
}

fn lookup<'a, T>(table: &'a BTreeMap<String, T>, what: &str, name: &str) -> Result<&'a T, Failure> {
    table
        .get(name)
        .ok_or_else(|| invalid(format!("unknown {what} `{name}`")))
}

impl Context {
    pub fn algebra(&self, name: &str) -> Result<&Arc<FinAlgebra>, Failure> {
        lookup(&self.algebras, "algebra", name)
    }

    pub fn map(&self, name: &str) -> Result<&AlgebraMap, Failure> {
        lookup(&self.maps, "map", name)
    }

    pub fn module(&self, name: &str) -> Result<&Arc<FinModule>, Failure> {
        lookup(&self.modules, "module", name)
    }

    pub fn extension(&self, name: &str) -> Result<&Extension, Failure> {
        lookup(&self.extensions, "extension", name)
    }

    /// Resolves every named object in dependency order.
    pub fn build(doc: &InstanceDocument, field: FieldSpec) -> Result<Context, Failure> {
        let mut cx = Context {
            field,
            algebras: BTreeMap::new(),
            maps: BTreeMap::new(),
            modules: BTreeMap::new(),
            extensions: BTreeMap::new(),
        };
        for (name, src) in &doc.algebras {
            let b = FinAlgebra::parse(src, field).map_err(|e| within("algebra", name, e.into()))?;
            cx.algebras.insert(name.clone(), Arc::new(b));
        }
        for (name, spec) in &doc.maps {
            let m = cx.build_map(spec).map_err(|e| within("map", name, e))?;
            cx.maps.insert(name.clone(), m);
        }
        for (name, spec) in &doc.modules {
            let m = cx
                .build_module(spec)
                .map_err(|e| within("module", name, e))?;
            cx.modules.insert(name.clone(), m);
        }
        for (name, spec) in &doc.extensions {
            let e = cx
                .build_extension(spec)
                .map_err(|e| within("extension", name, e))?;
            cx.extensions.insert(name.clone(), e);
        }
        Ok(cx)
    }

    fn build_map(&self, spec: &MapSpec) -> Result<AlgebraMap, Failure> {
        let images: Vec<&str> = spec.images.iter().map(String::as_str).collect();
        Ok(AlgebraMap::from_var_image_strs(
            self.algebra(&spec.source)?,
            self.algebra(&spec.target)?,
            &images,
        )?)
    }

    fn build_module(&self, spec: &ModuleSpec) -> Result<Arc<FinModule>, Failure> {
        let m = match spec {
            ModuleSpec::ResidueField { algebra } => {
                FinModule::residue_field(self.algebra(algebra)?)?
            }
            ModuleSpec::Regular { algebra } => FinModule::regular(self.algebra(algebra)?),
            ModuleSpec::Free { algebra, rank } => FinModule::free(self.algebra(algebra)?, *rank),
            ModuleSpec::Quotient {
                algebra,
                generators,
            } => {
                let b = self.algebra(algebra)?;
                let elts = generators
                    .iter()
                    .map(|g| b.element(g))
                    .collect::<Result<Vec<_>, _>>()?;
                FinModule::cyclic_quotient(b, &b.ideal_generated(&elts))?
            }
            ModuleSpec::Action { algebra, matrices } => {
                let b = self.algebra(algebra)?;
                let action = matrices
                    .iter()
                    .map(|rows| {
                        let rows = rows
                            .iter()
                            .map(|r| r.iter().map(|s| parse_scalar(self.field, s)).collect())
                            .collect::<Result<Vec<Vec<Scalar>>, Failure>>()?;
                        Ok(Matrix::from_rows(self.field, rows)?)
                    })
                    .collect::<Result<Vec<_>, Failure>>()?;
                with_basis_generator(FinModule::new(b.clone(), action)?)?
            }
        };
        Ok(Arc::new(m))
    }

    fn module_or_regular(
        &self,
        b: &Arc<FinAlgebra>,
        module: &Option<String>,
    ) -> Result<Arc<FinModule>, Failure> {
        match module {
            Some(name) => Ok(self.module(name)?.clone()),
            None => Ok(Arc::new(FinModule::regular(b))),
        }
    }

    fn build_extension(&self, spec: &ExtensionSpec) -> Result<Extension, Failure> {
        let xi = match spec {
            ExtensionSpec::Truncation { algebra } => {
                let b = self.algebra(algebra)?;
                let m = b.dim();
                let e = Arc::new(FinAlgebra::parse(
                    &format!("k[x]/(x^{})", 2 * m),
                    self.field,
                )?);
                InfinitesimalExtension::truncation_onto(&e, b, m)?
            }
            ExtensionSpec::Surjection { map, generator } => {
                let p = self.map(map)?;
                let g = generator
                    .as_ref()
                    .map(|g| p.source.element(g))
                    .transpose()?;
                InfinitesimalExtension::from_surjection(p, g.as_deref())?
            }
            ExtensionSpec::Cocycle {
                algebra,
                module,
                values,
            } => {
                let b = self.algebra(algebra)?;
                let m = self.module(module)?;
                let values = values
                    .iter()
                    .map(|v| v.iter().map(|s| parse_scalar(self.field, s)).collect())
                    .collect::<Result<Vec<Vec<Scalar>>, Failure>>()?;
                InfinitesimalExtension::from_cocycle(&Cocycle2::new(b, m, values)?)?
            }
            ExtensionSpec::Split { algebra, module } => {
                let b = self.algebra(algebra)?;
                let m = self.module_or_regular(b, module)?;
                InfinitesimalExtension::from_cocycle(&Cocycle2::zero(b, &m))?
            }
            ExtensionSpec::H1Basis {
                algebra,
                index,
                module,
            } => {
                let b = self.algebra(algebra)?;
                let m = self.module_or_regular(b, module)?;
                let h1 = h1_compute(presentation_of(b)?, &m)?;
                if *index >= h1.dim() {
                    return Err(invalid(format!(
                        "index {index} out of range for H^1 of dimension {}",
                        h1.dim()
                    )));
                }
                alpha_map(&h1.projection, &h1.module, &h1.representative(*index))?
            }
            ExtensionSpec::Derivation { algebra, images } => {
                let b = self.algebra(algebra)?;
                let m = Arc::new(FinModule::regular(b));
                let pres = presentation_of(b)?;
                if images.len() != pres.nvars() {
                    return Err(invalid(format!(
                        "{} images for {} variables",
                        images.len(),
                        pres.nvars()
                    )));
                }
                let images = images
                    .iter()
                    .map(|s| b.element(s))
                    .collect::<Result<Vec<_>, _>>()?;
                let h1 = h1_compute(pres, &m)?;
                alpha_map(&h1.projection, &h1.module, &h1.derivation_hom(&images))?
            }
            ExtensionSpec::IdealMap {
                map,
                module,
                generator,
                image,
            } => {
                let p = self.map(map)?;
                let c = self.module_or_regular(&p.target, module)?;
                let u = p.source.element(generator)?;
                let c0 = module_element(&c, &p.target, image)?;
                let h = cyclic_ideal_map(p, &c, &u, &c0)?;
                let sequence = ideal_extension(p, &c, &h)?;
                let alpha = alpha_map(p, &c, &h)?;
                return Ok(Extension::OverRing {
                    map: p.clone(),
                    sequence,
                    ideal_map: h,
                    alpha,
                });
            }
        };
        Ok(Extension::Infinitesimal(xi))
    }
}

pub fn presentation_of(b: &FinAlgebra) -> Result<&PolyPresentation, Failure> {
    b.presentation()
        .ok_or_else(|| invalid("algebra has no polynomial presentation"))
}

/// Marks the first basis vector that generates the module, if any, as its
/// cyclic generator.
fn with_basis_generator(m: FinModule) -> Result<FinModule, Failure> {
    let d = m.dim();
    match (0..d).find(|&i| m.orbit_matrix(&m.basis_vector(i)).rank() == d) {
        Some(i) => {
            let g = m.basis_vector(i);
            Ok(m.with_generator(g)?)
        }
        None => Ok(m),
    }
}

/// An element of `C` named by an algebra element acting on the cyclic
/// generator of `C`.
fn module_element(c: &FinModule, b: &FinAlgebra, src: &str) -> Result<Vec<Scalar>, Failure> {
    let a = b.element(src)?;
    let g = c
        .generator()
        .ok_or_else(|| invalid("module has no cyclic generator to name elements by"))?;
    Ok(c.act(&a, g))
}
