//! Subcommands as one-task documents: flags are translated into named
//! objects so every path goes through the same executor.

use std::collections::BTreeMap;

use clap::Args;

use crate::document::{
    parse_degrees, DegreeSpec, ExtensionSpec, InstanceDocument, MapSpec, ModuleSpec, ScalarSpec,
    TaskSpec,
};

/// The algebra every inline subcommand works over.
const B: &str = "B";

#[derive(Clone, Debug, Args)]
pub struct AlgebraArg {
    /// Presentation such as `k[x,y]/(x^2,x*y,y^2)`.
    pub algebra: String,
}

#[derive(Clone, Debug, Args)]
pub struct ModuleArgs {
    /// Module: `k`, `regular`, `free:<r>` or `quotient:<g1>,<g2>,...`.
    #[arg(long, default_value = "k")]
    pub module: String,
    /// Coefficient module, same syntax; defaults to the module.
    #[arg(long)]
    pub coefficients: Option<String>,
}

#[derive(Clone, Debug, Args)]
pub struct ExtensionArgs {
    /// Extension of B: `truncation`, `split`, `h1:<i>`, `derivation:<p1>;<p2>`
    /// or `surjection:<presentation of E>`.
    #[arg(long)]
    pub extension: Option<String>,
    #[command(flatten)]
    pub ring: RingArgs,
}

/// A surjection `R -> B` sending each variable to itself with `h: I -> C`,
/// `r generator -> p(r) image`.
#[derive(Clone, Debug, Args)]
pub struct RingArgs {
    /// Presentation of R over the same variables as B.
    #[arg(long)]
    pub ring: Option<String>,
    /// Generator of the kernel ideal, in R.
    #[arg(long)]
    pub generator: Option<String>,
    /// Image of the generator, as an element of B acting on the generator of C.
    #[arg(long, default_value = "1")]
    pub image: String,
    /// The module C, same syntax as `--module`; defaults to `regular`.
    #[arg(long)]
    pub kernel_module: Option<String>,
}

pub struct Builder {
    doc: InstanceDocument,
}

impl Builder {
    pub fn new(algebra: &str) -> Self {
        let mut algebras = BTreeMap::new();
        algebras.insert(B.to_string(), algebra.to_string());
        Builder {
            doc: InstanceDocument {
                field: None,
                algebras,
                maps: BTreeMap::new(),
                modules: BTreeMap::new(),
                extensions: BTreeMap::new(),
                tasks: Vec::new(),
            },
        }
    }

    pub fn empty() -> Self {
        let mut b = Builder::new("");
        b.doc.algebras.clear();
        b
    }

    /// Registers a module from its shorthand and returns its name.
    pub fn module(&mut self, spec: &str) -> Result<String, String> {
        let name = format!("module:{spec}");
        let algebra = B.to_string();
        let m = match spec.split_once(':') {
            None if spec == "k" || spec == "residue-field" => ModuleSpec::ResidueField { algebra },
            None if spec == "regular" => ModuleSpec::Regular { algebra },
            Some(("free", r)) => ModuleSpec::Free {
                algebra,
                rank: r
                    .trim()
                    .parse()
                    .map_err(|_| format!("bad rank in module `{spec}`"))?,
            },
            Some(("quotient", gens)) => ModuleSpec::Quotient {
                algebra,
                generators: gens.split(',').map(|g| g.trim().to_string()).collect(),
            },
            _ => return Err(format!("unknown module shorthand `{spec}`")),
        };
        self.doc.modules.insert(name.clone(), m);
        Ok(name)
    }

    /// Registers the extension described by the flags and returns its name.
    pub fn extension(&mut self, args: &ExtensionArgs) -> Result<String, String> {
        let name = "xi".to_string();
        let algebra = B.to_string();
        let spec = match (&args.extension, &args.ring.ring) {
            (Some(_), Some(_)) => return Err("give either --extension or --ring, not both".into()),
            (None, Some(_)) => return self.ideal_map(&args.ring),
            (None, None) => return Err("an extension is required: --extension or --ring".into()),
            (Some(s), None) => match s.split_once(':') {
                None if s == "truncation" => ExtensionSpec::Truncation { algebra },
                None if s == "split" => ExtensionSpec::Split {
                    algebra,
                    module: None,
                },
                Some(("h1", i)) => ExtensionSpec::H1Basis {
                    algebra,
                    index: i
                        .trim()
                        .parse()
                        .map_err(|_| format!("bad index in `{s}`"))?,
                    module: None,
                },
                Some(("derivation", images)) => ExtensionSpec::Derivation {
                    algebra,
                    images: images.split(';').map(|p| p.trim().to_string()).collect(),
                },
                Some(("surjection", e)) => {
                    self.doc.algebras.insert("E".into(), e.to_string());
                    let vars = self.vars()?;
                    self.doc.maps.insert(
                        "p".into(),
                        MapSpec {
                            source: "E".into(),
                            target: B.into(),
                            images: vars,
                        },
                    );
                    ExtensionSpec::Surjection {
                        map: "p".into(),
                        generator: None,
                    }
                }
                _ => return Err(format!("unknown extension shorthand `{s}`")),
            },
        };
        self.doc.extensions.insert(name.clone(), spec);
        Ok(name)
    }

    /// The 1-extension over `R` given by `--ring`, `--generator` and `--image`.
    pub fn ideal_map(&mut self, ring: &RingArgs) -> Result<String, String> {
        let r = ring.ring.as_ref().ok_or("--ring is required")?;
        let generator = ring.generator.clone().ok_or("--generator is required")?;
        self.doc.algebras.insert("R".into(), r.clone());
        let vars = self.vars()?;
        self.doc.maps.insert(
            "p".into(),
            MapSpec {
                source: "R".into(),
                target: B.into(),
                images: vars,
            },
        );
        let module = ring
            .kernel_module
            .as_deref()
            .map(|m| self.module(m))
            .transpose()?;
        let name = "xi".to_string();
        self.doc.extensions.insert(
            name.clone(),
            ExtensionSpec::IdealMap {
                map: "p".into(),
                module,
                generator,
                image: ring.image.clone(),
            },
        );
        Ok(name)
    }

    fn vars(&self) -> Result<Vec<String>, String> {
        let src = &self.doc.algebras[B];
        let open = src.find('[').ok_or("algebra presentation has no `[`")?;
        let close = src.find(']').ok_or("algebra presentation has no `]`")?;
        Ok(src[open + 1..close]
            .split(',')
            .map(|v| v.trim().to_string())
            .filter(|v| !v.is_empty())
            .collect())
    }

    pub fn task(mut self, task: TaskSpec) -> InstanceDocument {
        self.doc.tasks.push(task);
        self.doc
    }

    pub fn tasks(mut self, tasks: Vec<TaskSpec>) -> InstanceDocument {
        self.doc.tasks = tasks;
        self.doc
    }
}

pub fn task(op: &str) -> TaskSpec {
    TaskSpec {
        op: op.to_string(),
        ..TaskSpec::default()
    }
}

pub fn with_algebra(mut t: TaskSpec) -> TaskSpec {
    t.algebra = Some(B.to_string());
    t
}

pub fn degrees(s: &str) -> Result<DegreeSpec, String> {
    parse_degrees(s)?;
    Ok(DegreeSpec::Range(s.to_string()))
}

pub fn coords(s: &str) -> Vec<ScalarSpec> {
    s.split(',')
        .map(|c| ScalarSpec::Text(c.trim().to_string()))
        .collect()
}
