//! `cohops`: run instance documents and single computations, printing a
//! deterministic JSON report.

mod document;
mod exec;
mod inline;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context as _;
use clap::{Parser, Subcommand};
use cohops_core::operators::DEFAULT_BAR_BUDGET;
use cohops_core::suites::SUITES;
use cohops_core::FieldSpec;

use document::{invalid, Failure, InstanceDocument};
use exec::Settings;
use inline::{
    coords, degrees, task, with_algebra, AlgebraArg, Builder, ExtensionArgs, ModuleArgs, RingArgs,
};
use report::{rejected, run_document, RunOptions, EXIT_INVALID};

#[derive(Debug, Parser)]
#[command(
    name = "cohops",
    version,
    about = "Exact Ext, Tor and cohomological operators over finite-dimensional algebras"
)]
struct Cli {
    /// Ground field, `q` or `fp:<p>`; overrides the document's field.
    #[arg(long, global = true)]
    field: Option<String>,
    /// Top degree L for Ext ranges and finite-generation reports.
    #[arg(long, global = true, default_value_t = 8)]
    max_degree: usize,
    /// Cell budget for the bar construction.
    #[arg(long, global = true, default_value_t = DEFAULT_BAR_BUDGET)]
    budget: usize,
    /// Worker threads for consecutive tasks marked independent.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Include per-task wall time; reports are then not byte-stable.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run every task of a JSON instance document.
    Run { document: PathBuf },
    /// Basis and dimension of a presented algebra.
    BuildAlgebra(AlgebraArg),
    /// Dimensions of Ext^n(M, N).
    Ext {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[command(flatten)]
        modules: ModuleArgs,
        /// Degrees `n` or `a..b`; defaults to 0..max-degree.
        #[arg(long)]
        degrees: Option<String>,
    },
    /// Dimensions of Tor_n(M, N).
    Tor {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[command(flatten)]
        modules: ModuleArgs,
        #[arg(long)]
        degrees: Option<String>,
    },
    /// Dimension of H^1(k, B, M), M defaulting to B.
    H1 {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long)]
        module: Option<String>,
    },
    /// phi of a 1-extension over R, in Ext^2(N, N).
    Phi {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, default_value = "k")]
        module: String,
    },
    /// psi of an extension of B, in Ext^2(N, N).
    Psi {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[command(flatten)]
        extension: ExtensionArgs,
        #[arg(long, default_value = "k")]
        module: String,
    },
    /// Class of an extension in Exal(B, C), through alpha for ring extensions.
    Alpha {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[command(flatten)]
        extension: ExtensionArgs,
    },
    /// Hochschild class of an extension of B by B.
    Gamma {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[command(flatten)]
        extension: ExtensionArgs,
    },
    /// s of a Hochschild class, given by an extension or by coordinates.
    S {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[command(flatten)]
        extension: ExtensionArgs,
        /// Coordinates in the basis of HH^2(B), comma separated.
        #[arg(long)]
        coords: Option<String>,
        #[arg(long, default_value = "k")]
        module: String,
    },
    /// Action of psi(extension) on Ext^n(M, N).
    Act {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[command(flatten)]
        extension: ExtensionArgs,
        #[command(flatten)]
        modules: ModuleArgs,
        #[arg(long, default_value_t = 0)]
        degree: usize,
        /// Coordinates of a class in Ext^n(M, N); without it the matrix is printed.
        #[arg(long)]
        coords: Option<String>,
    },
    /// Observed generation degree of Ext^*(M, N) under the operators.
    Fingen {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[command(flatten)]
        modules: ModuleArgs,
    },
    /// Run an acceptance suite, or `all`.
    Verify { suite: String },
}

fn document_of(cmd: &Command) -> Result<InstanceDocument, String> {
    let doc = match cmd {
        Command::Run { .. } => unreachable!("documents are read from disk"),
        Command::BuildAlgebra(a) => {
            Builder::new(&a.algebra).task(with_algebra(task("build-algebra")))
        }
        Command::Ext {
            algebra,
            modules,
            degrees: d,
        }
        | Command::Tor {
            algebra,
            modules,
            degrees: d,
        } => {
            let op = if matches!(cmd, Command::Ext { .. }) {
                "ext"
            } else {
                "tor"
            };
            let mut b = Builder::new(&algebra.algebra);
            let mut t = task(op);
            t.module = Some(b.module(&modules.module)?);
            t.coefficients = modules
                .coefficients
                .as_deref()
                .map(|c| b.module(c))
                .transpose()?;
            t.degrees = d.as_deref().map(degrees).transpose()?;
            b.task(t)
        }
        Command::H1 { algebra, module } => {
            let mut b = Builder::new(&algebra.algebra);
            let mut t = with_algebra(task("h1"));
            t.module = module.as_deref().map(|m| b.module(m)).transpose()?;
            b.task(t)
        }
        Command::Phi {
            algebra,
            ring,
            module,
        } => {
            let mut b = Builder::new(&algebra.algebra);
            let mut t = task("phi");
            t.extension = Some(b.ideal_map(ring)?);
            t.module = Some(b.module(module)?);
            b.task(t)
        }
        Command::Psi {
            algebra,
            extension,
            module,
        } => {
            let mut b = Builder::new(&algebra.algebra);
            let mut t = task("psi");
            t.extension = Some(b.extension(extension)?);
            t.module = Some(b.module(module)?);
            b.task(t)
        }
        Command::Alpha { algebra, extension } | Command::Gamma { algebra, extension } => {
            let op = if matches!(cmd, Command::Alpha { .. }) {
                "alpha"
            } else {
                "gamma"
            };
            let mut b = Builder::new(&algebra.algebra);
            let mut t = task(op);
            t.extension = Some(b.extension(extension)?);
            b.task(t)
        }
        Command::S {
            algebra,
            extension,
            coords: c,
            module,
        } => {
            let mut b = Builder::new(&algebra.algebra);
            let mut t = with_algebra(task("s"));
            match c {
                Some(c) => t.coords = Some(coords(c)),
                None => t.extension = Some(b.extension(extension)?),
            }
            t.module = Some(b.module(module)?);
            b.task(t)
        }
        Command::Act {
            algebra,
            extension,
            modules,
            degree,
            coords: c,
        } => {
            let mut b = Builder::new(&algebra.algebra);
            let mut t = task("act");
            t.extension = Some(b.extension(extension)?);
            t.module = Some(b.module(&modules.module)?);
            t.coefficients = modules
                .coefficients
                .as_deref()
                .map(|c| b.module(c))
                .transpose()?;
            t.degree = Some(*degree);
            t.coords = c.as_deref().map(coords);
            b.task(t)
        }
        Command::Fingen { algebra, modules } => {
            let mut b = Builder::new(&algebra.algebra);
            let mut t = with_algebra(task("fingen"));
            t.module = Some(b.module(&modules.module)?);
            t.coefficients = modules
                .coefficients
                .as_deref()
                .map(|c| b.module(c))
                .transpose()?;
            b.task(t)
        }
        Command::Verify { suite } => {
            let names: Vec<&str> = if suite == "all" {
                SUITES.to_vec()
            } else {
                vec![suite.as_str()]
            };
            let tasks = names
                .into_iter()
                .map(|s| {
                    let mut t = task("verify");
                    t.suite = Some(s.to_string());
                    t.independent = true;
                    t
                })
                .collect();
            Builder::empty().tasks(tasks)
        }
    };
    Ok(doc)
}

fn load(path: &PathBuf) -> Result<InstanceDocument, Failure> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(|e| invalid(format!("{e:#}")))?;
    serde_json::from_str(&text).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn resolve_field(flag: &Option<String>, doc: &InstanceDocument) -> Result<FieldSpec, Failure> {
    let spec = flag.as_deref().or(doc.field.as_deref()).unwrap_or("fp:101");
    Ok(FieldSpec::parse(spec)?)
}

fn emit(report: &serde_json::Value) -> anyhow::Result<()> {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, report)?;
    writeln!(out)?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = RunOptions {
        settings: Settings {
            max_degree: cli.max_degree,
            budget: cli.budget,
        },
        jobs: cli.jobs.max(1),
        timings: cli.timings,
    };
    let doc = match &cli.command {
        Command::Run { document } => load(document),
        cmd => document_of(cmd).map_err(invalid),
    };
    let (report, code) = match doc.and_then(|d| Ok((resolve_field(&cli.field, &d)?, d))) {
        Ok((field, d)) => run_document(&d, field, opts),
        Err(f) => rejected(None, opts, &f),
    };
    if let Err(e) = emit(&report) {
        eprintln!("cohops: {e:#}");
        return ExitCode::from(1);
    }
    if code == EXIT_INVALID {
        if let Some(msg) = report.get("error").and_then(|e| e.as_str()) {
            eprintln!("cohops: {msg}");
        }
    }
    ExitCode::from(code as u8)
}
