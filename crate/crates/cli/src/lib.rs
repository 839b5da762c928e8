//! Command implementations for the `flatlie` binary. Each command writes its
//! report to the given sink and returns the process exit code: 0 on
//! success, 1 for a negative answer (not flat, inadmissible, no extension
//! vector), 2 for bad input.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use flatlie_core::audit::{self, Summary};
use flatlie_core::catalog;
use flatlie_core::doubleext::{double_extend, extract, find_extension_vectors, AdaptedBasis, AdmissibleQuadruple};
use flatlie_core::flatness::{battery, is_flat};
use flatlie_core::format::{self, Instance};
use flatlie_core::matrix::Vector;
use flatlie_core::scalar::Scalar;
use flatlie_core::Error;

#[derive(Parser, Debug)]
#[command(name = "flatlie", version, about = "Exact checks for flat pseudo-Euclidean Lie algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Report signature, nilpotency, center and flatness of an instance file.
    Check { path: PathBuf },
    /// Double-extend a base instance by a quadruple. The quadruple is read
    /// from the second file, or from the base file when omitted.
    Extend { base: PathBuf, quadruple: Option<PathBuf> },
    /// Write a flat instance as a double extension: base plus quadruple.
    Extract {
        path: PathBuf,
        /// Isotropic central vector, comma-separated coordinates.
        #[arg(long)]
        e: Option<String>,
        /// Also write the input rewritten in the adapted basis.
        #[arg(long, value_name = "FILE")]
        adapted_out: Option<PathBuf>,
    },
    /// Built-in algebras and metrics.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Run the built-in verification suite.
    Audit {
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = audit::DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum CatalogAction {
    List,
    Show { name: String },
}

/// Outcome of a command that did not succeed.
#[derive(Debug)]
pub enum Failure {
    Negative(String),
    Input(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Negative(_) => 1,
            Failure::Input(_) => 2,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Negative(m) | Failure::Input(m) => m,
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn input(e: Error) -> Failure {
    Failure::Input(e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Instance, Failure> {
    format::parse(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Outcome {
    match cli.command {
        Command::Check { path } => check(&path, out),
        Command::Extend { base, quadruple } => extend(&base, quadruple.as_deref(), out),
        Command::Extract { path, e, adapted_out } => extract_cmd(&path, e.as_deref(), adapted_out.as_deref(), out),
        Command::Catalog { action } => catalog_cmd(action, out),
        Command::Audit { json, seed } => audit_cmd(json, seed, out),
    }
}

fn check(path: &Path, out: &mut dyn Write) -> Outcome {
    let inst = load(path)?;
    let mg = &inst.metric;
    let g = mg.algebra();
    let flat = is_flat(mg);
    if let Some(name) = &inst.name {
        writeln!(out, "name: {name}")?;
    }
    writeln!(out, "flat: {}; signature: {}", if flat { "yes" } else { "no" }, mg.signature())?;
    match g.nilpotency_class() {
        Some(c) => writeln!(out, "nilpotent: yes; class: {c}")?,
        None => writeln!(out, "nilpotent: no")?,
    }
    writeln!(
        out,
        "center: dim {}; isotropic part dim {}; derived dim {}",
        g.center().dim(),
        mg.isotropic_center().dim(),
        g.derived().dim()
    )?;
    if !flat {
        return Err(Failure::Negative("not flat".into()));
    }
    let report = battery(mg);
    write!(out, "{report}")?;
    Ok(())
}

fn extend(base: &Path, quadruple: Option<&Path>, out: &mut dyn Write) -> Outcome {
    let inst = load(base)?;
    let stage = match quadruple {
        Some(p) => format::parse_stage(&read(p)?, inst.metric.dim())
            .map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?,
        None => inst
            .stage
            .clone()
            .ok_or_else(|| Failure::Input(format!("{}: no quadruple given", base.display())))?,
    };
    let quad = AdmissibleQuadruple::new(inst.metric.clone(), stage);
    let (mg, frame) = match double_extend(&quad) {
        Ok(x) => x,
        Err(Error::Inadmissible(v)) => {
            let names: Vec<String> = v.iter().map(ToString::to_string).collect();
            return Err(Failure::Negative(format!("inadmissible quadruple: {}", names.join("; "))));
        }
        Err(e @ Error::NotFlat) => return Err(Failure::Negative(e.to_string())),
        Err(e) => return Err(input(e)),
    };
    let mut ext = Instance::new(mg).with_adapted_basis(&frame);
    ext.name = inst.name;
    write!(out, "{}", format::print(&ext))?;
    Ok(())
}

fn parse_vector(text: &str, n: usize) -> Result<Vector, Failure> {
    let v = text
        .split(',')
        .map(|s| s.parse::<Scalar>())
        .collect::<Result<Vector, _>>()
        .map_err(|e| Failure::Input(format!("--e: {e}")))?;
    if v.len() != n {
        return Err(Failure::Input(format!("--e: expected {n} coordinates, found {}", v.len())));
    }
    Ok(v)
}

fn extract_cmd(path: &Path, e: Option<&str>, adapted_out: Option<&Path>, out: &mut dyn Write) -> Outcome {
    let inst = load(path)?;
    let mg = &inst.metric;
    let e = match e {
        Some(text) => parse_vector(text, mg.dim())?,
        None => find_extension_vectors(mg)
            .basis()
            .into_iter()
            .next()
            .ok_or_else(|| Failure::Negative("no isotropic central extension vector".into()))?,
    };
    let (quad, adapted) = match extract(mg, &e) {
        Ok(x) => x,
        Err(e @ (Error::NotFlat | Error::Precondition(_))) => return Err(Failure::Negative(e.to_string())),
        Err(e) => return Err(input(e)),
    };
    if let Some(file) = adapted_out {
        let moved = mg.change_basis(&adapted.matrix()).map_err(input)?;
        let mut rewritten = Instance::new(moved).with_adapted_basis(&AdaptedBasis::standard(quad.base.dim()));
        rewritten.name = inst.name.clone();
        fs::write(file, format::print(&rewritten))?;
    }
    let stage = quad.stage();
    let mut base = Instance::new(quad.base).with_stage(stage);
    base.name = inst.name;
    write!(out, "{}", format::print(&base))?;
    Ok(())
}

fn catalog_cmd(action: CatalogAction, out: &mut dyn Write) -> Outcome {
    match action {
        CatalogAction::List => {
            for name in catalog::NAMES {
                let probe = if name == "R^n" { "R^4" } else { name };
                let entry = catalog::by_name(probe).map_err(input)?;
                writeln!(out, "{name:<10} {}", entry.description)?;
            }
            Ok(())
        }
        CatalogAction::Show { name } => {
            let entry = catalog::by_name(&name).map_err(input)?;
            let mut inst = Instance::new(entry.metric);
            if let Some(f) = &entry.frame {
                inst = inst.with_frame62(f);
            }
            inst.name = Some(entry.name);
            write!(out, "{}", format::print(&inst))?;
            Ok(())
        }
    }
}

fn audit_cmd(json: bool, seed: u64, out: &mut dyn Write) -> Outcome {
    let report = audit::run(seed);
    if json {
        let summary = Summary::from(&report);
        let text = serde_json::to_string_pretty(&summary).map_err(|e| Failure::Input(e.to_string()))?;
        writeln!(out, "{text}")?;
    } else {
        write!(out, "{report}")?;
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Negative("audit failed".into()))
    }
}
