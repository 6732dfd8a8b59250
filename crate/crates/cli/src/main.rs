//! `scd`: enumeration, canonical forms, character tables, Hopf operations and
//! verification suites for type D supercharacters.

mod render;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;

use scd_core::ffield::Field;
use scd_core::hopf::{Basis, ScAlgebra};
use scd_core::json::{
    char_table_csv, CensusDoc, CharTableDoc, MatrixDoc, PartitionDoc, ScElementDoc, TensorDoc,
};
use scd_core::matrixrep::verge_reduce;
use scd_core::oracle::{self, GroupTable};
use scd_core::partitions::{count, enumerate_within, Family};
use scd_core::superchar::{char_table, NestingCount};
use scd_core::verify;

#[derive(Parser)]
#[command(name = "scd", version, about)]
struct Cli {
    /// Enumeration budget (group elements or matrices visited).
    #[arg(long, global = true, env = "SCD_BUDGET", default_value_t = oracle::DEFAULT_BUDGET)]
    budget: u64,

    /// Seed for the randomized parts of `verify`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct FieldArgs {
    #[arg(long)]
    q: u64,

    /// Irreducible modulus for q = p^r, r > 1: coefficients low degree first.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    modulus: Option<Vec<i64>>,
}

impl FieldArgs {
    fn field(&self) -> scd_core::Result<Field> {
        Field::from_order(self.q, self.modulus.as_deref())
    }
}

#[derive(clap::Args)]
struct ModulusArg {
    /// Modulus for the field named in the input file, when it is not prime.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    modulus: Option<Vec<i64>>,
}

impl ModulusArg {
    fn field(&self, q: u32) -> scd_core::Result<Field> {
        Field::from_order(q as u64, self.modulus.as_deref())
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    D,
    C,
    B,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::D => Family::D,
            FamilyArg::C => Family::C,
            FamilyArg::B => Family::B,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum NestingArg {
    AllArcs,
    PlusArcs,
    PlusPairs,
}

impl From<NestingArg> for NestingCount {
    fn from(n: NestingArg) -> Self {
        match n {
            NestingArg::AllArcs => NestingCount::AllArcs,
            NestingArg::PlusArcs => NestingCount::PlusArcs,
            NestingArg::PlusPairs => NestingCount::PlusPairs,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum HopfOp {
    Product,
    Coproduct,
    Antipode,
    ToP,
    ToKappa,
}

#[derive(Subcommand)]
enum Command {
    /// List the labelled partitions of [±n], or just count them.
    Enumerate {
        #[arg(long, value_enum, default_value = "d")]
        family: FamilyArg,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        count: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Canonical form of a nilpotent upper triangular matrix.
    Reduce {
        #[arg(long = "in")]
        input: PathBuf,
        /// Family used to read an arc-form result as a partition.
        #[arg(long, value_enum, default_value = "d")]
        family: FamilyArg,
        #[command(flatten)]
        modulus: ModulusArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Supercharacter table of U^D_{2n}(q).
    Table {
        #[arg(long, value_enum, default_value = "d")]
        family: FamilyArg,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: TableFormat,
        #[arg(long, value_enum, default_value = "all-arcs")]
        nesting: NestingArg,
        /// Attach superclass sizes from a brute-force census.
        #[arg(long)]
        class_sizes: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Products, coproducts, antipodes and basis changes.
    Hopf {
        #[arg(long, value_enum)]
        op: HopfOp,
        #[arg(long = "in")]
        input: PathBuf,
        /// Right-hand factor for `product`.
        #[arg(long = "in2")]
        input2: Option<PathBuf>,
        #[command(flatten)]
        modulus: ModulusArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Brute-force superclass census of U^D_{2n}(q).
    Oracle {
        #[arg(long, value_enum, default_value = "d")]
        family: FamilyArg,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the verification suites; exits nonzero iff a check fails.
    Verify {
        #[arg(long, value_enum, default_value = "d")]
        family: FamilyArg,
        #[arg(long)]
        n_max: usize,
        #[command(flatten)]
        field: FieldArgs,
        /// Write the full JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Arc diagram of a partition as SVG.
    Render {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        modulus: ModulusArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read_json<T: DeserializeOwned>(path: &Path) -> anyhow::Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| {
        anyhow::Error::new(scd_core::Error::Malformed(format!("{}: {e}", path.display())))
    })
}

fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            let written = stdout.write_all(text.as_bytes()).and_then(|()| {
                if text.ends_with('\n') {
                    Ok(())
                } else {
                    stdout.write_all(b"\n")
                }
            });
            match written {
                // A closed pipe (`scd … | head`) is not an error.
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                other => Ok(other?),
            }
        }
    }
}

fn emit_json<T: Serialize>(out: Option<&Path>, value: &T) -> anyhow::Result<()> {
    emit(out, &serde_json::to_string_pretty(value)?)
}

#[derive(Serialize)]
struct ReduceOutput {
    input: MatrixDoc,
    canonical: MatrixDoc,
    arc_form: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    partition: Option<PartitionDoc>,
}

/// Returns whether every check passed; other commands always succeed.
fn run(cli: Cli) -> anyhow::Result<bool> {
    let budget = cli.budget;
    match cli.command {
        Command::Enumerate {
            family,
            n,
            field,
            count: only_count,
            out,
        } => {
            let f = field.field()?;
            if only_count {
                emit(out.as_deref(), &count(family.into(), n, f.q()).to_string())?;
            } else {
                let docs: Vec<PartitionDoc> = enumerate_within(family.into(), n, &f, budget)?
                    .iter()
                    .map(|l| PartitionDoc::from_partition(l, f.q()))
                    .collect();
                emit_json(out.as_deref(), &docs)?;
            }
        }
        Command::Reduce {
            input,
            family,
            modulus,
            out,
        } => {
            let doc: MatrixDoc = read_json(&input)?;
            let f = modulus.field(doc.q)?;
            let m = doc.to_matrix(&f)?;
            let reduced = verge_reduce(&m, &f)?;
            let arc_form = reduced.is_arc_form();
            let partition = if arc_form {
                reduced
                    .to_partition(family.into(), &f)
                    .ok()
                    .map(|l| PartitionDoc::from_partition(&l, f.q()))
            } else {
                None
            };
            emit_json(
                out.as_deref(),
                &ReduceOutput {
                    input: doc,
                    canonical: MatrixDoc::from_matrix(&reduced, f.q()),
                    arc_form,
                    partition,
                },
            )?;
        }
        Command::Table {
            family,
            n,
            field,
            format,
            nesting,
            class_sizes,
            out,
        } => {
            let f = field.field()?;
            let mut table = char_table(family.into(), n, &f, nesting.into(), budget)?;
            if class_sizes {
                let group = GroupTable::build(family.into(), n, &f, budget)?;
                table = table.with_class_sizes(&group)?;
            }
            match format {
                TableFormat::Json => emit_json(
                    out.as_deref(),
                    &CharTableDoc::from_table(&table, &f, nesting.into()),
                )?,
                TableFormat::Csv => emit(out.as_deref(), &char_table_csv(&table))?,
            }
        }
        Command::Hopf {
            op,
            input,
            input2,
            modulus,
            out,
        } => {
            let doc: ScElementDoc = read_json(&input)?;
            let f = modulus.field(doc.q)?;
            let x = doc.to_element(&f)?;
            let h = ScAlgebra::new(x.family(), &f)?;
            let q = f.q();
            match op {
                HopfOp::Product => {
                    let path = input2.ok_or_else(|| {
                        anyhow::Error::new(scd_core::Error::Malformed(
                            "product needs a second operand (--in2)".into(),
                        ))
                    })?;
                    let y = read_json::<ScElementDoc>(&path)?.to_element(&f)?;
                    emit_json(out.as_deref(), &ScElementDoc::from_element(&h.product(&x, &y)?))?;
                }
                HopfOp::Coproduct => {
                    emit_json(out.as_deref(), &TensorDoc::from_tensor(&h.coproduct(&x)?, q))?
                }
                HopfOp::Antipode => {
                    emit_json(out.as_deref(), &ScElementDoc::from_element(&h.antipode(&x)?))?
                }
                HopfOp::ToP => emit_json(
                    out.as_deref(),
                    &ScElementDoc::from_element(&h.convert(&x, Basis::P)?),
                )?,
                HopfOp::ToKappa => emit_json(
                    out.as_deref(),
                    &ScElementDoc::from_element(&h.convert(&x, Basis::Kappa)?),
                )?,
            }
        }
        Command::Oracle {
            family,
            n,
            field,
            out,
        } => {
            let f = field.field()?;
            let group = GroupTable::build(family.into(), n, &f, budget)?;
            group.check_indexing()?;
            emit_json(out.as_deref(), &CensusDoc::from_table(&group)?)?;
        }
        Command::Verify {
            family,
            n_max,
            field,
            report,
        } => {
            let f = field.field()?;
            let rep = verify::full_report(family.into(), &f, n_max, budget, cli.seed)?;
            let mut lines = String::new();
            for c in &rep.checks {
                let tag = if c.passed() { "PASS" } else { "FAIL" };
                lines.push_str(&format!("{tag} {} ({} cases", c.name, c.cases));
                if !c.passed() {
                    lines.push_str(&format!(", {} failures", c.failures));
                    if let Some(e) = c.examples.first() {
                        lines.push_str(&format!(", e.g. {e}"));
                    }
                }
                lines.push_str(")\n");
            }
            let failed = rep.checks.iter().filter(|c| !c.passed()).count();
            lines.push_str(&format!("{} checks, {failed} failed\n", rep.checks.len()));
            emit(None, &lines)?;
            if let Some(path) = report {
                emit_json(Some(&path), &rep)?;
            }
            return Ok(rep.passed());
        }
        Command::Render {
            input,
            modulus,
            out,
        } => {
            let doc: PartitionDoc = read_json(&input)?;
            let lambda = doc.to_partition(&modulus.field(doc.q)?)?;
            emit(out.as_deref(), &render::arc_diagram(&lambda))?;
        }
    }
    Ok(true)
}

fn error_kind(e: &anyhow::Error) -> &'static str {
    if let Some(core) = e.downcast_ref::<scd_core::Error>() {
        core.kind()
    } else if e.downcast_ref::<std::io::Error>().is_some() {
        "io"
    } else if e.downcast_ref::<serde_json::Error>().is_some() {
        "malformed_input"
    } else {
        "error"
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            let obj = serde_json::json!({
                "error": { "kind": error_kind(&e), "message": format!("{e:#}") }
            });
            eprintln!("{obj}");
            ExitCode::FAILURE
        }
    }
}
