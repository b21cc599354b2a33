//! `pargal`: inspect, globalize, quotient and multiply partial Galois actions
//! stored as JSON action files.
//!
//! Exit status: 0 when every check passes, 1 when a check fails (or an
//! action file violates the axioms), 2 for usage and parse errors, 3 when some
//! check could not be decided.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use pargal_core::Error;

use report::Status;

#[derive(Parser)]
#[command(name = "pargal", version, about = "Exact computations with unital partial Galois actions")]
struct Cli {
    /// Print a deterministic JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Reduce the input actions to this base ring (e.g. Z/2) before working.
    #[arg(long, global = true, value_name = "RING")]
    base: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct Subgroup {
    /// Comma separated element labels; the subgroup they generate is used.
    #[arg(long, value_name = "LABELS")]
    subgroup: String,
}

#[derive(Args, Clone)]
pub struct Out {
    /// Write the resulting action file here.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
pub enum Command {
    /// Check every axiom and list all witnesses of failure.
    Verify { file: PathBuf },
    /// The map phi and the Galois coordinates.
    Galois { file: PathBuf },
    /// The partial trace of each basis element.
    Trace { file: PathBuf },
    /// The invariant subalgebra, of the whole group or of a subgroup.
    Invariants {
        file: PathBuf,
        /// Restrict to the subgroup generated by these labels first.
        #[arg(long, value_name = "LABELS")]
        subgroup: Option<String>,
    },
    /// Restrict the action to a subgroup.
    Restrict {
        file: PathBuf,
        #[command(flatten)]
        subgroup: Subgroup,
        #[command(flatten)]
        out: Out,
    },
    /// Build and certify the globalization.
    Globalize {
        file: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Certify the map psi_H of the globalization.
    Psi {
        file: PathBuf,
        #[command(flatten)]
        subgroup: Subgroup,
    },
    /// The induced action of G/H on the H-invariants.
    Quotient {
        file: PathBuf,
        #[command(flatten)]
        subgroup: Subgroup,
        #[command(flatten)]
        out: Out,
    },
    /// Compare both quotient constructions and the iterated invariants.
    QuotientCheck {
        file: PathBuf,
        #[command(flatten)]
        subgroup: Subgroup,
    },
    /// The tensor product action of G x G' on S (x) S'.
    Tensor {
        first: PathBuf,
        second: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// The product of two classes.
    Product {
        first: PathBuf,
        second: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// The inverse class, acting through alpha_{g^-1}.
    Inverse {
        file: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// The idempotent class E(S, alpha).
    Idempotent {
        file: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Decide whether two actions are isomorphic.
    Iso { first: PathBuf, second: PathBuf },
    /// Commutativity, associativity, regularity and idempotent checks.
    Suite {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Split a class of a product of cyclic groups into its factors.
    Decompose {
        file: PathBuf,
        /// Directory receiving one action file per factor.
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
    },
    /// Tensor classes of cyclic groups into a class of their product.
    Compose {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[command(flatten)]
        out: Out,
    },
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Parse { .. }
        | Error::UnsupportedRing(_)
        | Error::Io(_)
        | Error::InvalidGroup(_)
        | Error::InvalidScalar(..)
        | Error::RingMismatch(..)
        | Error::GroupMismatch(_)
        | Error::Dimension(_) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = cli
        .base
        .as_deref()
        .map(pargal_core::scalars::BaseRing::parse)
        .transpose()
        .and_then(|base| commands::run(&cli.command, base.as_ref()));
    match result {
        Ok(report) => {
            if cli.json {
                print!("{}", report.to_json());
            } else {
                print!("{}", report.to_text(&std::env::args().skip(1).collect::<Vec<_>>(), start.elapsed()));
            }
            ExitCode::from(match report.verdict {
                Status::Pass => 0,
                Status::Fail => 1,
                Status::Undecided => 3,
            })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
