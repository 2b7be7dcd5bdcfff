//! Batch front-end: reads JSON inputs, dispatches to the library, emits
//! JSON or CSV. Exit codes: 0 success, 2 validation error, 3 domain or
//! precondition error, 4 audit mismatch.

mod commands;
mod input;

use clap::{Parser, Subcommand};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "specscale", version, about = "Spectral scales, majorization, and unitary-orbit distances")]
pub struct Cli {
    /// Input JSON file (defaults to stdin where a file is required).
    #[arg(long, global = true)]
    pub input: Option<String>,

    /// Output file (defaults to stdout).
    #[arg(long, global = true)]
    pub output: Option<String>,

    /// Output format; `recursion` defaults to csv, everything else to json.
    #[arg(long, global = true)]
    pub format: Option<Format>,

    /// Comparison tolerance for audits and iteration stops.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,

    /// Use the exact rational backend for profile arithmetic.
    #[arg(long, global = true)]
    pub exact: bool,

    /// Cross-run the independent oracle and exit 4 on disagreement.
    #[arg(long, global = true)]
    pub audit: bool,

    /// Seed reserved for batch trial modes.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
pub enum Command {
    /// Eigenvalue (or singular value) function of a form or matrix.
    Eigfn {
        /// Compute the singular value function instead.
        #[arg(long)]
        singular: bool,
    },
    /// Majorization predicates between two profiles.
    Majorize {
        /// Submajorization (no total-integral equality).
        #[arg(long)]
        weak: bool,
        /// Pointwise dominance of the profiles.
        #[arg(long)]
        pointwise: bool,
    },
    /// Distance computations.
    Dist {
        #[command(subcommand)]
        which: DistCommand,
    },
    /// Synthesis constructions.
    Synth {
        #[command(subcommand)]
        which: SynthCommand,
    },
    /// Averaging recursion trace.
    Recursion {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        #[arg(long, default_value_t = 10_000)]
        max_iter: usize,
        /// Coefficient family: standard or reduced.
        #[arg(long, default_value = "standard")]
        variant: String,
    },
    /// Purely infinite predicates.
    Pi {
        #[command(subcommand)]
        which: PiCommand,
    },
}

#[derive(Subcommand)]
pub enum DistCommand {
    /// Distance between unitary orbits.
    Orbit,
    /// Distance from a point to the closed convex hull of an orbit.
    Hull {
        /// Also emit the majorized witness profile.
        #[arg(long)]
        witness: bool,
    },
    /// Distance between two closed convex hulls.
    Hulls,
    /// Spectral distance for purely infinite algebras.
    Spectral,
}

#[derive(Subcommand)]
pub enum SynthCommand {
    /// Mixing plan realizing a majorized Hermitian target.
    Plan {
        #[arg(long, default_value_t = 1e-8)]
        eps: f64,
    },
    /// Two-point pinching.
    Pinch,
    /// Submajorization-to-majorization contraction.
    Contraction,
    /// Two-sided contraction pair A t B = s.
    TwoSided,
    /// Reduction steps carrying an aligned source onto a majorized target.
    Steps,
    /// Contraction plus reduction steps for a submajorized target.
    SubPlan,
}

#[derive(Subcommand)]
pub enum PiCommand {
    /// Hull membership by spectrum convexity.
    Member {
        /// Treat spectra as complex (normal elements).
        #[arg(long)]
        normal: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message);
            ExitCode::from(err.code)
        }
    }
}
