use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

/// Recursive parameterisation of unitary matrices.
///
/// Inputs are JSON documents read from a file or, when the path is omitted
/// or `-`, from stdin. Results go to stdout and diagnostics to stderr.
/// Exit status: 0 success, 1 invalid input or violated precondition,
/// 2 numerical check above tolerance.
#[derive(Debug, Parser)]
#[command(name = "recunitary", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MatrixFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    #[value(name = "asc")]
    Ascending,
    #[value(name = "desc")]
    Descending,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GaugeArg {
    /// Last component of every characteristic vector real and non-negative.
    Canonical,
    /// As peeled: zero left phases.
    Raw,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Haar-random unitary.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: MatrixFormat,
    },
    /// Matrix from a decomposition or symmetric-parameter document.
    Compose {
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: MatrixFormat,
    },
    /// Factor chain of a unitary matrix.
    Decompose {
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, value_enum, default_value = "desc")]
        order: OrderArg,
        #[arg(long, value_enum, default_value = "canonical")]
        gauge: GaugeArg,
    },
    /// Re-express a decomposition with another factor order.
    Reorder {
        input: Option<PathBuf>,
        /// `asc`, `desc` or a comma-separated permutation of 2..=n.
        #[arg(long)]
        target: String,
    },
    /// Plaquette table, triangle areas and (for 4x4 and 5x5 chains) omega phases.
    Invariants { input: Option<PathBuf> },
    /// Minipanel lattice, relation residuals and basis reconstruction.
    Panel {
        input: Option<PathBuf>,
        /// Smallest admissible modulus of a divisor element.
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Analysis of a 4x4 unitary with two vanishing entries.
    Zerotexture {
        input: Option<PathBuf>,
        /// Entries with modulus below this count as zeros.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Build a symmetric unitary from parameters, or check a matrix for symmetry.
    Symmetric {
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Run the identity checks on a matrix and report residuals.
    Verify {
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
}
