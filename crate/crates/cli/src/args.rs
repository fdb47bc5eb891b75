use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qspec_core::tables::TABLE_TOL;
use qspec_core::QuasiKind;

#[derive(Debug, Parser)]
#[command(name = "qspec", version, about = "Quasi-Christoffel and quasi-Geronimus experiments on orthogonal polynomials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Recompute a reference table and compare each cell.
    Table {
        /// Table id, 1 to 10.
        id: u8,
        #[arg(long, default_value_t = TABLE_TOL)]
        tol: f64,
    },
    /// Check a closed-form family over a parameter grid.
    Verify {
        /// qc-jacobi, qc-laguerre or qg-jacobi.
        family: QuasiKind,
        solution: u8,
        /// Largest degree checked.
        #[arg(long, default_value_t = 30)]
        n: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Zeros of an orthogonal, transformed or quasi polynomial.
    Zeros(FamilyArgs),
    /// Interlacing verdicts between related zero sets.
    Interlace {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_enum, default_value_t = Pairing::Triple)]
        pair: Pairing,
        /// Band for dropping a shared boundary root.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Chain sequence and minimal parameter sequence at --point.
    Chain(FamilyArgs),
    /// Truncated Jacobi matrices and the commutation residual.
    Jacobimatrix(FamilyArgs),
    /// Unit-circle Christoffel transform: Verblunsky coefficients and zeros.
    Opuc(FamilyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    Jacobi,
    Laguerre,
    Opuc,
    Custom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Transform {
    /// Christoffel transform, quasi-Christoffel combinations.
    Qc,
    /// Geronimus transform, quasi-Geronimus combinations (Jacobi at -1).
    Qg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Pairing {
    /// original / transformed / quasi
    Triple,
    /// quasi-Geronimus against quasi-Christoffel
    QcQg,
}

#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    #[arg(long, value_enum, default_value_t = FamilyKind::Jacobi)]
    pub family: FamilyKind,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub beta: f64,
    /// Degree, or sequence length for chain and jacobimatrix.
    #[arg(long, default_value_t = 5)]
    pub n: usize,
    /// Closed-form solution id; same as --gamma sol:<id>.
    #[arg(long)]
    pub solution: Option<u8>,
    /// const:<v> | sol:<id> | file:<path>
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<String>,
    #[arg(long, value_enum, default_value_t = Transform::Qc)]
    pub kind: Transform,
    /// Transformation point a (real) or g on the circle (complex, e.g. 1 or i);
    /// for chain, the evaluation point t.
    #[arg(long, allow_hyphen_values = true)]
    pub point: Option<String>,
    /// Constant a_n for the quasi circle polynomial (complex).
    #[arg(long, allow_hyphen_values = true)]
    pub an: Option<String>,
    /// JSON recurrence table {"c": [...], "lambda": [...]} for --family custom.
    #[arg(long)]
    pub coeffs: Option<PathBuf>,
}
