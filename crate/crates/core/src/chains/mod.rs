//! Cubical chains, ℓ∞ volumes, LP filling volumes and isoperimetric constants.

mod chain;
mod constants;
mod filling;

pub use chain::{boundary, chain_volume, linf_cell_volume, ChainDocument, CubicalChain};
pub use constants::{
    constraint_slacks, isoperimetric_check, isoperimetric_constants, regularity_constant_a, ConstraintSlacks,
    IsoVerdict, IsoperimetricConstants, IsoperimetricReport, RegularityConstant, BISECTION_TOLERANCE, PROBE_FACTOR,
};
pub use filling::{filling_lp, rank_certificate, tube_radius, FillingResult, FillingSummary, RankCertificate};

use thiserror::Error;

use crate::cubical::CubicalError;

/// Default LP tolerance.
pub const DEFAULT_LP_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ChainError {
    #[error("no filling exists: {reason}")]
    Infeasible { reason: String },
    #[error("expected degree or dimension {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("chain is not a cycle (boundary has max coefficient {residual})")]
    NotACycle { residual: f64 },
    #[error("cell {spec} is not in the complex")]
    CellNotInComplex { spec: String },
    #[error("{name} must be positive, got {value}")]
    NonpositiveInput { name: &'static str, value: f64 },
    #[error("no feasible regularity constant A")]
    NoFeasibleA,
    #[error("LP solver failed: {message}")]
    Solver { message: String },
    #[error(transparent)]
    Cubical(#[from] CubicalError),
}

impl ChainError {
    pub fn kind(&self) -> &'static str {
        match self {
            ChainError::Infeasible { .. } => "Infeasible",
            ChainError::DegreeMismatch { .. } => "DegreeMismatch",
            ChainError::NotACycle { .. } => "NotACycle",
            ChainError::CellNotInComplex { .. } => "CellNotInComplex",
            ChainError::NonpositiveInput { .. } => "NonpositiveInput",
            ChainError::NoFeasibleA => "NoFeasibleA",
            ChainError::Solver { .. } => "Solver",
            ChainError::Cubical(e) => e.kind(),
        }
    }
}
