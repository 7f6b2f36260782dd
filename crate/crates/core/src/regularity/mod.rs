//! Growth-lemma, coarea, ε-regularity, filling-regularity and nerve checks.

mod coarea;
mod growth;
mod monotonicity;
mod nerve;
mod verdict;

pub use coarea::{coarea_check, coarea_from_profile, sphere_volumes, CoareaReport, CoareaSample};
pub use growth::{growth_lemma_check, growth_lower_bound, h2_holds, GrowthLemmaReport, GrowthPoint, Violation};
pub use monotonicity::{systole_monotonicity_check, CycleData, MonotonicityReport};
pub use nerve::{maximal_packing, nerve_count_bound_check, nerve_of_cover, NerveBoundReport, NerveComplex};
pub use verdict::{
    epsilon_regular_verdict, filling_regular_check, gromov_constant, BallCheck, FillingCheck, FillingRegularEntry,
    FillingRegularReport, RegularityReport,
};

use thiserror::Error;

use crate::chains::ChainError;
use crate::homotopy::HomotopyError;
use crate::metric::MetricError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RegularityError {
    #[error("outside the domain: {reason}")]
    DomainError { reason: String },
    #[error("grid has {points} points, need at least {required}")]
    GridTooCoarse { points: usize, required: usize },
    #[error("eps = {eps} is not below sys/2 = {half_systole}")]
    BadRange { eps: f64, half_systole: f64 },
    #[error("no filling supplied for radius {radius}")]
    MissingFilling { radius: f64 },
    #[error("{name} must be positive, got {value}")]
    NonpositiveInput { name: &'static str, value: f64 },
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Homotopy(#[from] HomotopyError),
    #[error(transparent)]
    Chain(#[from] ChainError),
}

impl RegularityError {
    pub fn kind(&self) -> &'static str {
        match self {
            RegularityError::DomainError { .. } => "DomainError",
            RegularityError::GridTooCoarse { .. } => "GridTooCoarse",
            RegularityError::BadRange { .. } => "BadRange",
            RegularityError::MissingFilling { .. } => "MissingFilling",
            RegularityError::NonpositiveInput { .. } => "NonpositiveInput",
            RegularityError::Metric(e) => e.kind(),
            RegularityError::Homotopy(e) => e.kind(),
            RegularityError::Chain(e) => e.kind(),
        }
    }
}
