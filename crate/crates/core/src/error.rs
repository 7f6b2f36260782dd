use thiserror::Error;

use crate::chains::ChainError;
use crate::cubical::CubicalError;
use crate::homotopy::HomotopyError;
use crate::mesh::MeshError;
use crate::metric::MetricError;
use crate::regularity::RegularityError;

/// Any domain error raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error(transparent)]
    Mesh(#[from] MeshError),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Homotopy(#[from] HomotopyError),
    #[error(transparent)]
    Cubical(#[from] CubicalError),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Regularity(#[from] RegularityError),
}

impl Error {
    /// Name of the innermost error variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Mesh(e) => e.kind(),
            Error::Metric(e) => e.kind(),
            Error::Homotopy(e) => e.kind(),
            Error::Cubical(e) => e.kind(),
            Error::Chain(e) => e.kind(),
            Error::Regularity(e) => e.kind(),
        }
    }
}
