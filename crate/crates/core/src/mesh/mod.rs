//! Finite simplicial pseudomanifolds with piecewise-flat metrics.

mod complex;
mod io;
mod plmetric;
mod pseudomanifold;
mod volume;

pub use complex::{Simplex, SimplicialComplex, Vertex};
pub use io::MeshDocument;
pub use plmetric::PlMetric;
pub use pseudomanifold::{validate_pseudomanifold, Pseudomanifold};
pub use volume::{cayley_menger_squared_volume, complex_volume, simplex_volume, total_volume};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MeshError {
    #[error("malformed simplex {simplex:?}: {reason}")]
    MalformedSimplex { simplex: Vec<Vertex>, reason: &'static str },
    #[error("complex is not closed under faces: {face:?} missing")]
    MissingFace { face: Simplex },
    #[error("complex has dimension {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("simplex {simplex:?} is not a face of any top-dimensional simplex")]
    HomogeneityViolation { simplex: Simplex },
    #[error("codimension-one face {face:?} has {cofaces} cofaces instead of 2")]
    BranchingViolation { face: Simplex, cofaces: usize },
    #[error("top simplex {simplex:?} is not reachable through codimension-one faces ({components} components)")]
    NotStronglyConnected { simplex: Simplex, components: usize },
    #[error("edge ({u}, {v}) has non-positive or non-finite length {length}")]
    NonPositiveLength { u: Vertex, v: Vertex, length: f64 },
    #[error("edge ({u}, {v}) given conflicting lengths {first} and {second}")]
    ConflictingLength { u: Vertex, v: Vertex, first: f64, second: f64 },
    #[error("edge ({u}, {v}) has no length")]
    MissingEdgeLength { u: Vertex, v: Vertex },
    #[error("edge ({u}, {v}) is not an edge of the complex")]
    UnknownEdge { u: Vertex, v: Vertex },
    #[error("simplex {simplex:?} violates the simplex inequalities (squared volume {squared_volume})")]
    MetricInfeasible { simplex: Simplex, squared_volume: f64 },
    #[error("simplex {simplex:?} is degenerate and degenerate simplices are not allowed")]
    DegenerateSimplex { simplex: Simplex },
    #[error("pseudomanifold is not orientable")]
    NonOrientable,
}

impl MeshError {
    pub fn kind(&self) -> &'static str {
        match self {
            MeshError::MalformedSimplex { .. } => "MalformedSimplex",
            MeshError::MissingFace { .. } => "MissingFace",
            MeshError::DimensionMismatch { .. } => "DimensionMismatch",
            MeshError::HomogeneityViolation { .. } => "HomogeneityViolation",
            MeshError::BranchingViolation { .. } => "BranchingViolation",
            MeshError::NotStronglyConnected { .. } => "NotStronglyConnected",
            MeshError::NonPositiveLength { .. } => "NonPositiveLength",
            MeshError::ConflictingLength { .. } => "ConflictingLength",
            MeshError::MissingEdgeLength { .. } => "MissingEdgeLength",
            MeshError::UnknownEdge { .. } => "UnknownEdge",
            MeshError::MetricInfeasible { .. } => "MetricInfeasible",
            MeshError::DegenerateSimplex { .. } => "DegenerateSimplex",
            MeshError::NonOrientable => "NonOrientable",
        }
    }
}
