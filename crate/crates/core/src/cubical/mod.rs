//! Cube complexes in `[0,1]^N`, the retraction `R_ε`, the embedding
//! `J = R_ε ∘ I_0` and the extension `K(V)`.

mod cell;
mod cycle;
mod distance;
mod embedding;
mod extension;
mod periodic;
mod retraction;

pub use cell::{CellEntry, ComplexDocument, Coord, CubeCell, CubeComplex};
pub use cycle::{cycle_from_cube_complex, loop_homomorphism, CubeCycle};
pub use distance::{cube_distance, CubeGraph};
pub use embedding::{
    coordinate_map, embed, embed_nodes, injectivity_check, lipschitz_report, minimal_faces, InjectivityReport,
    LipschitzReport,
};
pub use extension::{build_extension, build_extension_on_graph, Extension, ExtensionCensus};
pub use periodic::{face_separation_check, PeriodicLineModel, SeparationReport};
pub use retraction::{minimal_face, retract_complex, retract_scalar, ExtensionParams};

use thiserror::Error;

use crate::homotopy::HomotopyError;
use crate::mesh::MeshError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CubicalError {
    #[error("value {value} is outside [0, 1]")]
    OutOfRange { value: f64 },
    #[error("invalid {name}: {value}")]
    InvalidParameter { name: &'static str, value: f64 },
    #[error("malformed cell spec `{spec}`")]
    MalformedSpec { spec: String },
    #[error("ambient dimension {found} does not match {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("sample {sample} maps outside every face x_i = 0; the net is too sparse for this eps")]
    NetTooSparse { sample: usize },
    #[error("point does not lie in the complex")]
    PointNotInComplex,
    #[error("cell {spec} is not in the complex")]
    CellNotInComplex { spec: String },
    #[error("complexes of dimension {dim} are not supported here")]
    UnsupportedDimension { dim: usize },
    #[error("net is empty")]
    EmptyNet,
    #[error("node {node} is not in the graph")]
    UnknownNode { node: usize },
    #[error(transparent)]
    Mesh(#[from] MeshError),
    #[error(transparent)]
    Homotopy(#[from] HomotopyError),
}

impl CubicalError {
    pub fn kind(&self) -> &'static str {
        match self {
            CubicalError::OutOfRange { .. } => "OutOfRange",
            CubicalError::InvalidParameter { .. } => "InvalidParameter",
            CubicalError::MalformedSpec { .. } => "MalformedSpec",
            CubicalError::DimensionMismatch { .. } => "DimensionMismatch",
            CubicalError::NetTooSparse { .. } => "NetTooSparse",
            CubicalError::PointNotInComplex => "PointNotInComplex",
            CubicalError::CellNotInComplex { .. } => "CellNotInComplex",
            CubicalError::UnsupportedDimension { .. } => "UnsupportedDimension",
            CubicalError::EmptyNet => "EmptyNet",
            CubicalError::UnknownNode { .. } => "UnknownNode",
            CubicalError::Mesh(e) => e.kind(),
            CubicalError::Homotopy(e) => e.kind(),
        }
    }
}
