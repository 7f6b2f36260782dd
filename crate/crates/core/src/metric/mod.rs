//! Discretized length metric of a pseudomanifold: distances, balls, nets and
//! Hausdorff distances.

mod ball;
mod distortion;
mod graph;
mod hausdorff;
mod net;
mod space;

pub use ball::{ball_volume_profile, ball_volume_profiles, kuhn_subdivision, write_profile_csv, BallField, BallGrowthProfile};
pub use distortion::{net_coordinates, net_distortion_report, DistortionReport, PairSelection};
pub use graph::{GeodesicGraph, GraphNode, TopCell};
pub use hausdorff::{hausdorff_by, hausdorff_distance};
pub use net::{alpha_dense_net, certify_net, EpsilonNet};
pub use space::{FiniteMetric, LineMetric, MatrixMetric};

use thiserror::Error;

use crate::mesh::MeshError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MetricError {
    #[error("nodes {u} and {v} are not connected")]
    DisconnectedPair { u: usize, v: usize },
    #[error("point set is empty")]
    EmptySet,
    #[error("node {node} is not in the graph")]
    UnknownNode { node: usize },
    #[error("invalid {name}: {value}")]
    InvalidParameter { name: &'static str, value: f64 },
    #[error("coordinate map expands pair ({u}, {v}): {embedded} > {distance}")]
    DistortionUpperBound { u: usize, v: usize, embedded: f64, distance: f64 },
    #[error(transparent)]
    Mesh(#[from] MeshError),
}

impl MetricError {
    pub fn kind(&self) -> &'static str {
        match self {
            MetricError::DisconnectedPair { .. } => "DisconnectedPair",
            MetricError::EmptySet => "EmptySet",
            MetricError::UnknownNode { .. } => "UnknownNode",
            MetricError::InvalidParameter { .. } => "InvalidParameter",
            MetricError::DistortionUpperBound { .. } => "DistortionUpperBound",
            MetricError::Mesh(e) => e.kind(),
        }
    }
}
