use std::collections::BTreeSet;

use serde::Serialize;

use crate::metric::{EpsilonNet, FiniteMetric};
use crate::par::Execution;
use crate::scalar::Scalar;

use super::cell::{CubeCell, CubeComplex};
use super::embedding::{embed_nodes, minimal_faces};
use super::retraction::ExtensionParams;
use super::CubicalError;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtensionCensus {
    /// Cells per dimension after closing under faces.
    pub counts: Vec<usize>,
    pub samples: usize,
    pub distinct_minimal_faces: usize,
    /// Every cell lies in some `{x_i = 0}`.
    pub in_coordinate_faces: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Extension {
    pub complex: CubeComplex,
    pub census: ExtensionCensus,
}

fn assemble(ambient_dim: usize, faces: Vec<CubeCell>) -> Result<Extension, CubicalError> {
    let samples = faces.len();
    let distinct: BTreeSet<CubeCell> = faces.into_iter().collect();
    let distinct_minimal_faces = distinct.len();
    let complex = CubeComplex::from_cells(ambient_dim, distinct)?;
    let census = ExtensionCensus {
        counts: complex.census(),
        samples,
        distinct_minimal_faces,
        in_coordinate_faces: complex.in_coordinate_faces(),
    };
    Ok(Extension { complex, census })
}

/// `K(V)`: the union of the minimal faces of the sampled images `J(v)`, closed
/// under faces.
pub fn build_extension<S: Scalar>(images: &[Vec<S>], ambient_dim: usize, tol: S) -> Result<Extension, CubicalError> {
    if let Some(p) = images.iter().find(|p| p.len() != ambient_dim) {
        return Err(CubicalError::DimensionMismatch { expected: ambient_dim, found: p.len() });
    }
    assemble(ambient_dim, minimal_faces(images, tol)?)
}

/// `K(V)` sampled at every node of `metric`.
pub fn build_extension_on_graph<M: FiniteMetric + ?Sized>(
    metric: &M,
    net: &EpsilonNet,
    params: &ExtensionParams<f64>,
    tol: f64,
    exec: Execution,
) -> Result<Extension, CubicalError> {
    let images = embed_nodes(metric, net, params, exec)?;
    build_extension(&images, net.nodes.len(), tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_point() {
        let e = build_extension(&[vec![0.0, 1.0]], 2, 0.0).unwrap();
        assert_eq!(e.census.counts, vec![1]);
        assert_eq!(e.complex.cells().next().unwrap().spec(), "0,1");
    }
}
