use std::collections::BTreeMap;

use crate::homotopy::{EdgeHomomorphism, GroupPresentation, HomotopyError};
use crate::mesh::{validate_pseudomanifold, PlMetric, Pseudomanifold, SimplicialComplex};

use super::cell::{CubeCell, CubeComplex};
use super::CubicalError;

/// A 1-dimensional cube complex read as a graph whose edges have ℓ∞ length 1.
#[derive(Debug, Clone)]
pub struct CubeCycle {
    pub pseudomanifold: Pseudomanifold,
    pub metric: PlMetric,
    /// Vertex `i` is the 0-cell `vertices[i]`.
    pub vertices: Vec<CubeCell>,
}

/// Turns a 1-dimensional cube complex into a 1-dimensional pseudomanifold with
/// unit edge lengths. Higher-dimensional complexes are not supported.
pub fn cycle_from_cube_complex(complex: &CubeComplex) -> Result<CubeCycle, CubicalError> {
    if complex.dim() != Some(1) {
        return Err(CubicalError::UnsupportedDimension { dim: complex.dim().unwrap_or(0) });
    }
    let vertices: Vec<CubeCell> = complex.cells_of_dim(0).cloned().collect();
    let id: BTreeMap<&CubeCell, usize> = vertices.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let edges: Vec<[usize; 2]> = complex
        .cells_of_dim(1)
        .map(|e| {
            let f = e.facets();
            [id[&f[0]], id[&f[1]]]
        })
        .collect();
    let sc = SimplicialComplex::from_simplices(&edges)?;
    let metric = PlMetric::for_complex(&sc, edges.iter().map(|e| (e[0], e[1], 1.0)))?;
    let pseudomanifold = validate_pseudomanifold(sc, 1)?;
    Ok(CubeCycle { pseudomanifold, metric, vertices })
}

/// On a 1-dimensional pseudomanifold (a circle), the homomorphism onto `Z = ⟨a⟩`
/// sending the loop to `a`: every edge but the last one is in the tree.
pub fn loop_homomorphism(v: &Pseudomanifold) -> Result<EdgeHomomorphism, HomotopyError> {
    let edges: Vec<(usize, usize)> = v.complex().edges().collect();
    let Some((&closing, tree)) = edges.split_last() else {
        return Err(HomotopyError::NotSpanningTree { reason: "no edges".into() });
    };
    let words = BTreeMap::from([(closing, vec![1])]);
    EdgeHomomorphism::new(GroupPresentation::free(&["a"]), v.complex(), tree, &words)
}
