//! Small reference meshes: circles, flat tori and the tetrahedron boundary.

use std::collections::BTreeMap;

use crate::homotopy::{EdgeHomomorphism, GroupPresentation, HomotopyError, Word};
use crate::mesh::{validate_pseudomanifold, MeshError, PlMetric, Pseudomanifold, SimplicialComplex, Vertex};

/// Circle of the given perimeter as an `m`-gon, vertex `i` at arc length `i·L/m`.
pub fn circle(perimeter: f64, m: usize) -> Result<(Pseudomanifold, PlMetric), MeshError> {
    let edges: Vec<[Vertex; 2]> = (0..m).map(|i| [i, (i + 1) % m]).collect();
    let complex = SimplicialComplex::from_simplices(&edges)?;
    let metric = PlMetric::for_complex(&complex, edges.iter().map(|e| (e[0], e[1], perimeter / m as f64)))?;
    Ok((validate_pseudomanifold(complex, 1)?, metric))
}

/// Circle with `f_*` an isomorphism onto `Z = ⟨a⟩`: the closing edge `m-1 → 0` reads `a`.
pub fn circle_with_identity(
    perimeter: f64,
    m: usize,
) -> Result<(Pseudomanifold, PlMetric, EdgeHomomorphism), crate::Error> {
    let (v, g) = circle(perimeter, m)?;
    let tree: Vec<(Vertex, Vertex)> = (0..m - 1).map(|i| (i, i + 1)).collect();
    let words = BTreeMap::from([((m - 1, 0), vec![1])]);
    let phi = EdgeHomomorphism::new(GroupPresentation::free(&["a"]), v.complex(), &tree, &words)?;
    Ok((v, g, phi))
}

/// Vertex id of grid point `(i, j)` on an `mx × my` torus grid.
pub fn torus_vertex(mx: usize, i: usize, j: usize) -> Vertex {
    j * mx + i
}

fn torus_triangles(mx: usize, my: usize) -> Vec<[Vertex; 3]> {
    let mut tris = Vec::new();
    for j in 0..my {
        for i in 0..mx {
            let p00 = torus_vertex(mx, i, j);
            let p10 = torus_vertex(mx, (i + 1) % mx, j);
            let p01 = torus_vertex(mx, i, (j + 1) % my);
            let p11 = torus_vertex(mx, (i + 1) % mx, (j + 1) % my);
            tris.push([p00, p10, p11]);
            tris.push([p00, p01, p11]);
        }
    }
    tris
}

/// Flat `a × b` torus triangulated on an `mx × my` grid (both at least 3), each
/// cell cut along its `(i, j) → (i+1, j+1)` diagonal.
pub fn flat_torus(a: f64, b: f64, mx: usize, my: usize) -> Result<(Pseudomanifold, PlMetric), MeshError> {
    let complex = SimplicialComplex::from_simplices(torus_triangles(mx, my))?;
    let (hx, hy) = (a / mx as f64, b / my as f64);
    let mut lengths = Vec::new();
    for j in 0..my {
        for i in 0..mx {
            let p00 = torus_vertex(mx, i, j);
            lengths.push((p00, torus_vertex(mx, (i + 1) % mx, j), hx));
            lengths.push((p00, torus_vertex(mx, i, (j + 1) % my), hy));
            lengths.push((p00, torus_vertex(mx, (i + 1) % mx, (j + 1) % my), hx.hypot(hy)));
        }
    }
    let metric = PlMetric::for_complex(&complex, lengths)?;
    Ok((validate_pseudomanifold(complex, 2)?, metric))
}

/// Homomorphism on the `mx × my` torus grid sending the horizontal generator
/// of `π_1` to `wx` and the vertical one to `wy`. Edges crossing the seam
/// `i = mx-1 → 0` pick up `wx`, those crossing `j = my-1 → 0` pick up `wy`;
/// the result is then moved to tree gauge.
pub fn torus_homomorphism(
    complex: &SimplicialComplex,
    mx: usize,
    my: usize,
    presentation: GroupPresentation,
    wx: &Word,
    wy: &Word,
) -> Result<EdgeHomomorphism, HomotopyError> {
    let mut words = BTreeMap::new();
    for j in 0..my {
        for i in 0..mx {
            let p00 = torus_vertex(mx, i, j);
            let cx = if i == mx - 1 { wx.clone() } else { Vec::new() };
            let cy = if j == my - 1 { wy.clone() } else { Vec::new() };
            words.insert((p00, torus_vertex(mx, (i + 1) % mx, j)), cx.clone());
            words.insert((p00, torus_vertex(mx, i, (j + 1) % my)), cy.clone());
            let mut diag = cx;
            diag.extend(cy);
            words.insert((p00, torus_vertex(mx, (i + 1) % mx, (j + 1) % my)), diag);
        }
    }
    EdgeHomomorphism::from_cochain(presentation, complex, &words)
}

/// Flat torus with `f_*` the identity onto `Z² = ⟨a, b⟩`.
pub fn flat_torus_with_identity(
    a: f64,
    b: f64,
    mx: usize,
    my: usize,
) -> Result<(Pseudomanifold, PlMetric, EdgeHomomorphism), crate::Error> {
    let (v, g) = flat_torus(a, b, mx, my)?;
    let phi = torus_homomorphism(v.complex(), mx, my, GroupPresentation::free_abelian(&["a", "b"]), &vec![1], &vec![2])?;
    Ok((v, g, phi))
}

/// Boundary of a tetrahedron with all edges of length `edge`.
pub fn tetrahedron_boundary(edge: f64) -> Result<(Pseudomanifold, PlMetric), MeshError> {
    let complex = SimplicialComplex::from_simplices([[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]])?;
    let lengths: Vec<_> = complex.edges().map(|(u, v)| (u, v, edge)).collect();
    let metric = PlMetric::for_complex(&complex, lengths)?;
    Ok((validate_pseudomanifold(complex, 2)?, metric))
}
