use nalgebra::DMatrix;

use super::complex::{SimplicialComplex, Vertex};
use super::plmetric::PlMetric;
use super::pseudomanifold::Pseudomanifold;
use super::MeshError;

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// Squared k-volume of a flat simplex from its edge lengths.
///
/// May be slightly negative from rounding or strongly negative when the
/// lengths violate the simplex inequalities.
pub fn cayley_menger_squared_volume(simplex: &[Vertex], metric: &PlMetric) -> Result<f64, MeshError> {
    let m = simplex.len();
    if m <= 1 {
        return Ok(1.0);
    }
    let k = m - 1;
    let mut cm = DMatrix::<f64>::zeros(m + 1, m + 1);
    for i in 1..=m {
        cm[(0, i)] = 1.0;
        cm[(i, 0)] = 1.0;
    }
    for i in 0..m {
        for j in (i + 1)..m {
            let l = metric.length(simplex[i], simplex[j])?;
            cm[(i + 1, j + 1)] = l * l;
            cm[(j + 1, i + 1)] = l * l;
        }
    }
    let sign = if (k + 1) % 2 == 0 { 1.0 } else { -1.0 };
    let scale = 2f64.powi(k as i32) * factorial(k).powi(2);
    Ok(sign * cm.determinant() / scale)
}

/// Flat volume of a simplex. A single vertex has volume 1 (counting measure).
pub fn simplex_volume(simplex: &[Vertex], metric: &PlMetric) -> Result<f64, MeshError> {
    if simplex.len() <= 1 {
        return Ok(1.0);
    }
    let k = simplex.len() - 1;
    let v2 = cayley_menger_squared_volume(simplex, metric)?;
    let mut max_edge: f64 = 0.0;
    for i in 0..simplex.len() {
        for j in (i + 1)..simplex.len() {
            max_edge = max_edge.max(metric.length(simplex[i], simplex[j])?);
        }
    }
    let tol = 1e-12 * max_edge.powi(2 * k as i32);
    if v2 > tol {
        Ok(v2.sqrt())
    } else if v2 >= -tol {
        if metric.allows_degenerate() {
            Ok(0.0)
        } else {
            Err(MeshError::DegenerateSimplex { simplex: simplex.to_vec() })
        }
    } else {
        Err(MeshError::MetricInfeasible { simplex: simplex.to_vec(), squared_volume: v2 })
    }
}

/// Sum of the volumes of the top simplices of `complex`.
pub fn complex_volume(complex: &SimplicialComplex, metric: &PlMetric) -> Result<f64, MeshError> {
    let Some(n) = complex.dim() else { return Ok(0.0) };
    complex.simplices(n).map(|s| simplex_volume(s, metric)).sum()
}

/// `vol(V, g)`.
pub fn total_volume(v: &Pseudomanifold, metric: &PlMetric) -> Result<f64, MeshError> {
    complex_volume(v.complex(), metric)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn metric(edges: &[(usize, usize, f64)]) -> PlMetric {
        PlMetric::new(edges.iter().copied()).unwrap()
    }

    fn heron(a: f64, b: f64, c: f64) -> f64 {
        let s = (a + b + c) / 2.0;
        (s * (s - a) * (s - b) * (s - c)).max(0.0).sqrt()
    }

    #[test]
    fn right_triangle_matches_heron() {
        let g = metric(&[(0, 1, 3.0), (1, 2, 4.0), (0, 2, 5.0)]);
        let v = simplex_volume(&[0, 1, 2], &g).unwrap();
        assert_relative_eq!(v, 6.0, epsilon = 1e-12);
        assert_relative_eq!(v, heron(3.0, 4.0, 5.0), epsilon = 1e-12);
    }

    #[test]
    fn collinear_triangle_is_degenerate() {
        let g = metric(&[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 2.0)]);
        assert!(matches!(simplex_volume(&[0, 1, 2], &g), Err(MeshError::DegenerateSimplex { .. })));
        let g = g.with_degenerate(true);
        assert_eq!(simplex_volume(&[0, 1, 2], &g).unwrap(), 0.0);
    }

    #[test]
    fn triangle_inequality_violation_is_infeasible() {
        let g = metric(&[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 3.0)]).with_degenerate(true);
        assert!(matches!(simplex_volume(&[0, 1, 2], &g), Err(MeshError::MetricInfeasible { .. })));
    }

    #[test]
    fn regular_tetrahedron() {
        let edges: Vec<_> = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)].iter().map(|&(a, b)| (a, b, 1.0)).collect();
        let g = metric(&edges);
        assert_relative_eq!(simplex_volume(&[0, 1, 2, 3], &g).unwrap(), 2f64.sqrt() / 12.0, epsilon = 1e-12);
    }

    #[test]
    fn edge_volume_is_length() {
        let g = metric(&[(0, 1, 2.5)]);
        assert_relative_eq!(simplex_volume(&[0, 1], &g).unwrap(), 2.5, epsilon = 1e-12);
    }
}
