use std::sync::Arc;

use serde::Serialize;

use crate::metric::{EpsilonNet, FiniteMetric, PairSelection};
use crate::par::Execution;
use crate::scalar::{smin, Scalar};

use super::cell::{Coord, CubeCell};
use super::retraction::{minimal_face, retract_complex, ExtensionParams};
use super::CubicalError;

/// `I_0(v)`: `x_i = min(dist(v, v_i), δ) / δ` from the distances to the net points.
pub fn coordinate_map<S: Scalar>(distances: &[S], params: &ExtensionParams<S>) -> Vec<S> {
    distances.iter().map(|d| smin(d.clone(), params.delta.clone()) / params.delta.clone()).collect()
}

/// `J = R_ε ∘ I_0`.
pub fn embed<S: Scalar>(distances: &[S], params: &ExtensionParams<S>) -> Result<Vec<S>, CubicalError> {
    retract_complex(&coordinate_map(distances, params), params.eps.clone())
}

/// Distances from every node to each net point, one row per net point.
fn net_rows<M: FiniteMetric + ?Sized>(metric: &M, net: &EpsilonNet) -> Result<Vec<Arc<[f64]>>, CubicalError> {
    if net.nodes.is_empty() {
        return Err(CubicalError::EmptyNet);
    }
    if let Some(&p) = net.nodes.iter().find(|&&p| p >= metric.len()) {
        return Err(CubicalError::UnknownNode { node: p });
    }
    Ok(net.nodes.iter().map(|&p| metric.row(p)).collect())
}

/// `J(v)` for every node of `metric`, in node order.
pub fn embed_nodes<M: FiniteMetric + ?Sized>(
    metric: &M,
    net: &EpsilonNet,
    params: &ExtensionParams<f64>,
    exec: Execution,
) -> Result<Vec<Vec<f64>>, CubicalError> {
    let rows = net_rows(metric, net)?;
    exec.map_range(metric.len(), |v| {
        let d: Vec<f64> = rows.iter().map(|r| r[v]).collect();
        embed(&d, params)
    })
    .into_iter()
    .collect()
}

fn linf(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LipschitzReport {
    pub pairs_checked: usize,
    /// Largest `|J(v) - J(v')|_inf / dist(v, v')` seen.
    pub max_ratio: f64,
    pub bound: f64,
    pub violations: usize,
    pub tolerance: f64,
}

/// Checks `|J(v) - J(v')|_inf <= dist(v, v') / (1 - 2ε) + tol` on the selected pairs.
pub fn lipschitz_report(
    images: &[Vec<f64>],
    dist: impl Fn(usize, usize) -> f64,
    eps: f64,
    selection: PairSelection,
    tol: f64,
) -> LipschitzReport {
    let bound = 1.0 / (1.0 - 2.0 * eps);
    let mut max_ratio: f64 = 0.0;
    let mut violations = 0;
    let mut checked = 0;
    for (u, v) in selection.pairs(images.len()) {
        let d = dist(u, v);
        let e = linf(&images[u], &images[v]);
        checked += 1;
        if d > 0.0 {
            max_ratio = max_ratio.max(e / d);
        }
        if e > d * bound + tol {
            violations += 1;
        }
    }
    LipschitzReport { pairs_checked: checked, max_ratio, bound, violations, tolerance: tol }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InjectivityReport {
    pub pairs_checked: usize,
    /// Pairs at distance at least `2ε`.
    pub far_pairs: usize,
    /// Smallest `|J(v) - J(v')|_inf` over far pairs.
    pub min_far_separation: Option<f64>,
    /// Far pairs mapped to the same point.
    pub far_collisions: Vec<(usize, usize)>,
    /// Pairs closer than `2ε` mapped to the same point.
    pub near_collisions: Vec<(usize, usize)>,
    /// Pairs sharing a coordinate face `{x_i = 0}` yet more than `2ε` apart.
    pub shared_face_violations: Vec<(usize, usize)>,
}

/// Scans pairs for collisions of `J`. Collisions are reported, not treated as errors.
pub fn injectivity_check(
    images: &[Vec<f64>],
    dist: impl Fn(usize, usize) -> f64,
    eps: f64,
    selection: PairSelection,
    tol: f64,
) -> InjectivityReport {
    let mut r = InjectivityReport {
        pairs_checked: 0,
        far_pairs: 0,
        min_far_separation: None,
        far_collisions: Vec::new(),
        near_collisions: Vec::new(),
        shared_face_violations: Vec::new(),
    };
    for (u, v) in selection.pairs(images.len()) {
        let d = dist(u, v);
        let e = linf(&images[u], &images[v]);
        r.pairs_checked += 1;
        let shared = images[u].iter().zip(&images[v]).any(|(a, b)| a.abs() <= tol && b.abs() <= tol);
        if shared && d > 2.0 * eps + tol {
            r.shared_face_violations.push((u, v));
        }
        if d >= 2.0 * eps {
            r.far_pairs += 1;
            r.min_far_separation = Some(r.min_far_separation.map_or(e, |m| m.min(e)));
            if e <= tol {
                r.far_collisions.push((u, v));
            }
        } else if e <= tol && d > 0.0 {
            r.near_collisions.push((u, v));
        }
    }
    r
}

/// Minimal faces `K(v)` of the images, in order; fails with `NetTooSparse` if
/// one of them avoids every coordinate face `{x_i = 0}`.
pub fn minimal_faces<S: Scalar>(images: &[Vec<S>], tol: S) -> Result<Vec<CubeCell>, CubicalError> {
    images
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let f = minimal_face(p, tol.clone());
            if f.coords().contains(&Coord::Zero) {
                Ok(f)
            } else {
                Err(CubicalError::NetTooSparse { sample: i })
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;
    use num_traits::Signed;

    fn q(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    fn circle_dist(p: Rational64, a: Rational64, b: Rational64) -> Rational64 {
        let d = (a - b).abs() % p;
        if d > p - d {
            p - d
        } else {
            d
        }
    }

    #[test]
    fn perimeter_two_images() {
        let p = q(2, 1);
        let net = [q(0, 1), q(2, 3), q(4, 3)];
        let params = ExtensionParams::with_eps(q(1, 3)).unwrap();
        let d = |v: Rational64| net.iter().map(|&w| circle_dist(p, v, w)).collect::<Vec<_>>();
        assert_eq!(coordinate_map(&d(q(1, 1)), &params), vec![q(1, 1), q(1, 3), q(1, 3)]);
        assert_eq!(embed(&d(q(0, 1)), &params).unwrap(), vec![q(0, 1), q(1, 1), q(1, 1)]);
        assert_eq!(embed(&d(q(1, 3)), &params).unwrap(), vec![q(0, 1), q(0, 1), q(1, 1)]);
        assert_eq!(embed(&d(q(1, 1)), &params).unwrap(), vec![q(1, 1), q(0, 1), q(0, 1)]);
    }

    #[test]
    fn perimeter_one_image() {
        let p = q(1, 1);
        let net = [q(1, 4), q(1, 2), q(3, 4)];
        let params = ExtensionParams::with_eps(q(1, 4)).unwrap();
        let d: Vec<_> = net.iter().map(|&w| circle_dist(p, q(1, 4), w)).collect();
        assert_eq!(embed(&d, &params).unwrap(), vec![q(0, 1), q(0, 1), q(1, 2)]);
    }

    #[test]
    fn far_points_clamp_to_ones() {
        let params = ExtensionParams::with_eps(0.25).unwrap();
        assert_eq!(coordinate_map(&[3.0, 1.0, 7.5], &params), vec![1.0; 3]);
        assert!(matches!(minimal_faces(&[vec![1.0, 1.0]], 0.0), Err(CubicalError::NetTooSparse { sample: 0 })));
    }

    #[test]
    fn single_net_point_collision() {
        // Two points within ε of the only net point, all else far away.
        let images = vec![vec![0.0], vec![0.0]];
        let r = injectivity_check(&images, |_, _| 0.1, 0.25, PairSelection::All, 1e-12);
        assert_eq!(r.near_collisions, vec![(0, 1)]);
        assert!(r.far_collisions.is_empty());
    }
}
