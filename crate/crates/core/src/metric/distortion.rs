use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::net::EpsilonNet;
use super::space::FiniteMetric;
use super::MetricError;

/// Which node pairs a scan visits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PairSelection {
    All,
    /// Uniform pairs drawn with a fixed seed.
    Sample { count: usize, seed: u64 },
}

impl PairSelection {
    pub fn pairs(self, n: usize) -> Vec<(usize, usize)> {
        match self {
            PairSelection::All => (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect(),
            PairSelection::Sample { count, seed } => {
                if n < 2 {
                    return Vec::new();
                }
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                (0..count)
                    .map(|_| {
                        let s = sample(&mut rng, n, 2);
                        (s.index(0).min(s.index(1)), s.index(0).max(s.index(1)))
                    })
                    .collect()
            }
        }
    }
}

/// `I_0(v)`: clamped distances from `v` to the net points.
pub fn net_coordinates<M: FiniteMetric + ?Sized>(metric: &M, net: &EpsilonNet, clamp: f64) -> Vec<Vec<f64>> {
    let rows: Vec<_> = net.nodes.iter().map(|&p| metric.row(p)).collect();
    (0..metric.len()).map(|v| rows.iter().map(|r| r[v].min(clamp)).collect()).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistortionReport {
    pub pairs_checked: usize,
    pub max_pair_distance: f64,
    /// Largest `dist(v, v') - |I_0(v) - I_0(v')|_inf` seen.
    pub eta: f64,
    pub worst_pair: Option<(usize, usize)>,
}

/// Measures how far `I_0` falls short of an isometry on pairs closer than
/// `max_pair_distance`. The upper bound `|I_0(v) - I_0(v')| <= dist(v, v')`
/// must hold on every pair; a violation beyond `tol` is an error.
pub fn net_distortion_report<M: FiniteMetric + ?Sized>(
    metric: &M,
    net: &EpsilonNet,
    max_pair_distance: f64,
    selection: PairSelection,
    tol: f64,
) -> Result<DistortionReport, MetricError> {
    let coords = net_coordinates(metric, net, 1.0);
    let mut eta: f64 = 0.0;
    let mut worst_pair = None;
    let mut checked = 0;
    for (u, v) in selection.pairs(metric.len()) {
        let d = metric.distance(u, v);
        if !(d < max_pair_distance) {
            continue;
        }
        checked += 1;
        let embedded = coords[u].iter().zip(&coords[v]).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        if embedded > d + tol {
            return Err(MetricError::DistortionUpperBound { u, v, embedded, distance: d });
        }
        if d - embedded > eta {
            eta = d - embedded;
            worst_pair = Some((u, v));
        }
    }
    Ok(DistortionReport { pairs_checked: checked, max_pair_distance, eta, worst_pair })
}
