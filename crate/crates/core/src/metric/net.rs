use serde::{Deserialize, Serialize};

use super::space::FiniteMetric;
use super::MetricError;

/// A finite α-dense subset of the node set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpsilonNet {
    pub nodes: Vec<usize>,
    /// Achieved covering radius: every node is within this distance of the net.
    pub alpha: f64,
    /// Half the smallest distance between two net points; absent for one point.
    #[serde(default)]
    pub packing_radius: Option<f64>,
}

fn covering_radius<M: FiniteMetric + ?Sized>(metric: &M, nodes: &[usize]) -> f64 {
    let mut nearest = vec![f64::INFINITY; metric.len()];
    for &p in nodes {
        for (d, x) in nearest.iter_mut().zip(metric.row(p).iter()) {
            *d = d.min(*x);
        }
    }
    nearest.into_iter().fold(0.0, f64::max)
}

fn packing_radius<M: FiniteMetric + ?Sized>(metric: &M, nodes: &[usize]) -> Option<f64> {
    let mut best: Option<f64> = None;
    for (i, &p) in nodes.iter().enumerate() {
        let row = metric.row(p);
        for &q in &nodes[i + 1..] {
            best = Some(best.map_or(row[q], |b: f64| b.min(row[q])));
        }
    }
    best.map(|s| s / 2.0)
}

/// Greedy farthest-point net from node 0 until every node is within `alpha`.
///
/// Ties go to the lowest node index.
pub fn alpha_dense_net<M: FiniteMetric + ?Sized>(metric: &M, alpha: f64) -> Result<EpsilonNet, MetricError> {
    if !(alpha > 0.0) {
        return Err(MetricError::InvalidParameter { name: "alpha", value: alpha });
    }
    if metric.is_empty() {
        return Err(MetricError::EmptySet);
    }
    let mut nodes = vec![0];
    let mut nearest: Vec<f64> = metric.row(0).to_vec();
    loop {
        let (far, &gap) = nearest
            .iter()
            .enumerate()
            .fold((0, &f64::NEG_INFINITY), |best, cur| if *cur.1 > *best.1 { cur } else { best });
        if gap <= alpha {
            let packing_radius = packing_radius(metric, &nodes);
            return Ok(EpsilonNet { nodes, alpha: gap, packing_radius });
        }
        if !gap.is_finite() {
            return Err(MetricError::DisconnectedPair { u: 0, v: far });
        }
        nodes.push(far);
        for (d, x) in nearest.iter_mut().zip(metric.row(far).iter()) {
            *d = d.min(*x);
        }
    }
}

/// Checks a user-supplied net against `alpha` (closed tubes).
pub fn certify_net<M: FiniteMetric + ?Sized>(
    metric: &M,
    nodes: &[usize],
    alpha: f64,
) -> Result<(EpsilonNet, bool), MetricError> {
    if nodes.is_empty() {
        return Err(MetricError::EmptySet);
    }
    if let Some(&bad) = nodes.iter().find(|&&p| p >= metric.len()) {
        return Err(MetricError::UnknownNode { node: bad });
    }
    let achieved = covering_radius(metric, nodes);
    let net = EpsilonNet { nodes: nodes.to_vec(), alpha: achieved, packing_radius: packing_radius(metric, nodes) };
    Ok((net, achieved <= alpha))
}
