use std::collections::BTreeSet;

use serde::Serialize;

use crate::metric::{BallGrowthProfile, FiniteMetric, MetricError};

use super::RegularityError;

/// Slack in the closed-ball tests `d <= 2 R_0` and `d >= 2 R_0`.
const TOL: f64 = 1e-9;

/// Nerve of the doubled balls `2B_i = B(p_i, 2R_0)`, tested on the sample nodes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NerveComplex {
    pub centers: Vec<usize>,
    pub radius: f64,
    /// Simplices as sorted lists of indices into `centers`, grouped by dimension.
    pub simplices: Vec<Vec<Vec<usize>>>,
    /// `N_k`, one entry per dimension up to the cap.
    pub counts: Vec<usize>,
    pub dim_cap: usize,
    /// Some common intersection involves more than `dim_cap + 1` balls.
    pub truncated: bool,
}

fn combinations(items: &[usize], k: usize, out: &mut BTreeSet<Vec<usize>>) {
    fn go(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut BTreeSet<Vec<usize>>) {
        if cur.len() == k {
            out.insert(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            go(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    go(items, k, 0, &mut Vec::new(), out);
}

/// All sets of at most `dim_cap + 1` centers whose doubled balls share a sample node.
pub fn nerve_of_cover<M: FiniteMetric + ?Sized>(
    metric: &M,
    centers: &[usize],
    r0: f64,
    dim_cap: usize,
) -> Result<NerveComplex, RegularityError> {
    if !(r0 > 0.0) {
        return Err(RegularityError::NonpositiveInput { name: "R_0", value: r0 });
    }
    if let Some(&c) = centers.iter().find(|&&c| c >= metric.len()) {
        return Err(MetricError::UnknownNode { node: c }.into());
    }
    let rows: Vec<_> = centers.iter().map(|&c| metric.row(c)).collect();
    let mut by_dim: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); dim_cap + 1];
    let mut truncated = false;
    for x in 0..metric.len() {
        let cover: Vec<usize> = (0..centers.len()).filter(|&i| rows[i][x] <= 2.0 * r0 + TOL).collect();
        truncated |= cover.len() > dim_cap + 1;
        for (k, set) in by_dim.iter_mut().enumerate() {
            if cover.len() > k {
                combinations(&cover, k + 1, set);
            }
        }
    }
    let simplices: Vec<Vec<Vec<usize>>> = by_dim.into_iter().map(|s| s.into_iter().collect()).collect();
    let counts = simplices.iter().map(Vec::len).collect();
    Ok(NerveComplex { centers: centers.to_vec(), radius: r0, simplices, counts, dim_cap, truncated })
}

/// Greedy maximal set of nodes pairwise at least `2 R_0` apart, in index order.
pub fn maximal_packing<M: FiniteMetric + ?Sized>(metric: &M, r0: f64) -> Result<Vec<usize>, RegularityError> {
    if !(r0 > 0.0) {
        return Err(RegularityError::NonpositiveInput { name: "R_0", value: r0 });
    }
    let mut centers: Vec<usize> = Vec::new();
    let mut rows = Vec::new();
    for x in 0..metric.len() {
        if rows.iter().all(|row: &std::sync::Arc<[f64]>| row[x] >= 2.0 * r0 - TOL) {
            centers.push(x);
            rows.push(metric.row(x));
        }
    }
    Ok(centers)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NerveBoundReport {
    pub n0: usize,
    pub total_volume: f64,
    pub a_n: f64,
    pub radius: f64,
    /// `vol / (A_n R_0^n)`
    pub count_bound: f64,
    pub count_pass: bool,
    pub ball_volume_sum: f64,
    /// `vol >= Σ vol(B_i)`, up to the summed profile error bounds.
    pub sum_pass: bool,
    /// `Σ vol(B_i) >= N_0 A_n R_0^n`
    pub lower_pass: bool,
    pub pass: bool,
}

/// Checks `vol(V) >= Σ vol(B_i) >= N_0 A_n R_0^n` and `N_0 <= vol/(A_n R_0^n)`,
/// reading `vol(B_i)` from `profiles` at radius `R_0`.
pub fn nerve_count_bound_check(
    nerve: &NerveComplex,
    total_volume: f64,
    a_n: f64,
    n: usize,
    profiles: &[BallGrowthProfile],
) -> Result<NerveBoundReport, RegularityError> {
    let r0 = nerve.radius;
    let n0 = nerve.counts.first().copied().unwrap_or(0);
    let unit = a_n * r0.powi(n as i32);
    let count_bound = if unit > 0.0 { total_volume / unit } else { f64::INFINITY };
    let (mut sum, mut err) = (0.0, 0.0);
    for &c in &nerve.centers {
        let p = profiles
            .iter()
            .find(|p| p.center == c)
            .ok_or(RegularityError::DomainError { reason: format!("no profile for center {c}") })?;
        let i = p
            .radii
            .iter()
            .position(|&r| (r - r0).abs() <= 1e-12 * r0.max(1.0))
            .ok_or(RegularityError::DomainError { reason: format!("profile of {c} lacks radius {r0}") })?;
        sum += p.volumes[i];
        err += p.error_bounds[i];
    }
    let count_pass = n0 == 0 || (n0 as f64) <= count_bound * (1.0 + 1e-12);
    let sum_pass = sum <= total_volume + err + 1e-12 * total_volume.max(1.0);
    let lower_pass = sum >= n0 as f64 * unit * (1.0 - 1e-12);
    Ok(NerveBoundReport {
        n0,
        total_volume,
        a_n,
        radius: r0,
        count_bound,
        count_pass,
        ball_volume_sum: sum,
        sum_pass,
        lower_pass,
        pass: count_pass && sum_pass && lower_pass,
    })
}
