use serde::Serialize;

use super::RegularityError;

/// `(R - α)^n / (c^{n-1} n^n)`.
pub fn growth_lower_bound(alpha: f64, c: f64, n: usize, r: f64) -> Result<f64, RegularityError> {
    if n == 0 || !(c > 0.0) || !(alpha >= 0.0) || !(r >= alpha) || !r.is_finite() {
        return Err(RegularityError::DomainError {
            reason: format!("need 0 <= alpha <= R, c > 0, n >= 1 (alpha={alpha}, R={r}, c={c}, n={n})"),
        });
    }
    let nf = n as f64;
    Ok((r - alpha).powi(n as i32) / (c.powi(n as i32 - 1) * nf.powi(n as i32)))
}

/// `v <= c a^{n/(n-1)}`; for `n = 1` the exponent is infinite and the right
/// side is read as the limit `0`, `c` or `∞` for `a < 1`, `a = 1`, `a > 1`.
pub fn h2_holds(a: f64, v: f64, c: f64, n: usize) -> bool {
    if n == 1 {
        return if a > 1.0 {
            true
        } else if a == 1.0 {
            v <= c
        } else {
            v <= 0.0
        };
    }
    let nf = n as f64;
    v <= c * a.max(0.0).powf(nf / (nf - 1.0))
}

/// Cumulative trapezoid integrals on `grid` and a Richardson error estimate per
/// point, from comparison with the rule on every other interval.
pub(crate) fn trapezoid_with_error(grid: &[f64], f: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let m = grid.len();
    let mut fine = vec![0.0; m];
    for i in 1..m {
        fine[i] = fine[i - 1] + 0.5 * (grid[i] - grid[i - 1]) * (f[i] + f[i - 1]);
    }
    let mut coarse = vec![0.0; m];
    for i in 1..m {
        coarse[i] = if i % 2 == 0 {
            coarse[i - 2] + 0.5 * (grid[i] - grid[i - 2]) * (f[i] + f[i - 2])
        } else {
            coarse[i - 1] + 0.5 * (grid[i] - grid[i - 1]) * (f[i] + f[i - 1])
        };
    }
    let err = fine.iter().zip(&coarse).map(|(a, b)| (a - b).abs() / 3.0).collect();
    (fine, err)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthPoint {
    pub radius: f64,
    pub a: f64,
    pub v: f64,
    pub integral: f64,
    pub tolerance: f64,
    pub h1: bool,
    pub h2: bool,
    /// The hypotheses hold at every grid point up to this radius.
    pub hypotheses_so_far: bool,
    pub bound: f64,
    pub conclusion: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Violation {
    H1,
    H2,
    Conclusion,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthLemmaReport {
    pub alpha: f64,
    pub c: f64,
    pub n: usize,
    pub points: Vec<GrowthPoint>,
    pub h1: bool,
    pub h2: bool,
    pub conclusion: bool,
    /// `(radius, violated item)` in grid order.
    pub counterexamples: Vec<(f64, Violation)>,
    /// False when the conclusion fails at a radius where both hypotheses held
    /// on the whole prefix of the grid; the lemma rules that out.
    pub consistent: bool,
}

/// Checks the hypotheses `v(R) >= ∫_α^R a` and `v(R) <= c a(R)^{n/(n-1)}` and
/// the conclusion `v(R) >= (R-α)^n/(c^{n-1} n^n)` on a sample grid starting at `α`.
///
/// H1 and the conclusion are tested up to the Richardson estimate of the
/// trapezoid error.
pub fn growth_lemma_check(
    grid: &[f64],
    a: &[f64],
    v: &[f64],
    alpha: f64,
    c: f64,
    n: usize,
) -> Result<GrowthLemmaReport, RegularityError> {
    if grid.len() < 3 {
        return Err(RegularityError::GridTooCoarse { points: grid.len(), required: 3 });
    }
    if a.len() != grid.len() || v.len() != grid.len() {
        return Err(RegularityError::DomainError { reason: "sample lengths differ from the grid".into() });
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) || (grid[0] - alpha).abs() > 1e-12 * alpha.abs().max(1.0) {
        return Err(RegularityError::DomainError { reason: "grid must increase from alpha".into() });
    }
    growth_lower_bound(alpha, c, n, alpha)?;
    let (integral, err) = trapezoid_with_error(grid, a);
    let mut points = Vec::with_capacity(grid.len());
    let mut counterexamples = Vec::new();
    let mut so_far = true;
    let mut consistent = true;
    for i in 0..grid.len() {
        let r = grid[i].max(alpha);
        let tol = err[i] + 1e-12 * integral[i].abs().max(1.0);
        let h1 = v[i] >= integral[i] - tol;
        let h2 = h2_holds(a[i], v[i], c, n);
        so_far &= h1 && h2;
        let bound = growth_lower_bound(alpha, c, n, r)?;
        let conclusion = v[i] >= bound - tol;
        if !h1 {
            counterexamples.push((grid[i], Violation::H1));
        }
        if !h2 {
            counterexamples.push((grid[i], Violation::H2));
        }
        if !conclusion {
            counterexamples.push((grid[i], Violation::Conclusion));
            if so_far {
                consistent = false;
            }
        }
        points.push(GrowthPoint {
            radius: grid[i],
            a: a[i],
            v: v[i],
            integral: integral[i],
            tolerance: tol,
            h1,
            h2,
            hypotheses_so_far: so_far,
            bound,
            conclusion,
        });
    }
    Ok(GrowthLemmaReport {
        alpha,
        c,
        n,
        h1: points.iter().all(|p| p.h1),
        h2: points.iter().all(|p| p.h2),
        conclusion: points.iter().all(|p| p.conclusion),
        points,
        counterexamples,
        consistent,
    })
}
