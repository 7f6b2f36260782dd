use serde::Serialize;

use super::chain::{chain_volume, CubicalChain};
use super::filling::FillingResult;
use super::ChainError;

/// Bisection stops once the bracket is narrower than this fraction of its upper end.
pub const BISECTION_TOLERANCE: f64 = 1e-12;

/// Relative step above `A` at which infeasibility is certified.
pub const PROBE_FACTOR: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IsoperimetricConstants {
    pub n: usize,
    pub c_n: f64,
    pub alpha_n: f64,
    pub beta_n: f64,
}

fn positive(name: &'static str, value: f64) -> Result<f64, ChainError> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(ChainError::NonpositiveInput { name, value })
    }
}

/// `α_n = 1/(4^n (n+1)^n C_n^n)` and `β_n = C_n (2^{n+1} + (n+1)(1 + 2^n))`.
pub fn isoperimetric_constants(n: usize, c_n: f64) -> Result<IsoperimetricConstants, ChainError> {
    if n == 0 {
        return Err(ChainError::NonpositiveInput { name: "n", value: 0.0 });
    }
    positive("C_n", c_n)?;
    let nf = n as f64;
    let e = n as i32;
    let alpha_n = 1.0 / (4f64.powi(e) * (nf + 1.0).powi(e) * c_n.powi(e));
    let beta_n = c_n * (2f64.powi(e + 1) + (nf + 1.0) * (1.0 + 2f64.powi(e)));
    Ok(IsoperimetricConstants { n, c_n, alpha_n, beta_n })
}

/// `rhs - lhs` for each constraint on `A`; all must be nonnegative, and
/// `strict` positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConstraintSlacks {
    /// `α_{n-1} - A n`
    pub a1: f64,
    /// `α_n - A - β_{n-1} (A n)^{n/(n-1)}`
    pub a2: f64,
    /// `α_n / 2 - A`
    pub a3: f64,
    /// `1/(β_{n-1}^{n-1} n^n) - A`
    pub strict: f64,
}

impl ConstraintSlacks {
    pub fn feasible(&self) -> bool {
        self.a1 >= 0.0 && self.a2 >= 0.0 && self.a3 >= 0.0 && self.strict > 0.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegularityConstant {
    pub n: usize,
    pub lower: IsoperimetricConstants,
    pub upper: IsoperimetricConstants,
    pub a: f64,
    pub slacks: ConstraintSlacks,
    /// `A + probe` violates at least one constraint; `probe = PROBE_FACTOR · A`.
    pub probe: f64,
    pub probe_slacks: ConstraintSlacks,
}

pub fn constraint_slacks(a: f64, lower: &IsoperimetricConstants, upper: &IsoperimetricConstants) -> ConstraintSlacks {
    let n = upper.n as f64;
    ConstraintSlacks {
        a1: lower.alpha_n - a * n,
        a2: upper.alpha_n - a - lower.beta_n * (a * n).powf(n / (n - 1.0)),
        a3: upper.alpha_n / 2.0 - a,
        strict: 1.0 / (lower.beta_n.powi(upper.n as i32 - 1) * n.powi(upper.n as i32)) - a,
    }
}

/// Largest `A` satisfying the three constraints and lying strictly below
/// `1/(β_{n-1}^{n-1} n^n)`, by bisection. Every left-hand side is increasing
/// in `A`, so the feasible set is an interval starting at 0.
pub fn regularity_constant_a(n: usize, c_prev: f64, c_n: f64) -> Result<RegularityConstant, ChainError> {
    if n < 2 {
        return Err(ChainError::NonpositiveInput { name: "n - 1", value: n as f64 - 1.0 });
    }
    let lower = isoperimetric_constants(n - 1, c_prev)?;
    let upper = isoperimetric_constants(n, c_n)?;
    let feasible = |a: f64| constraint_slacks(a, &lower, &upper).feasible();
    let s0 = constraint_slacks(0.0, &lower, &upper);
    let mut hi = (s0.a1 / n as f64).min(s0.a3).min(s0.strict);
    if !(hi > 0.0) {
        return Err(ChainError::NoFeasibleA);
    }
    let a = if feasible(hi) {
        hi
    } else {
        let mut lo = 0.0;
        while hi - lo > BISECTION_TOLERANCE * hi {
            let mid = 0.5 * (lo + hi);
            if feasible(mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    };
    if !(a > 0.0) || !feasible(a) {
        return Err(ChainError::NoFeasibleA);
    }
    let probe = PROBE_FACTOR * a;
    Ok(RegularityConstant {
        n,
        lower,
        upper,
        a,
        slacks: constraint_slacks(a, &lower, &upper),
        probe,
        probe_slacks: constraint_slacks(a + probe, &lower, &upper),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IsoVerdict {
    Pass,
    Fail,
    HypothesisNotMet,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IsoperimetricReport {
    pub verdict: IsoVerdict,
    pub cycle_volume: f64,
    pub filling_volume: f64,
    pub tube_radius: f64,
    pub alpha_n: f64,
    /// `β_n vol(z)^{(n+1)/n}`
    pub volume_bound: f64,
    /// `β_n vol(z)^{1/n}`
    pub tube_bound: f64,
    pub volume_ok: bool,
    pub tube_ok: bool,
    pub constants: IsoperimetricConstants,
}

/// Checks `vol(c) ≤ β_n vol(z)^{(n+1)/n}` and that `c` lies in the tube of
/// radius `β_n vol(z)^{1/n}` around `z`, where `n = deg z`. When
/// `vol(z) > α_n` the theorem says nothing and the verdict reflects that.
pub fn isoperimetric_check(z: &CubicalChain, result: &FillingResult, consts: &IsoperimetricConstants) -> IsoperimetricReport {
    let v = chain_volume(z);
    let n = consts.n as f64;
    let volume_bound = consts.beta_n * v.powf((n + 1.0) / n);
    let tube_bound = consts.beta_n * v.powf(1.0 / n);
    let volume_ok = result.volume <= volume_bound;
    let tube_ok = result.tube_radius <= tube_bound;
    let verdict = if z.degree() != consts.n || v > consts.alpha_n {
        IsoVerdict::HypothesisNotMet
    } else if volume_ok && tube_ok {
        IsoVerdict::Pass
    } else {
        IsoVerdict::Fail
    };
    IsoperimetricReport {
        verdict,
        cycle_volume: v,
        filling_volume: result.volume,
        tube_radius: result.tube_radius,
        alpha_n: consts.alpha_n,
        volume_bound,
        tube_bound,
        volume_ok,
        tube_ok,
        constants: *consts,
    }
}
