use serde::Serialize;

use crate::chains::{boundary, chain_volume, filling_lp, ChainError, CubicalChain, FillingResult};
use crate::cubical::CubeComplex;
use crate::metric::BallGrowthProfile;

use super::growth::growth_lower_bound;
use super::RegularityError;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BallCheck {
    pub center: usize,
    pub radius: f64,
    pub volume: f64,
    pub error_bound: f64,
    /// `A_n R^n`
    pub bound: f64,
    /// `volume + error_bound >= bound`: not refuted at this subdivision.
    pub pass: bool,
    /// `volume - error_bound >= bound`
    pub certified: bool,
    /// `A_n (R - a)^n` and its verdict, when a shift `a` is given and `R >= a`.
    pub shifted: Option<(f64, bool)>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegularityReport {
    pub a_n: f64,
    pub n: usize,
    pub eps: f64,
    pub systole: f64,
    pub shift: Option<f64>,
    pub checks: Vec<BallCheck>,
    /// Conjunction of the per-ball verdicts.
    pub regular: bool,
    pub certified: bool,
    pub shifted_regular: Option<bool>,
    pub profiles: Vec<BallGrowthProfile>,
}

/// For every profile and every sampled `R ∈ [ε, sys/2]`, checks
/// `vol(B(R)) >= A_n R^n`, and `vol(B(R)) >= A_n (R - a)^n` when `shift = Some(a)`.
///
/// A ball passes when its volume estimate plus its error bound reaches the
/// bound, and is certified when the estimate minus the error bound does.
pub fn epsilon_regular_verdict(
    profiles: &[BallGrowthProfile],
    sys: f64,
    eps: f64,
    a_n: f64,
    n: usize,
    shift: Option<f64>,
) -> Result<RegularityReport, RegularityError> {
    if !sys.is_finite() || !(eps >= 0.0) || eps >= sys / 2.0 {
        return Err(RegularityError::BadRange { eps, half_systole: sys / 2.0 });
    }
    if !(a_n >= 0.0) {
        return Err(RegularityError::NonpositiveInput { name: "A_n", value: a_n });
    }
    let slack = 1e-12 * sys;
    let e = n as i32;
    let mut checks = Vec::new();
    for p in profiles {
        for (i, &r) in p.radii.iter().enumerate() {
            if r < eps - slack || r > sys / 2.0 + slack {
                continue;
            }
            let (volume, error_bound) = (p.volumes[i], p.error_bounds[i]);
            let bound = a_n * r.powi(e);
            let shifted = shift.filter(|&a| r >= a).map(|a| {
                let b = a_n * (r - a).powi(e);
                (b, volume + error_bound >= b)
            });
            checks.push(BallCheck {
                center: p.center,
                radius: r,
                volume,
                error_bound,
                bound,
                pass: volume + error_bound >= bound,
                certified: volume - error_bound >= bound,
                shifted,
            });
        }
    }
    Ok(RegularityReport {
        a_n,
        n,
        eps,
        systole: sys,
        shift,
        regular: checks.iter().all(|c| c.pass),
        certified: checks.iter().all(|c| c.certified),
        shifted_regular: shift.map(|_| checks.iter().all(|c| c.shifted.is_none_or(|s| s.1))),
        checks,
        profiles: profiles.to_vec(),
    })
}

/// A ball chain `B_V(R)` inside a cube complex with the LP filling of its boundary.
#[derive(Debug, Clone, PartialEq)]
pub struct FillingRegularEntry {
    pub radius: f64,
    pub ball: CubicalChain,
    /// `None` when no filling was supplied; `Err(Infeasible)` reads as `Vol Remp = ∞`.
    pub filling: Option<Result<FillingResult, ChainError>>,
}

impl FillingRegularEntry {
    /// Fills `∂ball` in `complex` with the LP.
    pub fn compute(radius: f64, ball: CubicalChain, complex: &CubeComplex, lp_tol: f64) -> Self {
        let filling = Some(filling_lp(&boundary(&ball), complex, lp_tol));
        FillingRegularEntry { radius, ball, filling }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FillingCheck {
    pub radius: f64,
    pub ball_volume: f64,
    /// `None` for `+∞`.
    pub filling_volume: Option<f64>,
    pub pass: bool,
    /// `(R-ε)^n / (((1+ε) c_n)^{n-1} n^n)` when an ambient constant is given.
    pub derived_bound: Option<f64>,
    pub derived_pass: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FillingRegularReport {
    pub eps: f64,
    pub ambient_constant: Option<f64>,
    pub checks: Vec<FillingCheck>,
    pub pass: bool,
}

/// Checks `vol(B_V(R)) <= (1+ε) Vol Remp(∂B_V(R))` for each entry. With an
/// ambient isoperimetric constant `c_n`, also compares the ball volume with the
/// growth bound that the inequality implies.
pub fn filling_regular_check(
    entries: &[FillingRegularEntry],
    eps: f64,
    ambient: Option<(f64, usize)>,
) -> Result<FillingRegularReport, RegularityError> {
    if !(eps >= 0.0) {
        return Err(RegularityError::NonpositiveInput { name: "eps", value: eps });
    }
    let mut checks = Vec::with_capacity(entries.len());
    for e in entries {
        let filling_volume = match &e.filling {
            None => return Err(RegularityError::MissingFilling { radius: e.radius }),
            Some(Ok(f)) => Some(f.volume),
            Some(Err(ChainError::Infeasible { .. })) => None,
            Some(Err(other)) => return Err(other.clone().into()),
        };
        let ball_volume = chain_volume(&e.ball);
        let pass = filling_volume.is_none_or(|f| ball_volume <= (1.0 + eps) * f * (1.0 + 1e-12));
        let derived_bound = match ambient {
            Some((c, n)) if e.radius >= eps => Some(growth_lower_bound(eps, (1.0 + eps) * c, n, e.radius)?),
            _ => None,
        };
        checks.push(FillingCheck {
            radius: e.radius,
            ball_volume,
            filling_volume,
            pass,
            derived_pass: derived_bound.map(|b| ball_volume >= b),
            derived_bound,
        });
    }
    Ok(FillingRegularReport { eps, ambient_constant: ambient.map(|a| a.0), pass: checks.iter().all(|c| c.pass), checks })
}

/// `C_n = A_n / 2^n`.
pub fn gromov_constant(a_n: f64, n: usize) -> Result<f64, RegularityError> {
    if !(a_n > 0.0) || !a_n.is_finite() {
        return Err(RegularityError::NonpositiveInput { name: "A_n", value: a_n });
    }
    Ok(a_n / 2f64.powi(n as i32))
}
