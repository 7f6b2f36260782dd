use crate::scalar::{smax, smin, Scalar};

use super::cell::{Coord, CubeCell};
use super::CubicalError;

/// `ε` of the retraction and the clamp `δ` of the distance coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtensionParams<S> {
    pub eps: S,
    pub delta: S,
}

impl<S: Scalar> ExtensionParams<S> {
    pub fn new(eps: S, delta: S) -> Result<Self, CubicalError> {
        if !(eps > S::zero() && eps < S::ratio(1, 2)) {
            return Err(CubicalError::InvalidParameter { name: "eps", value: eps.to_f64_lossy() });
        }
        if !(delta > S::zero()) {
            return Err(CubicalError::InvalidParameter { name: "delta", value: delta.to_f64_lossy() });
        }
        Ok(ExtensionParams { eps, delta })
    }

    pub fn with_eps(eps: S) -> Result<Self, CubicalError> {
        Self::new(eps, S::one())
    }

    /// `1 / (1 - 2ε)`.
    pub fn lipschitz_constant(&self) -> S {
        S::one() / (S::one() - self.eps.clone() - self.eps.clone())
    }
}

/// `r_ε`: 0 on `[0, ε]`, 1 on `[1-ε, 1]`, affine in between.
pub fn retract_scalar<S: Scalar>(t: S, eps: S) -> Result<S, CubicalError> {
    if !(t >= S::zero() && t <= S::one()) {
        return Err(CubicalError::OutOfRange { value: t.to_f64_lossy() });
    }
    if !(eps > S::zero() && eps < S::ratio(1, 2)) {
        return Err(CubicalError::InvalidParameter { name: "eps", value: eps.to_f64_lossy() });
    }
    let one = S::one();
    let width = one.clone() - eps.clone() - eps.clone();
    let y = (t - eps) / width;
    Ok(smin(smax(y, S::zero()), one))
}

/// `R_ε`, coordinatewise `r_ε`.
pub fn retract_complex<S: Scalar>(p: &[S], eps: S) -> Result<Vec<S>, CubicalError> {
    p.iter().map(|t| retract_scalar(t.clone(), eps.clone())).collect()
}

/// Smallest face of `[0,1]^N` containing `p`; coordinates within `tol` of 0
/// or 1 count as fixed.
pub fn minimal_face<S: Scalar>(p: &[S], tol: S) -> CubeCell {
    CubeCell::new(
        p.iter()
            .map(|x| {
                if x.clone().abs() <= tol {
                    Coord::Zero
                } else if (x.clone() - S::one()).abs() <= tol {
                    Coord::One
                } else {
                    Coord::Free
                }
            })
            .collect(),
    )
}
