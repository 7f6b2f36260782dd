use std::fmt::Debug;

use num_rational::Rational64;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

/// Ordered field used by the embedding code.
///
/// `f64` drives the mesh pipeline; `Rational64` reproduces the hand-computed
/// circle examples exactly, where plateau boundaries of `r_ε` are hit on the nose.
pub trait Scalar:
    Clone + Debug + PartialOrd + Num + Signed + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    fn ratio(num: i64, den: i64) -> Self;

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    fn ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
}

impl Scalar for Rational64 {
    fn ratio(num: i64, den: i64) -> Self {
        Rational64::new(num, den)
    }
}

pub(crate) fn smin<S: Scalar>(a: S, b: S) -> S {
    if b < a {
        b
    } else {
        a
    }
}

pub(crate) fn smax<S: Scalar>(a: S, b: S) -> S {
    if b > a {
        b
    } else {
        a
    }
}
