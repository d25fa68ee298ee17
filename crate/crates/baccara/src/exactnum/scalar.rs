use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_traits::{Num, ToPrimitive};

use crate::Rational;

/// Field-like scalar used by the generic parts of the crate.
///
/// Probabilities and payoffs are built with `from_i128` from exact integer
/// counts, so `f64` gives a quick approximate model and [`Rational`] the exact one.
pub trait Scalar: Num + Clone + PartialOrd + Neg<Output = Self> + Debug + Send + Sync + 'static {
    fn from_i128(v: i128) -> Self;
    fn to_f64(&self) -> f64;
}

impl Scalar for f64 {
    fn from_i128(v: i128) -> Self {
        v as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for f32 {
    fn from_i128(v: i128) -> Self {
        v as f32
    }
    fn to_f64(&self) -> f64 {
        f64::from(*self)
    }
}

impl Scalar for Rational {
    fn from_i128(v: i128) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}
