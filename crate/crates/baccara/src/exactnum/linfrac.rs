use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Num, One, Signed, Zero};

use super::linpoly::{LinPoly, Quadratic};
use super::quad::QuadAlgebraic;
use crate::{Error, Rational, Result};

/// `num(alpha) / den(alpha)`; `den` is never identically zero.
#[derive(Clone, Debug)]
pub struct LinFrac<T> {
    num: LinPoly<T>,
    den: LinPoly<T>,
}

impl<T: Num + Clone> LinFrac<T> {
    pub fn from_parts(num: LinPoly<T>, den: LinPoly<T>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(LinFrac { num, den })
    }

    pub fn num(&self) -> &LinPoly<T> {
        &self.num
    }

    pub fn den(&self) -> &LinPoly<T> {
        &self.den
    }

    pub fn eval(&self, alpha: &T) -> Option<T> {
        let d = self.den.eval(alpha);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(alpha) / d)
    }
}

impl<T: Num + Clone + PartialEq> PartialEq for LinFrac<T> {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul_poly(&other.den) == other.num.mul_poly(&self.den)
    }
}

impl LinFrac<Rational> {
    /// Canonical form: integer coefficients with gcd 1, and `den.c0 > 0`
    /// or `den.c0 == 0 && den.c1 > 0`.
    pub fn new(num: LinPoly<Rational>, den: LinPoly<Rational>) -> Result<Self> {
        Ok(Self::from_parts(num, den)?.canonical())
    }

    pub fn constant(r: Rational) -> Self {
        Self::new(LinPoly::constant(r), LinPoly::constant(Rational::one())).expect("nonzero")
    }

    /// Parses the exact coefficient tuple `(n0, n1, d0, d1)` from integers.
    pub fn from_ints(n0: i64, n1: i64, d0: i64, d1: i64) -> Result<Self> {
        let r = |x: i64| Rational::from_integer(BigInt::from(x));
        Self::new(LinPoly::new(r(n0), r(n1)), LinPoly::new(r(d0), r(d1)))
    }

    fn canonical(&self) -> Self {
        let coeffs = [&self.num.c0, &self.num.c1, &self.den.c0, &self.den.c1];
        let l = coeffs.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let mut ints: Vec<BigInt> = coeffs.iter().map(|x| (*x * Rational::from_integer(l.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        let negate = ints[2].is_negative() || (ints[2].is_zero() && ints[3].is_negative());
        for x in ints.iter_mut() {
            *x = &*x / &g;
            if negate {
                *x = -&*x;
            }
        }
        let r = |x: &BigInt| Rational::from_integer(x.clone());
        LinFrac { num: LinPoly::new(r(&ints[0]), r(&ints[1])), den: LinPoly::new(r(&ints[2]), r(&ints[3])) }
    }

    /// Exact value at `alpha`; a zero denominator is a pole error.
    pub fn value(&self, alpha: &Rational) -> Result<Rational> {
        self.eval(alpha).ok_or_else(|| Error::Pole(alpha.to_string()))
    }

    /// Value at a quadratic surd, rationalized by the conjugate.
    pub fn eval_quad(&self, alpha: &QuadAlgebraic) -> Result<QuadAlgebraic> {
        let n = self.num.eval_quad(alpha);
        let m = self.den.eval_quad(alpha);
        if m.sign().is_eq() {
            return Err(Error::Pole(alpha.to_string()));
        }
        if alpha.is_rational() {
            return Ok(QuadAlgebraic::from_rational(n.a() / m.a()));
        }
        let c = Rational::from_integer(alpha.radicand().clone());
        let norm = m.a() * m.a() - m.b() * m.b() * &c;
        let a = (n.a() * m.a() - n.b() * m.b() * &c) / &norm;
        let b = (n.b() * m.a() - n.a() * m.b()) / &norm;
        QuadAlgebraic::new(a, b, alpha.radicand().clone())
    }

    pub fn is_constant(&self) -> bool {
        self.num.c0.clone() * &self.den.c1 == self.num.c1.clone() * &self.den.c0
    }

    /// `self - other` as the cross polynomial `num_f den_g - num_g den_f`.
    pub fn cross(&self, other: &Self) -> Quadratic {
        Quadratic::cross(&self.num, &self.den, &other.num, &other.den)
    }

    /// Solutions of `self(alpha) = other(alpha)` with `lo <= alpha <= hi`, ascending.
    pub fn intersect_in(&self, other: &Self, lo: &Rational, hi: &Rational) -> Result<Vec<QuadAlgebraic>> {
        let q = self.cross(other);
        if q.is_zero() {
            return Err(Error::IdenticalCurves);
        }
        Ok(q.roots_in(lo, hi))
    }

    /// Solutions in `[0, 1/10]`.
    pub fn intersect(&self, other: &Self) -> Result<Vec<QuadAlgebraic>> {
        self.intersect_in(other, &Rational::zero(), &super::alpha_max())
    }
}

impl fmt::Display for LinFrac<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.num, self.den)
    }
}
