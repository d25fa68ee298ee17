use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Num, One, Signed, Zero};

use super::quad::QuadAlgebraic;
use crate::Rational;

/// `c0 + c1*alpha`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct LinPoly<T> {
    pub c0: T,
    pub c1: T,
}

impl<T: Num + Clone> LinPoly<T> {
    pub fn new(c0: T, c1: T) -> Self {
        LinPoly { c0, c1 }
    }

    pub fn constant(c0: T) -> Self {
        LinPoly { c0, c1: T::zero() }
    }

    pub fn zero() -> Self {
        LinPoly { c0: T::zero(), c1: T::zero() }
    }

    /// The identity `alpha`.
    pub fn alpha() -> Self {
        LinPoly { c0: T::zero(), c1: T::one() }
    }

    pub fn eval(&self, alpha: &T) -> T {
        self.c0.clone() + self.c1.clone() * alpha.clone()
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.c1.is_zero()
    }

    pub fn scale(&self, k: &T) -> Self {
        LinPoly { c0: self.c0.clone() * k.clone(), c1: self.c1.clone() * k.clone() }
    }

    /// Coefficients of the product, lowest degree first.
    pub fn mul_poly(&self, other: &Self) -> [T; 3] {
        [self.c0.clone() * other.c0.clone(), self.c0.clone() * other.c1.clone() + self.c1.clone() * other.c0.clone(), self.c1.clone() * other.c1.clone()]
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> LinPoly<U> {
        LinPoly { c0: f(&self.c0), c1: f(&self.c1) }
    }
}

impl LinPoly<Rational> {
    /// The unique root, when `c1 != 0`.
    pub fn root(&self) -> Option<Rational> {
        if self.c1.is_zero() {
            None
        } else {
            Some(-&self.c0 / &self.c1)
        }
    }

    pub fn eval_quad(&self, alpha: &QuadAlgebraic) -> QuadAlgebraic {
        alpha.mul_rational(&self.c1).add_rational(&self.c0)
    }
}

/// Exact sign of `p(alpha)` for rational or quadratic-surd `alpha`.
pub fn sign_at(p: &LinPoly<Rational>, alpha: &QuadAlgebraic) -> Ordering {
    p.eval_quad(alpha).sign()
}

macro_rules! binop {
    ($tr:ident, $m:ident, $op:tt) => {
        impl<T: Num + Clone> $tr for LinPoly<T> {
            type Output = LinPoly<T>;
            fn $m(self, rhs: Self) -> Self {
                LinPoly { c0: self.c0 $op rhs.c0, c1: self.c1 $op rhs.c1 }
            }
        }
        impl<'a, T: Num + Clone> $tr<&'a LinPoly<T>> for &'a LinPoly<T> {
            type Output = LinPoly<T>;
            fn $m(self, rhs: Self) -> LinPoly<T> {
                LinPoly { c0: self.c0.clone() $op rhs.c0.clone(), c1: self.c1.clone() $op rhs.c1.clone() }
            }
        }
    };
}
binop!(Add, add, +);
binop!(Sub, sub, -);

impl<T: Num + Clone> AddAssign<&LinPoly<T>> for LinPoly<T> {
    fn add_assign(&mut self, rhs: &LinPoly<T>) {
        self.c0 = self.c0.clone() + rhs.c0.clone();
        self.c1 = self.c1.clone() + rhs.c1.clone();
    }
}

impl<T: Num + Clone> SubAssign<&LinPoly<T>> for LinPoly<T> {
    fn sub_assign(&mut self, rhs: &LinPoly<T>) {
        self.c0 = self.c0.clone() - rhs.c0.clone();
        self.c1 = self.c1.clone() - rhs.c1.clone();
    }
}

impl<T: Num + Clone + Neg<Output = T>> Neg for LinPoly<T> {
    type Output = LinPoly<T>;
    fn neg(self) -> Self {
        LinPoly { c0: -self.c0, c1: -self.c1 }
    }
}

impl<T: Num + Clone + Neg<Output = T>> Neg for &LinPoly<T> {
    type Output = LinPoly<T>;
    fn neg(self) -> LinPoly<T> {
        LinPoly { c0: -self.c0.clone(), c1: -self.c1.clone() }
    }
}

impl<T: Num + Clone> Mul<&T> for &LinPoly<T> {
    type Output = LinPoly<T>;
    fn mul(self, k: &T) -> LinPoly<T> {
        self.scale(k)
    }
}

impl fmt::Display for LinPoly<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c1.is_zero() {
            return write!(f, "{}", self.c0);
        }
        let sign = if self.c1.is_negative() { "-" } else { "+" };
        write!(f, "{} {} {}*a", self.c0, sign, self.c1.abs())
    }
}

/// `c0 + c1*x + c2*x^2` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quadratic {
    pub c: [Rational; 3],
}

impl Quadratic {
    pub fn new(c0: Rational, c1: Rational, c2: Rational) -> Self {
        Quadratic { c: [c0, c1, c2] }
    }

    /// `f.num * g.den - g.num * f.den`.
    pub fn cross(fnum: &LinPoly<Rational>, fden: &LinPoly<Rational>, gnum: &LinPoly<Rational>, gden: &LinPoly<Rational>) -> Self {
        let a = fnum.mul_poly(gden);
        let b = gnum.mul_poly(fden);
        Quadratic { c: [&a[0] - &b[0], &a[1] - &b[1], &a[2] - &b[2]] }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    /// Integer coefficients with gcd 1 and a positive leading coefficient.
    pub fn primitive(&self) -> [BigInt; 3] {
        let l = self.c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let mut v: Vec<BigInt> = self.c.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect();
        let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if !g.is_zero() {
            for x in v.iter_mut() {
                *x = &*x / &g;
            }
        }
        let lead = v.iter().rev().find(|x| !x.is_zero()).cloned();
        if let Some(lead) = lead {
            if lead.is_negative() {
                for x in v.iter_mut() {
                    *x = -&*x;
                }
            }
        }
        [v[0].clone(), v[1].clone(), v[2].clone()]
    }

    pub fn eval_quad(&self, x: &QuadAlgebraic) -> QuadAlgebraic {
        let sq = x.square();
        sq.mul_rational(&self.c[2]).add(&x.mul_rational(&self.c[1])).add_rational(&self.c[0])
    }

    /// Real roots in `[lo, hi]`, ascending, without repetition.
    /// A zero polynomial has no isolated roots and yields an empty list.
    pub fn roots_in(&self, lo: &Rational, hi: &Rational) -> Vec<QuadAlgebraic> {
        let [c0, c1, c2] = self.primitive();
        let mut roots = Vec::new();
        if c2.is_zero() {
            if !c1.is_zero() {
                roots.push(QuadAlgebraic::from_rational(Rational::new(-c0, c1)));
            }
        } else {
            let disc: BigInt = &c1 * &c1 - BigInt::from(4) * &c2 * &c0;
            if disc.is_negative() {
                return roots;
            }
            let two_a = BigInt::from(2) * &c2;
            let s = disc.sqrt();
            if &s * &s == disc {
                roots.push(QuadAlgebraic::from_rational(Rational::new(-&c1 - &s, two_a.clone())));
                if !s.is_zero() {
                    roots.push(QuadAlgebraic::from_rational(Rational::new(-&c1 + &s, two_a.clone())));
                }
            } else {
                let a = Rational::new(-&c1, two_a.clone());
                let b = Rational::new(BigInt::one(), two_a);
                roots.push(QuadAlgebraic::new(a.clone(), -b.clone(), disc.clone()).expect("positive radicand"));
                roots.push(QuadAlgebraic::new(a, b, disc).expect("positive radicand"));
            }
        }
        let lo = QuadAlgebraic::from_rational(lo.clone());
        let hi = QuadAlgebraic::from_rational(hi.clone());
        roots.retain(|r| *r >= lo && *r <= hi);
        roots.sort();
        roots
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    #[test]
    fn eval_and_ops() {
        let p = LinPoly::new(int(1), int(-2));
        assert_eq!(p.eval(&rat(1, 2)), int(0));
        let q = LinPoly::new(int(3), int(0));
        assert_eq!((&p + &q).eval(&rat(1, 4)), rat(7, 2));
        assert_eq!(-(&p), LinPoly::new(int(-1), int(2)));
        assert_eq!(p.root(), Some(rat(1, 2)));
        let f: LinPoly<f64> = LinPoly::new(1.0, 2.0);
        assert_eq!(f.eval(&0.5), 2.0);
    }

    #[test]
    fn signs() {
        let p = LinPoly::new(int(1), int(-2));
        let half = QuadAlgebraic::from_rational(rat(1, 2));
        assert_eq!(sign_at(&p, &half), Ordering::Equal);
        let three = LinPoly::constant(int(3));
        assert_eq!(sign_at(&three, &half), Ordering::Greater);
    }

    #[test]
    fn quadratic_roots() {
        // x^2 - 2 on [0, 2]: sqrt(2)
        let q = Quadratic::new(int(-2), int(0), int(1));
        let r = q.roots_in(&int(0), &int(2));
        assert_eq!(r.len(), 1);
        assert!((r[0].to_f64() - 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(q.eval_quad(&r[0]).sign(), Ordering::Equal);
        // (x - 1/4)(x - 1/2)
        let q = Quadratic::new(rat(1, 8), rat(-3, 4), int(1));
        let r = q.roots_in(&int(0), &int(1));
        assert_eq!(r, vec![QuadAlgebraic::from_rational(rat(1, 4)), QuadAlgebraic::from_rational(rat(1, 2))]);
        // linear fallthrough
        let q = Quadratic::new(int(-1), int(20), int(0));
        assert_eq!(q.roots_in(&int(0), &rat(1, 10)), vec![QuadAlgebraic::from_rational(rat(1, 20))]);
        // endpoints are included
        let q = Quadratic::new(int(0), int(1), int(0));
        assert_eq!(q.roots_in(&int(0), &rat(1, 10)).len(), 1);
    }
}
