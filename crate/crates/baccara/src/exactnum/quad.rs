use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::decimal;
use crate::{Error, Rational, Result};

/// `a + b*sqrt(c)` with rational `a`, `b` and integer radicand `c >= 0`.
///
/// Rationals are stored with `b = 0` and `c = 0`; otherwise `c` is not a
/// perfect square.
#[derive(Clone, Debug)]
pub struct QuadAlgebraic {
    a: Rational,
    b: Rational,
    c: BigInt,
}

fn sign_of(x: &Rational) -> Ordering {
    x.cmp(&Rational::zero())
}

/// Sign of `x + y*sqrt(c)`, `c` a positive non-square.
fn surd_sign(x: &Rational, y: &Rational, c: &BigInt) -> Ordering {
    let (sx, sy) = (sign_of(x), sign_of(y));
    if sy == Ordering::Equal {
        return sx;
    }
    if sx == Ordering::Equal || sx == sy {
        return sy;
    }
    let lhs = x * x;
    let rhs = y * y * Rational::from_integer(c.clone());
    match lhs.cmp(&rhs) {
        Ordering::Greater => sx,
        Ordering::Less => sy,
        Ordering::Equal => Ordering::Equal,
    }
}

fn is_square(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    (&s * &s == *n).then_some(s)
}

impl QuadAlgebraic {
    pub fn from_rational(a: Rational) -> Self {
        QuadAlgebraic { a, b: Rational::zero(), c: BigInt::zero() }
    }

    pub fn new(a: Rational, b: Rational, c: BigInt) -> Result<Self> {
        if c.is_negative() {
            return Err(Error::NegativeRadicand);
        }
        if b.is_zero() || c.is_zero() {
            return Ok(Self::from_rational(a));
        }
        if let Some(s) = is_square(&c) {
            return Ok(Self::from_rational(a + b * Rational::from_integer(s)));
        }
        Ok(QuadAlgebraic { a, b, c })
    }

    /// `(A + B*sqrt(C))/D` from integers.
    pub fn from_integers(a: i128, b: i128, c: &str, d: i128) -> Result<Self> {
        let c: BigInt = c.parse().map_err(|_| Error::ParseRational(c.to_string()))?;
        let d = BigInt::from(d);
        Self::new(Rational::new(BigInt::from(a), d.clone()), Rational::new(BigInt::from(b), d), c)
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn radicand(&self) -> &BigInt {
        &self.c
    }

    pub fn is_rational(&self) -> bool {
        self.c.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    pub fn sign(&self) -> Ordering {
        if self.is_rational() {
            sign_of(&self.a)
        } else {
            surd_sign(&self.a, &self.b, &self.c)
        }
    }

    pub fn add_rational(&self, r: &Rational) -> Self {
        QuadAlgebraic { a: &self.a + r, b: self.b.clone(), c: self.c.clone() }
    }

    pub fn mul_rational(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::from_rational(Rational::zero());
        }
        QuadAlgebraic { a: &self.a * r, b: &self.b * r, c: self.c.clone() }
    }

    /// Sum of two numbers sharing a radicand (or with at least one rational).
    pub fn add(&self, other: &Self) -> Self {
        let c = if self.is_rational() { other.c.clone() } else { self.c.clone() };
        assert!(self.is_rational() || other.is_rational() || self.c == other.c, "radicands differ");
        Self::new(&self.a + &other.a, &self.b + &other.b, c).expect("nonnegative radicand")
    }

    pub fn neg(&self) -> Self {
        QuadAlgebraic { a: -&self.a, b: -&self.b, c: self.c.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Product of two numbers sharing a radicand (or with at least one rational).
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_rational() {
            return other.mul_rational(&self.a);
        }
        if other.is_rational() {
            return self.mul_rational(&other.a);
        }
        assert!(self.c == other.c, "radicands differ");
        let c = Rational::from_integer(self.c.clone());
        let a = &self.a * &other.a + &self.b * &other.b * c;
        let b = &self.a * &other.b + &other.a * &self.b;
        Self::new(a, b, self.c.clone()).expect("nonnegative radicand")
    }

    pub fn square(&self) -> Self {
        let c = Rational::from_integer(self.c.clone());
        let a = &self.a * &self.a + &self.b * &self.b * c;
        let b = Rational::from_integer(BigInt::from(2)) * &self.a * &self.b;
        Self::new(a, b, self.c.clone()).expect("nonnegative radicand")
    }

    /// Rational bounds `lo <= self <= hi` with `hi - lo <= |b| * 10^-digits`.
    pub fn bounds(&self, digits: u32) -> (Rational, Rational) {
        if self.is_rational() {
            return (self.a.clone(), self.a.clone());
        }
        let scale = BigInt::from(10).pow(digits);
        let s = (&self.c * &scale * &scale).sqrt();
        let lo_root = Rational::new(s.clone(), scale.clone());
        let hi_root = Rational::new(s + 1, scale);
        let x = &self.a + &self.b * &lo_root;
        let y = &self.a + &self.b * &hi_root;
        if x <= y {
            (x, y)
        } else {
            (y, x)
        }
    }

    pub fn to_f64(&self) -> f64 {
        let (lo, hi) = self.bounds(30);
        ((lo + hi) / Rational::from_integer(BigInt::from(2))).to_f64().unwrap_or(f64::NAN)
    }

    /// Decimal string with `places` digits after the point, correctly rounded.
    pub fn decimal(&self, places: usize) -> String {
        if self.is_rational() {
            return decimal(&self.a, places);
        }
        let mut digits = places as u32 + 12;
        loop {
            let (lo, hi) = self.bounds(digits);
            let (x, y) = (decimal(&lo, places), decimal(&hi, places));
            if x == y {
                return x;
            }
            digits *= 2;
        }
    }

    /// Integers `(A, B, C, D)` with value `(A + B*sqrt(C))/D`, `D > 0`.
    pub fn integer_form(&self) -> (BigInt, BigInt, BigInt, BigInt) {
        let d = self.a.denom().lcm(self.b.denom());
        let scale = Rational::from_integer(d.clone());
        let a = (&self.a * &scale).to_integer();
        let b = (&self.b * &scale).to_integer();
        (a, b, self.c.clone(), d)
    }

    /// A rational strictly between `lo` and `hi`, preferring short decimals.
    pub fn rational_between(lo: &Self, hi: &Self) -> Rational {
        assert!(lo < hi, "empty interval");
        let mut digits = 4;
        loop {
            let (_, l) = lo.bounds(digits);
            let (h, _) = hi.bounds(digits);
            if l < h {
                let ten = BigInt::from(10);
                let mut j = 0u32;
                loop {
                    let scale = ten.pow(j);
                    let m = Rational::new((&l * Rational::from_integer(scale.clone())).floor().to_integer() + 1, scale);
                    if m < h {
                        return m;
                    }
                    j += 1;
                }
            }
            digits *= 2;
        }
    }
}

impl PartialEq for QuadAlgebraic {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for QuadAlgebraic {}

impl PartialOrd for QuadAlgebraic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadAlgebraic {
    fn cmp(&self, other: &Self) -> Ordering {
        let x = &self.a - &other.a;
        if self.is_rational() && other.is_rational() {
            return sign_of(&x);
        }
        if other.is_rational() {
            return surd_sign(&x, &self.b, &self.c);
        }
        if self.is_rational() {
            return surd_sign(&x, &-&other.b, &other.c);
        }
        if self.c == other.c {
            return surd_sign(&x, &(&self.b - &other.b), &self.c);
        }
        // sqrt(c2) = (s/c1) sqrt(c1) when c1*c2 = s^2
        if let Some(s) = is_square(&(&self.c * &other.c)) {
            let b2 = &other.b * Rational::new(s, self.c.clone());
            return surd_sign(&x, &(&self.b - b2), &self.c);
        }
        // independent radicals: the values differ, refine until the bounds separate
        let mut digits = 16;
        loop {
            let (l1, h1) = self.bounds(digits);
            let (l2, h2) = other.bounds(digits);
            if h1 < l2 {
                return Ordering::Less;
            }
            if h2 < l1 {
                return Ordering::Greater;
            }
            digits *= 2;
        }
    }
}

impl fmt::Display for QuadAlgebraic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.a);
        }
        let (a, b, c, d) = self.integer_form();
        let sign = if b.is_negative() { "-" } else { "+" };
        let bb = b.abs();
        if bb.is_one() {
            write!(f, "({a} {sign} sqrt({c}))/{d}")
        } else {
            write!(f, "({a} {sign} {bb}*sqrt({c}))/{d}")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    fn alpha0() -> QuadAlgebraic {
        QuadAlgebraic::from_integers(16_145_999_279, -1, "226436619657206227489", 17_712_223_814).unwrap()
    }

    #[test]
    fn normalizes_rationals() {
        let q = QuadAlgebraic::new(int(1), int(2), BigInt::from(9)).unwrap();
        assert!(q.is_rational());
        assert_eq!(q.as_rational(), Some(&int(7)));
    }

    #[test]
    fn alpha0_display_and_value() {
        let q = alpha0();
        assert_eq!(q.decimal(7), "0.0620017");
        assert_eq!(q.to_string(), "(16145999279 - sqrt(226436619657206227489))/17712223814");
        assert!(q > QuadAlgebraic::from_rational(rat(62, 1000)));
        assert!(q < QuadAlgebraic::from_rational(rat(621, 10000)));
    }

    #[test]
    fn mixed_radicands() {
        let r2 = QuadAlgebraic::new(int(0), int(1), BigInt::from(2)).unwrap();
        let r8 = QuadAlgebraic::new(int(0), rat(1, 2), BigInt::from(8)).unwrap();
        assert_eq!(r2, r8);
        let r3 = QuadAlgebraic::new(int(0), int(1), BigInt::from(3)).unwrap();
        assert!(r2 < r3);
        let m = QuadAlgebraic::rational_between(&r2, &r3);
        assert!(r2 < QuadAlgebraic::from_rational(m.clone()) && QuadAlgebraic::from_rational(m) < r3);
    }

    #[test]
    fn rational_between_prefers_short_decimals() {
        let lo = QuadAlgebraic::from_rational(rat(1, 50));
        let hi = QuadAlgebraic::from_rational(rat(1, 20));
        assert_eq!(QuadAlgebraic::rational_between(&lo, &hi), rat(3, 100));
    }
}
