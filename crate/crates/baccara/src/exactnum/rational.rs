use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::{Error, Rational, Result};

/// `n/d` as an exact rational. Panics when `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn checked_div(x: &Rational, y: &Rational) -> Result<Rational> {
    if y.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(x / y)
}

/// Parses `"num/den"` or an integer. Decimal strings are rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::ParseRational(s.to_string());
    let t = s.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = n.parse().map_err(|_| bad())?;
    let den: BigInt = d.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(num, den))
}

/// Canonical text: `"-3/7"`, or `"5"` for integers.
pub fn format_rational(x: &Rational) -> String {
    x.to_string()
}

/// `x` rounded half away from zero to `places` digits after the point.
pub fn decimal(x: &Rational, places: usize) -> String {
    let scale = BigInt::from(10).pow(places as u32);
    let scaled = x.abs() * Rational::from_integer(scale.clone());
    let twice = scaled * Rational::from_integer(BigInt::from(2));
    let rounded: BigInt = (twice.numer() + twice.denom()).div_floor(&(twice.denom() * 2));
    let (whole, frac) = rounded.div_rem(&scale);
    let sign = if x.is_negative() && !rounded.is_zero() { "-" } else { "" };
    if places == 0 {
        return format!("{sign}{whole}");
    }
    format!("{sign}{whole}.{:0>width$}", frac.to_string(), width = places)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_order() {
        assert_eq!(rat(1, 3) + rat(1, 6), rat(1, 2));
        assert!(rat(859, 2288) > rat(3, 8));
        assert_eq!(rat(-2, 4), rat(-1, 2));
        assert_eq!(format_rational(&rat(-2, 4)), "-1/2");
        assert_eq!(checked_div(&rat(1, 2), &int(0)), Err(Error::DivisionByZero));
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_rational("3/100").unwrap(), rat(3, 100));
        assert_eq!(parse_rational(" 5 ").unwrap(), int(5));
        assert_eq!(parse_rational("-6/4").unwrap(), rat(-3, 2));
        assert!(parse_rational("0.03").is_err());
        assert_eq!(parse_rational("1/0"), Err(Error::DivisionByZero));
    }

    #[test]
    fn decimals() {
        assert_eq!(decimal(&rat(1, 3), 7), "0.3333333");
        assert_eq!(decimal(&rat(2, 3), 7), "0.6666667");
        assert_eq!(decimal(&rat(-1, 8), 2), "-0.13");
        assert_eq!(decimal(&int(0), 3), "0.000");
        assert_eq!(decimal(&rat(1, 10), 7), "0.1000000");
    }
}
