use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;

use super::linpoly::{sign_at, LinPoly};
use super::quad::QuadAlgebraic;
use super::rational::rat;
use crate::{Error, Rational, Result};

/// A commission value: rational or a quadratic surd.
pub type AlphaPoint = QuadAlgebraic;

/// Subinterval of `[0, 1/10]` with open or closed ends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaInterval {
    pub lo: AlphaPoint,
    pub hi: AlphaPoint,
    pub lo_open: bool,
    pub hi_open: bool,
}

impl AlphaInterval {
    pub fn new(lo: AlphaPoint, hi: AlphaPoint, lo_open: bool, hi_open: bool) -> Result<Self> {
        let zero = AlphaPoint::from_rational(Rational::zero());
        let top = AlphaPoint::from_rational(rat(1, 10));
        if lo > hi || lo < zero || hi > top || (lo == hi && (lo_open || hi_open)) {
            return Err(Error::InvalidInterval(format!("{lo} .. {hi}")));
        }
        Ok(AlphaInterval { lo, hi, lo_open, hi_open })
    }

    pub fn closed(lo: Rational, hi: Rational) -> Result<Self> {
        Self::new(AlphaPoint::from_rational(lo), AlphaPoint::from_rational(hi), false, false)
    }

    /// `[0, 1/10]`.
    pub fn full() -> Self {
        Self::closed(Rational::zero(), rat(1, 10)).expect("valid")
    }

    pub fn point(a: AlphaPoint) -> Result<Self> {
        Self::new(a.clone(), a, false, false)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &AlphaPoint) -> bool {
        let above = match x.cmp(&self.lo) {
            Ordering::Greater => true,
            Ordering::Equal => !self.lo_open,
            Ordering::Less => false,
        };
        let below = match x.cmp(&self.hi) {
            Ordering::Less => true,
            Ordering::Equal => !self.hi_open,
            Ordering::Greater => false,
        };
        above && below
    }

    pub fn contains_rational(&self, x: &Rational) -> bool {
        self.contains(&AlphaPoint::from_rational(x.clone()))
    }

    /// Intersection, `None` when empty.
    pub fn intersect(&self, other: &Self) -> Option<Self> {
        let (lo, lo_open) = match self.lo.cmp(&other.lo) {
            Ordering::Greater => (self.lo.clone(), self.lo_open),
            Ordering::Less => (other.lo.clone(), other.lo_open),
            Ordering::Equal => (self.lo.clone(), self.lo_open || other.lo_open),
        };
        let (hi, hi_open) = match self.hi.cmp(&other.hi) {
            Ordering::Less => (self.hi.clone(), self.hi_open),
            Ordering::Greater => (other.hi.clone(), other.hi_open),
            Ordering::Equal => (self.hi.clone(), self.hi_open || other.hi_open),
        };
        match lo.cmp(&hi) {
            Ordering::Less => Some(AlphaInterval { lo, hi, lo_open, hi_open }),
            Ordering::Equal if !lo_open && !hi_open => Some(AlphaInterval { lo, hi, lo_open, hi_open }),
            _ => None,
        }
    }

    /// A rational in the interior, or the point itself when it is rational.
    pub fn interior_rational(&self) -> Option<Rational> {
        if self.is_point() {
            return self.lo.as_rational().cloned();
        }
        Some(AlphaPoint::rational_between(&self.lo, &self.hi))
    }

    /// `k` distinct rationals inside the interval (closed rational ends included).
    pub fn sample_rationals(&self, k: usize) -> Vec<Rational> {
        if self.is_point() {
            return self.lo.as_rational().cloned().into_iter().collect();
        }
        let mut out = Vec::new();
        if !self.lo_open {
            if let Some(r) = self.lo.as_rational() {
                out.push(r.clone());
            }
        }
        if !self.hi_open {
            if let Some(r) = self.hi.as_rational() {
                out.push(r.clone());
            }
        }
        let mut cuts = vec![self.lo.clone(), self.hi.clone()];
        while out.len() < k {
            let mut next = vec![cuts[0].clone()];
            for w in cuts.windows(2) {
                let m = AlphaPoint::from_rational(AlphaPoint::rational_between(&w[0], &w[1]));
                if out.len() < k {
                    out.push(m.as_rational().expect("rational").clone());
                }
                next.push(m);
                next.push(w[1].clone());
            }
            cuts = next;
        }
        out.truncate(k);
        out.sort();
        out
    }

    /// Whether `p` has the sign `want` everywhere on the interval.
    pub fn sign_constant(&self, p: &LinPoly<Rational>, want: Ordering) -> bool {
        let ends = |x: &AlphaPoint, open: bool| -> bool {
            let s = sign_at(p, x);
            s == want || (open && s == Ordering::Equal)
        };
        if self.is_point() {
            return sign_at(p, &self.lo) == want;
        }
        if want == Ordering::Equal {
            return p.is_zero();
        }
        // linear: the sign on the interior is fixed by the two endpoint signs
        ends(&self.lo, self.lo_open) && ends(&self.hi, self.hi_open) && {
            let m = AlphaPoint::from_rational(AlphaPoint::rational_between(&self.lo, &self.hi));
            sign_at(p, &m) == want
        }
    }
}

impl fmt::Display for AlphaInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = if self.lo_open { '(' } else { '[' };
        let r = if self.hi_open { ')' } else { ']' };
        write!(f, "{l}{}, {}{r}", self.lo.decimal(7), self.hi.decimal(7))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::int;

    #[test]
    fn membership() {
        let i = AlphaInterval::new(AlphaPoint::from_rational(int(0)), AlphaPoint::from_rational(rat(1, 20)), false, true).unwrap();
        assert!(i.contains_rational(&int(0)));
        assert!(!i.contains_rational(&rat(1, 20)));
        assert!(AlphaInterval::closed(int(0), rat(1, 5)).is_err());
        let s = i.sample_rationals(5);
        assert_eq!(s.len(), 5);
        assert!(s.iter().all(|x| i.contains_rational(x)));
    }

    #[test]
    fn signs_over_intervals() {
        let p = LinPoly::new(int(-1), int(20));
        let i = AlphaInterval::new(AlphaPoint::from_rational(rat(1, 20)), AlphaPoint::from_rational(rat(1, 10)), true, false).unwrap();
        assert!(i.sign_constant(&p, Ordering::Greater));
        let j = AlphaInterval::closed(int(0), rat(1, 10)).unwrap();
        assert!(!j.sign_constant(&p, Ordering::Greater));
        assert!(!j.sign_constant(&p, Ordering::Less));
    }
}
