//! Exact numbers: rationals, linear polynomials and linear-fractional
//! functions of `alpha`, quadratic surds, and `alpha` intervals.

mod interval;
mod linfrac;
mod linpoly;
mod quad;
mod rational;
mod scalar;

pub use interval::{AlphaInterval, AlphaPoint};
pub use linfrac::LinFrac;
pub use linpoly::{sign_at, LinPoly, Quadratic};
pub use quad::QuadAlgebraic;
pub use rational::{checked_div, decimal, format_rational, int, parse_rational, rat};
pub use scalar::Scalar;

use crate::Rational;

/// Upper end of the commission range.
pub fn alpha_max() -> Rational {
    rat(1, 10)
}
