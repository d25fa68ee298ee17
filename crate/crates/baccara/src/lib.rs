//! Exact Nash equilibria of baccara chemin de fer.
//!
//! Player and Banker each see their own two cards; Player may stand or draw
//! at a two-card total of 5, Banker may stand or draw at each of 484
//! information sets. Cards are dealt without replacement from a `d`-deck shoe
//! and the house keeps a fraction `alpha` of each winning Banker bet,
//! `0 <= alpha <= 1/10`.
//!
//! The solver is exact throughout: probabilities are big rationals, payoffs
//! are linear polynomials in `alpha`, best-response thresholds are
//! linear-fractional functions of `alpha`, and their crossing points are
//! quadratic surds.
//!
//! * [`model_b2`]: Player sees only totals, Banker sees compositions.
//! * [`model_b3`]: both sides see compositions (32 Player pure strategies).
//! * [`foster`]: equilibria of additive 2 x 2^n games over an `alpha` range.
//! * [`oracle`]: brute-force checks for small explicit games.

pub mod additive_game;
pub mod cards;
pub mod exactnum;
pub mod foster;
pub mod model_b2;
pub mod model_b3;
pub mod oracle;

use thiserror::Error;

pub use exactnum::{parse_rational, AlphaInterval, AlphaPoint, LinFrac, LinPoly, QuadAlgebraic, Quadratic, Scalar};

/// Arbitrary-precision rational, always in lowest terms.
pub type Rational = num_rational::BigRational;
/// `c0 + c1*alpha` with exact coefficients.
pub type LinPolyAlpha = LinPoly<Rational>;
/// Ratio of two [`LinPolyAlpha`].
pub type LinFracAlpha = LinFrac<Rational>;
/// Additive game with exact payoffs.
pub type AdditiveBimatrixGame = additive_game::AdditiveGame<Rational>;
/// Dense explicit bimatrix with exact entries.
pub type DenseBimatrix = oracle::Dense<Rational>;

/// Errors raised by the solver.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole of a linear-fractional function at alpha = {0}")]
    Pole(String),
    #[error("denominator is identically zero")]
    ZeroDenominator,
    #[error("not an exact rational literal: {0:?}")]
    ParseRational(String),
    #[error("negative radicand")]
    NegativeRadicand,
    #[error("invalid alpha interval: {0}")]
    InvalidInterval(String),
    #[error("alpha = {0} is outside [0, 1/10]")]
    AlphaOutOfRange(String),
    #[error("deck count {0} outside 1..={max}", max = cards::MAX_DECKS)]
    DeckCount(u64),
    #[error("the two curves are identical")]
    IdenticalCurves,
    #[error("sign of b1 - b0 changes inside the interval (row {row}, label {label})")]
    NonConstantSign { row: usize, label: usize },
    #[error("label {label} is in none of T00, T01, T10, T11 at alpha = {alpha}")]
    Uncovered { label: usize, alpha: String },
    #[error("three or more thresholds tie at alpha = {alpha} (labels {labels:?})")]
    TripleTie { alpha: String, labels: Vec<usize> },
    #[error("every mixture of the two columns equalizes")]
    DegenerateEqualizer,
    #[error("expected a game with 2 rows, found {0}")]
    NotTwoRows(usize),
    #[error("strategy has {found} bits, game has {expected}")]
    Width { expected: usize, found: usize },
    #[error("size guard exceeded: {0}")]
    SizeGuard(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
