//! Brute-force checks for small games: explicit payoff matrices, support
//! enumeration, pure-strategy dominance, and direct Nash verification of
//! additive equilibria.
//!
//! Everything here runs at a fixed rational `alpha`.
//!
//! # Random games
//!
//! [`random_game`] maps a 64-bit seed to a game through the SplitMix64
//! stream (`state += 0x9E3779B97F4A7C15`, then the usual xor-shift-multiply
//! finalizer with `0xBF58476D1CE4E5B9` and `0x94D049BB133111EB`). Draws, in
//! order: for each row, the constant `c0`, `c1`; then for each label a
//! weight and the four coefficients of the stand and draw blocks. `k(r)`
//! below means `next() % r`.
//!
//! * weight: `(1 + k(9)) / 10`
//! * block coefficient `c0`: `(k(41) - 20) / (1 + k(6))`
//! * block coefficient `c1`: `(k(201) - 100) / (1 + k(6))`
//! * constant: `c0 = (k(21) - 10) / 4`, `c1 = (k(21) - 10) / 4`
//!
//! The row player's payoff is minus the column player's payoff at `alpha = 0`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::additive_game::{reduce, AdditiveGame, DrawSet, Label, Opponent, Reduction};
use crate::exactnum::{AlphaInterval, AlphaPoint, LinPoly};
use crate::foster::{self, PointEquilibrium};
use crate::{AdditiveBimatrixGame, Error, Rational, Result};

/// Largest number of entries per matrix.
pub const MAX_ENTRIES: usize = 1 << 20;

/// Explicit bimatrix: `a` for the row player, `b` for the column player.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dense<T> {
    pub a: Vec<Vec<T>>,
    pub b: Vec<Vec<T>>,
}

impl<T> Dense<T> {
    pub fn new(a: Vec<Vec<T>>, b: Vec<Vec<T>>) -> Result<Self> {
        let m = a.len();
        let n = a.first().map_or(0, Vec::len);
        if b.len() != m || a.iter().chain(&b).any(|r| r.len() != n) {
            return Err(Error::Unsupported("matrices differ in shape".into()));
        }
        if m * n > MAX_ENTRIES {
            return Err(Error::SizeGuard(format!("{m} x {n} matrix")));
        }
        Ok(Dense { a, b })
    }

    pub fn rows(&self) -> usize {
        self.a.len()
    }

    pub fn cols(&self) -> usize {
        self.a.first().map_or(0, Vec::len)
    }
}

/// Every column of an additive game at `alpha`, column `T` at index `T`'s binary value.
pub fn expand(game: &AdditiveBimatrixGame, alpha: &Rational) -> Result<Dense<Rational>> {
    let n = game.n();
    if n > 20 || game.rows() << n > MAX_ENTRIES {
        return Err(Error::SizeGuard(format!("{} rows x 2^{n} columns", game.rows())));
    }
    let cols: Vec<DrawSet> = (0..1u64 << n).map(|i| DrawSet::from_index(n, i)).collect();
    expand_columns(game, alpha, &cols)
}

/// The listed columns of an additive game at `alpha`.
pub fn expand_columns(game: &AdditiveBimatrixGame, alpha: &Rational, cols: &[DrawSet]) -> Result<Dense<Rational>> {
    let mut a = Vec::new();
    let mut b = Vec::new();
    for u in 0..game.rows() {
        a.push(cols.iter().map(|t| Ok(game.opponent_payoff(u, t)?.eval(alpha))).collect::<Result<Vec<_>>>()?);
        b.push(cols.iter().map(|t| Ok(game.column_payoff(u, t)?.eval(alpha))).collect::<Result<Vec<_>>>()?);
    }
    Dense::new(a, b)
}

/// A mixed equilibrium of a dense game.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct DenseEquilibrium {
    /// Row player's mixture, one entry per row.
    pub row: Vec<Rational>,
    /// Column player's mixture, positive weights only, by column index.
    pub col: Vec<(usize, Rational)>,
}

impl DenseEquilibrium {
    /// From a two-row equilibrium of an expanded additive game.
    pub fn from_point(pe: &PointEquilibrium) -> Option<Self> {
        let p = pe.p.as_rational()?.clone();
        let mut col = Vec::new();
        for (t, w) in &pe.banker {
            col.push((t.to_index()? as usize, w.as_rational()?.clone()));
        }
        col.sort();
        Some(DenseEquilibrium { row: vec![Rational::one() - &p, p], col })
    }
}

fn combinations(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..=n - (k - cur.len()) {
            cur.push(i);
            go(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    if k <= n {
        go(0, n, k, &mut Vec::with_capacity(k), f);
    }
}

/// Gaussian elimination on a square system; `None` when singular.
fn solve_exact(mut m: Vec<Vec<Rational>>) -> Option<Vec<Rational>> {
    let n = m.len();
    for c in 0..n {
        let piv = (c..n).find(|&r| !m[r][c].is_zero())?;
        m.swap(c, piv);
        let inv = Rational::one() / &m[c][c];
        for x in m[c].iter_mut() {
            *x *= &inv;
        }
        let pivot = m[c].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != c && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot).skip(c) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n].clone()).collect())
}

fn solve_f64(mut m: Vec<Vec<f64>>) -> Option<Vec<f64>> {
    let n = m.len();
    for c in 0..n {
        let piv = (c..n).max_by(|&x, &y| m[x][c].abs().total_cmp(&m[y][c].abs()))?;
        if m[piv][c].abs() < 1e-12 {
            return None;
        }
        m.swap(c, piv);
        let pivot = m[c].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != c {
                let f = row[c] / pivot[c];
                for (x, y) in row.iter_mut().zip(&pivot).skip(c) {
                    *x -= f * y;
                }
            }
        }
    }
    Some((0..n).map(|r| m[r][n] / m[r][r]).collect())
}

/// Mixture `x` over `sup` (rows of `mat`) making the columns in `other`
/// equal, plus the common value. `mat[i][j]`: payoff when the mixing side
/// plays `i` and the other side `j`.
fn indifference<T>(mat: impl Fn(usize, usize) -> T, sup: &[usize], other: &[usize], zero: T, one: T) -> Vec<Vec<T>>
where
    T: Clone + std::ops::Neg<Output = T>,
{
    let k = sup.len();
    let mut rows = Vec::with_capacity(k + 1);
    for &j in other {
        let mut r: Vec<T> = sup.iter().map(|&i| mat(i, j)).collect();
        r.push(-one.clone());
        r.push(zero.clone());
        rows.push(r);
    }
    let mut last = vec![one.clone(); k];
    last.push(zero.clone());
    last.push(one);
    rows.push(last);
    rows
}

const TOL: f64 = 1e-7;

/// All equilibria whose supports have equal size at most `max_support`, by
/// support enumeration with exact solves. Pure equilibria are always found.
/// Solutions with zero weights are kept, so a degenerate game also yields
/// the extreme points of its equilibrium segments. Supports with a singular
/// indifference system are skipped.
pub fn nash_all(dense: &Dense<Rational>, max_support: usize) -> Vec<DenseEquilibrium> {
    let (m, n) = (dense.rows(), dense.cols());
    let af: Vec<Vec<f64>> = dense.a.iter().map(|r| r.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect()).collect();
    let bf: Vec<Vec<f64>> = dense.b.iter().map(|r| r.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect()).collect();
    let scale = af.iter().chain(&bf).flatten().fold(1.0f64, |s, x| s.max(x.abs()));
    let mut out: BTreeSet<DenseEquilibrium> = BTreeSet::new();
    for k in 1..=max_support.max(1).min(m).min(n) {
        combinations(m, k, &mut |rows: &[usize]| {
            combinations(n, k, &mut |cols: &[usize]| {
                // approximate pass
                let Some(x) = solve_f64(indifference(|i, j| bf[i][j], rows, cols, 0.0, 1.0)) else { return };
                let Some(y) = solve_f64(indifference(|j, i| af[i][j], cols, rows, 0.0, 1.0)) else { return };
                if x[..k].iter().chain(&y[..k]).any(|&w| w <= -TOL) {
                    return;
                }
                let (v, w) = (x[k], y[k]);
                let tol = TOL * scale;
                if (0..n).any(|j| rows.iter().zip(&x).map(|(&i, xi)| xi * bf[i][j]).sum::<f64>() > v + tol) {
                    return;
                }
                if (0..m).any(|i| cols.iter().zip(&y).map(|(&j, yj)| yj * af[i][j]).sum::<f64>() > w + tol) {
                    return;
                }
                // exact pass
                let zero = Rational::zero();
                let one = Rational::one();
                let Some(x) = solve_exact(indifference(|i, j| dense.b[i][j].clone(), rows, cols, zero.clone(), one.clone())) else { return };
                let Some(y) = solve_exact(indifference(|j, i| dense.a[i][j].clone(), cols, rows, zero.clone(), one.clone())) else { return };
                // zero weights give the extreme points of degenerate games
                if x[..k].iter().chain(&y[..k]).any(|w| w.is_negative()) {
                    return;
                }
                let (v, w) = (&x[k], &y[k]);
                for j in 0..n {
                    let s: Rational = rows.iter().zip(&x).map(|(&i, xi)| xi * &dense.b[i][j]).sum();
                    if s > *v {
                        return;
                    }
                }
                for i in 0..m {
                    let s: Rational = cols.iter().zip(&y).map(|(&j, yj)| yj * &dense.a[i][j]).sum();
                    if s > *w {
                        return;
                    }
                }
                let mut row = vec![zero.clone(); m];
                for (&i, xi) in rows.iter().zip(&x) {
                    row[i] = xi.clone();
                }
                let col = cols.iter().zip(&y).filter(|(_, yj)| yj.is_positive()).map(|(&j, yj)| (j, yj.clone())).collect();
                out.insert(DenseEquilibrium { row, col });
            });
        });
    }
    out.into_iter().collect()
}

/// Columns strictly dominated by another pure column for the column player.
pub fn dominated_columns(dense: &Dense<Rational>) -> BTreeSet<usize> {
    let (m, n) = (dense.rows(), dense.cols());
    let col = |j: usize| (0..m).map(|i| &dense.b[i][j]).collect::<Vec<_>>();
    let cols: Vec<Vec<&Rational>> = (0..n).map(col).collect();
    (0..n).filter(|&j| (0..n).any(|k| k != j && (0..m).all(|i| cols[k][i] > cols[j][i]))).collect()
}

/// The SplitMix64 generator.
#[derive(Clone, Debug)]
pub struct SplitMix64(pub u64);

impl SplitMix64 {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// `next_u64() % r` as a signed integer.
    pub fn below(&mut self, r: u64) -> i64 {
        (self.next_u64() % r) as i64
    }
}

/// A `2 x 2^n` additive game from `seed` (see the module docs).
pub fn random_game(seed: u64, n: usize) -> AdditiveBimatrixGame {
    let mut g = SplitMix64(seed);
    let r = |a: i64, b: i64| Rational::new(BigInt::from(a), BigInt::from(b));
    let mut weights = Vec::new();
    let mut blocks = Vec::new();
    let mut consts = Vec::new();
    for _ in 0..2 {
        let c0 = r(g.below(21) - 10, 4);
        let c1 = r(g.below(21) - 10, 4);
        consts.push(LinPoly::new(c0, c1));
        let mut w = Vec::new();
        let mut b = Vec::new();
        for _ in 0..n {
            w.push(r(1 + g.below(9), 10));
            let mut coef = || {
                let c0 = r(g.below(41) - 20, 1 + g.below(6));
                let c1 = r(g.below(201) - 100, 1 + g.below(6));
                LinPoly::new(c0, c1)
            };
            let stand = coef();
            let draw = coef();
            b.push([stand, draw]);
        }
        weights.push(w);
        blocks.push(b);
    }
    AdditiveGame::new((0..n).map(Label::Index).collect(), weights, blocks, consts, Opponent::NegatedAtZero).expect("valid game")
}

/// Why a claimed equilibrium is not one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Deviation {
    /// Row `row` earns more than the support rows.
    Row { row: usize, gain: Rational },
    /// Flipping `label` in support column `column` pays more.
    Flip { column: usize, label: usize, gain: Rational },
    /// Support columns earn different amounts.
    Unequal { column: usize },
    /// Weights are negative or do not sum to one.
    Weights,
}

/// Checks a mixed strategy pair of an additive game at `alpha` exactly: no
/// row beats the support rows, no single-bit flip of a support column pays,
/// and the support columns tie. For additive games this is the full Nash
/// condition.
pub fn check_nash(
    game: &AdditiveBimatrixGame,
    rows: &[(usize, Rational)],
    cols: &[(DrawSet, Rational)],
    alpha: &Rational,
) -> std::result::Result<(), Deviation> {
    let sum = |v: &mut dyn Iterator<Item = Rational>| v.fold(Rational::zero(), |a, b| a + b);
    let one = Rational::one();
    if rows.iter().any(|(_, w)| w.is_negative()) || cols.iter().any(|(_, w)| w.is_negative()) {
        return Err(Deviation::Weights);
    }
    if sum(&mut rows.iter().map(|(_, w)| w.clone())) != one || sum(&mut cols.iter().map(|(_, w)| w.clone())) != one {
        return Err(Deviation::Weights);
    }
    let a = |u: usize| -> Rational { cols.iter().map(|(t, w)| w * game.opponent_payoff(u, t).expect("width").eval(alpha)).sum() };
    let best = rows.iter().map(|&(u, _)| a(u)).max().expect("nonempty");
    let worst = rows.iter().filter(|(_, w)| w.is_positive()).map(|&(u, _)| a(u)).min().expect("nonempty");
    if worst < best {
        return Err(Deviation::Row { row: rows[0].0, gain: best - worst });
    }
    for u in 0..game.rows() {
        let v = a(u);
        if v > best {
            return Err(Deviation::Row { row: u, gain: v - &best });
        }
    }
    let b = |t: &DrawSet| -> Rational { rows.iter().map(|(u, w)| w * game.column_payoff(*u, t).expect("width").eval(alpha)).sum() };
    let mut first: Option<Rational> = None;
    for (c, (t, w)) in cols.iter().enumerate() {
        if !w.is_positive() {
            continue;
        }
        let v = b(t);
        match &first {
            None => first = Some(v),
            Some(f) if *f != v => return Err(Deviation::Unequal { column: c }),
            _ => {}
        }
        for l in 0..game.n() {
            let g: Rational = rows.iter().map(|(u, w)| w * game.gain(*u, l).eval(alpha)).sum();
            let g = if t.contains(l) { -g } else { g };
            if g.is_positive() {
                return Err(Deviation::Flip { column: c, label: l, gain: g });
            }
        }
    }
    Ok(())
}

/// [`check_nash`] for an equilibrium family of a reduced two-row sub-game:
/// the family is evaluated at `alpha`, lifted through `red`, and checked on
/// `full` with the row mixture placed on `rows`.
pub fn check_family(
    full: &AdditiveBimatrixGame,
    red: &Reduction,
    rows: (usize, usize),
    e: &foster::NashEquilibrium,
    alpha: &Rational,
) -> Result<std::result::Result<(), Deviation>> {
    let pe = e.at(&AlphaPoint::from_rational(alpha.clone()))?;
    let irrational = || Error::Unsupported("irrational weight at rational alpha".into());
    let p = pe.p.as_rational().ok_or_else(irrational)?.clone();
    let cols = pe.banker.iter().map(|(t, w)| Ok((red.lift(t), w.as_rational().ok_or_else(irrational)?.clone()))).collect::<Result<Vec<_>>>()?;
    Ok(check_nash(full, &[(rows.0, Rational::one() - &p), (rows.1, p)], &cols, alpha))
}

/// Outcome of comparing Foster's algorithm with the brute-force oracle on one game.
#[derive(Clone, Debug, Default)]
pub struct OracleReport {
    pub seed: u64,
    pub n: usize,
    /// Rational `alpha` values compared.
    pub samples: Vec<Rational>,
    /// `(alpha, foster, oracle)` where the equilibrium sets differ.
    pub mismatches: Vec<(Rational, Vec<DenseEquilibrium>, Vec<DenseEquilibrium>)>,
    /// Columns outside the reduced family that are not strictly dominated.
    pub undominated_eliminated: Vec<usize>,
    /// Surviving columns beaten in every row by a single-bit flip.
    pub dominated_survivors: Vec<usize>,
    pub error: Option<String>,
}

impl OracleReport {
    pub fn ok(&self) -> bool {
        self.error.is_none() && self.mismatches.is_empty() && self.undominated_eliminated.is_empty() && self.dominated_survivors.is_empty()
    }
}

/// Sample points: every rational cell boundary of the solution and three
/// rationals inside each cell between them.
fn sample_points(sol: &foster::Solution) -> Vec<Rational> {
    let mut pts: Vec<AlphaPoint> = vec![sol.range.lo.clone(), sol.range.hi.clone()];
    pts.extend(sol.intersections.iter().map(|x| x.alpha.clone()));
    for e in &sol.equilibria {
        pts.push(e.validity.lo.clone());
        pts.push(e.validity.hi.clone());
    }
    pts.sort();
    pts.dedup();
    let mut out = Vec::new();
    for (i, x) in pts.iter().enumerate() {
        if let Some(r) = x.as_rational() {
            out.push(r.clone());
        }
        if let Some(y) = pts.get(i + 1) {
            let cell = AlphaInterval { lo: x.clone(), hi: y.clone(), lo_open: true, hi_open: true };
            out.extend(cell.sample_rationals(3));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Lemma-style reduction against explicit dominance at `alpha`.
fn check_reduce(game: &AdditiveBimatrixGame, alpha: &Rational, report: &mut OracleReport) -> Result<()> {
    let x = AlphaPoint::from_rational(alpha.clone());
    let red = reduce(game, &AlphaInterval::point(x)?);
    let dense = expand(game, alpha)?;
    let dominated = dominated_columns(&dense);
    let n = game.n();
    for j in 0..1u64 << n {
        let t = DrawSet::from_index(n, j);
        let in_family = red.fixed_draw.iter().all(|&l| t.contains(l)) && red.fixed_stand.iter().all(|&l| !t.contains(l));
        if !in_family {
            if !dominated.contains(&(j as usize)) {
                report.undominated_eliminated.push(j as usize);
            }
            continue;
        }
        for &l in &red.free {
            let flip = t.with(l, !t.contains(l)).to_index().expect("small") as usize;
            if (0..game.rows()).all(|u| dense.b[u][flip] > dense.b[u][j as usize]) {
                report.dominated_survivors.push(j as usize);
                break;
            }
        }
    }
    Ok(())
}

/// Foster's equilibria against support enumeration for one seeded game.
pub fn oracle_check(seed: u64, n: usize) -> OracleReport {
    let mut report = OracleReport { seed, n, ..Default::default() };
    let game = random_game(seed, n);
    let run = |report: &mut OracleReport| -> Result<()> {
        let sol = foster::solve(&game, &AlphaInterval::full())?;
        report.samples = sample_points(&sol);
        for alpha in report.samples.clone() {
            let x = AlphaPoint::from_rational(alpha.clone());
            let mut mine: Vec<DenseEquilibrium> = sol
                .equilibria_at(&x)?
                .iter()
                .map(|pe| DenseEquilibrium::from_point(pe).ok_or_else(|| Error::Unsupported("irrational weight at rational alpha".into())))
                .collect::<Result<_>>()?;
            mine.sort();
            mine.dedup();
            let theirs = nash_all(&expand(&game, &alpha)?, 2);
            if mine != theirs {
                report.mismatches.push((alpha, mine, theirs));
            }
        }
        check_reduce(&game, &Rational::zero(), report)?;
        check_reduce(&game, &Rational::new(1.into(), 20.into()), report)?;
        Ok(())
    };
    if let Err(e) = run(&mut report) {
        report.error = Some(e.to_string());
    }
    report
}
