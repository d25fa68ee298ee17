//! Foster's algorithm for additive `2 x 2^n` games, uniformly in `alpha`.
//!
//! Row 0 and row 1 are the row player's two pure strategies. At label `l`
//! the column player's gain from drawing against row `u` is
//! `delta[u](l) = w[u][l] (b[u][l][1] - b[u][l][0])`, linear in `alpha`.
//! Against the mixture `(1-p, p)` drawing is strictly better iff
//! `(1-p) delta[0] + p delta[1] > 0`, so each label whose two gains have
//! opposite signs contributes a threshold curve `p(l) = delta0 / (delta0 - delta1)`.
//!
//! [`solve`] splits the `(alpha, p)` rectangle along these curves, checks
//! every curve segment and every crossing for an equalizing column mixture,
//! and verifies the side conditions that rule out all other equilibria.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::additive_game::{AdditiveGame, DrawSet};
use crate::exactnum::{AlphaInterval, AlphaPoint, LinFrac, QuadAlgebraic};
use crate::{Error, LinFracAlpha, LinPolyAlpha, Rational, Result};

type Game = AdditiveGame<Rational>;

fn qa(r: Rational) -> QuadAlgebraic {
    QuadAlgebraic::from_rational(r)
}

fn zero() -> QuadAlgebraic {
    qa(Rational::zero())
}

fn one() -> QuadAlgebraic {
    qa(Rational::one())
}

fn two_rows(game: &Game) -> Result<()> {
    if game.rows() != 2 {
        return Err(Error::NotTwoRows(game.rows()));
    }
    Ok(())
}

fn deltas(game: &Game, l: usize) -> [LinPolyAlpha; 2] {
    [game.gain(0, l), game.gain(1, l)]
}

/// `a[0][T] - a[1][T]`; positive when the row player prefers row 0.
pub fn row_difference(game: &Game, t: &DrawSet) -> Result<LinPolyAlpha> {
    Ok(game.opponent_payoff(0, t)? - game.opponent_payoff(1, t)?)
}

/// Sign of `(1-p) d0(alpha) + p d1(alpha)`.
fn gain_sign(d: &[LinPolyAlpha; 2], alpha: &AlphaPoint, p: &QuadAlgebraic) -> Ordering {
    let g0 = d[0].eval_quad(alpha);
    let g1 = d[1].eval_quad(alpha);
    g0.add(&p.mul(&g1.sub(&g0))).sign()
}

/// Which of the four move classes a label falls in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MoveClass {
    /// Stand against both rows.
    T00,
    /// Stand against row 0, draw against row 1.
    T01,
    /// Draw against row 0, stand against row 1.
    T10,
    /// Draw against both rows.
    T11,
}

fn class_of(s0: Ordering, s1: Ordering) -> Option<MoveClass> {
    use Ordering::*;
    match (s0, s1) {
        (Equal, Equal) => None,
        (Less, Less) => Some(MoveClass::T00),
        (Greater, Greater) => Some(MoveClass::T11),
        (Less | Equal, Greater | Equal) => Some(MoveClass::T01),
        (Greater | Equal, Less | Equal) => Some(MoveClass::T10),
    }
}

/// The partition of labels into `T00`, `T01`, `T10`, `T11`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Classification {
    pub t00: Vec<usize>,
    pub t01: Vec<usize>,
    pub t10: Vec<usize>,
    pub t11: Vec<usize>,
}

impl Classification {
    pub fn class(&self, l: usize) -> Option<MoveClass> {
        [(&self.t00, MoveClass::T00), (&self.t01, MoveClass::T01), (&self.t10, MoveClass::T10), (&self.t11, MoveClass::T11)]
            .into_iter()
            .find(|(s, _)| s.contains(&l))
            .map(|(_, c)| c)
    }
}

/// Classifies every label over `at`. The class must be the same at every
/// point of the interval.
pub fn classify(game: &Game, at: &AlphaInterval) -> Result<Classification> {
    two_rows(game)?;
    let mut cls = Classification::default();
    let inner = if at.is_point() { at.lo.clone() } else { qa(at.interior_rational().expect("proper interval")) };
    for l in 0..game.n() {
        let d = deltas(game, l);
        let signs_at = |x: &AlphaPoint| [d[0].eval_quad(x).sign(), d[1].eval_quad(x).sign()];
        let s = signs_at(&inner);
        let class = class_of(s[0], s[1]).ok_or_else(|| Error::Uncovered { label: l, alpha: inner.to_string() })?;
        if !at.is_point() {
            for (u, du) in d.iter().enumerate() {
                if let Some(r) = du.root() {
                    let r = qa(r);
                    if r > at.lo && r < at.hi {
                        return Err(Error::NonConstantSign { row: u, label: l });
                    }
                }
            }
            for (x, open) in [(&at.lo, at.lo_open), (&at.hi, at.hi_open)] {
                if open {
                    continue;
                }
                let e = signs_at(x);
                if class_of(e[0], e[1]) != Some(class) {
                    let row = if e[0] != s[0] { 0 } else { 1 };
                    return Err(Error::NonConstantSign { row, label: l });
                }
            }
        }
        match class {
            MoveClass::T00 => cls.t00.push(l),
            MoveClass::T01 => cls.t01.push(l),
            MoveClass::T10 => cls.t10.push(l),
            MoveClass::T11 => cls.t11.push(l),
        }
    }
    Ok(cls)
}

/// Rising curves belong to `T01` (draw above the curve), falling ones to
/// `T10` (draw below it).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CurveKind {
    Rising,
    Falling,
}

/// Best-response discontinuity `p(l)` as a function of `alpha`.
#[derive(Clone, Debug, PartialEq)]
pub struct ThresholdCurve {
    pub label: usize,
    pub curve: LinFracAlpha,
    pub kind: CurveKind,
}

fn threshold(d: &[LinPolyAlpha; 2]) -> Result<LinFracAlpha> {
    LinFrac::new(d[0].clone(), &d[0] - &d[1])
}

/// One curve for each label of `T01` and `T10`, by label.
pub fn thresholds(game: &Game, cls: &Classification) -> Result<Vec<ThresholdCurve>> {
    two_rows(game)?;
    let mut out: Vec<ThresholdCurve> = Vec::new();
    for (set, kind) in [(&cls.t01, CurveKind::Rising), (&cls.t10, CurveKind::Falling)] {
        for &l in set {
            out.push(ThresholdCurve { label: l, curve: threshold(&deltas(game, l))?, kind });
        }
    }
    out.sort_by_key(|c| c.label);
    Ok(out)
}

/// Pure best responses to `(1-p, p)`: `base` together with any subset of `ties`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BestResponse {
    pub base: DrawSet,
    pub ties: Vec<usize>,
}

impl BestResponse {
    /// All pure best responses. With ties `a < b` the order is
    /// `base`, `base + b`, `base + a`, `base + a + b`.
    pub fn strategies(&self) -> Vec<DrawSet> {
        tie_strategies(&self.base, &self.ties)
    }
}

fn tie_strategies(base: &DrawSet, ties: &[usize]) -> Vec<DrawSet> {
    let k = ties.len();
    (0..1usize << k)
        .map(|mask| {
            let mut t = base.clone();
            for (j, &l) in ties.iter().enumerate() {
                if (mask >> (k - 1 - j)) & 1 == 1 {
                    t.set(l, true);
                }
            }
            t
        })
        .collect()
}

fn response(game: &Game, alpha: &AlphaPoint, p: &QuadAlgebraic, skip: &[usize]) -> Result<BestResponse> {
    let mut base = DrawSet::empty(game.n());
    let mut ties = Vec::new();
    for l in 0..game.n() {
        if skip.contains(&l) {
            ties.push(l);
            continue;
        }
        match gain_sign(&deltas(game, l), alpha, p) {
            Ordering::Greater => base.set(l, true),
            Ordering::Equal => ties.push(l),
            Ordering::Less => {}
        }
    }
    ties.sort_unstable();
    if ties.len() > 2 {
        return Err(Error::TripleTie { alpha: alpha.to_string(), labels: ties });
    }
    Ok(BestResponse { base, ties })
}

/// Column player's pure best responses to `(1-p, p)` at `alpha`.
pub fn best_response(game: &Game, alpha: &AlphaPoint, p: &QuadAlgebraic) -> Result<BestResponse> {
    two_rows(game)?;
    response(game, alpha, p, &[])
}

/// Vertices of the equalizing set. `signs[i]` is the sign of
/// `a[0][T_i] - a[1][T_i]`; `mode` is `Equal` for an interior `p`,
/// `Greater` at `p = 0` (row 0 weakly best) and `Less` at `p = 1`.
fn vertices(signs: &[Ordering], mode: Ordering) -> Vec<(usize, Option<usize>)> {
    let mut out = Vec::new();
    for (i, &s) in signs.iter().enumerate() {
        if s == Ordering::Equal || s == mode {
            out.push((i, None));
        }
    }
    for i in 0..signs.len() {
        for j in i + 1..signs.len() {
            if signs[i] != Ordering::Equal && signs[i] == signs[j].reverse() {
                out.push((i, Some(j)));
            }
        }
    }
    out
}

/// Equalizing mixtures for a `2 x k` payoff matrix of the row player,
/// `k` in `{2, 4}`: the vertices of the set of column mixtures that leave
/// the row player indifferent. Each mixture has length `k`.
pub fn equalizing_mix(rows: [&[Rational]; 2]) -> Result<Vec<Vec<Rational>>> {
    let k = rows[0].len();
    if rows[1].len() != k || !(k == 2 || k == 4) {
        return Err(Error::Width { expected: 2, found: k });
    }
    let d: Vec<Rational> = (0..k).map(|i| &rows[0][i] - &rows[1][i]).collect();
    if k == 2 && d.iter().all(Zero::is_zero) {
        return Err(Error::DegenerateEqualizer);
    }
    let signs: Vec<Ordering> = d.iter().map(|x| x.cmp(&Rational::zero())).collect();
    Ok(vertices(&signs, Ordering::Equal)
        .into_iter()
        .map(|(i, j)| {
            let mut q = vec![Rational::zero(); k];
            match j {
                None => q[i] = Rational::one(),
                Some(j) => {
                    let den = &d[i] - &d[j];
                    q[j] = &d[i] / &den;
                    q[i] = -&d[j] / &den;
                }
            }
            q
        })
        .collect())
}

/// Weights of the pair `(i, j)` that equalize `d_i` and `d_j`.
fn pair_weights(di: &LinPolyAlpha, dj: &LinPolyAlpha) -> Result<(LinFracAlpha, LinFracAlpha)> {
    let den = di - dj;
    Ok((LinFrac::new(-dj, den.clone())?, LinFrac::new(di.clone(), den)?))
}

fn point_of(x: &AlphaPoint) -> AlphaInterval {
    AlphaInterval { lo: x.clone(), hi: x.clone(), lo_open: false, hi_open: false }
}

/// `cell` intersected with `{p >= 0}` (or `{p <= 0}`).
fn clip(p: &LinPolyAlpha, cell: &AlphaInterval, nonneg: bool) -> Option<AlphaInterval> {
    let p = if nonneg { p.clone() } else { -p };
    let Some(r) = p.root() else {
        return (p.c0 >= Rational::zero()).then(|| cell.clone());
    };
    let r = qa(r);
    let mut out = cell.clone();
    if p.c1 > Rational::zero() {
        // [r, inf)
        if r > out.lo {
            out.lo = r;
            out.lo_open = false;
        }
    } else if r < out.hi {
        out.hi = r;
        out.hi_open = false;
    }
    let ok = match out.lo.cmp(&out.hi) {
        Ordering::Less => true,
        Ordering::Equal => !out.lo_open && !out.hi_open,
        Ordering::Greater => false,
    };
    ok.then_some(out)
}

fn remove_point(iv: AlphaInterval, z: &AlphaPoint) -> Vec<AlphaInterval> {
    if !iv.contains(z) {
        return vec![iv];
    }
    if iv.is_point() {
        return vec![];
    }
    if *z == iv.lo {
        return vec![AlphaInterval { lo_open: true, ..iv }];
    }
    if *z == iv.hi {
        return vec![AlphaInterval { hi_open: true, ..iv }];
    }
    vec![
        AlphaInterval { lo: iv.lo.clone(), hi: z.clone(), lo_open: iv.lo_open, hi_open: true },
        AlphaInterval { lo: z.clone(), hi: iv.hi.clone(), lo_open: true, hi_open: iv.hi_open },
    ]
}

/// Common zeros of two linear polynomials inside `cell`.
enum CommonZero {
    None,
    At(AlphaPoint),
    Everywhere,
}

fn common_zero(a: &LinPolyAlpha, b: &LinPolyAlpha, cell: &AlphaInterval) -> CommonZero {
    let z = match (a.is_zero(), b.is_zero()) {
        (true, true) => return CommonZero::Everywhere,
        (true, false) => b.root(),
        (false, true) => a.root(),
        (false, false) => match (a.root(), b.root()) {
            (Some(x), Some(y)) if x == y => Some(x),
            _ => None,
        },
    };
    match z.map(qa) {
        Some(z) if cell.contains(&z) => CommonZero::At(z),
        _ => CommonZero::None,
    }
}

/// Where `di` and `dj` have weakly opposite signs and are not both zero.
fn opposite_pieces(di: &LinPolyAlpha, dj: &LinPolyAlpha, cell: &AlphaInterval) -> (Vec<AlphaInterval>, bool) {
    let a = clip(di, cell, true).and_then(|x| clip(dj, &x, false));
    let b = clip(di, cell, false).and_then(|x| clip(dj, &x, true));
    let mut pieces: Vec<AlphaInterval> = a.into_iter().chain(b).collect();
    let degenerate = match common_zero(di, dj, cell) {
        CommonZero::None => false,
        CommonZero::Everywhere => return (vec![], true),
        CommonZero::At(z) => {
            pieces = pieces.into_iter().flat_map(|p| remove_point(p, &z)).collect();
            true
        }
    };
    pieces.sort_by(|x, y| x.lo.cmp(&y.lo));
    (pieces, degenerate)
}

/// Where the threshold curve of one label lives inside the range.
#[derive(Clone, Debug)]
pub struct Curve {
    pub label: usize,
    pub frac: LinFracAlpha,
    /// Maximal pieces of the range where `0 <= p(l) <= 1`.
    pub pieces: Vec<(AlphaInterval, CurveKind)>,
    /// Values of `alpha` where the curve meets `p = 0` or `p = 1`.
    pub exits: Vec<AlphaPoint>,
}

impl Curve {
    pub fn contains(&self, x: &AlphaPoint) -> bool {
        self.pieces.iter().any(|(iv, _)| iv.contains(x))
    }

    pub fn value(&self, x: &AlphaPoint) -> Result<QuadAlgebraic> {
        self.frac.eval_quad(x)
    }
}

fn curve_of(game: &Game, l: usize, range: &AlphaInterval) -> Result<Option<Curve>> {
    let d = deltas(game, l);
    if d[0].is_zero() && d[1].is_zero() {
        return Err(Error::Uncovered { label: l, alpha: range.to_string() });
    }
    if d[0].is_zero() || d[1].is_zero() {
        return Ok(None);
    }
    if let CommonZero::At(z) = common_zero(&d[0], &d[1], range) {
        return Err(Error::Uncovered { label: l, alpha: z.to_string() });
    }
    let rising = clip(&d[0], range, false).and_then(|x| clip(&d[1], &x, true));
    let falling = clip(&d[0], range, true).and_then(|x| clip(&d[1], &x, false));
    let mut pieces: Vec<(AlphaInterval, CurveKind)> =
        rising.map(|iv| (iv, CurveKind::Rising)).into_iter().chain(falling.map(|iv| (iv, CurveKind::Falling))).filter(|(iv, _)| !iv.is_point()).collect();
    if pieces.is_empty() {
        return Ok(None);
    }
    pieces.sort_by(|x, y| x.0.lo.cmp(&y.0.lo));
    let mut exits = Vec::new();
    for (iv, _) in &pieces {
        for x in [&iv.lo, &iv.hi] {
            if d.iter().any(|du| du.eval_quad(x).sign().is_eq()) && !exits.contains(x) {
                exits.push(x.clone());
            }
        }
    }
    exits.sort();
    Ok(Some(Curve { label: l, frac: threshold(&d)?, pieces, exits }))
}

/// A crossing of two curves strictly inside `0 < p < 1`.
#[derive(Clone, Debug)]
pub struct Intersection {
    pub alpha: AlphaPoint,
    pub p: QuadAlgebraic,
    /// The two labels, lower first.
    pub labels: (usize, usize),
}

fn intersections(curves: &[Curve], range: &AlphaInterval) -> Result<Vec<Intersection>> {
    let (lo, hi) = (range.lo.as_rational().expect("rational range").clone(), range.hi.as_rational().expect("rational range").clone());
    let mut out = Vec::new();
    for (i, a) in curves.iter().enumerate() {
        for b in &curves[i + 1..] {
            let q = a.frac.cross(&b.frac);
            if q.is_zero() {
                let overlap = a.pieces.iter().any(|(x, _)| b.pieces.iter().any(|(y, _)| x.intersect(y).is_some_and(|z| !z.is_point())));
                if overlap {
                    return Err(Error::IdenticalCurves);
                }
                continue;
            }
            for z in q.roots_in(&lo, &hi) {
                if !(a.contains(&z) && b.contains(&z) && range.contains(&z)) {
                    continue;
                }
                let p = a.value(&z)?;
                if p == zero() || p == one() {
                    continue;
                }
                out.push(Intersection { alpha: z, p, labels: (a.label, b.label) });
            }
        }
    }
    // three curves through one point
    for x in &out {
        let mut labels: Vec<usize> = out.iter().filter(|y| y.alpha == x.alpha && y.p == x.p).flat_map(|y| [y.labels.0, y.labels.1]).collect();
        labels.sort_unstable();
        labels.dedup();
        if labels.len() > 2 {
            return Err(Error::TripleTie { alpha: x.alpha.to_string(), labels });
        }
    }
    out.sort_by(|x, y| x.labels.cmp(&y.labels).then_with(|| x.alpha.cmp(&y.alpha)));
    Ok(out)
}

/// One curve segment between consecutive crossings.
#[derive(Clone, Debug)]
pub struct IntervalCase {
    /// 1-based, ordered by label and then by `alpha`.
    pub number: usize,
    pub label: usize,
    pub kind: CurveKind,
    pub interval: AlphaInterval,
    /// Column strategy at the other labels.
    pub base: DrawSet,
    /// `a[0][T] - a[1][T]` for `T = base` and `T = base + label`.
    pub d: [LinPolyAlpha; 2],
    /// Drawing probability at `label`, where it lies in `[0, 1]`.
    pub q: Option<LinFracAlpha>,
    pub valid: Vec<AlphaInterval>,
}

/// A crossing of two curves.
#[derive(Clone, Debug)]
pub struct PointCase {
    /// 1-based, ordered by label pair and then by `alpha`.
    pub number: usize,
    pub labels: (usize, usize),
    pub alpha: AlphaPoint,
    pub p: QuadAlgebraic,
    pub base: DrawSet,
    /// `SS, SD, DS, DD`, the first letter for the lower label.
    pub strategies: Vec<DrawSet>,
    pub d: Vec<LinPolyAlpha>,
    pub equalizers: Vec<Vec<(DrawSet, LinFracAlpha)>>,
}

/// Where an equilibrium came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    Interval(usize),
    Point(usize),
    /// Row player pure on row 0.
    Bottom,
    /// Row player pure on row 1.
    Top,
}

/// An equilibrium family over `validity`: the row player draws (row 1)
/// with probability `player`, the column player mixes `banker`.
#[derive(Clone, Debug)]
pub struct NashEquilibrium {
    pub player: LinFracAlpha,
    pub banker: Vec<(DrawSet, LinFracAlpha)>,
    pub validity: AlphaInterval,
    pub origin: Origin,
}

/// An equilibrium at one value of `alpha`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointEquilibrium {
    pub p: QuadAlgebraic,
    /// Positive weights only, sorted by strategy.
    pub banker: Vec<(DrawSet, QuadAlgebraic)>,
}

impl NashEquilibrium {
    pub fn at(&self, x: &AlphaPoint) -> Result<PointEquilibrium> {
        let mut banker = Vec::new();
        for (t, w) in &self.banker {
            let w = w.eval_quad(x)?;
            if w.sign() != Ordering::Equal {
                banker.push((t.clone(), w));
            }
        }
        banker.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(PointEquilibrium { p: self.player.eval_quad(x)?, banker })
    }

    /// The column strategy with the largest weight at the lower end of the validity range.
    pub fn support(&self) -> Vec<&DrawSet> {
        self.banker.iter().map(|(t, _)| t).collect()
    }

    /// Label where the column player mixes, for a two-strategy mixture.
    pub fn mixing_label(&self) -> Option<usize> {
        match self.banker.as_slice() {
            [(a, _), (b, _)] => match a.diff(b).as_slice() {
                [l] => Some(*l),
                _ => None,
            },
            _ => None,
        }
    }

    /// `(strategy without the mixing label, drawing probability there)`.
    pub fn draw_probability(&self) -> Option<(DrawSet, LinFracAlpha)> {
        let l = self.mixing_label()?;
        let (lo, hi) = if self.banker[0].0.contains(l) { (&self.banker[1], &self.banker[0]) } else { (&self.banker[0], &self.banker[1]) };
        Some((lo.0.clone(), hi.1.clone()))
    }
}

/// Which side condition a check belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Line {
    /// `a[0][T(0)] < a[1][T(0)]`.
    Bottom,
    /// `a[0][T(1)] > a[1][T(1)]`.
    Top,
    /// `a[0][T(p)] != a[1][T(p)]` between two curves.
    Region,
}

#[derive(Clone, Debug)]
pub struct SideCheck {
    pub line: Line,
    pub cell: AlphaInterval,
    /// For regions, the `p` range between the neighbouring curves.
    pub p_range: Option<(QuadAlgebraic, QuadAlgebraic)>,
    pub strategy: DrawSet,
    pub d: LinPolyAlpha,
    pub ok: bool,
}

/// Counts reported per game.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    /// (a) threshold curves.
    pub curves: usize,
    /// (b) crossings.
    pub intersections: usize,
    /// (c) curves meeting `p = 0` or `p = 1`.
    pub exits: usize,
    /// (d) curve segments.
    pub interval_cases: usize,
    /// (e) values of `alpha` with more than one equilibrium.
    pub nonunique: usize,
}

/// Everything [`solve`] found over a range.
#[derive(Clone, Debug)]
pub struct Solution {
    pub range: AlphaInterval,
    pub curves: Vec<Curve>,
    pub intersections: Vec<Intersection>,
    pub interval_cases: Vec<IntervalCase>,
    pub point_cases: Vec<PointCase>,
    pub equilibria: Vec<NashEquilibrium>,
    /// Cell decomposition with per-cell verdicts.
    pub certificate: Vec<SideCheck>,
    /// Points with several equilibria.
    pub nonunique: Vec<AlphaPoint>,
    /// Open intervals with several equilibria (none for the games of interest).
    pub nonunique_intervals: Vec<AlphaInterval>,
    /// Cells where no equilibrium was found.
    pub gaps: Vec<AlphaInterval>,
    /// Points where an equalizing mixture is not isolated.
    pub degenerate: Vec<AlphaInterval>,
    pub stats: Stats,
}

impl Solution {
    pub fn side_conditions_hold(&self) -> bool {
        self.certificate.iter().all(|c| c.ok)
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &SideCheck> {
        self.certificate.iter().filter(|c| !c.ok)
    }

    /// Distinct equilibria valid at `x`.
    pub fn equilibria_at(&self, x: &AlphaPoint) -> Result<Vec<PointEquilibrium>> {
        let mut out: Vec<PointEquilibrium> = Vec::new();
        for e in &self.equilibria {
            if e.validity.contains(x) {
                let pe = e.at(x)?;
                if !out.contains(&pe) {
                    out.push(pe);
                }
            }
        }
        Ok(out)
    }

    /// Unique equilibrium at every `alpha` except the listed points.
    pub fn is_unique_off_points(&self) -> bool {
        self.gaps.is_empty() && self.nonunique_intervals.is_empty() && self.side_conditions_hold()
    }
}

struct Evaluator<'a> {
    game: &'a Game,
    cache: HashMap<DrawSet, LinPolyAlpha>,
}

impl<'a> Evaluator<'a> {
    fn new(game: &'a Game) -> Self {
        Evaluator { game, cache: HashMap::new() }
    }

    fn d(&mut self, t: &DrawSet) -> Result<LinPolyAlpha> {
        if let Some(v) = self.cache.get(t) {
            return Ok(v.clone());
        }
        let v = row_difference(self.game, t)?;
        self.cache.insert(t.clone(), v.clone());
        Ok(v)
    }
}

fn sample(cell: &AlphaInterval) -> AlphaPoint {
    if cell.is_point() {
        cell.lo.clone()
    } else {
        qa(AlphaPoint::rational_between(&cell.lo, &cell.hi))
    }
}

fn nonzero_on(d: &LinPolyAlpha, cell: &AlphaInterval) -> bool {
    cell.sign_constant(d, Ordering::Greater) || cell.sign_constant(d, Ordering::Less)
}

fn sign_on(d: &LinPolyAlpha, cell: &AlphaInterval, want: Ordering) -> bool {
    cell.sign_constant(d, want)
}

fn check_range(range: &AlphaInterval) -> Result<()> {
    if range.lo.as_rational().is_none() || range.hi.as_rational().is_none() {
        return Err(Error::InvalidInterval(format!("{range}: endpoints must be rational")));
    }
    if range.is_point() {
        return Err(Error::InvalidInterval(format!("{range}: use solve_at for a single alpha")));
    }
    Ok(())
}

/// Threshold curves and their crossings over `range`.
pub fn curves(game: &Game, range: &AlphaInterval) -> Result<(Vec<Curve>, Vec<Intersection>)> {
    two_rows(game)?;
    check_range(range)?;
    let mut cs = Vec::new();
    for l in 0..game.n() {
        if let Some(c) = curve_of(game, l, range)? {
            cs.push(c);
        }
    }
    let xs = intersections(&cs, range)?;
    Ok((cs, xs))
}

/// The segments of every curve between crossings, and the crossings, over `range`.
pub fn enumerate_cases(game: &Game, range: &AlphaInterval) -> Result<(Vec<IntervalCase>, Vec<PointCase>)> {
    let (cs, xs) = curves(game, range)?;
    let mut ev = Evaluator::new(game);
    Ok((interval_cases(game, &cs, &xs, &mut ev)?, point_cases(game, &cs, &xs, &mut ev)?))
}

fn segments(c: &Curve, xs: &[Intersection]) -> Vec<(AlphaInterval, CurveKind)> {
    let mut out = Vec::new();
    for (piece, kind) in &c.pieces {
        let mut cuts: Vec<AlphaPoint> =
            xs.iter().filter(|x| (x.labels.0 == c.label || x.labels.1 == c.label) && piece.contains(&x.alpha)).map(|x| x.alpha.clone()).collect();
        cuts.sort();
        cuts.dedup();
        let mut pts = vec![piece.lo.clone()];
        pts.extend(cuts.iter().cloned());
        pts.push(piece.hi.clone());
        pts.dedup();
        let closed = |x: &AlphaPoint, end_open: bool| !end_open && !cuts.contains(x) && !c.exits.contains(x);
        for w in pts.windows(2) {
            let lo_open = !(w[0] == piece.lo && closed(&w[0], piece.lo_open));
            let hi_open = !(w[1] == piece.hi && closed(&w[1], piece.hi_open));
            out.push((AlphaInterval { lo: w[0].clone(), hi: w[1].clone(), lo_open, hi_open }, *kind));
        }
    }
    out
}

fn interval_cases(game: &Game, cs: &[Curve], xs: &[Intersection], ev: &mut Evaluator) -> Result<Vec<IntervalCase>> {
    let mut out = Vec::new();
    for c in cs {
        for (seg, kind) in segments(c, xs) {
            let a = qa(seg.interior_rational().expect("proper segment"));
            let p = c.value(&a)?;
            let br = response(game, &a, &p, &[c.label])?;
            if br.ties.len() != 1 {
                return Err(Error::TripleTie { alpha: a.to_string(), labels: br.ties });
            }
            let with = br.base.with(c.label, true);
            let d = [ev.d(&br.base)?, ev.d(&with)?];
            let (valid, _) = opposite_pieces(&d[0], &d[1], &seg);
            let q = if valid.is_empty() { None } else { Some(LinFrac::new(d[0].clone(), &d[0] - &d[1])?) };
            out.push(IntervalCase { number: 0, label: c.label, kind, interval: seg, base: br.base, d, q, valid });
        }
    }
    out.sort_by(|x, y| x.label.cmp(&y.label).then_with(|| x.interval.lo.cmp(&y.interval.lo)));
    for (i, c) in out.iter_mut().enumerate() {
        c.number = i + 1;
    }
    Ok(out)
}

fn point_cases(game: &Game, cs: &[Curve], xs: &[Intersection], ev: &mut Evaluator) -> Result<Vec<PointCase>> {
    let mut out = Vec::new();
    for (i, x) in xs.iter().enumerate() {
        let (a, b) = x.labels;
        let br = response(game, &x.alpha, &x.p, &[a, b])?;
        let strategies = br.strategies();
        let d: Vec<LinPolyAlpha> = strategies.iter().map(|t| ev.d(t)).collect::<Result<_>>()?;
        let signs: Vec<Ordering> = d.iter().map(|di| di.eval_quad(&x.alpha).sign()).collect();
        let mut equalizers = Vec::new();
        for (i, j) in vertices(&signs, Ordering::Equal) {
            equalizers.push(match j {
                None => vec![(strategies[i].clone(), LinFrac::constant(Rational::one()))],
                Some(j) => {
                    let (wi, wj) = pair_weights(&d[i], &d[j])?;
                    vec![(strategies[i].clone(), wi), (strategies[j].clone(), wj)]
                }
            });
        }
        let _ = cs;
        out.push(PointCase { number: i + 1, labels: x.labels, alpha: x.alpha.clone(), p: x.p.clone(), base: br.base, strategies, d, equalizers });
    }
    Ok(out)
}

/// Sorted distinct critical values of `alpha`: range ends, curve piece ends,
/// crossings and zeros of every gain.
fn critical_points(game: &Game, range: &AlphaInterval, cs: &[Curve], xs: &[Intersection]) -> Vec<AlphaPoint> {
    let mut pts = vec![range.lo.clone(), range.hi.clone()];
    for c in cs {
        for (iv, _) in &c.pieces {
            pts.push(iv.lo.clone());
            pts.push(iv.hi.clone());
        }
    }
    pts.extend(xs.iter().map(|x| x.alpha.clone()));
    for l in 0..game.n() {
        for d in deltas(game, l) {
            if let Some(r) = d.root() {
                let r = qa(r);
                if range.contains(&r) {
                    pts.push(r);
                }
            }
        }
    }
    pts.retain(|x| *x >= range.lo && *x <= range.hi);
    pts.sort();
    pts.dedup();
    pts
}

fn cells_of(pts: &[AlphaPoint], range: &AlphaInterval) -> Vec<AlphaInterval> {
    let mut cells = Vec::new();
    for (i, x) in pts.iter().enumerate() {
        if range.contains(x) {
            cells.push(point_of(x));
        }
        if let Some(y) = pts.get(i + 1) {
            cells.push(AlphaInterval { lo: x.clone(), hi: y.clone(), lo_open: true, hi_open: true });
        }
    }
    cells
}

/// Active curve values strictly inside `(0, 1)` at `x`, ascending and distinct.
fn curve_values(cs: &[Curve], x: &AlphaPoint) -> Result<Vec<QuadAlgebraic>> {
    let mut vals = Vec::new();
    for c in cs {
        if c.contains(x) {
            let v = c.value(x)?;
            if v > zero() && v < one() {
                vals.push(v);
            }
        }
    }
    vals.sort();
    vals.dedup();
    Ok(vals)
}

/// Boundary equilibria (row player pure) and side conditions on one cell.
fn boundary(
    game: &Game,
    cell: &AlphaInterval,
    ev: &mut Evaluator,
    checks: &mut Vec<SideCheck>,
    eqs: &mut Vec<NashEquilibrium>,
    degenerate: &mut Vec<AlphaInterval>,
) -> Result<()> {
    let x = sample(cell);
    for (line, p, mode) in [(Line::Bottom, zero(), Ordering::Greater), (Line::Top, one(), Ordering::Less)] {
        let br = response(game, &x, &p, &[])?;
        let strategies = br.strategies();
        let d: Vec<LinPolyAlpha> = strategies.iter().map(|t| ev.d(t)).collect::<Result<_>>()?;
        // Lemma side condition on the strategy without tied labels
        let want = mode.reverse();
        checks.push(SideCheck { line, cell: cell.clone(), p_range: None, strategy: br.base.clone(), d: d[0].clone(), ok: sign_on(&d[0], cell, want) });
        let player = LinFrac::constant(p.as_rational().expect("rational").clone());
        let origin = if line == Line::Bottom { Origin::Bottom } else { Origin::Top };
        for (i, t) in strategies.iter().enumerate() {
            if let Some(v) = clip(&d[i], cell, mode == Ordering::Greater) {
                eqs.push(NashEquilibrium { player: player.clone(), banker: vec![(t.clone(), LinFrac::constant(Rational::one()))], validity: v, origin });
            }
            for j in i + 1..strategies.len() {
                let (pieces, deg) = opposite_pieces(&d[i], &d[j], cell);
                if deg {
                    degenerate.push(cell.clone());
                }
                for v in pieces {
                    let (wi, wj) = pair_weights(&d[i], &d[j])?;
                    eqs.push(NashEquilibrium { player: player.clone(), banker: vec![(t.clone(), wi), (strategies[j].clone(), wj)], validity: v, origin });
                }
            }
        }
    }
    Ok(())
}

/// Region side conditions on one cell.
fn regions(game: &Game, cs: &[Curve], cell: &AlphaInterval, ev: &mut Evaluator, checks: &mut Vec<SideCheck>) -> Result<()> {
    let x = sample(cell);
    let mut bounds = vec![zero()];
    bounds.extend(curve_values(cs, &x)?);
    bounds.push(one());
    for w in bounds.windows(2) {
        let p = qa(AlphaPoint::rational_between(&w[0], &w[1]));
        let br = response(game, &x, &p, &[])?;
        if !br.ties.is_empty() {
            return Err(Error::TripleTie { alpha: x.to_string(), labels: br.ties });
        }
        let d = ev.d(&br.base)?;
        let ok = nonzero_on(&d, cell);
        checks.push(SideCheck { line: Line::Region, cell: cell.clone(), p_range: Some((w[0].clone(), w[1].clone())), strategy: br.base, d, ok });
    }
    Ok(())
}

fn merge(mut eqs: Vec<NashEquilibrium>) -> Vec<NashEquilibrium> {
    let key = |e: &NashEquilibrium| {
        let mut k = format!("{:?}|{}|", e.origin_class(), e.player);
        for (t, w) in &e.banker {
            k.push_str(&format!("{}:{};", t.binary(), w));
        }
        k
    };
    let mut groups: BTreeMap<String, Vec<NashEquilibrium>> = BTreeMap::new();
    for e in eqs.drain(..) {
        groups.entry(key(&e)).or_default().push(e);
    }
    let mut out = Vec::new();
    for (_, mut g) in groups {
        g.sort_by(|a, b| a.validity.lo.cmp(&b.validity.lo).then(a.validity.lo_open.cmp(&b.validity.lo_open)));
        let mut cur: Option<NashEquilibrium> = None;
        for e in g {
            let touches = |c: &NashEquilibrium| match c.validity.hi.cmp(&e.validity.lo) {
                Ordering::Greater => true,
                Ordering::Equal => !(c.validity.hi_open && e.validity.lo_open),
                Ordering::Less => false,
            };
            match cur.as_mut() {
                Some(c) if touches(c) => {
                    if e.validity.hi > c.validity.hi || (e.validity.hi == c.validity.hi && !e.validity.hi_open) {
                        c.validity.hi = e.validity.hi.clone();
                        c.validity.hi_open = e.validity.hi_open;
                    }
                }
                _ => {
                    if let Some(c) = cur.take() {
                        out.push(c);
                    }
                    cur = Some(e);
                }
            }
        }
        out.extend(cur);
    }
    out.sort_by(|a, b| a.validity.lo.cmp(&b.validity.lo).then_with(|| a.validity.hi.cmp(&b.validity.hi)));
    out
}

impl NashEquilibrium {
    fn origin_class(&self) -> u8 {
        match self.origin {
            Origin::Bottom | Origin::Top => 0,
            Origin::Interval(_) => 1,
            Origin::Point(_) => 2,
        }
    }
}

/// All equilibria of a `2 x 2^n` additive game for `alpha` in `range`
/// (rational, closed or half-open ends).
pub fn solve(game: &Game, range: &AlphaInterval) -> Result<Solution> {
    let (cs, xs) = curves(game, range)?;
    let mut ev = Evaluator::new(game);
    let interval_cases = interval_cases(game, &cs, &xs, &mut ev)?;
    let point_cases = point_cases(game, &cs, &xs, &mut ev)?;

    let mut eqs = Vec::new();
    for c in &interval_cases {
        if let Some(q) = &c.q {
            let curve = cs.iter().find(|k| k.label == c.label).expect("curve");
            let one_minus = LinFrac::new(-&c.d[1], &c.d[0] - &c.d[1])?;
            for v in &c.valid {
                eqs.push(NashEquilibrium {
                    player: curve.frac.clone(),
                    banker: vec![(c.base.clone(), one_minus.clone()), (c.base.with(c.label, true), q.clone())],
                    validity: v.clone(),
                    origin: Origin::Interval(c.number),
                });
            }
        }
    }
    for c in &point_cases {
        let curve = cs.iter().find(|k| k.label == c.labels.0).expect("curve");
        for mix in &c.equalizers {
            eqs.push(NashEquilibrium { player: curve.frac.clone(), banker: mix.clone(), validity: point_of(&c.alpha), origin: Origin::Point(c.number) });
        }
    }

    let pts = critical_points(game, range, &cs, &xs);
    let cells = cells_of(&pts, range);
    let mut certificate = Vec::new();
    let mut degenerate = Vec::new();
    for c in &interval_cases {
        if c.q.is_some() || !c.valid.is_empty() {
            if let CommonZero::At(z) = common_zero(&c.d[0], &c.d[1], &c.interval) {
                degenerate.push(point_of(&z));
            }
        }
    }
    for cell in &cells {
        boundary(game, cell, &mut ev, &mut certificate, &mut eqs, &mut degenerate)?;
        regions(game, &cs, cell, &mut ev, &mut certificate)?;
    }
    let equilibria = merge(eqs);

    let mut sol = Solution {
        range: range.clone(),
        curves: cs,
        intersections: xs,
        interval_cases,
        point_cases,
        equilibria,
        certificate,
        nonunique: vec![],
        nonunique_intervals: vec![],
        gaps: vec![],
        degenerate,
        stats: Stats::default(),
    };

    // multiplicity over a refinement that includes every validity endpoint
    let mut all = pts;
    for e in &sol.equilibria {
        all.push(e.validity.lo.clone());
        all.push(e.validity.hi.clone());
    }
    all.sort();
    all.dedup();
    for cell in cells_of(&all, range) {
        let x = sample(&cell);
        let n = sol.equilibria_at(&x)?.len();
        if n > 1 {
            if cell.is_point() {
                sol.nonunique.push(x);
            } else {
                sol.nonunique_intervals.push(cell);
            }
        } else if n == 0 {
            sol.gaps.push(cell);
        }
    }
    sol.stats = Stats {
        curves: sol.curves.len(),
        intersections: sol.intersections.len(),
        exits: sol.curves.iter().filter(|c| !c.exits.is_empty()).count(),
        interval_cases: sol.interval_cases.len(),
        nonunique: sol.nonunique.len(),
    };
    Ok(sol)
}

/// Equilibria at one value of `alpha`, found pointwise.
#[derive(Clone, Debug)]
pub struct PointSolution {
    pub equilibria: Vec<PointEquilibrium>,
    /// Some `p` strictly between thresholds leaves the row player indifferent,
    /// so equilibria form a continuum that is not listed.
    pub continuum: bool,
    /// All three side conditions hold at this `alpha`.
    pub side_conditions: bool,
}

/// All equilibria at a single `alpha`.
pub fn solve_at(game: &Game, x: &AlphaPoint) -> Result<PointSolution> {
    two_rows(game)?;
    let mut ev = Evaluator::new(game);
    let mut thresholds: Vec<(QuadAlgebraic, usize)> = Vec::new();
    for l in 0..game.n() {
        let d = deltas(game, l);
        let s = [d[0].eval_quad(x).sign(), d[1].eval_quad(x).sign()];
        match class_of(s[0], s[1]) {
            None => return Err(Error::Uncovered { label: l, alpha: x.to_string() }),
            Some(MoveClass::T01 | MoveClass::T10) => {
                let v = threshold(&d)?.eval_quad(x)?;
                if v > zero() && v < one() {
                    thresholds.push((v, l));
                }
            }
            _ => {}
        }
    }
    thresholds.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
    let mut values: Vec<QuadAlgebraic> = thresholds.iter().map(|t| t.0.clone()).collect();
    values.dedup();

    let mut out: Vec<PointEquilibrium> = Vec::new();
    let mut side_conditions = true;
    let add = |pe: PointEquilibrium, out: &mut Vec<PointEquilibrium>| {
        if !out.contains(&pe) {
            out.push(pe);
        }
    };
    let mut levels: Vec<(QuadAlgebraic, Ordering)> = vec![(zero(), Ordering::Greater)];
    levels.extend(values.iter().map(|v| (v.clone(), Ordering::Equal)));
    levels.push((one(), Ordering::Less));
    for (p, mode) in &levels {
        let br = response(game, x, p, &[])?;
        let strategies = br.strategies();
        let d: Vec<QuadAlgebraic> = strategies.iter().map(|t| Ok(ev.d(t)?.eval_quad(x))).collect::<Result<_>>()?;
        let signs: Vec<Ordering> = d.iter().map(QuadAlgebraic::sign).collect();
        if *mode != Ordering::Equal && signs[0] != mode.reverse() {
            side_conditions = false;
        }
        for (i, j) in vertices(&signs, *mode) {
            let mut banker = match j {
                None => vec![(strategies[i].clone(), one())],
                Some(j) => {
                    let den = d[i].sub(&d[j]);
                    let wi = ratio(&d[j].neg(), &den);
                    let wj = ratio(&d[i], &den);
                    vec![(strategies[i].clone(), wi), (strategies[j].clone(), wj)]
                }
            };
            banker.sort_by(|a, b| a.0.cmp(&b.0));
            add(PointEquilibrium { p: p.clone(), banker }, &mut out);
        }
    }
    let mut bounds = vec![zero()];
    bounds.extend(values.iter().cloned());
    bounds.push(one());
    let mut continuum = false;
    for w in bounds.windows(2) {
        let p = qa(AlphaPoint::rational_between(&w[0], &w[1]));
        let br = response(game, x, &p, &[])?;
        if ev.d(&br.base)?.eval_quad(x).sign() == Ordering::Equal {
            continuum = true;
        }
    }
    Ok(PointSolution { equilibria: out, continuum, side_conditions: side_conditions && !continuum })
}

/// `n / m` for numbers sharing a radicand.
fn ratio(n: &QuadAlgebraic, m: &QuadAlgebraic) -> QuadAlgebraic {
    if m.is_rational() {
        return n.mul_rational(&(Rational::one() / m.a()));
    }
    // multiply by the conjugate of m
    let conj = QuadAlgebraic::new(m.a().clone(), -m.b().clone(), m.radicand().clone()).expect("radicand");
    let norm = m.mul(&conj);
    let norm = norm.as_rational().expect("rational norm").clone();
    n.mul(&conj).mul_rational(&(Rational::one() / norm))
}
