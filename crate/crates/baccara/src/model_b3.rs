//! Model B3: both players see their own two-card hands.
//!
//! Player has 32 pure strategies (a stand-or-draw choice at each of the five
//! total-5 hands). The pipeline guesses Banker's support from Model B2,
//! solves the `2 x 2^5` game with the roles reversed to find Player's two
//! rows, then confirms on the full game: Foster on those two rows, and the
//! other 30 rows checked directly.

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::additive_game::{reduce, AdditiveGame, DrawSet, InfoSet, Label, Opponent, Reduction};
use crate::cards::{Cell, DealTable, DeckCount, Hand};
use crate::exactnum::{alpha_max, AlphaInterval, AlphaPoint, LinFrac, LinPoly, QuadAlgebraic};
use crate::foster::{self, Classification, NashEquilibrium, PointEquilibrium, Solution};
use crate::model_b2::{self, assemble, curve_of, player_draws, summary_mnemonic, TOTAL_FIVE};
use crate::{AdditiveBimatrixGame, Error, LinFracAlpha, Rational, Result};

/// Player strategy `u` as five letters over `(0,5)`, `(1,4)`, `(2,3)`, `(6,9)`, `(7,8)`.
pub fn player_mnemonic(u: usize) -> String {
    (0..5).map(|i| if (u >> (4 - i)) & 1 == 1 { 'D' } else { 'S' }).collect()
}

/// The 32-row game over the 484 information sets.
pub fn build_b3(d: DeckCount) -> Result<AdditiveBimatrixGame> {
    let table = DealTable::new(d);
    build_from(&table)
}

fn build_from(table: &DealTable) -> Result<AdditiveBimatrixGame> {
    let rows: Vec<Vec<bool>> = (0..32).map(player_draws).collect();
    assemble::<Rational>(table, &rows)
}

fn five_hands() -> Vec<Hand> {
    TOTAL_FIVE.iter().map(|&(a, b)| Hand::new(a, b)).collect()
}

fn rat_of(p: &LinPoly<i128>, denom: i128) -> LinPoly<Rational> {
    let den = Rational::from_integer(BigInt::from(denom));
    LinPoly::new(Rational::from_integer(BigInt::from(p.c0)) / &den, Rational::from_integer(BigInt::from(p.c1)) / &den)
}

/// Banker's summed payoff from one Player hand when Player stands (`0`) or
/// draws (`1`), Banker playing `v`.
fn hand_cells(table: &DealTable, h: Hand, v: &DrawSet) -> [Cell; 2] {
    let hi = h.non_natural_index().expect("non-natural");
    let mut out = [Cell::default(); 2];
    for j in Hand::non_natural() {
        let ji = j.non_natural_index().expect("non-natural");
        let s = table.stander(hi, ji);
        let drew = v.contains(InfoSet::new(j, None).expect("valid").index());
        out[0].add(&Cell { weight: s.weight, stand: *s.payoff(drew), draw: *s.payoff(drew) });
        for k in 0..10 {
            let c = table.drawer(hi, ji, k);
            let drew = v.contains(InfoSet::new(j, Some(k)).expect("valid").index());
            out[1].add(&Cell { weight: c.weight, stand: *c.payoff(drew), draw: *c.payoff(drew) });
        }
    }
    out
}

/// The `2 x 2^5` game with Banker as the row player restricted to `pair`
/// (full 484-label strategies) and Player choosing at the five total-5 hands.
///
/// Player's payoff is additive: minus Banker's payoff at `alpha = 0`.
/// Banker's payoff is read from the full game, `alpha` included.
pub fn restricted_game(table: &DealTable, full: Arc<AdditiveBimatrixGame>, pair: [&DrawSet; 2]) -> Result<AdditiveBimatrixGame> {
    let hands = five_hands();
    let mut weights = Vec::new();
    let mut contrib = Vec::new();
    let mut consts = Vec::new();
    for v in pair {
        let mut w = Vec::new();
        let mut c = Vec::new();
        let mut stand_sum = Rational::zero();
        for &h in &hands {
            let cells = hand_cells(table, h, v);
            let den = Rational::from_integer(BigInt::from(table.denom));
            w.push(Rational::from_integer(BigInt::from(cells[0].weight)) / &den);
            let s = -rat_of(&cells[0].stand, table.denom).c0;
            let dr = -rat_of(&cells[1].stand, table.denom).c0;
            stand_sum += &s;
            c.push([LinPoly::constant(s), LinPoly::constant(dr)]);
        }
        let base = -full.column_payoff(0, v)?.c0;
        consts.push(LinPoly::constant(base - stand_sum));
        weights.push(w);
        contrib.push(c);
    }
    let pair_owned = [pair[0].clone(), pair[1].clone()];
    let rule = move |v: usize, t: &DrawSet| {
        let u = t.to_index().expect("five bits") as usize;
        full.column_payoff(u, &pair_owned[v]).expect("width")
    };
    AdditiveGame::from_contributions(hands.into_iter().map(Label::Hand).collect(), weights, contrib, consts, Opponent::Rule(Arc::new(rule)))
}

/// Player's two rows and the mixing found in a restricted game.
#[derive(Clone, Debug)]
pub struct Candidate {
    /// Player rows (lower first), differing at one total-5 hand.
    pub rows: (usize, usize),
    /// Player's probability of `rows.1`.
    pub q_star: LinFracAlpha,
    /// Banker's probability of the drawing strategy of the pair.
    pub p_star: LinFracAlpha,
    pub validity: AlphaInterval,
}

#[derive(Clone, Debug)]
pub struct RestrictedSolution {
    /// Banker strategies standing and drawing at the mixing label.
    pub pair: [DrawSet; 2],
    pub game: AdditiveBimatrixGame,
    pub solution: Solution,
    pub classification: [Classification; 2],
    /// Thresholds `p*(h)` at `alpha = 0`, ascending, for hands with a threshold.
    pub ordering: Vec<(Hand, Rational)>,
    pub candidates: Vec<Candidate>,
}

/// Foster's algorithm on the restricted game for one Banker pair.
pub fn restricted_solve(table: &DealTable, full: Arc<AdditiveBimatrixGame>, pair: [&DrawSet; 2]) -> Result<RestrictedSolution> {
    let game = restricted_game(table, full, pair)?;
    let full_range = AlphaInterval::full();
    let zero = QuadAlgebraic::from_rational(Rational::zero());
    let top = QuadAlgebraic::from_rational(alpha_max());
    let classification = [foster::classify(&game, &AlphaInterval::point(zero)?)?, foster::classify(&game, &AlphaInterval::point(top)?)?];
    let mut ordering = Vec::new();
    for t in foster::thresholds(&game, &classification[0])? {
        let h = match game.labels()[t.label] {
            Label::Hand(h) => h,
            _ => unreachable!("labels are hands"),
        };
        ordering.push((h, t.curve.value(&Rational::zero())?));
    }
    ordering.sort_by(|a, b| a.1.cmp(&b.1));
    let solution = foster::solve(&game, &full_range)?;
    let mut candidates = Vec::new();
    for e in solution.equilibria.iter().filter(|e| !e.validity.is_point()) {
        if let Some((base, q)) = e.draw_probability() {
            let l = e.mixing_label().expect("two strategies");
            let r0 = base.to_index().expect("five bits") as usize;
            let r1 = base.with(l, true).to_index().expect("five bits") as usize;
            candidates.push(Candidate { rows: (r0, r1), q_star: q, p_star: e.player.clone(), validity: e.validity.clone() });
        }
    }
    Ok(RestrictedSolution { pair: [pair[0].clone(), pair[1].clone()], game, solution, classification, ordering, candidates })
}

/// The full game reduced over `[0, 1/10]`, free labels in summary order.
pub fn reduced(game: &AdditiveBimatrixGame) -> Reduction {
    let r = reduce(game, &AlphaInterval::full());
    let mut order: Vec<usize> = (0..r.free.len()).collect();
    let key = |l: usize| match game.labels()[l] {
        Label::Info(s) => s.group_key(),
        _ => unreachable!("labels are information sets"),
    };
    order.sort_by_key(|&i| key(r.free[i]));
    r.reorder(&order)
}

/// Sign test of a linear-fractional function over an interval.
fn holds_on(f: &LinFracAlpha, iv: &AlphaInterval, ok: impl Fn(Ordering) -> bool) -> Result<bool> {
    let mut pts = vec![iv.lo.clone(), iv.hi.clone()];
    for p in [f.num(), f.den()] {
        if let Some(r) = p.root() {
            let r = QuadAlgebraic::from_rational(r);
            if r > iv.lo && r < iv.hi {
                pts.push(r);
            }
        }
    }
    pts.sort();
    pts.dedup();
    for (i, x) in pts.iter().enumerate() {
        if iv.contains(x) && !ok(f.eval_quad(x)?.sign()) {
            return Ok(false);
        }
        if let Some(y) = pts.get(i + 1) {
            let m = QuadAlgebraic::from_rational(AlphaPoint::rational_between(x, y));
            if !ok(f.eval_quad(&m)?.sign()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Outcome of Condition (Aq) for one equilibrium family of the two-row game.
#[derive(Clone, Debug)]
pub struct AqCheck {
    pub equilibrium: NashEquilibrium,
    /// Rows doing strictly better than the support somewhere in the validity range.
    pub violations: Vec<usize>,
    /// Rows tying with the support at the sample point.
    pub ties: Vec<usize>,
}

impl AqCheck {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Row `u`'s payoff against the Banker mixture minus row `r`'s, as a
/// function of `alpha`.
fn row_gap(full: &AdditiveBimatrixGame, e: &NashEquilibrium, r: usize, u: usize) -> Result<LinFracAlpha> {
    let a = |row: usize, t: &DrawSet| -> Result<Rational> { Ok(full.opponent_payoff(row, t)?.c0) };
    match e.banker.as_slice() {
        [(t, _)] => Ok(LinFrac::constant(a(u, t)? - a(r, t)?)),
        [(t0, _), (t1, w1)] => {
            let c0 = a(u, t0)? - a(r, t0)?;
            let c1 = a(u, t1)? - a(r, t1)?;
            // c0 + w1 (c1 - c0)
            let num = w1.num().scale(&(&c1 - &c0)) + w1.den().scale(&c0);
            LinFrac::new(num, w1.den().clone())
        }
        _ => Err(Error::Unsupported("Banker mixture with more than two strategies".into())),
    }
}

/// Condition (Aq): the two support rows are maximal among all rows of `full`
/// (the reduced 32-row game) against the Banker mixture of `e`.
pub fn condition_aq(full: &AdditiveBimatrixGame, rows: (usize, usize), e: &NashEquilibrium) -> Result<AqCheck> {
    let mut violations = Vec::new();
    let mut ties = Vec::new();
    let sample = if e.validity.is_point() { e.validity.lo.clone() } else { QuadAlgebraic::from_rational(e.validity.interior_rational().expect("proper")) };
    for u in 0..full.rows() {
        if u == rows.0 || u == rows.1 {
            continue;
        }
        let g = row_gap(full, e, rows.0, u)?;
        if !holds_on(&g, &e.validity, |s| s != Ordering::Greater)? {
            violations.push(u);
        } else if g.eval_quad(&sample)?.sign() == Ordering::Equal {
            ties.push(u);
        }
    }
    Ok(AqCheck { equilibrium: e.clone(), violations, ties })
}

/// Foster on rows `rows` of the reduced game, then Condition (Aq) on each family.
#[derive(Clone, Debug)]
pub struct Confirmation {
    pub rows: (usize, usize),
    /// The two-row game in reduced labels.
    pub game: AdditiveBimatrixGame,
    pub solution: Solution,
    pub checks: Vec<AqCheck>,
}

impl Confirmation {
    pub fn accepted(&self) -> impl Iterator<Item = &NashEquilibrium> {
        self.checks.iter().filter(|c| c.ok()).map(|c| &c.equilibrium)
    }
}

pub fn confirm(red: &Reduction, rows: (usize, usize)) -> Result<Confirmation> {
    let game = red.game.select_rows(&[rows.0, rows.1]);
    let solution = foster::solve(&game, &AlphaInterval::full())?;
    let checks = solution.equilibria.iter().map(|e| condition_aq(&red.game, rows, e)).collect::<Result<Vec<_>>>()?;
    Ok(Confirmation { rows, game, solution, checks })
}

/// A confirmed equilibrium family on an `alpha` range.
#[derive(Clone, Debug)]
pub struct B3Regime {
    pub interval: AlphaInterval,
    pub rows: (usize, usize),
    /// Player's probability of `rows.1`.
    pub player: LinFracAlpha,
    pub mixing: Option<InfoSet>,
    /// Banker's drawing probability at `mixing`.
    pub q: Option<LinFracAlpha>,
    /// Full 484-label strategy standing at `mixing`.
    pub strategy: DrawSet,
    pub equilibrium: NashEquilibrium,
}

impl B3Regime {
    pub fn q_constant(&self) -> Option<Rational> {
        self.q.as_ref().filter(|q| q.is_constant()).map(|q| q.value(&Rational::zero()).expect("no pole"))
    }

    pub fn mnemonic(&self) -> String {
        summary_mnemonic(&self.strategy, self.mixing)
    }

    pub fn columns(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.equilibrium.banker.iter().filter_map(|(t, _)| t.to_index()).collect();
        v.sort_unstable();
        v
    }
}

/// Several confirmed equilibria at one `alpha`.
#[derive(Clone, Debug)]
pub struct B3Exceptional {
    pub alpha: AlphaPoint,
    pub rows: (usize, usize),
    pub equilibria: Vec<PointEquilibrium>,
}

/// Output of [`solve_b3`]. Existence only: other equilibria may exist.
#[derive(Clone, Debug)]
pub struct B3Solution {
    pub d: DeckCount,
    pub reduction: Reduction,
    pub restricted: Vec<RestrictedSolution>,
    pub confirmations: Vec<Confirmation>,
    /// Whether the single-label pair search over `(6,∅)` was needed.
    pub pair_search: bool,
    pub regimes: Vec<B3Regime>,
    pub exceptional: Vec<B3Exceptional>,
    /// Cells of `[0, 1/10]` with no confirmed equilibrium.
    pub uncovered: Vec<AlphaInterval>,
}

impl B3Solution {
    pub fn free_labels(&self) -> usize {
        self.reduction.free.len()
    }

    pub fn confirmation(&self, rows: (usize, usize)) -> Option<&Confirmation> {
        self.confirmations.iter().find(|c| c.rows == rows)
    }
}

fn label_of(red: &Reduction, l: usize) -> InfoSet {
    match red.game.labels()[l] {
        Label::Info(s) => s,
        _ => unreachable!("labels are information sets"),
    }
}

fn collect(red: &Reduction, confs: &[Confirmation]) -> Result<(Vec<B3Regime>, Vec<B3Exceptional>, Vec<AlphaInterval>)> {
    let mut regimes = Vec::new();
    let mut points: Vec<AlphaPoint> = vec![QuadAlgebraic::from_rational(Rational::zero()), QuadAlgebraic::from_rational(alpha_max())];
    for c in confs {
        for e in c.accepted() {
            points.push(e.validity.lo.clone());
            points.push(e.validity.hi.clone());
            if e.validity.is_point() {
                continue;
            }
            let (base, q, mixing) = match e.draw_probability() {
                Some((base, q)) => (base, Some(q), e.mixing_label().map(|l| label_of(red, l))),
                None => (e.banker[0].0.clone(), None, None),
            };
            regimes.push(B3Regime {
                interval: e.validity.clone(),
                rows: c.rows,
                player: e.player.clone(),
                mixing,
                q,
                strategy: red.lift(&base),
                equilibrium: e.clone(),
            });
        }
    }
    regimes.sort_by(|a, b| a.interval.lo.cmp(&b.interval.lo));
    points.sort();
    points.dedup();
    let mut exceptional = Vec::new();
    let mut uncovered = Vec::new();
    let full = AlphaInterval::full();
    for (i, x) in points.iter().enumerate() {
        let mut cells = Vec::new();
        if full.contains(x) {
            cells.push(AlphaInterval { lo: x.clone(), hi: x.clone(), lo_open: false, hi_open: false });
        }
        if let Some(y) = points.get(i + 1) {
            cells.push(AlphaInterval { lo: x.clone(), hi: y.clone(), lo_open: true, hi_open: true });
        }
        for cell in cells {
            let s = if cell.is_point() { cell.lo.clone() } else { QuadAlgebraic::from_rational(cell.interior_rational().expect("proper")) };
            let mut found = 0;
            for c in confs {
                let mut eqs: Vec<PointEquilibrium> = Vec::new();
                for e in c.accepted().filter(|e| e.validity.contains(&s)) {
                    let pe = e.at(&s)?;
                    if !eqs.contains(&pe) {
                        eqs.push(pe);
                    }
                }
                found += eqs.len();
                if eqs.len() > 1 && cell.is_point() {
                    exceptional.push(B3Exceptional { alpha: s.clone(), rows: c.rows, equilibria: eqs });
                }
            }
            if found == 0 {
                uncovered.push(cell);
            }
        }
    }
    Ok((regimes, exceptional, uncovered))
}

/// The Banker pairs to try first: each Model B2 regime's support.
pub fn b2_pairs(b2: &model_b2::B2Solution) -> Vec<[DrawSet; 2]> {
    let mut out: Vec<[DrawSet; 2]> = Vec::new();
    for r in &b2.regimes {
        if let Some(m) = r.mixing {
            let pair = [r.strategy.clone(), r.strategy.with(m.index(), true)];
            if !out.contains(&pair) {
                out.push(pair);
            }
        }
    }
    out
}

/// Pairs differing at one `(6,∅)` label, built on each B2 regime strategy.
pub fn six_empty_pairs(b2: &model_b2::B2Solution) -> Vec<[DrawSet; 2]> {
    let mut out: Vec<[DrawSet; 2]> = Vec::new();
    for r in &b2.regimes {
        let mut base = r.strategy.clone();
        if let Some(m) = r.mixing {
            base.set(m.index(), false);
        }
        for h in Hand::non_natural().into_iter().filter(|h| h.total() == 6) {
            let l = InfoSet::new(h, None).expect("valid").index();
            let pair = [base.with(l, false), base.with(l, true)];
            if !out.contains(&pair) {
                out.push(pair);
            }
        }
    }
    out
}

/// A Model B3 equilibrium for every `alpha` in `[0, 1/10]` (existence only).
pub fn solve_b3(d: DeckCount) -> Result<B3Solution> {
    let table = DealTable::new(d);
    let full = Arc::new(build_from(&table)?);
    let b2game = assemble::<Rational>(&table, &[player_draws(0), player_draws(31)])?;
    let b2 = model_b2::solve_game(d, &b2game)?;
    let red = reduced(&full);

    let mut restricted = Vec::new();
    let mut confirmations: Vec<Confirmation> = Vec::new();
    let run = |pairs: Vec<[DrawSet; 2]>, restricted: &mut Vec<RestrictedSolution>, confirmations: &mut Vec<Confirmation>| -> Result<()> {
        for pair in pairs {
            let rs = match restricted_solve(&table, full.clone(), [&pair[0], &pair[1]]) {
                Ok(rs) => rs,
                Err(_) => continue,
            };
            for c in &rs.candidates {
                if confirmations.iter().any(|x| x.rows == c.rows) {
                    continue;
                }
                if let Ok(conf) = confirm(&red, c.rows) {
                    confirmations.push(conf);
                }
            }
            restricted.push(rs);
        }
        Ok(())
    };
    run(b2_pairs(&b2), &mut restricted, &mut confirmations)?;
    let (mut regimes, mut exceptional, mut uncovered) = collect(&red, &confirmations)?;
    let mut pair_search = false;
    if !uncovered.is_empty() {
        pair_search = true;
        run(six_empty_pairs(&b2), &mut restricted, &mut confirmations)?;
        (regimes, exceptional, uncovered) = collect(&red, &confirmations)?;
    }
    Ok(B3Solution { d, reduction: red, restricted, confirmations, pair_search, regimes, exceptional, uncovered })
}

/// Player's draw probability at `(1,4)` in the closed forms.
pub fn p_closed_form(d: DeckCount) -> LinFracAlpha {
    if d.get() == 1 {
        return LinFrac::from_ints(4, 203, 76, -42).expect("nonzero");
    }
    let d = Rational::from_integer(BigInt::from(d.get()));
    let i = |n: i64| Rational::from_integer(BigInt::from(n));
    let c0 = (i(12) * &d - i(1)) * (i(16) * &d * &d - i(14) * &d + i(1));
    let c1 = i(8) * &d * (i(112) * &d * &d - i(24) * &d + i(1));
    let e0 = i(32) * &d * &d * (i(11) * &d - i(1));
    let e1 = -(i(16) * &d * &d * (i(12) * &d - i(1)));
    LinFrac::new(LinPoly::new(c0, c1), LinPoly::new(e0, e1)).expect("nonzero denominator")
}

/// Breakpoints of the Model B3 regime table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Breakpoint {
    B0,
    B1,
    B2,
    B3,
    B4,
    B5,
}

impl Breakpoint {
    /// The two labels whose curves cross there.
    pub fn labels(self) -> (InfoSet, InfoSet) {
        let six = InfoSet::of(0, 6, None);
        match self {
            Breakpoint::B0 => (six, InfoSet::of(3, 3, Some(6))),
            Breakpoint::B1 => (InfoSet::of(8, 8, None), InfoSet::of(5, 8, Some(8))),
            Breakpoint::B2 => (six, InfoSet::of(6, 9, Some(4))),
            Breakpoint::B3 => (six, InfoSet::of(0, 5, Some(4))),
            Breakpoint::B4 => (six, InfoSet::of(1, 4, Some(4))),
            Breakpoint::B5 => (six, InfoSet::of(2, 3, Some(4))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QFormula {
    D1(u8),
    D2(u8),
    Q4567a,
    Q4567b,
    Q8,
    Q9,
    Q1011c,
    D12b,
}

impl QFormula {
    pub fn value(self, d: DeckCount) -> Rational {
        let quartic = |c: [i64; 5]| {
            let x = Rational::from_integer(BigInt::from(d.get()));
            let num = c.iter().fold(Rational::zero(), |acc, &k| acc * &x + Rational::from_integer(BigInt::from(k)));
            let i = |n: i64| Rational::from_integer(BigInt::from(n));
            num / (i(256) * &x * &x * (i(11) * &x - i(1)) * (i(52) * &x - i(5)))
        };
        let r = |n: i64, m: i64| Rational::new(BigInt::from(n), BigInt::from(m));
        match self {
            QFormula::D1(1) => r(4519, 10_716),
            QFormula::D1(_) => r(3991, 10_716),
            QFormula::D2(1) => r(17_431, 64_512),
            QFormula::D2(2) => r(192_637, 709_632),
            QFormula::D2(_) => r(65_407, 236_544),
            QFormula::Q4567a => quartic([92_160, -120_128, 26_336, -2000, 47]),
            QFormula::Q4567b => quartic([91_776, -119_968, 26_320, -2000, 47]),
            QFormula::Q8 => quartic([91_904, -119_680, 26_064, -1932, 41]),
            QFormula::Q9 => quartic([91_648, -119_488, 26_032, -1932, 41]),
            QFormula::Q1011c => quartic([91_520, -119_520, 26_048, -1932, 41]),
            QFormula::D12b => r(1_689_974_681, 2_989_264_896),
        }
    }
}

/// Regime layout of the closed forms: breakpoints, formulas and the mixing label.
pub fn regime_layout(d: u32) -> (Vec<Breakpoint>, Vec<QFormula>, InfoSet) {
    use Breakpoint::*;
    use QFormula::*;
    let six = InfoSet::of(0, 6, None);
    match d {
        1 => (vec![B1], vec![D1(1), D1(2)], InfoSet::of(8, 8, None)),
        2 => (vec![B2, B3], vec![D2(1), D2(2), D2(3)], six),
        3 => (vec![], vec![Q4567b], six),
        4..=7 => (vec![B0], vec![Q4567a, Q4567b], six),
        8 => (vec![B4, B0], vec![Q8, Q4567a, Q4567b], six),
        9 => (vec![B5, B4, B0], vec![Q9, Q8, Q4567a, Q4567b], six),
        10 | 11 => (vec![B5, B0], vec![Q9, Q8, Q1011c], six),
        12 => (vec![B0], vec![Q9, D12b], six),
        _ => (vec![], vec![Q9], six),
    }
}

/// Player rows of the closed forms: mix between DSSDD and DDSDD.
pub const ROWS: (usize, usize) = (19, 27);

#[derive(Clone, Debug)]
pub struct ClosedForm {
    pub p: LinFracAlpha,
    pub mixing: InfoSet,
    pub schedule: Vec<(AlphaInterval, Rational)>,
    pub breakpoints: Vec<(Breakpoint, AlphaPoint)>,
}

/// Crossing of two threshold curves of a two-row game inside `(0, 1/10)`.
pub fn crossing(game: &AdditiveBimatrixGame, a: InfoSet, b: InfoSet) -> Result<AlphaPoint> {
    let zero = QuadAlgebraic::from_rational(Rational::zero());
    let top = QuadAlgebraic::from_rational(alpha_max());
    curve_of(game, a)?
        .intersect(&curve_of(game, b)?)?
        .into_iter()
        .find(|x| *x > zero && *x < top)
        .ok_or_else(|| Error::Unsupported(format!("curves of {a} and {b} do not cross")))
}

pub fn theorem2_closed_forms(d: DeckCount) -> Result<ClosedForm> {
    let full = build_b3(d)?;
    closed_forms_for(d, &full)
}

/// As [`theorem2_closed_forms`] for a prebuilt 32-row game.
pub fn closed_forms_for(d: DeckCount, full: &AdditiveBimatrixGame) -> Result<ClosedForm> {
    let two = full.select_rows(&[ROWS.0, ROWS.1]);
    let (bps, qs, mixing) = regime_layout(d.get());
    let mut points = Vec::new();
    for b in bps {
        let (x, y) = b.labels();
        points.push((b, crossing(&two, x, y)?));
    }
    let mut cuts = vec![QuadAlgebraic::from_rational(Rational::zero())];
    cuts.extend(points.iter().map(|(_, x)| x.clone()));
    cuts.push(QuadAlgebraic::from_rational(alpha_max()));
    let n = qs.len();
    let schedule = qs
        .into_iter()
        .enumerate()
        .map(|(i, q)| (AlphaInterval { lo: cuts[i].clone(), hi: cuts[i + 1].clone(), lo_open: i > 0, hi_open: i + 1 < n }, q.value(d)))
        .collect();
    Ok(ClosedForm { p: p_closed_form(d), mixing, schedule, breakpoints: points })
}

/// Limits as `d` grows: Player's `(1,4)` mix, Player's total-5 aggregate,
/// Banker's `((0,6),∅)` mix and Banker's `(6,∅)` aggregate.
pub fn limits() -> (LinFracAlpha, LinFracAlpha, Rational, Rational) {
    let mix = LinFrac::from_ints(6, 28, 11, -6).expect("nonzero");
    let agg = LinFrac::from_ints(9, -1, 11, -6).expect("nonzero");
    let r = |n: i64, m: i64| Rational::new(BigInt::from(n), BigInt::from(m));
    (mix, agg, r(179, 286), r(859, 2288))
}

/// Player's probability of drawing at a total of 5, mixing `rows` with
/// probability `p` on `rows.1`, weighted by the chance of each hand.
pub fn total_five_aggregate(d: DeckCount, rows: (usize, usize), p: &Rational) -> Rational {
    let table = DealTable::new(d);
    let mut num = Rational::zero();
    let mut den = Rational::zero();
    let v = DrawSet::empty(484);
    for (i, h) in five_hands().into_iter().enumerate() {
        let w = Rational::from_integer(BigInt::from(hand_cells(&table, h, &v)[0].weight));
        let bit = |u: usize| (u >> (4 - i)) & 1 == 1;
        let draw = match (bit(rows.0), bit(rows.1)) {
            (true, true) => Rational::one(),
            (false, false) => Rational::zero(),
            (false, true) => p.clone(),
            (true, false) => Rational::one() - p,
        };
        num += &w * draw;
        den += w;
    }
    num / den
}

/// Differences between the confirmed regimes and the closed forms; empty when they agree.
pub fn compare_closed_forms(sol: &B3Solution, cf: &ClosedForm) -> Vec<String> {
    if sol.regimes.len() != cf.schedule.len() {
        return vec![format!("{} regimes, closed forms have {}", sol.regimes.len(), cf.schedule.len())];
    }
    let mut out = Vec::new();
    for (r, (iv, q)) in sol.regimes.iter().zip(&cf.schedule) {
        if r.interval != *iv {
            out.push(format!("regime {} vs {}", r.interval, iv));
        }
        if r.rows != ROWS {
            out.push(format!("on {}: Player mixes rows {:?}", r.interval, r.rows));
        }
        if r.player != cf.p {
            out.push(format!("on {}: p = {}, closed form {}", r.interval, r.player, cf.p));
        }
        if r.mixing != Some(cf.mixing) {
            out.push(format!("on {}: mixing at {:?}", r.interval, r.mixing.map(|m| m.to_string())));
        }
        if r.q_constant().as_ref() != Some(q) {
            out.push(format!("on {}: q = {:?}, closed form {}", r.interval, r.q.as_ref().map(|q| q.to_string()), q));
        }
    }
    out
}
