//! Model B2: Player sees only his total, Banker sees his two-card hand.
//!
//! Player's only choice is to stand (row 0) or draw (row 1) at a total of 5.
//! Banker's pure strategies are subsets of the 484 information sets.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::additive_game::{reduce, AdditiveGame, DrawSet, InfoSet, Label, Opponent, Reduction};
use crate::cards::{falling, DealTable, DeckCount, Hand};
use crate::exactnum::{alpha_max, AlphaInterval, AlphaPoint, LinFrac, LinPoly, QuadAlgebraic, Scalar};
use crate::foster::{self, NashEquilibrium, PointEquilibrium, Solution, Stats};
use crate::{AdditiveBimatrixGame, Error, LinFracAlpha, LinPolyAlpha, Rational, Result};

/// The five two-card hands totalling 5, in strategy-bit order.
pub const TOTAL_FIVE: [(u8, u8); 5] = [(0, 5), (1, 4), (2, 3), (6, 9), (7, 8)];

/// Player's draw set for the 32-strategy model: totals 0 to 4, plus the
/// total-5 hands flagged in `u` (most significant bit first). Indexed like
/// [`Hand::non_natural`].
pub fn player_draws(u: usize) -> Vec<bool> {
    assert!(u < 32, "Player strategy index is 0..32");
    Hand::non_natural()
        .into_iter()
        .map(|h| h.total() <= 4 || TOTAL_FIVE.iter().position(|&(a, b)| Hand::new(a, b) == h).is_some_and(|i| (u >> (4 - i)) & 1 == 1))
        .collect()
}

fn lift<T: Scalar>(p: &LinPoly<i128>, denom: &T) -> LinPoly<T> {
    LinPoly::new(T::from_i128(p.c0) / denom.clone(), T::from_i128(p.c1) / denom.clone())
}

/// `p_u(0) b_u(0)`: Banker's expected payoff from naturals, the same for every row.
pub fn natural_term<T: Scalar>(table: &DealTable) -> LinPoly<T> {
    LinPoly::new(T::zero(), -T::from_i128(table.natural_wins) / T::from_i128(falling(table.d, 4)))
}

/// Closed form of [`natural_term`]: `-32 alpha d^2 (37120 d^2 - 4044 d + 109) / (52d)_4`.
pub fn natural_term_closed_form(d: DeckCount) -> LinPolyAlpha {
    let d = BigInt::from(d.get());
    let num = BigInt::from(32) * &d * &d * (BigInt::from(37120) * &d * &d - BigInt::from(4044) * &d + 109);
    let n = BigInt::from(52) * &d;
    let den = &n * (&n - 1) * (&n - 2) * (&n - 3);
    LinPoly::new(Rational::zero(), -Rational::new(num, den))
}

/// The additive game with one row per Player draw set (see [`player_draws`])
/// and the 484 information sets as labels, in [`InfoSet::all`] order.
pub fn assemble<T: Scalar>(table: &DealTable, rows: &[Vec<bool>]) -> Result<AdditiveGame<T>> {
    let denom = T::from_i128(table.denom);
    let infos = InfoSet::all();
    let mut weights = Vec::with_capacity(rows.len());
    let mut contrib = Vec::with_capacity(rows.len());
    for draws in rows {
        let mut w = Vec::with_capacity(infos.len());
        let mut c = Vec::with_capacity(infos.len());
        for s in &infos {
            let j = s.banker().non_natural_index().expect("non-natural");
            let mut cell = crate::cards::Cell::default();
            for (h, &drawn) in draws.iter().enumerate() {
                match s.third() {
                    Some(k) if drawn => cell.add(table.drawer(h, j, k)),
                    None if !drawn => cell.add(table.stander(h, j)),
                    _ => {}
                }
            }
            w.push(T::from_i128(cell.weight) / denom.clone());
            c.push([lift(&cell.stand, &denom), lift(&cell.draw, &denom)]);
        }
        weights.push(w);
        contrib.push(c);
    }
    let labels = infos.into_iter().map(Label::Info).collect();
    let nat = natural_term(table);
    AdditiveGame::from_contributions(labels, weights, contrib, vec![nat; rows.len()], Opponent::NegatedAtZero)
}

/// Banker's preferred move at one information set and one `alpha`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    S,
    D,
    /// Stand against row 0, draw against row 1.
    SD,
    /// Draw against row 0, stand against row 1.
    DS,
    /// Some row leaves Banker indifferent.
    Tie,
}

impl Move {
    pub fn from_signs(s0: Ordering, s1: Ordering) -> Self {
        use Ordering::*;
        match (s0, s1) {
            (Less, Less) => Move::S,
            (Greater, Greater) => Move::D,
            (Less, Greater) => Move::SD,
            (Greater, Less) => Move::DS,
            _ => Move::Tie,
        }
    }

    /// Forced, independent of Player's strategy.
    pub fn is_fixed(self) -> bool {
        matches!(self, Move::S | Move::D)
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Move::S => "S",
            Move::D => "D",
            Move::SD => "S/D",
            Move::DS => "D/S",
            Move::Tie => "=",
        })
    }
}

/// Moves of every label at `alpha`, comparing rows `rows.0` and `rows.1`.
pub fn move_table(game: &AdditiveBimatrixGame, alpha: &Rational, rows: (usize, usize)) -> Vec<Move> {
    (0..game.n())
        .map(|l| {
            let s = [rows.0, rows.1].map(|u| game.gain(u, l).eval(alpha).cmp(&Rational::zero()));
            Move::from_signs(s[0], s[1])
        })
        .collect()
}

/// The Model B2 game for one deck count.
#[derive(Clone, Debug)]
pub struct B2Build {
    pub d: DeckCount,
    /// Rows: 0 stands at 5, 1 draws at 5. Labels: the 484 information sets.
    pub game: AdditiveBimatrixGame,
    /// Moves at `alpha = 0` and `alpha = 1/10`, by label.
    pub preliminary: Vec<[Move; 2]>,
}

impl B2Build {
    /// Labels whose move differs between the two ends of the range.
    pub fn changing(&self) -> Vec<InfoSet> {
        self.preliminary.iter().enumerate().filter(|(_, m)| m[0] != m[1]).map(|(l, _)| info(&self.game, l)).collect()
    }

    /// Free labels (not forced over the whole range), in summary order.
    pub fn free(&self) -> Vec<InfoSet> {
        let r = reduce(&self.game, &AlphaInterval::full());
        let mut v: Vec<InfoSet> = r.free.iter().map(|&l| info(&self.game, l)).collect();
        v.sort_by_key(|s| s.group_key());
        v
    }
}

fn info(game: &AdditiveBimatrixGame, l: usize) -> InfoSet {
    match game.labels()[l] {
        Label::Info(s) => s,
        _ => unreachable!("labels are information sets"),
    }
}

pub fn build(d: DeckCount) -> Result<B2Build> {
    let table = DealTable::new(d);
    let game = assemble::<Rational>(&table, &[player_draws(0), player_draws(31)])?;
    let lo = move_table(&game, &Rational::zero(), (0, 1));
    let hi = move_table(&game, &alpha_max(), (0, 1));
    let preliminary = lo.into_iter().zip(hi).map(|(a, b)| [a, b]).collect();
    Ok(B2Build { d, game, preliminary })
}

/// Threshold curve of one information set in a two-row game.
pub fn curve_of(game: &AdditiveBimatrixGame, s: InfoSet) -> Result<LinFracAlpha> {
    let l = game.labels().iter().position(|x| *x == Label::Info(s)).ok_or_else(|| Error::Unsupported(format!("no label {s}")))?;
    let (d0, d1) = (game.gain(0, l), game.gain(1, l));
    LinFrac::new(d0.clone(), &d0 - &d1)
}

/// The 28 information sets of the summary table, in display order:
/// `(3,8)`, `(4,1)`, `(5,4)`, `(6,∅)`, `(6,6)`, hands ascending in each group.
pub fn summary_labels() -> Vec<InfoSet> {
    let mut out = Vec::new();
    for (total, third) in [(3, Some(8)), (4, Some(1)), (5, Some(4)), (6, None), (6, Some(6))] {
        for h in Hand::non_natural().into_iter().filter(|h| h.total() == total) {
            out.push(InfoSet::new(h, third).expect("valid"));
        }
    }
    out
}

/// `S`/`D` mnemonic of a full 484-label strategy over [`summary_labels`],
/// with `M` at `mixing`.
pub fn summary_mnemonic(full: &DrawSet, mixing: Option<InfoSet>) -> String {
    let labels = summary_labels();
    let bits = DrawSet::from_bits(labels.iter().map(|s| full.contains(s.index())).collect());
    let m: Vec<usize> = labels.iter().position(|s| Some(*s) == mixing).into_iter().collect();
    let lab: Vec<Label> = labels.into_iter().map(Label::Info).collect();
    bits.mnemonic(&lab, &m)
}

/// The reduced game over `[0, 1/10]` with free labels in summary-table order.
pub fn reduced(game: &AdditiveBimatrixGame) -> Reduction {
    let r = reduce(game, &AlphaInterval::full());
    let mut order: Vec<usize> = (0..r.free.len()).collect();
    order.sort_by_key(|&i| info(game, r.free[i]).group_key());
    r.reorder(&order)
}

/// An `alpha` range on which the equilibrium is unique and of one form.
#[derive(Clone, Debug)]
pub struct Regime {
    pub interval: AlphaInterval,
    /// Row player's probability of row 1.
    pub player: LinFracAlpha,
    /// Label where Banker mixes, if any.
    pub mixing: Option<InfoSet>,
    /// Banker's drawing probability at `mixing`.
    pub q: Option<LinFracAlpha>,
    /// Full strategy with Banker standing at `mixing`.
    pub strategy: DrawSet,
    /// The equilibrium in reduced labels.
    pub equilibrium: NashEquilibrium,
}

impl Regime {
    /// Constant value of `q`, when it does not depend on `alpha`.
    pub fn q_constant(&self) -> Option<Rational> {
        self.q.as_ref().filter(|q| q.is_constant()).map(|q| q.value(&Rational::zero()).expect("no pole"))
    }

    /// Summary mnemonic, `M` at the mixing label.
    pub fn mnemonic(&self) -> String {
        summary_mnemonic(&self.strategy, self.mixing)
    }

    /// Banker's column indices in the reduced game, ascending.
    pub fn columns(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.equilibrium.banker.iter().filter_map(|(t, _)| t.to_index()).collect();
        v.sort_unstable();
        v
    }
}

/// Several equilibria at one `alpha`.
#[derive(Clone, Debug)]
pub struct Exceptional {
    pub alpha: AlphaPoint,
    /// In reduced labels.
    pub equilibria: Vec<PointEquilibrium>,
}

/// Output of [`solve_b2`].
#[derive(Clone, Debug)]
pub struct B2Solution {
    pub d: DeckCount,
    pub reduction: Reduction,
    pub solution: Solution,
    pub regimes: Vec<Regime>,
    pub exceptional: Vec<Exceptional>,
}

impl B2Solution {
    pub fn stats(&self) -> Stats {
        self.solution.stats
    }

    pub fn label(&self, l: usize) -> InfoSet {
        match self.reduction.game.labels()[l] {
            Label::Info(s) => s,
            _ => unreachable!("labels are information sets"),
        }
    }

    /// Unique equilibrium at every `alpha` except the exceptional points, and
    /// every side condition verified.
    pub fn is_certified(&self) -> bool {
        self.solution.is_unique_off_points() && self.solution.degenerate.iter().all(|c| self.exceptional.iter().any(|e| c.contains(&e.alpha)))
    }
}

/// Turns the solver's equilibrium families into regimes, lifted to full labels.
pub fn regimes(red: &Reduction, sol: &Solution) -> Vec<Regime> {
    let mut out: Vec<Regime> = Vec::new();
    for e in sol.equilibria.iter().filter(|e| !e.validity.is_point()) {
        let (base, q, mixing) = match e.draw_probability() {
            Some((base, q)) => {
                let l = e.mixing_label().expect("two strategies");
                (base, Some(q), Some(l))
            }
            None => (e.banker[0].0.clone(), None, None),
        };
        let label = |l: usize| match red.game.labels()[l] {
            Label::Info(s) => s,
            _ => unreachable!("labels are information sets"),
        };
        out.push(Regime {
            interval: e.validity.clone(),
            player: e.player.clone(),
            mixing: mixing.map(label),
            q,
            strategy: red.lift(&base),
            equilibrium: e.clone(),
        });
    }
    out.sort_by(|a, b| a.interval.lo.cmp(&b.interval.lo));
    out
}

fn exceptional(sol: &Solution) -> Result<Vec<Exceptional>> {
    sol.nonunique.iter().map(|x| Ok(Exceptional { alpha: x.clone(), equilibria: sol.equilibria_at(x)? })).collect()
}

/// Every equilibrium of Model B2 for `alpha` in `[0, 1/10]`.
pub fn solve_b2(d: DeckCount) -> Result<B2Solution> {
    let b = build(d)?;
    solve_game(d, &b.game)
}

/// As [`solve_b2`] for a prebuilt two-row game.
pub fn solve_game(d: DeckCount, game: &AdditiveBimatrixGame) -> Result<B2Solution> {
    let red = reduced(game);
    let solution = foster::solve(&red.game, &AlphaInterval::full())?;
    let regimes = regimes(&red, &solution);
    let exceptional = exceptional(&solution)?;
    Ok(B2Solution { d, reduction: red, solution, regimes, exceptional })
}

/// Equilibria at one `alpha`, lifted to full 484-label strategies.
pub fn lift_point(red: &Reduction, e: &PointEquilibrium) -> (QuadAlgebraic, Vec<(DrawSet, QuadAlgebraic)>) {
    (e.p.clone(), e.banker.iter().map(|(t, w)| (red.lift(t), w.clone())).collect())
}

/// Breakpoints named in the regime table, when present in `(0, 1/10)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Breakpoint {
    A0,
    A1,
    A2,
    A3,
    A4,
    A5,
}

impl Breakpoint {
    /// The label whose curve crosses `p((0,6),∅)` there.
    pub fn partner(self) -> InfoSet {
        match self {
            Breakpoint::A0 => InfoSet::of(3, 3, Some(6)),
            Breakpoint::A1 => InfoSet::of(5, 8, Some(8)),
            Breakpoint::A2 => InfoSet::of(6, 7, Some(8)),
            Breakpoint::A3 => InfoSet::of(0, 5, Some(4)),
            Breakpoint::A4 => InfoSet::of(1, 4, Some(4)),
            Breakpoint::A5 => InfoSet::of(2, 3, Some(4)),
        }
    }
}

/// The label where Banker mixes in every regime of the closed forms.
pub fn mixing_label() -> InfoSet {
    InfoSet::of(0, 6, None)
}

/// Crossing of `p((0,6),∅)` with the partner curve inside `(0, 1/10)`.
pub fn breakpoint(game: &AdditiveBimatrixGame, b: Breakpoint) -> Result<AlphaPoint> {
    let p = curve_of(game, mixing_label())?;
    let other = curve_of(game, b.partner())?;
    let zero = QuadAlgebraic::from_rational(Rational::zero());
    let top = QuadAlgebraic::from_rational(alpha_max());
    p.intersect(&other)?
        .into_iter()
        .find(|x| *x > zero && *x < top)
        .ok_or_else(|| Error::Unsupported(format!("curves of {} and {} do not cross", mixing_label(), b.partner())))
}

/// Player's draw probability at 5 for every `d`, as a function of `alpha`.
pub fn p_closed_form(d: DeckCount) -> LinFracAlpha {
    let d = Rational::from_integer(BigInt::from(d.get()));
    let i = |n: i64| Rational::from_integer(BigInt::from(n));
    let c0 = (i(8) * &d - i(1)) * (i(12) * &d - i(1)) * (i(24) * &d - i(1));
    let c1 = -(i(2) * &d * (i(128) * &d * &d - i(8) * &d + i(1)));
    let e0 = i(2) * &d * (i(1408) * &d * &d - i(220) * &d + i(9));
    let e1 = -(i(2) * &d * (i(768) * &d * &d - i(116) * &d + i(5)));
    LinFrac::new(LinPoly::new(c0, c1), LinPoly::new(e0, e1)).expect("nonzero denominator")
}

/// The q formulas of the regime table, by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QFormula {
    D1(u8),
    D2(u8),
    Q4567a,
    Q4567b,
    Q89,
    Q1011a,
    Q1011c,
}

impl QFormula {
    pub fn value(self, d: DeckCount) -> Rational {
        let quartic = |c: [i64; 5]| {
            let x = Rational::from_integer(BigInt::from(d.get()));
            let num = c.iter().fold(Rational::zero(), |acc, &k| acc * &x + Rational::from_integer(BigInt::from(k)));
            let i = |n: i64| Rational::from_integer(BigInt::from(n));
            let den = i(8) * &x * (i(52) * &x - i(5)) * (i(1408) * &x * &x - i(220) * &x + i(9));
            num / den
        };
        let r = |n: i64, m: i64| Rational::new(BigInt::from(n), BigInt::from(m));
        match self {
            QFormula::D1(1) => r(290_383, 450_072),
            QFormula::D1(2) => r(288_499, 450_072),
            QFormula::D1(_) => r(40_811, 64_296),
            QFormula::D2(1) => r(2_591_845, 4_119_192),
            QFormula::D2(_) => r(872_479, 1_373_064),
            QFormula::Q4567a => quartic([368_640, -68_624, -2168, 981, -48]),
            QFormula::Q4567b => quartic([367_104, -68_000, -2228, 981, -48]),
            QFormula::Q89 => quartic([367_616, -67_728, -2416, 1015, -51]),
            QFormula::Q1011a => quartic([366_592, -67_344, -2456, 1017, -51]),
            QFormula::Q1011c => quartic([366_080, -67_104, -2476, 1015, -51]),
        }
    }
}

/// Player's `p` and Banker's `q` schedule at `((0,6),∅)` from the closed forms.
#[derive(Clone, Debug)]
pub struct ClosedForm {
    pub p: LinFracAlpha,
    pub schedule: Vec<(AlphaInterval, Rational)>,
    /// Interior breakpoints, ascending.
    pub breakpoints: Vec<(Breakpoint, AlphaPoint)>,
}

/// Regime layout of the closed forms for `d`: breakpoints and formulas.
pub fn regime_layout(d: u32) -> (Vec<Breakpoint>, Vec<QFormula>) {
    use Breakpoint::*;
    use QFormula::*;
    match d {
        1 => (vec![A1, A2], vec![D1(1), D1(2), D1(3)]),
        2 => (vec![A3], vec![D2(1), D2(2)]),
        3 => (vec![], vec![Q4567b]),
        4..=7 => (vec![A0], vec![Q4567a, Q4567b]),
        8 | 9 => (vec![A4, A0], vec![Q89, Q4567a, Q4567b]),
        10 | 11 => (vec![A5, A0], vec![Q1011a, Q89, Q1011c]),
        _ => (vec![], vec![Q1011a]),
    }
}

pub fn theorem1_closed_forms(d: DeckCount) -> Result<ClosedForm> {
    let b = build(d)?;
    closed_forms_for(d, &b.game)
}

/// As [`theorem1_closed_forms`] for a prebuilt two-row game (used for breakpoints).
pub fn closed_forms_for(d: DeckCount, game: &AdditiveBimatrixGame) -> Result<ClosedForm> {
    let (bps, qs) = regime_layout(d.get());
    let mut points = Vec::new();
    for b in bps {
        points.push((b, breakpoint(game, b)?));
    }
    let mut cuts = vec![QuadAlgebraic::from_rational(Rational::zero())];
    cuts.extend(points.iter().map(|(_, x)| x.clone()));
    cuts.push(QuadAlgebraic::from_rational(alpha_max()));
    let n = qs.len();
    let schedule = qs
        .into_iter()
        .enumerate()
        .map(|(i, q)| {
            let iv = AlphaInterval { lo: cuts[i].clone(), hi: cuts[i + 1].clone(), lo_open: i > 0, hi_open: i + 1 < n };
            (iv, q.value(d))
        })
        .collect();
    Ok(ClosedForm { p: p_closed_form(d), schedule, breakpoints: points })
}

/// Limits as `d` grows: Player's `p`, Banker's `((0,6),∅)` mix, and the
/// aggregate drawing probability over `(6,∅)`.
pub fn limits() -> (LinFracAlpha, Rational, Rational) {
    let p = LinFrac::from_ints(9, -1, 11, -6).expect("nonzero");
    let r = |n: i64, m: i64| Rational::new(BigInt::from(n), BigInt::from(m));
    (p, r(179, 286), r(859, 2288))
}

/// Banker's aggregate probability of drawing at `(6,∅)` in a regime:
/// the average over the six hands weighted by their chance of arising when
/// Player draws at 5 with probability `p`.
pub fn aggregate_six_empty(game: &AdditiveBimatrixGame, strategy: &DrawSet, mixing: Option<InfoSet>, q: &Rational, p: &Rational) -> Rational {
    let mut num = Rational::zero();
    let mut den = Rational::zero();
    for h in Hand::non_natural().into_iter().filter(|h| h.total() == 6) {
        let s = InfoSet::new(h, None).expect("valid");
        let l = s.index();
        let w = (Rational::one() - p) * game.weight(0, l) + p * game.weight(1, l);
        let draw = if Some(s) == mixing {
            q.clone()
        } else if strategy.contains(l) {
            Rational::one()
        } else {
            Rational::zero()
        };
        num += &w * draw;
        den += w;
    }
    num / den
}

/// Differences between the solver's regimes and the closed forms; empty when they agree.
pub fn compare_closed_forms(sol: &B2Solution, cf: &ClosedForm) -> Vec<String> {
    if sol.regimes.len() != cf.schedule.len() {
        return vec![format!("{} regimes, closed forms have {}", sol.regimes.len(), cf.schedule.len())];
    }
    let mut out = Vec::new();
    for (r, (iv, q)) in sol.regimes.iter().zip(&cf.schedule) {
        if r.interval != *iv {
            out.push(format!("regime {} vs {}", r.interval, iv));
        }
        if r.player != cf.p {
            out.push(format!("on {}: p = {}, closed form {}", r.interval, r.player, cf.p));
        }
        if r.mixing != Some(mixing_label()) {
            out.push(format!("on {}: mixing at {:?}", r.interval, r.mixing.map(|m| m.to_string())));
        }
        if r.q_constant().as_ref() != Some(q) {
            out.push(format!("on {}: q = {:?}, closed form {}", r.interval, r.q.as_ref().map(|q| q.to_string()), q));
        }
    }
    out
}
