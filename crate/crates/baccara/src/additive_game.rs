//! Additive `m x 2^n` bimatrix games and reduction by strict dominance.
//!
//! The column player picks a move (stand `0` or draw `1`) at each of `n`
//! labels. Against row `u` the column player's payoff is
//!
//! ```text
//! b[u][T] = const[u] + sum_{l not in T} w[u][l] b[u][l][0] + sum_{l in T} w[u][l] b[u][l][1]
//! ```
//!
//! The products `w[u][l] b[u][l][v]` are stored directly as contributions.
//! The row player's payoff `a[u][T]` is given by a rule.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::cards::Hand;
use crate::exactnum::{AlphaInterval, LinPoly, Scalar};
use crate::{Error, Rational, Result};

/// A Banker information set: two-card hand and Player's third card
/// (`None` when Player stood).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InfoSet {
    banker: Hand,
    third: Option<u8>,
}

impl InfoSet {
    pub fn new(banker: Hand, third: Option<u8>) -> Result<Self> {
        if banker.total() > 7 || third.is_some_and(|k| k > 9) {
            return Err(Error::Unsupported(format!("no information set {banker} / {third:?}")));
        }
        Ok(InfoSet { banker, third })
    }

    /// Shorthand for tests and tables; panics on invalid input.
    pub fn of(lo: u8, hi: u8, third: Option<u8>) -> Self {
        Self::new(Hand::new(lo, hi), third).expect("valid information set")
    }

    pub fn banker(self) -> Hand {
        self.banker
    }

    pub fn third(self) -> Option<u8> {
        self.third
    }

    /// All 484 sets in canonical order: Banker total, then hand, then third
    /// card `0..=9` with `None` last.
    pub fn all() -> Vec<InfoSet> {
        let mut hands = Hand::non_natural();
        hands.sort_by_key(|h| (h.total(), *h));
        let mut out = Vec::with_capacity(484);
        for h in hands {
            for k in 0..10 {
                out.push(InfoSet { banker: h, third: Some(k) });
            }
            out.push(InfoSet { banker: h, third: None });
        }
        out
    }

    /// Position in [`InfoSet::all`].
    pub fn index(self) -> usize {
        let hands_before = Hand::non_natural().into_iter().filter(|h| (h.total(), *h) < (self.banker.total(), self.banker)).count();
        hands_before * 11 + self.third.map_or(10, usize::from)
    }

    /// Grouping key of the summary tables: total, then third card with
    /// `None` first, then hand.
    pub fn group_key(self) -> (u8, u8, Hand) {
        (self.banker.total(), self.third.map_or(0, |k| k + 1), self.banker)
    }
}

impl fmt::Display for InfoSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.third {
            Some(k) => write!(f, "({},{k})", self.banker),
            None => write!(f, "({},∅)", self.banker),
        }
    }
}

/// What a column label stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    Info(InfoSet),
    Hand(Hand),
    Index(usize),
}

impl Label {
    fn group(&self) -> Option<(u8, u8)> {
        match self {
            Label::Info(s) => {
                let (t, k, _) = s.group_key();
                Some((t, k))
            }
            _ => None,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Info(s) => write!(f, "{s}"),
            Label::Hand(h) => write!(f, "{h}"),
            Label::Index(i) => write!(f, "{}", i + 1),
        }
    }
}

/// A pure column strategy: the labels at which the column player draws.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DrawSet {
    bits: Vec<bool>,
}

/// Banker's pure strategies are draw sets over information sets.
pub type BankerPureStrategy = DrawSet;

impl DrawSet {
    pub fn empty(n: usize) -> Self {
        DrawSet { bits: vec![false; n] }
    }

    pub fn full(n: usize) -> Self {
        DrawSet { bits: vec![true; n] }
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        DrawSet { bits }
    }

    pub fn from_indices(n: usize, draws: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(n);
        for l in draws {
            s.bits[l] = true;
        }
        s
    }

    /// Bit `i` of `index`, most significant first, is label `i`.
    pub fn from_index(n: usize, index: u64) -> Self {
        DrawSet { bits: (0..n).map(|i| (index >> (n - 1 - i)) & 1 == 1).collect() }
    }

    /// From a string of `0`/`1` or `S`/`D`, ignoring `-`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut bits = Vec::new();
        for ch in s.chars() {
            match ch {
                '0' | 'S' => bits.push(false),
                '1' | 'D' => bits.push(true),
                '-' => {}
                _ => return Err(Error::Unsupported(format!("bad strategy string {s:?}"))),
            }
        }
        Ok(DrawSet { bits })
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn contains(&self, l: usize) -> bool {
        self.bits[l]
    }

    pub fn set(&mut self, l: usize, draw: bool) {
        self.bits[l] = draw;
    }

    pub fn with(&self, l: usize, draw: bool) -> Self {
        let mut s = self.clone();
        s.bits[l] = draw;
        s
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Labels where the two strategies differ.
    pub fn diff(&self, other: &Self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.bits[i] != other.bits[i]).collect()
    }

    /// The index whose binary expansion is this strategy, when `n <= 64`.
    pub fn to_index(&self) -> Option<u64> {
        (self.len() <= 64).then(|| self.bits.iter().fold(0u64, |acc, &b| (acc << 1) | u64::from(b)))
    }

    pub fn binary(&self) -> String {
        self.bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }

    /// `S`/`D` letters with `-` between groups of labels, `M` at `mixing`.
    pub fn mnemonic(&self, labels: &[Label], mixing: &[usize]) -> String {
        let mut out = String::new();
        for (i, &b) in self.bits.iter().enumerate() {
            if i > 0 {
                if let (Some(g), Some(h)) = (labels[i - 1].group(), labels[i].group()) {
                    if g != h {
                        out.push('-');
                    }
                }
            }
            out.push(if mixing.contains(&i) {
                'M'
            } else if b {
                'D'
            } else {
                'S'
            });
        }
        out
    }
}

/// A row player's payoff rule `a[u][T]`.
pub type PayoffRule<T> = Arc<dyn Fn(usize, &DrawSet) -> LinPoly<T> + Send + Sync>;

/// How the row player's payoff is obtained.
#[derive(Clone)]
pub enum Opponent<T> {
    /// `a[u][T] = -b[u][T]` evaluated at `alpha = 0`.
    NegatedAtZero,
    Rule(PayoffRule<T>),
}

impl<T> fmt::Debug for Opponent<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Opponent::NegatedAtZero => write!(f, "NegatedAtZero"),
            Opponent::Rule(_) => write!(f, "Rule"),
        }
    }
}

/// Additive game with `m` rows and `n` column labels.
#[derive(Clone, Debug)]
pub struct AdditiveGame<T> {
    labels: Vec<Label>,
    weights: Vec<Vec<T>>,
    contrib: Vec<Vec<[LinPoly<T>; 2]>>,
    const_term: Vec<LinPoly<T>>,
    opponent: Opponent<T>,
}

impl<T: Scalar> AdditiveGame<T> {
    /// From weights `w[u][l]` and blocks `(b[u][l][0], b[u][l][1])`.
    pub fn new(
        labels: Vec<Label>,
        weights: Vec<Vec<T>>,
        blocks: Vec<Vec<[LinPoly<T>; 2]>>,
        const_term: Vec<LinPoly<T>>,
        opponent: Opponent<T>,
    ) -> Result<Self> {
        let contrib = weights.iter().zip(&blocks).map(|(w, b)| w.iter().zip(b).map(|(w, [b0, b1])| [b0.scale(w), b1.scale(w)]).collect()).collect();
        Self::from_contributions(labels, weights, contrib, const_term, opponent)
    }

    /// From weights and the products `w[u][l] b[u][l][v]`.
    pub fn from_contributions(
        labels: Vec<Label>,
        weights: Vec<Vec<T>>,
        contrib: Vec<Vec<[LinPoly<T>; 2]>>,
        const_term: Vec<LinPoly<T>>,
        opponent: Opponent<T>,
    ) -> Result<Self> {
        let (m, n) = (weights.len(), labels.len());
        if contrib.len() != m || const_term.len() != m || weights.iter().chain(std::iter::empty()).any(|w| w.len() != n) || contrib.iter().any(|c| c.len() != n)
        {
            return Err(Error::Unsupported("inconsistent game dimensions".into()));
        }
        if weights.iter().flatten().any(|w| *w <= T::zero()) {
            return Err(Error::Unsupported("weights must be positive".into()));
        }
        Ok(AdditiveGame { labels, weights, contrib, const_term, opponent })
    }

    pub fn rows(&self) -> usize {
        self.weights.len()
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn weight(&self, u: usize, l: usize) -> &T {
        &self.weights[u][l]
    }

    pub fn const_term(&self, u: usize) -> &LinPoly<T> {
        &self.const_term[u]
    }

    pub fn opponent(&self) -> &Opponent<T> {
        &self.opponent
    }

    /// `w[u][l] b[u][l][v]`.
    pub fn contribution(&self, u: usize, l: usize, v: usize) -> &LinPoly<T> {
        &self.contrib[u][l][v]
    }

    /// `b[u][l][v]`.
    pub fn block(&self, u: usize, l: usize, v: usize) -> LinPoly<T> {
        let w = &self.weights[u][l];
        self.contrib[u][l][v].map(|c| c.clone() / w.clone())
    }

    /// `w[u][l] (b[u][l][1] - b[u][l][0])`: the gain from drawing at `l`.
    pub fn gain(&self, u: usize, l: usize) -> LinPoly<T> {
        &self.contrib[u][l][1] - &self.contrib[u][l][0]
    }

    /// `sum_l w[u][l]`; at most 1 for a probability model.
    pub fn total_weight(&self, u: usize) -> T {
        self.weights[u].iter().fold(T::zero(), |acc, w| acc + w.clone())
    }

    fn check_width(&self, t: &DrawSet) -> Result<()> {
        if t.len() != self.n() {
            return Err(Error::Width { expected: self.n(), found: t.len() });
        }
        Ok(())
    }

    /// Column player's payoff `b[u][T]`.
    pub fn column_payoff(&self, u: usize, t: &DrawSet) -> Result<LinPoly<T>> {
        self.check_width(t)?;
        let mut acc = self.const_term[u].clone();
        for (l, c) in self.contrib[u].iter().enumerate() {
            acc += &c[usize::from(t.contains(l))];
        }
        Ok(acc)
    }

    /// Row player's payoff `a[u][T]`.
    pub fn opponent_payoff(&self, u: usize, t: &DrawSet) -> Result<LinPoly<T>> {
        self.check_width(t)?;
        Ok(match &self.opponent {
            Opponent::NegatedAtZero => LinPoly::constant(-self.column_payoff(u, t)?.c0),
            Opponent::Rule(f) => f(u, t),
        })
    }

    /// The game restricted to `rows`, in that order.
    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let opponent = match &self.opponent {
            Opponent::NegatedAtZero => Opponent::NegatedAtZero,
            Opponent::Rule(f) => {
                let f = f.clone();
                let map = rows.to_vec();
                Opponent::Rule(Arc::new(move |u, t| f(map[u], t)))
            }
        };
        AdditiveGame {
            labels: self.labels.clone(),
            weights: rows.iter().map(|&u| self.weights[u].clone()).collect(),
            contrib: rows.iter().map(|&u| self.contrib[u].clone()).collect(),
            const_term: rows.iter().map(|&u| self.const_term[u].clone()).collect(),
            opponent,
        }
    }

    /// The game with labels listed in `order` (a permutation).
    pub fn permute_labels(&self, order: &[usize]) -> Self {
        let opponent = match &self.opponent {
            Opponent::NegatedAtZero => Opponent::NegatedAtZero,
            Opponent::Rule(f) => {
                let f = f.clone();
                let order = order.to_vec();
                Opponent::Rule(Arc::new(move |u, t: &DrawSet| {
                    let mut orig = DrawSet::empty(order.len());
                    for (i, &o) in order.iter().enumerate() {
                        orig.set(o, t.contains(i));
                    }
                    f(u, &orig)
                }))
            }
        };
        AdditiveGame {
            labels: order.iter().map(|&i| self.labels[i]).collect(),
            weights: self.weights.iter().map(|w| order.iter().map(|&i| w[i].clone()).collect()).collect(),
            contrib: self.contrib.iter().map(|c| order.iter().map(|&i| c[i].clone()).collect()).collect(),
            const_term: self.const_term.clone(),
            opponent,
        }
    }
}

/// Outcome of [`reduce`]: the free sub-game and the forced moves.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub game: AdditiveGame<Rational>,
    /// Parent labels where drawing is strictly better for every row.
    pub fixed_draw: Vec<usize>,
    /// Parent labels where standing is strictly better for every row.
    pub fixed_stand: Vec<usize>,
    /// Parent labels kept, in the reduced game's label order.
    pub free: Vec<usize>,
    parent_n: usize,
}

impl Reduction {
    /// The parent strategy agreeing with `t` on free labels and forced elsewhere.
    pub fn lift(&self, t: &DrawSet) -> DrawSet {
        let mut s = DrawSet::from_indices(self.parent_n, self.fixed_draw.iter().copied());
        for (i, &p) in self.free.iter().enumerate() {
            s.set(p, t.contains(i));
        }
        s
    }

    /// Restriction of a parent strategy to the free labels.
    pub fn project(&self, parent: &DrawSet) -> DrawSet {
        DrawSet::from_bits(self.free.iter().map(|&p| parent.contains(p)).collect())
    }

    pub fn parent_n(&self) -> usize {
        self.parent_n
    }

    /// Same reduction with the free labels listed in `order` (positions into `free`).
    pub fn reorder(&self, order: &[usize]) -> Self {
        Reduction {
            game: self.game.permute_labels(order),
            fixed_draw: self.fixed_draw.clone(),
            fixed_stand: self.fixed_stand.clone(),
            free: order.iter().map(|&i| self.free[i]).collect(),
            parent_n: self.parent_n,
        }
    }
}

/// Sign of the gain `w (b1 - b0)` over the whole interval, if constant and nonzero.
pub fn strict_sign(game: &AdditiveGame<Rational>, u: usize, l: usize, at: &AlphaInterval) -> Option<Ordering> {
    let g = game.gain(u, l);
    [Ordering::Less, Ordering::Greater].into_iter().find(|&s| at.sign_constant(&g, s))
}

/// Splits the labels into forced stands, forced draws and free labels over
/// `at`, and returns the free sub-game with the forced terms folded into the
/// constants. Labels whose preference is not strict for every row over the
/// whole interval stay free.
pub fn reduce(game: &AdditiveGame<Rational>, at: &AlphaInterval) -> Reduction {
    let (m, n) = (game.rows(), game.n());
    let (mut fixed_draw, mut fixed_stand, mut free) = (Vec::new(), Vec::new(), Vec::new());
    for l in 0..n {
        let signs: Vec<Option<Ordering>> = (0..m).map(|u| strict_sign(game, u, l, at)).collect();
        if signs.iter().all(|s| *s == Some(Ordering::Less)) {
            fixed_stand.push(l);
        } else if signs.iter().all(|s| *s == Some(Ordering::Greater)) {
            fixed_draw.push(l);
        } else {
            free.push(l);
        }
    }
    let const_term = (0..m)
        .map(|u| {
            let mut c = game.const_term[u].clone();
            for &l in &fixed_stand {
                c += &game.contrib[u][l][0];
            }
            for &l in &fixed_draw {
                c += &game.contrib[u][l][1];
            }
            c
        })
        .collect();
    let parent_n = n;
    let opponent = match &game.opponent {
        Opponent::NegatedAtZero => Opponent::NegatedAtZero,
        Opponent::Rule(f) => {
            let f = f.clone();
            let (fd, fr) = (fixed_draw.clone(), free.clone());
            Opponent::Rule(Arc::new(move |u, t: &DrawSet| {
                let mut s = DrawSet::from_indices(parent_n, fd.iter().copied());
                for (i, &p) in fr.iter().enumerate() {
                    s.set(p, t.contains(i));
                }
                f(u, &s)
            }))
        }
    };
    let sub = AdditiveGame {
        labels: free.iter().map(|&l| game.labels[l]).collect(),
        weights: game.weights.iter().map(|w| free.iter().map(|&l| w[l].clone()).collect()).collect(),
        contrib: game.contrib.iter().map(|c| free.iter().map(|&l| c[l].clone()).collect()).collect(),
        const_term,
        opponent,
    };
    Reduction { game: sub, fixed_draw, fixed_stand, free, parent_n }
}

impl AdditiveGame<Rational> {
    /// Sum of weights minus one for each row; zero or negative for valid games.
    pub fn weight_excess(&self, u: usize) -> Rational {
        self.total_weight(u) - Rational::from_integer(1.into())
    }

    pub fn is_zero_sum_at_zero(&self) -> bool {
        matches!(self.opponent, Opponent::NegatedAtZero) && self.const_term.iter().all(|c| c.c0.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    fn toy() -> AdditiveGame<Rational> {
        let lp = |a: i64, b: i64| LinPoly::new(int(a), int(b));
        AdditiveGame::new(
            vec![Label::Index(0), Label::Index(1), Label::Index(2)],
            vec![vec![rat(1, 4); 3], vec![rat(1, 5); 3]],
            vec![
                vec![[lp(1, 0), lp(2, 0)], [lp(3, 0), lp(0, 0)], [lp(0, 0), lp(1, 0)]],
                vec![[lp(0, 0), lp(1, 0)], [lp(1, 0), lp(0, 0)], [lp(1, 0), lp(0, 0)]],
            ],
            vec![lp(0, -1), lp(0, -1)],
            Opponent::NegatedAtZero,
        )
        .unwrap()
    }

    #[test]
    fn infoset_order() {
        let all = InfoSet::all();
        assert_eq!(all.len(), 484);
        for (i, s) in all.iter().enumerate() {
            assert_eq!(s.index(), i);
        }
        assert_eq!(all[0], InfoSet::of(0, 0, Some(0)));
        assert_eq!(all[10], InfoSet::of(0, 0, None));
        assert_eq!(InfoSet::of(0, 6, None).to_string(), "((0,6),∅)");
    }

    #[test]
    fn drawset_forms() {
        let t = DrawSet::from_index(20, 1_019_407);
        assert_eq!(t.binary(), "11111000111000001111");
        assert_eq!(t.to_index(), Some(1_019_407));
        assert_eq!(DrawSet::parse("DDDDD-SSS-DDD-SSSSSD-DDD").unwrap(), t);
    }

    #[test]
    fn payoffs() {
        let g = toy();
        let empty = DrawSet::empty(3);
        assert_eq!(g.column_payoff(0, &empty).unwrap(), LinPoly::new(rat(1, 1), int(-1)));
        let full = DrawSet::full(3);
        assert_eq!(g.column_payoff(1, &full).unwrap(), LinPoly::new(rat(1, 5), int(-1)));
        assert_eq!(g.opponent_payoff(1, &full).unwrap(), LinPoly::constant(rat(-1, 5)));
        assert!(g.column_payoff(0, &DrawSet::empty(2)).is_err());
    }

    #[test]
    fn reduction() {
        let g = toy();
        let r = reduce(&g, &AlphaInterval::full());
        assert_eq!(r.fixed_draw, vec![0]);
        assert_eq!(r.fixed_stand, vec![1]);
        assert_eq!(r.free, vec![2]);
        for idx in 0..2 {
            let t = DrawSet::from_index(1, idx);
            for u in 0..2 {
                assert_eq!(r.game.column_payoff(u, &t).unwrap(), g.column_payoff(u, &r.lift(&t)).unwrap());
            }
        }
        let again = reduce(&r.game, &AlphaInterval::full());
        assert_eq!(again.free.len(), 1);
    }
}
