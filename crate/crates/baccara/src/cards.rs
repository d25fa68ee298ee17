//! Shoe combinatorics for a `d`-deck shoe.
//!
//! Cards are dealt Player, Player, Banker, Banker, then Player's third card
//! `k` and Banker's third card `l`. Ten-valued cards count as 0, so value 0
//! has frequency `16d` and every other value `4d`.
//!
//! Probabilities are kept as integer counts of ordered deals over the falling
//! factorial `(52d)_r`; [`p4`], [`p5`] and [`p6`] turn them into any [`Scalar`].

use std::fmt;

use crate::exactnum::{LinPoly, Scalar};
use crate::{Error, Result};

/// Largest supported deck count; keeps every count below `(52d)_6 < 2^127`.
pub const MAX_DECKS: u32 = 20_000;

/// Number of decks in the shoe.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeckCount(u32);

impl DeckCount {
    pub fn new(d: u64) -> Result<Self> {
        if d == 0 || d > u64::from(MAX_DECKS) {
            return Err(Error::DeckCount(d));
        }
        Ok(DeckCount(d as u32))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl fmt::Display for DeckCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Unordered two-card hand, `lo <= hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hand {
    lo: u8,
    hi: u8,
}

impl Hand {
    /// Panics when a value exceeds 9.
    pub fn new(a: u8, b: u8) -> Self {
        assert!(a <= 9 && b <= 9, "card values are 0..=9");
        Hand { lo: a.min(b), hi: a.max(b) }
    }

    pub fn lo(self) -> u8 {
        self.lo
    }

    pub fn hi(self) -> u8 {
        self.hi
    }

    pub fn total(self) -> u8 {
        mod10(u32::from(self.lo + self.hi))
    }

    /// All 55 hands in lexicographic order.
    pub fn all() -> impl Iterator<Item = Hand> {
        (0..10u8).flat_map(|lo| (lo..10).map(move |hi| Hand { lo, hi }))
    }

    /// The 44 hands with total at most 7, lexicographic.
    pub fn non_natural() -> Vec<Hand> {
        Hand::all().filter(|h| h.total() <= 7).collect()
    }

    /// Position of a non-natural hand in [`Hand::non_natural`].
    pub fn non_natural_index(self) -> Option<usize> {
        NON_NATURAL_INDEX.with(|t| t[usize::from(self.lo) * 10 + usize::from(self.hi)])
    }
}

thread_local! {
    static NON_NATURAL_INDEX: [Option<usize>; 100] = {
        let mut t = [None; 100];
        for (i, h) in Hand::non_natural().into_iter().enumerate() {
            t[usize::from(h.lo) * 10 + usize::from(h.hi)] = Some(i);
        }
        t
    };
}

impl fmt::Display for Hand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.lo, self.hi)
    }
}

pub fn mod10(i: u32) -> u8 {
    (i % 10) as u8
}

fn freq(d: DeckCount, v: u8) -> i128 {
    let base = 4 * i128::from(d.0);
    if v == 0 {
        4 * base
    } else {
        base
    }
}

/// `(52d)(52d-1)...(52d-r+1)`.
pub fn falling(d: DeckCount, r: u32) -> i128 {
    let n = 52 * i128::from(d.0);
    (0..i128::from(r)).map(|i| n - i).product()
}

fn draw_factor(d: DeckCount, v: u8, seen: &[u8]) -> i128 {
    freq(d, v) - seen.iter().filter(|&&s| s == v).count() as i128
}

fn pair_factor(h: Hand) -> i128 {
    if h.lo == h.hi {
        1
    } else {
        2
    }
}

/// Ordered-deal count behind [`p4`], over `(52d)_4`.
pub fn p4_count(d: DeckCount, player: Hand, banker: Hand) -> i128 {
    let (i1, i2, j1, j2) = (player.lo, player.hi, banker.lo, banker.hi);
    pair_factor(player)
        * draw_factor(d, i1, &[])
        * draw_factor(d, i2, &[i1])
        * pair_factor(banker)
        * draw_factor(d, j1, &[i1, i2])
        * draw_factor(d, j2, &[i1, i2, j1])
}

/// Ordered-deal count behind [`p5`], over `(52d)_5`.
pub fn p5_count(d: DeckCount, player: Hand, banker: Hand, k: u8) -> i128 {
    p4_count(d, player, banker) * draw_factor(d, k, &[player.lo, player.hi, banker.lo, banker.hi])
}

/// Ordered-deal count behind [`p6`], over `(52d)_6`.
pub fn p6_count(d: DeckCount, player: Hand, banker: Hand, k: u8, l: u8) -> i128 {
    p5_count(d, player, banker, k) * draw_factor(d, l, &[player.lo, player.hi, banker.lo, banker.hi, k])
}

/// Probability that Player holds `player` and Banker holds `banker`.
pub fn p4<T: Scalar>(d: DeckCount, player: Hand, banker: Hand) -> T {
    T::from_i128(p4_count(d, player, banker)) / T::from_i128(falling(d, 4))
}

/// As [`p4`], with the fifth card of value `k`.
pub fn p5<T: Scalar>(d: DeckCount, player: Hand, banker: Hand, k: u8) -> T {
    T::from_i128(p5_count(d, player, banker, k)) / T::from_i128(falling(d, 5))
}

/// As [`p5`], with the sixth card of value `l`.
pub fn p6<T: Scalar>(d: DeckCount, player: Hand, banker: Hand, k: u8, l: u8) -> T {
    T::from_i128(p6_count(d, player, banker, k, l)) / T::from_i128(falling(d, 6))
}

/// [`p4`] under dealing with replacement.
pub fn p4_with_replacement<T: Scalar>(player: Hand, banker: Hand) -> T {
    let f = |v: u8| T::from_i128(if v == 0 { 4 } else { 1 });
    let thirteen = T::from_i128(13);
    let q = |h: Hand| T::from_i128(pair_factor(h)) * f(h.lo) * f(h.hi) / (thirteen.clone() * thirteen.clone());
    q(player) * q(banker)
}

/// Banker's payoff from a win margin `x`: `1 - alpha`, `0` or `-1`.
pub fn payoff_f<T: Scalar>(x: i32) -> LinPoly<T> {
    match x.signum() {
        1 => LinPoly::new(T::from_i128(1), T::from_i128(-1)),
        0 => LinPoly::zero(),
        _ => LinPoly::constant(T::from_i128(-1)),
    }
}

fn f_count(x: i32, count: i128) -> LinPoly<i128> {
    match x.signum() {
        1 => LinPoly::new(count, -count),
        0 => LinPoly::zero(),
        _ => LinPoly::new(-count, 0),
    }
}

/// Summed deal counts for one (Player hand, Banker hand, situation) triple.
///
/// `weight` counts the deals, `stand` and `draw` sum Banker's payoff
/// `f(...)` over them when Banker stands or draws. All three share the
/// denominator [`DealTable::denom`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Cell {
    pub weight: i128,
    pub stand: LinPoly<i128>,
    pub draw: LinPoly<i128>,
}

impl Cell {
    pub fn add(&mut self, o: &Cell) {
        self.weight += o.weight;
        self.stand += &o.stand;
        self.draw += &o.draw;
    }

    /// Payoff sum for Banker move `draw`.
    pub fn payoff(&self, draw: bool) -> &LinPoly<i128> {
        if draw {
            &self.draw
        } else {
            &self.stand
        }
    }
}

/// Deal counts for every non-natural Player hand against every non-natural
/// Banker hand, over the common denominator `(52d)_6`.
#[derive(Clone, Debug)]
pub struct DealTable {
    pub d: DeckCount,
    /// `(52d)_6`.
    pub denom: i128,
    drawer: Vec<[Cell; 10]>,
    stander: Vec<Cell>,
    /// Deals in which Banker wins with a natural, over `(52d)_4`.
    pub natural_wins: i128,
}

impl DealTable {
    pub fn new(d: DeckCount) -> Self {
        let hands = Hand::non_natural();
        let n = 52 * i128::from(d.0);
        let mut drawer = Vec::with_capacity(44 * 44);
        let mut stander = Vec::with_capacity(44 * 44);
        for &h in &hands {
            let pt = u32::from(h.lo + h.hi);
            for &j in &hands {
                let bt = u32::from(j.lo + j.hi);
                let c4 = p4_count(d, h, j);
                let mut st = Cell { weight: c4 * (n - 4) * (n - 5), ..Cell::default() };
                st.stand = f_count(i32::from(mod10(bt)) - i32::from(mod10(pt)), st.weight);
                for l in 0..10u8 {
                    let c = p5_count(d, h, j, l) * (n - 5);
                    st.draw += &f_count(i32::from(mod10(bt + u32::from(l))) - i32::from(mod10(pt)), c);
                }
                stander.push(st);
                let mut cells = [Cell::default(); 10];
                for k in 0..10u8 {
                    let ptk = i32::from(mod10(pt + u32::from(k)));
                    let c5 = p5_count(d, h, j, k);
                    let cell = &mut cells[usize::from(k)];
                    cell.weight = c5 * (n - 5);
                    cell.stand = f_count(i32::from(mod10(bt)) - ptk, cell.weight);
                    for l in 0..10u8 {
                        let c = p6_count(d, h, j, k, l);
                        cell.draw += &f_count(i32::from(mod10(bt + u32::from(l))) - ptk, c);
                    }
                }
                drawer.push(cells);
            }
        }
        let mut natural_wins = 0;
        for h in Hand::all() {
            for j in Hand::all() {
                if j.total() >= 8 && h.total() < j.total() {
                    natural_wins += p4_count(d, h, j);
                }
            }
        }
        DealTable { d, denom: falling(d, 6), drawer, stander, natural_wins }
    }

    /// Player (non-natural index `h`) draws `k`; Banker holds hand index `j`.
    pub fn drawer(&self, h: usize, j: usize, k: u8) -> &Cell {
        &self.drawer[h * 44 + j][usize::from(k)]
    }

    /// Player (index `h`) stands; Banker holds hand index `j`.
    pub fn stander(&self, h: usize, j: usize) -> &Cell {
        &self.stander[h * 44 + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use crate::Rational;
    use num_traits::{One, Zero};

    fn d(n: u64) -> DeckCount {
        DeckCount::new(n).unwrap()
    }

    #[test]
    fn basics() {
        assert_eq!(mod10(15), 5);
        assert_eq!(mod10(0), 0);
        assert_eq!(mod10(19), 9);
        assert_eq!(Hand::new(7, 2), Hand::new(2, 7));
        assert_eq!(Hand::all().count(), 55);
        assert_eq!(Hand::non_natural().len(), 44);
        assert!(DeckCount::new(0).is_err());
    }

    #[test]
    fn dealing_examples() {
        let (a, b) = (Hand::new(1, 1), Hand::new(2, 2));
        assert_eq!(p4::<Rational>(d(1), a, b), rat(6, 270_725));
        assert_eq!(p5::<Rational>(d(1), a, b, 1), rat(1, 1_082_900));
        assert_eq!(p4::<Rational>(d(1), a, a), rat(24, 52 * 51 * 50 * 49));
        assert_eq!(p6::<Rational>(d(1), a, b, 1, 1), rat(1, 50_896_300));
        assert_eq!(p6::<Rational>(d(1), a, a, 1, 1), Rational::zero());
    }

    #[test]
    fn normalization() {
        for n in [1, 2, 6] {
            let mut s = Rational::zero();
            for h in Hand::all() {
                for j in Hand::all() {
                    s += p4::<Rational>(d(n), h, j);
                }
            }
            assert_eq!(s, Rational::one());
        }
    }

    #[test]
    fn payoff() {
        assert_eq!(payoff_f::<Rational>(3), LinPoly::new(rat(1, 1), rat(-1, 1)));
        assert!(payoff_f::<Rational>(0).is_zero());
        assert_eq!(payoff_f::<Rational>(-2), LinPoly::constant(rat(-1, 1)));
    }

    #[test]
    fn float_scalar_matches() {
        let (a, b) = (Hand::new(0, 3), Hand::new(4, 9));
        let x: f64 = p4(d(6), a, b);
        let y: Rational = p4(d(6), a, b);
        assert!((x - Scalar::to_f64(&y)).abs() < 1e-15);
    }
}
