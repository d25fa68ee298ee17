use baccara::additive_game::{DrawSet, InfoSet, Label};
use baccara::cards::{DeckCount, Hand};
use baccara::exactnum::rat;
use baccara::foster::{self, MoveClass};
use baccara::model_b2;
use baccara::model_b3;
use baccara::oracle;
use baccara::{AdditiveBimatrixGame, AlphaInterval, QuadAlgebraic, Rational};
use num_traits::Zero;

fn dc(d: u64) -> DeckCount {
    DeckCount::new(d).unwrap()
}

fn index(game: &AdditiveBimatrixGame, s: InfoSet) -> usize {
    game.labels().iter().position(|l| *l == Label::Info(s)).unwrap()
}

fn r(n: i64, d: i64) -> Rational {
    rat(n, d)
}

#[test]
fn b2_d6_payoffs_at_alpha0() {
    let build = model_b2::build(dc(6)).unwrap();
    let sol = model_b2::solve_game(dc(6), &build.game).unwrap();
    let case = &sol.solution.point_cases[17];
    assert_eq!(sol.label(case.labels.0), InfoSet::of(0, 6, None));
    assert_eq!(sol.label(case.labels.1), InfoSet::of(3, 3, Some(6)));
    let den = 1_525_814_595_305;
    let want = [
        [r(-22_707_392_731, den), r(-22_721_165_499, den), r(-18_019_468_347, den), r(-3_606_648_223, 305_162_919_061)],
        [r(-19_019_357_419, den), r(-2_716_895_133, 217_973_513_615), r(-20_152_388_811, den), r(-20_151_297_323, den)],
    ];
    let dense = oracle::expand_columns(&sol.reduction.game, &Rational::zero(), &case.strategies).unwrap();
    for (u, row) in want.iter().enumerate() {
        for (j, t) in case.strategies.iter().enumerate() {
            let full = sol.reduction.lift(t);
            assert_eq!(build.game.opponent_payoff(u, &full).unwrap().c0, row[j]);
            assert_eq!(dense.a[u][j], row[j]);
        }
    }
}

#[test]
fn b3_d6_restricted_and_confirmed_games() {
    let sol = model_b3::solve_b3(dc(6)).unwrap();
    assert!(!sol.pair_search);
    assert_eq!(sol.free_labels(), 20);

    let rs = &sol.restricted[0];
    let order: Vec<Hand> = rs.ordering.iter().map(|(h, _)| *h).collect();
    assert_eq!(order, [Hand::new(2, 3), Hand::new(1, 4), Hand::new(0, 5), Hand::new(7, 8), Hand::new(6, 9)]);
    assert!(rs.candidates.iter().any(|c| c.rows == model_b3::ROWS));

    let conf = sol.confirmation(model_b3::ROWS).unwrap();
    let g = &conf.game;
    let six: Vec<usize> = Hand::non_natural().into_iter().filter(|h| h.total() == 6).map(|h| index(g, InfoSet::new(h, None).unwrap())).collect();
    let x33 = index(g, InfoSet::of(3, 3, Some(6)));
    for (alpha, t10) in [(Rational::zero(), vec![]), (rat(1, 10), vec![x33])] {
        let at = AlphaInterval::point(QuadAlgebraic::from_rational(alpha)).unwrap();
        let cls = foster::classify(g, &at).unwrap();
        let mut t01 = cls.t01.clone();
        t01.sort_unstable();
        let mut want = six.clone();
        want.sort_unstable();
        assert_eq!(t01, want);
        assert_eq!(cls.t10, t10);
        assert_eq!(cls.class(x33), Some(if cls.t10.is_empty() { MoveClass::T11 } else { MoveClass::T10 }));
    }
}

#[test]
fn b3_d6_payoffs_at_beta0() {
    let full = model_b3::build_b3(dc(6)).unwrap();
    let sol = model_b3::solve_b3(dc(6)).unwrap();
    let g = &sol.reduction.game;
    let (a, b) = (index(g, InfoSet::of(0, 6, None)), index(g, InfoSet::of(3, 3, Some(6))));
    let base = &sol.exceptional[0].equilibria[0].banker[0].0;
    let den = 1_525_814_595_305;
    let want = [
        [r(-3_953_411_487, 305_162_919_061), r(-19_769_569_403, den), r(-19_423_187_963, den), r(-1_765_972_721, 138_710_417_755)],
        [r(-3_878_240_147, 305_162_919_061), r(-19_391_857_983, den), r(-19_782_952_383, den), r(-19_783_609_631, den)],
    ];
    for (row, u) in want.iter().zip([model_b3::ROWS.0, model_b3::ROWS.1]) {
        for (j, w) in row.iter().enumerate() {
            let t = base.with(a, j >= 2).with(b, j % 2 == 1);
            let got = full.opponent_payoff(u, &sol.reduction.lift(&t)).unwrap().c0;
            assert_eq!(&got, w, "row {u}, column {j}");
        }
    }
}

#[test]
fn b2_spot_checks_at_larger_d() {
    for (d, want) in [(50, (28, 36, 6, 100, 0)), (100, (28, 37, 6, 102, 0))] {
        let build = model_b2::build(dc(d)).unwrap();
        let sol = model_b2::solve_game(dc(d), &build.game).unwrap();
        let s = sol.stats();
        assert_eq!((s.curves, s.intersections, s.exits, s.interval_cases, s.nonunique), want, "d={d}");
        let cf = model_b2::closed_forms_for(dc(d), &build.game).unwrap();
        assert!(model_b2::compare_closed_forms(&sol, &cf).is_empty(), "d={d}");
        assert!(sol.is_certified());
    }
}

#[test]
fn b2_reduction_keeps_only_free_labels() {
    let build = model_b2::build(dc(6)).unwrap();
    let red = model_b2::reduced(&build.game);
    assert_eq!(red.free.len(), 20);
    assert_eq!(red.free.len() + red.fixed_draw.len() + red.fixed_stand.len(), 484);
    let t = DrawSet::from_index(20, 0b1010_0110_0101_1001_0011);
    assert_eq!(red.project(&red.lift(&t)), t);
    for u in 0..2 {
        let direct = build.game.column_payoff(u, &red.lift(&t)).unwrap();
        assert_eq!(red.game.column_payoff(u, &t).unwrap(), direct);
    }
}

#[test]
fn exceptional_equilibria_share_the_row_mixture() {
    for d in [1, 6, 13] {
        let sol = model_b2::solve_b2(dc(d)).unwrap();
        for e in &sol.exceptional {
            assert_eq!(e.equilibria.len(), 4);
            let p = &e.equilibria[0].p;
            assert!(e.equilibria.iter().all(|x| &x.p == p), "d={d}");
        }
    }
    let b3 = model_b3::solve_b3(dc(6)).unwrap();
    let p = &b3.exceptional[0].equilibria[0].p;
    assert!(b3.exceptional[0].equilibria.iter().all(|x| &x.p == p));
}
