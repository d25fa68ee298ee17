use baccara::cards::DeckCount;
use baccara::model_b2;
use baccara_cli::{CurvesReport, Model, SolveReport, SweepReport, VerifyReport};
use serde::de::DeserializeOwned;
use serde::Serialize;

fn dc(d: u64) -> DeckCount {
    DeckCount::new(d).unwrap()
}

fn round_trip<T: Serialize + DeserializeOwned + PartialEq + std::fmt::Debug>(x: &T) {
    let text = baccara_cli::to_json(x);
    let back: T = serde_json::from_str(&text).unwrap();
    assert_eq!(&back, x);
    assert_eq!(baccara_cli::to_json(&back), text);
}

#[test]
fn json_round_trips_byte_for_byte() {
    let alpha = baccara_cli::parse_alpha("1/20").unwrap();
    let solve: SolveReport = baccara_cli::solve(Model::B2, dc(6), Some(&alpha)).unwrap();
    round_trip(&solve);
    let sweep: SweepReport = baccara_cli::sweep(Model::B2, &[dc(3)]).unwrap();
    round_trip(&sweep);
    let curves: CurvesReport = baccara_cli::curves(Model::B2, dc(3), 5).unwrap();
    round_trip(&curves);
    let verify: VerifyReport = baccara_cli::verify_oracle(3);
    round_trip(&verify);
}

#[test]
fn solve_report_for_six_decks() {
    let r = baccara_cli::solve(Model::B2, dc(6), None).unwrap();
    assert_eq!(r.regimes.len(), 2);
    assert_eq!(r.breakpoints.len(), 1);
    assert_eq!(r.breakpoints[0].name, "alpha0");
    assert_eq!(r.breakpoints[0].alpha.approx, "0.0620017");
    let q: Vec<&str> = r.regimes.iter().map(|g| g.banker_mix.as_ref().unwrap().q.text.as_str()).collect();
    assert_eq!(q, ["77143741/121269912", "76834069/121269912"]);
    assert_eq!(r.exceptional_points.len(), 1);
    assert_eq!(r.exceptional_points[0].equilibria.len(), 4);
    let s = &r.statistics;
    assert_eq!((s.free_labels, s.curves, s.intersections, s.exits, s.interval_cases, s.nonunique), (20, 20, 23, 3, 66, 1));
}

#[test]
fn curve_samples_at_the_ends_of_the_range() {
    let d = dc(6);
    let r = baccara_cli::curves(Model::B2, d, 2).unwrap();
    assert_eq!(r.curves.len(), 20);
    assert_eq!(r.intersections.len(), 23);
    let build = model_b2::build(d).unwrap();
    for c in &r.curves {
        let s = build.game.labels().iter().find_map(|l| match l {
            baccara::additive_game::Label::Info(s) if l.to_string() == c.label => Some(*s),
            _ => None,
        });
        let f = model_b2::curve_of(&build.game, s.expect("label")).unwrap();
        assert!(!c.samples.is_empty() && c.samples.len() <= 2);
        for [a, p] in &c.samples {
            let alpha = if a.starts_with("0.1") { baccara::exactnum::rat(1, 10) } else { baccara::exactnum::rat(0, 1) };
            assert_eq!(*p, baccara::exactnum::decimal(&f.value(&alpha).unwrap(), 12), "{}", c.label);
        }
    }
    let csv = baccara_cli::curves_csv(&r);
    assert!(csv.lines().any(|l| l == "curve_label,alpha,p"));
}

#[test]
fn deck_and_alpha_parsing() {
    assert_eq!(baccara_cli::parse_decks("6").unwrap(), [dc(6)]);
    assert_eq!(baccara_cli::parse_decks("2..4").unwrap(), [dc(2), dc(3), dc(4)]);
    assert!(baccara_cli::parse_decks("5..4").unwrap().is_empty());
    assert_eq!(baccara_cli::parse_decks("0").unwrap_err().code(), 2);
    assert_eq!(baccara_cli::parse_decks("1..1000").unwrap_err().code(), 2);
    assert_eq!(baccara_cli::parse_alpha("3/100").unwrap(), baccara::exactnum::rat(3, 100));
    assert_eq!(baccara_cli::parse_alpha("1/5").unwrap_err().code(), 2);
    assert_eq!(baccara_cli::parse_alpha("x").unwrap_err().code(), 2);
}

#[test]
fn sweep_csv_has_one_row_per_deck_count() {
    let r = baccara_cli::sweep(Model::B2, &[dc(1), dc(2)]).unwrap();
    let csv = baccara_cli::sweep_csv(&r);
    let mut lines = csv.lines();
    assert!(lines.next().unwrap().starts_with("d,free_labels,a,b,c,d_cases,e"));
    assert!(lines.next().unwrap().starts_with("1,26,26,13,4,52,2"));
    assert!(lines.next().unwrap().starts_with("2,"));
    assert!(lines.next().is_none());
}
