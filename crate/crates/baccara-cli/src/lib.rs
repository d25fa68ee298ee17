//! Reports for the `baccara` command-line tool.
//!
//! Every exact number is a string (rationals as `n/d`, surds as the integer
//! quadruple `(A + B*sqrt(C))/D`), so the JSON is deterministic and
//! round-trips byte for byte.

use std::fmt::Write as _;

use baccara::additive_game::{DrawSet, Reduction};
use baccara::cards::DeckCount;
use baccara::exactnum::alpha_max;
use baccara::foster::{self, PointEquilibrium};
use baccara::{model_b2, model_b3, oracle, AlphaInterval, AlphaPoint, Error, LinFracAlpha, QuadAlgebraic, Rational};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Sweeps refuse ranges longer than this.
pub const SWEEP_GUARD: u32 = 500;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    B2,
    B3,
}

impl Model {
    pub fn name(self) -> &'static str {
        match self {
            Model::B2 => "b2",
            Model::B3 => "b3",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    None,
    Sampled,
    Full,
}

/// A CLI failure with its exit code.
#[derive(Debug)]
pub enum Failure {
    /// Bad arguments: exit 2.
    Usage(String),
    /// The solver hit an assumption it cannot handle: exit 3.
    Internal(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Internal(e)
    }
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Internal(_) => 3,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "usage error: {m}"),
            Failure::Internal(e) => write!(f, "internal error: {e}"),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, Failure>;

/// Parses `6` or an inclusive range `1..20`.
pub fn parse_decks(s: &str) -> CliResult<Vec<DeckCount>> {
    let bad = |m: String| Failure::Usage(m);
    let num = |t: &str| t.trim().parse::<u64>().map_err(|_| bad(format!("not a deck count: {t:?}")));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => {
            let d = num(s)?;
            (d, d)
        }
    };
    if hi < lo {
        return Ok(vec![]);
    }
    if hi - lo >= u64::from(SWEEP_GUARD) {
        return Err(bad(format!("range {s} spans more than {SWEEP_GUARD} deck counts")));
    }
    (lo..=hi).map(|d| DeckCount::new(d).map_err(|e| bad(e.to_string()))).collect()
}

/// Parses an exact `alpha` in `[0, 1/10]`.
pub fn parse_alpha(s: &str) -> CliResult<Rational> {
    let a = baccara::parse_rational(s).map_err(|e| Failure::Usage(e.to_string()))?;
    if a < Rational::from_integer(0.into()) || a > alpha_max() {
        return Err(Failure::Usage(Error::AlphaOutOfRange(s.to_string()).to_string()));
    }
    Ok(a)
}

/// `(A + B*sqrt(C))/D` with a 7-place decimal for display.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Surd {
    #[serde(rename = "A")]
    pub a: String,
    #[serde(rename = "B")]
    pub b: String,
    #[serde(rename = "C")]
    pub c: String,
    #[serde(rename = "D")]
    pub d: String,
    pub approx: String,
}

impl Surd {
    pub fn of(x: &QuadAlgebraic) -> Self {
        let (a, b, c, d) = x.integer_form();
        Surd { a: a.to_string(), b: b.to_string(), c: c.to_string(), d: d.to_string(), approx: x.decimal(7) }
    }
}

/// `(n0 + n1*alpha)/(d0 + d1*alpha)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Frac {
    pub num: [String; 2],
    pub den: [String; 2],
    pub text: String,
}

impl Frac {
    pub fn of(f: &LinFracAlpha) -> Self {
        Frac {
            num: [f.num().c0.to_string(), f.num().c1.to_string()],
            den: [f.den().c0.to_string(), f.den().c1.to_string()],
            text: if f.is_constant() { f.value(&Rational::from_integer(0.into())).map_or_else(|_| f.to_string(), |q| q.to_string()) } else { f.to_string() },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlayerRow {
    pub index: usize,
    pub mnemonic: String,
}

fn player_rows(model: Model, rows: (usize, usize)) -> [PlayerRow; 2] {
    let row = |u: usize| PlayerRow {
        index: u,
        mnemonic: match model {
            Model::B2 => ["stand at 5", "draw at 5"][u].to_string(),
            Model::B3 => model_b3::player_mnemonic(u),
        },
    };
    [row(rows.0), row(rows.1)]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BankerMix {
    pub label: String,
    pub q: Frac,
    pub q_approx: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegimeReport {
    pub alpha_lo: Surd,
    pub alpha_hi: Surd,
    pub endpoints_open: [bool; 2],
    pub player_rows: [PlayerRow; 2],
    pub player_mix: Frac,
    pub banker_mix: Option<BankerMix>,
    /// Support columns of the reduced game, as bit strings.
    pub banker_strategy_binary: Vec<String>,
    pub banker_columns: Vec<u64>,
    pub banker_strategy_mnemonic: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightReport {
    pub column: u64,
    pub binary: String,
    pub weight: Surd,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointReport {
    pub player_rows: [PlayerRow; 2],
    pub p: Surd,
    pub banker: Vec<WeightReport>,
}

fn point_report(model: Model, rows: (usize, usize), e: &PointEquilibrium) -> PointReport {
    PointReport {
        player_rows: player_rows(model, rows),
        p: Surd::of(&e.p),
        banker: e.banker.iter().map(|(t, w)| WeightReport { column: t.to_index().unwrap_or(u64::MAX), binary: t.binary(), weight: Surd::of(w) }).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalReport {
    pub alpha_exact: Surd,
    pub alpha_approx: String,
    pub equilibria: Vec<PointReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BreakpointReport {
    pub name: String,
    pub alpha: Surd,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Statistics {
    pub free_labels: usize,
    pub curves: usize,
    pub intersections: usize,
    pub exits: usize,
    pub interval_cases: usize,
    pub nonunique: usize,
}

impl Statistics {
    fn of(free: usize, s: &foster::Stats) -> Self {
        Statistics {
            free_labels: free,
            curves: s.curves,
            intersections: s.intersections,
            exits: s.exits,
            interval_cases: s.interval_cases,
            nonunique: s.nonunique,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtAlpha {
    pub alpha: String,
    pub equilibria: Vec<PointReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveReport {
    pub model: Model,
    pub decks: u32,
    /// Model B3 results show that an equilibrium exists; others may too.
    pub existence_only: bool,
    pub breakpoints: Vec<BreakpointReport>,
    pub regimes: Vec<RegimeReport>,
    pub exceptional_points: Vec<ExceptionalReport>,
    pub statistics: Statistics,
    pub at_alpha: Option<AtAlpha>,
}

fn binaries(support: &[(DrawSet, LinFracAlpha)]) -> Vec<String> {
    support.iter().map(|(t, _)| t.binary()).collect()
}

fn name_breakpoints(points: &[AlphaPoint], named: &[(String, AlphaPoint)]) -> Vec<BreakpointReport> {
    points
        .iter()
        .map(|x| BreakpointReport { name: named.iter().find(|(_, y)| y == x).map_or_else(|| "unnamed".to_string(), |(n, _)| n.clone()), alpha: Surd::of(x) })
        .collect()
}

fn interior_ends(ivs: impl Iterator<Item = AlphaInterval>) -> Vec<AlphaPoint> {
    let zero = AlphaPoint::from_rational(Rational::from_integer(0.into()));
    let top = AlphaPoint::from_rational(alpha_max());
    let mut v: Vec<AlphaPoint> = ivs.flat_map(|iv| [iv.lo, iv.hi]).filter(|x| *x > zero && *x < top).collect();
    v.sort();
    v.dedup();
    v
}

/// `solve` for Model B2.
pub fn solve_b2(d: DeckCount, alpha: Option<&Rational>) -> CliResult<SolveReport> {
    let build = model_b2::build(d)?;
    let sol = model_b2::solve_game(d, &build.game)?;
    let cf = model_b2::closed_forms_for(d, &build.game).ok();
    let named: Vec<(String, AlphaPoint)> = cf.iter().flat_map(|c| c.breakpoints.iter().map(|(b, x)| (format!("alpha{}", *b as u8), x.clone()))).collect();
    let regimes = sol
        .regimes
        .iter()
        .map(|r| RegimeReport {
            alpha_lo: Surd::of(&r.interval.lo),
            alpha_hi: Surd::of(&r.interval.hi),
            endpoints_open: [r.interval.lo_open, r.interval.hi_open],
            player_rows: player_rows(Model::B2, (0, 1)),
            player_mix: Frac::of(&r.player),
            banker_mix: r.mixing.zip(r.q.as_ref()).map(|(m, q)| BankerMix {
                label: m.to_string(),
                q: Frac::of(q),
                q_approx: q.eval_quad(&r.interval.lo).map(|v| v.decimal(7)).unwrap_or_default(),
            }),
            banker_strategy_binary: binaries(&r.equilibrium.banker),
            banker_columns: r.columns(),
            banker_strategy_mnemonic: r.mnemonic(),
        })
        .collect::<Vec<_>>();
    let exceptional_points = sol
        .exceptional
        .iter()
        .map(|e| ExceptionalReport {
            alpha_exact: Surd::of(&e.alpha),
            alpha_approx: e.alpha.decimal(7),
            equilibria: e.equilibria.iter().map(|q| point_report(Model::B2, (0, 1), q)).collect(),
        })
        .collect();
    let at_alpha = match alpha {
        Some(a) => {
            let x = AlphaPoint::from_rational(a.clone());
            Some(AtAlpha { alpha: a.to_string(), equilibria: sol.solution.equilibria_at(&x)?.iter().map(|q| point_report(Model::B2, (0, 1), q)).collect() })
        }
        None => None,
    };
    Ok(SolveReport {
        model: Model::B2,
        decks: d.get(),
        existence_only: false,
        breakpoints: name_breakpoints(&interior_ends(sol.regimes.iter().map(|r| r.interval.clone())), &named),
        regimes,
        exceptional_points,
        statistics: Statistics::of(sol.reduction.free.len(), &sol.stats()),
        at_alpha,
    })
}

/// `solve` for Model B3.
pub fn solve_b3(d: DeckCount, alpha: Option<&Rational>) -> CliResult<SolveReport> {
    let sol = model_b3::solve_b3(d)?;
    let cf = model_b3::theorem2_closed_forms(d).ok();
    let named: Vec<(String, AlphaPoint)> = cf.iter().flat_map(|c| c.breakpoints.iter().map(|(b, x)| (format!("beta{}", *b as u8), x.clone()))).collect();
    let regimes = sol
        .regimes
        .iter()
        .map(|r| RegimeReport {
            alpha_lo: Surd::of(&r.interval.lo),
            alpha_hi: Surd::of(&r.interval.hi),
            endpoints_open: [r.interval.lo_open, r.interval.hi_open],
            player_rows: player_rows(Model::B3, r.rows),
            player_mix: Frac::of(&r.player),
            banker_mix: r.mixing.zip(r.q.as_ref()).map(|(m, q)| BankerMix {
                label: m.to_string(),
                q: Frac::of(q),
                q_approx: q.eval_quad(&r.interval.lo).map(|v| v.decimal(7)).unwrap_or_default(),
            }),
            banker_strategy_binary: binaries(&r.equilibrium.banker),
            banker_columns: r.columns(),
            banker_strategy_mnemonic: r.mnemonic(),
        })
        .collect::<Vec<_>>();
    let exceptional_points = sol
        .exceptional
        .iter()
        .map(|e| ExceptionalReport {
            alpha_exact: Surd::of(&e.alpha),
            alpha_approx: e.alpha.decimal(7),
            equilibria: e.equilibria.iter().map(|q| point_report(Model::B3, e.rows, q)).collect(),
        })
        .collect();
    let at_alpha = match alpha {
        Some(a) => {
            let x = AlphaPoint::from_rational(a.clone());
            let mut eqs = Vec::new();
            for c in &sol.confirmations {
                let mut seen: Vec<PointEquilibrium> = Vec::new();
                for e in c.accepted().filter(|e| e.validity.contains(&x)) {
                    let pe = e.at(&x)?;
                    if !seen.contains(&pe) {
                        eqs.push(point_report(Model::B3, c.rows, &pe));
                        seen.push(pe);
                    }
                }
            }
            Some(AtAlpha { alpha: a.to_string(), equilibria: eqs })
        }
        None => None,
    };
    let stats = sol.confirmations.iter().find(|c| c.accepted().next().is_some()).map(|c| c.solution.stats).unwrap_or_default();
    Ok(SolveReport {
        model: Model::B3,
        decks: d.get(),
        existence_only: true,
        breakpoints: name_breakpoints(&interior_ends(sol.regimes.iter().map(|r| r.interval.clone())), &named),
        regimes,
        exceptional_points,
        statistics: Statistics::of(sol.free_labels(), &stats),
        at_alpha,
    })
}

pub fn solve(model: Model, d: DeckCount, alpha: Option<&Rational>) -> CliResult<SolveReport> {
    match model {
        Model::B2 => solve_b2(d, alpha),
        Model::B3 => solve_b3(d, alpha),
    }
}

pub fn solve_text(r: &SolveReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "model {} d={}{}", r.model.name(), r.decks, if r.existence_only { " (existence only)" } else { "" });
    let st = &r.statistics;
    let _ = writeln!(
        s,
        "free labels {}; curves {}, intersections {}, exits {}, interval cases {}, nonunique {}",
        st.free_labels, st.curves, st.intersections, st.exits, st.interval_cases, st.nonunique
    );
    for b in &r.breakpoints {
        let _ = writeln!(s, "{} = {} ~ {}", b.name, surd_text(&b.alpha), b.alpha.approx);
    }
    for g in &r.regimes {
        let l = if g.endpoints_open[0] { '(' } else { '[' };
        let h = if g.endpoints_open[1] { ')' } else { ']' };
        let _ = writeln!(s, "alpha in {l}{}, {}{h}: {}", g.alpha_lo.approx, g.alpha_hi.approx, g.banker_strategy_mnemonic);
        let _ = writeln!(s, "  Player mixes {} / {}: p = {}", g.player_rows[0].mnemonic, g.player_rows[1].mnemonic, g.player_mix.text);
        if let Some(m) = &g.banker_mix {
            let _ = writeln!(s, "  Banker mixes at {}: q = {} ~ {}", m.label, m.q.text, m.q_approx);
        }
        let _ = writeln!(s, "  columns {:?}", g.banker_columns);
    }
    for e in &r.exceptional_points {
        let _ = writeln!(s, "alpha ~ {}: {} equilibria", e.alpha_approx, e.equilibria.len());
    }
    if let Some(a) = &r.at_alpha {
        let _ = writeln!(s, "at alpha = {}:", a.alpha);
        for e in &a.equilibria {
            let w: Vec<String> = e.banker.iter().map(|w| format!("{}:{}", w.column, w.weight.approx)).collect();
            let _ = writeln!(s, "  p = {} ~ {}; Banker {}", surd_text(&e.p), e.p.approx, w.join(", "));
        }
    }
    s
}

/// `n/d`, or `(A +- B*sqrt(C))/D`.
pub fn surd_text(x: &Surd) -> String {
    if x.b == "0" {
        return if x.d == "1" { x.a.clone() } else { format!("{}/{}", x.a, x.d) };
    }
    let (sign, b) = match x.b.strip_prefix('-') {
        Some(b) => ('-', b),
        None => ('+', x.b.as_str()),
    };
    let b = if b == "1" { String::new() } else { format!("{b}*") };
    format!("({} {sign} {b}sqrt({}))/{}", x.a, x.c, x.d)
}

/// One row of a sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub d: u32,
    pub statistics: Statistics,
    pub regimes: usize,
    pub breakpoints: Vec<String>,
    pub q: Vec<String>,
    pub mixing: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub model: Model,
    pub rows: Vec<SweepRow>,
}

pub fn sweep(model: Model, decks: &[DeckCount]) -> CliResult<SweepReport> {
    let rows = decks
        .par_iter()
        .map(|&d| {
            let r = solve(model, d, None)?;
            Ok(SweepRow {
                d: d.get(),
                statistics: r.statistics.clone(),
                regimes: r.regimes.len(),
                breakpoints: r.breakpoints.iter().map(|b| b.alpha.approx.clone()).collect(),
                q: r.regimes.iter().map(|g| g.banker_mix.as_ref().map_or_else(|| "-".into(), |m| m.q.text.clone())).collect(),
                mixing: r.regimes.iter().map(|g| g.banker_mix.as_ref().map_or_else(|| "-".into(), |m| m.label.clone())).collect(),
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(SweepReport { model, rows })
}

pub fn sweep_csv(r: &SweepReport) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let _ = w.write_record(["d", "free_labels", "a", "b", "c", "d_cases", "e", "regimes", "breakpoints", "q", "mixing"]);
    for row in &r.rows {
        let s = &row.statistics;
        let _ = w.write_record([
            row.d.to_string(),
            s.free_labels.to_string(),
            s.curves.to_string(),
            s.intersections.to_string(),
            s.exits.to_string(),
            s.interval_cases.to_string(),
            s.nonunique.to_string(),
            row.regimes.to_string(),
            row.breakpoints.join(";"),
            row.q.join(";"),
            row.mixing.join(";"),
        ]);
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8")
}

pub fn sweep_text(r: &SweepReport) -> String {
    let mut s = format!("model {}\n   d  (a)  (b)  (c)  (d)  (e)  regimes  breakpoints\n", r.model.name());
    for row in &r.rows {
        let t = &row.statistics;
        let _ = writeln!(
            s,
            "{:>4} {:>4} {:>4} {:>4} {:>4} {:>4} {:>8}  {}",
            row.d,
            t.curves,
            t.intersections,
            t.exits,
            t.interval_cases,
            t.nonunique,
            row.regimes,
            row.breakpoints.join(" ")
        );
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveReport {
    pub label: String,
    pub frac: Frac,
    /// `(alpha, p)` as 12-place decimals.
    pub samples: Vec<[String; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionReport {
    pub labels: [String; 2],
    pub alpha: Surd,
    pub p: Surd,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurvesReport {
    pub model: Model,
    pub decks: u32,
    /// Player rows of the two-row game whose curves these are.
    pub rows: [usize; 2],
    pub curves: Vec<CurveReport>,
    pub intersections: Vec<IntersectionReport>,
}

/// Threshold curves of the Model B2 game, or of the Model B3 confirmation game.
pub fn curves(model: Model, d: DeckCount, resolution: usize) -> CliResult<CurvesReport> {
    let (game, rows) = match model {
        Model::B2 => (model_b2::reduced(&model_b2::build(d)?.game).game, (0, 1)),
        Model::B3 => {
            let sol = model_b3::solve_b3(d)?;
            let rows = sol.regimes.first().map_or(model_b3::ROWS, |r| r.rows);
            (sol.reduction.game.select_rows(&[rows.0, rows.1]), rows)
        }
    };
    let (cs, xs) = foster::curves(&game, &AlphaInterval::full())?;
    let label = |l: usize| game.labels()[l].to_string();
    let n = resolution.max(1);
    let grid: Vec<Rational> =
        (0..n).map(|i| if n == 1 { Rational::from_integer(0.into()) } else { alpha_max() * Rational::new(i.into(), (n - 1).into()) }).collect();
    let curves = cs
        .iter()
        .map(|c| {
            let samples = grid
                .iter()
                .filter_map(|a| {
                    let x = AlphaPoint::from_rational(a.clone());
                    if !c.contains(&x) {
                        return None;
                    }
                    let p = c.value(&x).ok()?;
                    Some([baccara::exactnum::decimal(a, 12), p.decimal(12)])
                })
                .collect();
            CurveReport { label: label(c.label), frac: Frac::of(&c.frac), samples }
        })
        .collect();
    let intersections =
        xs.iter().map(|x| IntersectionReport { labels: [label(x.labels.0), label(x.labels.1)], alpha: Surd::of(&x.alpha), p: Surd::of(&x.p) }).collect();
    Ok(CurvesReport { model, decks: d.get(), rows: [rows.0, rows.1], curves, intersections })
}

pub fn curves_csv(r: &CurvesReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# model {} d={} rows {:?}", r.model.name(), r.decks, r.rows);
    for c in &r.curves {
        let _ = writeln!(s, "# curve {} p = {}", c.label, c.frac.text);
    }
    for x in &r.intersections {
        let _ = writeln!(s, "# intersection {} {} alpha = {} ~ {}", x.labels[0], x.labels[1], surd_text(&x.alpha), x.alpha.approx);
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    let _ = w.write_record(["curve_label", "alpha", "p"]);
    for c in &r.curves {
        for [a, p] in &c.samples {
            let _ = w.write_record([c.label.as_str(), a, p]);
        }
    }
    s + &String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8")
}

/// One verification check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub target: String,
    pub passed: bool,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl VerifyReport {
    fn new(checks: Vec<Check>) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        VerifyReport { checks, passed }
    }
}

fn check(name: &str, target: &str, problems: Vec<String>) -> Check {
    Check { name: name.into(), target: target.into(), passed: problems.is_empty(), detail: (!problems.is_empty()).then(|| problems.join("; ")) }
}

fn samples_per_regime(level: Level) -> usize {
    match level {
        Level::None => 0,
        Level::Sampled => 1,
        Level::Full => 5,
    }
}

fn direct_checks(
    full: &baccara::AdditiveBimatrixGame,
    red: &Reduction,
    fams: &[(AlphaInterval, (usize, usize), foster::NashEquilibrium)],
    k: usize,
    alpha: Option<&Rational>,
) -> Vec<String> {
    let mut bad = Vec::new();
    for (iv, rows, e) in fams {
        let pts = match alpha {
            Some(a) => {
                if iv.contains_rational(a) {
                    vec![a.clone()]
                } else {
                    vec![]
                }
            }
            None => iv.sample_rationals(k),
        };
        for a in pts {
            match oracle::check_family(full, red, *rows, e, &a) {
                Ok(Ok(())) => {}
                Ok(Err(dev)) => bad.push(format!("alpha = {a}: {dev:?}")),
                Err(err) => bad.push(format!("alpha = {a}: {err}")),
            }
        }
    }
    bad
}

fn verify_b2(d: DeckCount, level: Level, alpha: Option<&Rational>) -> CliResult<Vec<Check>> {
    let target = format!("b2 d={d}");
    let build = model_b2::build(d)?;
    let sol = model_b2::solve_game(d, &build.game)?;
    let cf = model_b2::closed_forms_for(d, &build.game)?;
    let mut out = vec![check("closed forms", &target, model_b2::compare_closed_forms(&sol, &cf))];
    if level == Level::Full {
        let mut p = Vec::new();
        if !sol.is_certified() {
            p.push("uniqueness certificate incomplete".into());
        }
        for e in &sol.exceptional {
            if e.equilibria.len() != 4 {
                p.push(format!("alpha ~ {}: {} equilibria", e.alpha.decimal(7), e.equilibria.len()));
            }
        }
        out.push(check("uniqueness and exceptional points", &target, p));
    }
    if level != Level::None || alpha.is_some() {
        let fams: Vec<_> = sol.regimes.iter().map(|r| (r.interval.clone(), (0, 1), r.equilibrium.clone())).collect();
        out.push(check("direct Nash verification", &target, direct_checks(&build.game, &sol.reduction, &fams, samples_per_regime(level).max(1), alpha)));
    }
    Ok(out)
}

fn verify_b3(d: DeckCount, level: Level, alpha: Option<&Rational>) -> CliResult<Vec<Check>> {
    let target = format!("b3 d={d}");
    let full = model_b3::build_b3(d)?;
    let sol = model_b3::solve_b3(d)?;
    let cf = model_b3::closed_forms_for(d, &full)?;
    let mut out = vec![check("closed forms", &target, model_b3::compare_closed_forms(&sol, &cf))];
    let mut cover: Vec<String> = sol.uncovered.iter().map(|c| format!("no confirmed equilibrium on {c}")).collect();
    if let Some(a) = alpha {
        let x = AlphaPoint::from_rational(a.clone());
        if !sol.regimes.iter().any(|r| r.interval.contains(&x)) && !sol.exceptional.iter().any(|e| e.alpha == x) {
            cover.push(format!("no confirmed equilibrium at {a}"));
        }
    }
    out.push(check("condition (pB) and coverage", &target, cover));
    let mut aq = Vec::new();
    for r in &sol.regimes {
        let c = model_b3::condition_aq(&sol.reduction.game, r.rows, &r.equilibrium)?;
        if !c.violations.is_empty() {
            aq.push(format!("on {}: rows {:?} beat the support", r.interval, c.violations));
        }
        if !c.ties.is_empty() && level == Level::Full {
            aq.push(format!("on {}: rows {:?} tie the support", r.interval, c.ties));
        }
    }
    out.push(check("condition (Aq)", &target, aq));
    if level != Level::None || alpha.is_some() {
        let fams: Vec<_> = sol.regimes.iter().map(|r| (r.interval.clone(), r.rows, r.equilibrium.clone())).collect();
        out.push(check("direct Nash verification", &target, direct_checks(&full, &sol.reduction, &fams, samples_per_regime(level).max(1), alpha)));
    }
    Ok(out)
}

/// `verify` over deck counts.
pub fn verify_models(model: Model, decks: &[DeckCount], level: Level, alpha: Option<&Rational>) -> CliResult<VerifyReport> {
    let per: Vec<Vec<Check>> = decks
        .par_iter()
        .map(|&d| match model {
            Model::B2 => verify_b2(d, level, alpha),
            Model::B3 => verify_b3(d, level, alpha),
        })
        .collect::<CliResult<_>>()?;
    Ok(VerifyReport::new(per.into_iter().flatten().collect()))
}

/// Game size for oracle seed `seed`.
pub fn oracle_size(seed: u64) -> usize {
    1 + (seed % 8) as usize
}

/// `verify --oracle`: Foster against support enumeration on seeds `0..seeds`.
pub fn verify_oracle(seeds: u64) -> VerifyReport {
    let checks = (0..seeds)
        .into_par_iter()
        .map(|seed| {
            let r = oracle::oracle_check(seed, oracle_size(seed));
            let mut p = Vec::new();
            if let Some(e) = &r.error {
                p.push(e.clone());
            }
            for (a, mine, theirs) in &r.mismatches {
                p.push(format!("alpha = {a}: Foster {mine:?}, oracle {theirs:?}"));
            }
            if !r.undominated_eliminated.is_empty() {
                p.push(format!("eliminated but undominated columns {:?}", r.undominated_eliminated));
            }
            if !r.dominated_survivors.is_empty() {
                p.push(format!("surviving columns beaten by a flip {:?}", r.dominated_survivors));
            }
            check("oracle equivalence", &format!("seed {seed} n={}", r.n), p)
        })
        .collect();
    VerifyReport::new(checks)
}

pub fn verify_text(r: &VerifyReport) -> String {
    let mut s = String::new();
    for c in &r.checks {
        let _ = writeln!(
            s,
            "{} {}: {}{}",
            if c.passed { "PASS" } else { "FAIL" },
            c.target,
            c.name,
            c.detail.as_ref().map_or(String::new(), |d| format!(" ({d})"))
        );
    }
    let failed = r.checks.iter().filter(|c| !c.passed).count();
    let _ = writeln!(s, "{} checks, {} failed", r.checks.len(), failed);
    s
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(x: &T) -> String {
    serde_json::to_string_pretty(x).expect("serializable") + "\n"
}
