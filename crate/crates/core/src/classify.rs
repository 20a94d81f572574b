//! Decision procedure for the differential nature of the generating series,
//! driven by the orbit of the poles of `y` under the QRT map.
//!
//! Every claim that holds "for all `t`" is checked at a finite set of sampled
//! rational `t`, and the samples are part of the report.

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde_json::{json, Value};

use crate::arith::Rat;
use crate::curve::{Curve, CurvePoint, PoleCase};
use crate::error::Result;
use crate::kernel::build_kernel;
use crate::model::{assumptions, builtin_model, is_unconstrained, phi_transform, AssumptionReport, StepWeights, FOUR_MODELS};

pub const THREADS_ENV: &str = "WALK_KERNEL_THREADS";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassifyOptions {
    pub t_samples: Vec<Rat>,
    pub k_max: u32,
    pub n_max: u32,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            t_samples: vec![Rat::new(1, 7), Rat::new(1, 3), Rat::new(9, 10)],
            k_max: 25,
            n_max: 200,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TranscendenceReason {
    /// `y` has a double pole.
    DoublePole,
    /// `σⁿ(P₁) = P₂` with `n` odd at every sample, so `P₁ ≁ P₂`.
    OddOffset(Vec<i64>),
    /// No relation `σ^{2k}(P₁) = P₂` with `|k| ≤ k_max` at any sample.
    NoOrbitRelation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Rational,
    NotCovered(String),
    FiniteGroupDetected(Vec<u32>),
    DAlgebraic(i64),
    DTranscendental(TranscendenceReason),
    Inconclusive(String),
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Rational => "Rational",
            Verdict::NotCovered(_) => "NotCovered",
            Verdict::FiniteGroupDetected(_) => "FiniteGroupDetected",
            Verdict::DAlgebraic(_) => "DAlgebraic",
            Verdict::DTranscendental(_) => "DTranscendental",
            Verdict::Inconclusive(_) => "Inconclusive",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::DAlgebraic(k) => write!(f, "DAlgebraic(k={k})"),
            Verdict::DTranscendental(TranscendenceReason::DoublePole) => write!(f, "DTranscendental(double pole)"),
            Verdict::DTranscendental(TranscendenceReason::OddOffset(_)) => write!(f, "DTranscendental(odd offset)"),
            Verdict::DTranscendental(TranscendenceReason::NoOrbitRelation) => {
                write!(f, "DTranscendental(no orbit relation)")
            }
            Verdict::FiniteGroupDetected(n) => write!(f, "FiniteGroupDetected({n:?})"),
            Verdict::NotCovered(why) | Verdict::Inconclusive(why) => write!(f, "{}({why})", self.name()),
            Verdict::Rational => write!(f, "Rational"),
        }
    }
}

/// `σ`-steps from `P₁` to `P₂` at one sample; `exponent = 2k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub exponent: i64,
    pub points: Vec<CurvePoint<Rat>>,
}

impl Certificate {
    /// Re-checks every step exactly on `curve`.
    pub fn replay(&self, curve: &Curve) -> bool {
        let forward = self.exponent >= 0;
        self.points.len() as u64 == self.exponent.unsigned_abs() + 1
            && self.points.iter().all(|p| curve.contains(p))
            && self.points.windows(2).all(|w| {
                let next = if forward { curve.sigma(&w[0]) } else { curve.sigma_inv(&w[0]) };
                next.as_ref() == Ok(&w[1])
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleEvidence {
    pub t: Rat,
    /// Least `n ≤ n_max` with `σⁿ(Q) = Q` at a generic point `Q`.
    pub group_closure: Option<u32>,
    /// `k` with `σ^{2k}(P₁) = P₂`.
    pub orbit_k: Option<i64>,
    /// Odd `n` with `σⁿ(P₁) = P₂`, searched when no even relation exists.
    pub odd_offset: Option<i64>,
    pub certificate: Option<Certificate>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoleSummary {
    pub case: PoleCase,
    pub p1: CurvePoint<Rat>,
    pub p2: Option<CurvePoint<Rat>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub model: String,
    pub assumptions: AssumptionReport,
    pub d_phi_01: Option<Rat>,
    pub poles: Option<PoleSummary>,
    pub options: ClassifyOptions,
    pub samples: Vec<SampleEvidence>,
    pub verdict: Verdict,
    pub theorem: String,
}

const CITE_RATIONAL: &str = "steps in a half-plane avoiding the forbidden quadrant: the walk never meets the boundary, rational generating function";
const CITE_NOT_COVERED: &str = "outside the criteria: diagonal symmetry without anti-diagonal steps and an elliptic kernel curve are required";
const CITE_FINITE: &str = "finite group of the walk at every sample: outside the infinite-group criteria";
const CITE_ALGEBRAIC: &str = "pole-orbit criterion: P1 = sigma^(-2k)(P2) for all sampled t implies D-algebraic";
const CITE_DOUBLE: &str = "double-pole criterion: d^phi_{0,1} = 0 implies D-transcendental (conditional on an infinite group)";
const CITE_INEQUIVALENT: &str = "pole-equivalence criterion: P1 not sigma^2-equivalent to P2 implies D-transcendental (conditional on an infinite group)";
const CITE_INCONCLUSIVE: &str = "no criterion applies uniformly across the samples";

/// Worker cap from `WALK_KERNEL_THREADS`, defaulting to the machine's parallelism.
pub fn thread_cap() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Applies `f` to every item on at most `thread_cap()` threads, keeping input order.
fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let workers = thread_cap().min(items.len()).max(1);
    if workers == 1 {
        return items.iter().map(f).collect();
    }
    let next = AtomicUsize::new(0);
    let out: Mutex<Vec<Option<R>>> = Mutex::new((0..items.len()).map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(item) = items.get(i) else { break };
                let r = f(item);
                out.lock().expect("no poisoned workers")[i] = Some(r);
            });
        }
    });
    out.into_inner().expect("no poisoned workers").into_iter().map(|r| r.expect("every slot filled")).collect()
}

fn sample(w: &StepWeights, t: &Rat, opts: &ClassifyOptions) -> Result<SampleEvidence> {
    let curve = Curve::new(&build_kernel(w, t, true)?);
    let group_closure = curve.group_order_probe(opts.n_max)?;
    let poles = curve.poles()?;
    let mut ev = SampleEvidence { t: t.clone(), group_closure, orbit_k: None, odd_offset: None, certificate: None };
    if let Some(p2) = &poles.p2 {
        ev.orbit_k = curve.orbit_relation(p2, &poles.p1, opts.k_max)?;
        match ev.orbit_k {
            Some(k) => {
                let mut points = vec![poles.p1.clone()];
                for _ in 0..2 * k.unsigned_abs() {
                    let last = points.last().expect("nonempty");
                    points.push(if k > 0 { curve.sigma(last)? } else { curve.sigma_inv(last)? });
                }
                ev.certificate = Some(Certificate { exponent: 2 * k, points });
            }
            None => ev.odd_offset = curve.odd_orbit_relation(p2, &poles.p1, opts.k_max)?,
        }
    }
    Ok(ev)
}

pub fn classify(w: &StepWeights, opts: &ClassifyOptions) -> Result<ClassificationReport> {
    classify_named(w, &w.to_string(), opts)
}

pub fn classify_named(w: &StepWeights, model: &str, opts: &ClassifyOptions) -> Result<ClassificationReport> {
    let mut report = ClassificationReport {
        model: model.to_string(),
        assumptions: assumptions(w),
        d_phi_01: None,
        poles: None,
        options: opts.clone(),
        samples: Vec::new(),
        verdict: Verdict::Rational,
        theorem: CITE_RATIONAL.to_string(),
    };
    if is_unconstrained(w) {
        return Ok(report);
    }
    if !report.assumptions.a1 || !report.assumptions.a2 {
        report.verdict = Verdict::NotCovered(report.assumptions.diagnostic.clone());
        report.theorem = CITE_NOT_COVERED.to_string();
        return Ok(report);
    }
    let phi = phi_transform(w)?;
    let d01 = phi.get((0, 1)).clone();
    report.d_phi_01 = Some(d01.clone());
    report.poles = Some(PoleSummary {
        case: if d01.is_zero() { PoleCase::Double } else { PoleCase::Simple },
        p1: CurvePoint::ints((0, 1), (1, 0)),
        p2: (!d01.is_zero()).then(|| {
            CurvePoint::new(
                crate::arith::ProjPoint::new(-d01.clone(), phi.get((1, 1)).clone()).expect("d01 != 0"),
                crate::arith::ProjPoint::infinity(),
            )
        }),
    });
    let mut samples = par_map(&opts.t_samples, |t| sample(w, t, opts)).into_iter().collect::<Result<Vec<_>>>()?;
    samples.sort_by(|a, b| a.t.cmp(&b.t));
    report.samples = samples;
    let (verdict, cite) = decide(&report.samples, d01.is_zero(), opts);
    report.verdict = verdict;
    report.theorem = cite.to_string();
    Ok(report)
}

fn decide(samples: &[SampleEvidence], double: bool, opts: &ClassifyOptions) -> (Verdict, &'static str) {
    let closures: Vec<u32> = samples.iter().filter_map(|s| s.group_closure).collect();
    if !samples.is_empty() && closures.len() == samples.len() {
        return (Verdict::FiniteGroupDetected(closures), CITE_FINITE);
    }
    if !closures.is_empty() {
        let why = format!("group closes at {} of {} samples", closures.len(), samples.len());
        return (Verdict::Inconclusive(why), CITE_INCONCLUSIVE);
    }
    if double {
        return (Verdict::DTranscendental(TranscendenceReason::DoublePole), CITE_DOUBLE);
    }
    let ks: Vec<i64> = samples.iter().filter_map(|s| s.orbit_k).collect();
    if ks.len() == samples.len() && !ks.is_empty() && ks.iter().all(|&k| k == ks[0]) {
        return (Verdict::DAlgebraic(ks[0]), CITE_ALGEBRAIC);
    }
    if ks.is_empty() {
        let odd: Vec<i64> = samples.iter().filter_map(|s| s.odd_offset).collect();
        let reason = if odd.len() == samples.len() && !odd.is_empty() {
            TranscendenceReason::OddOffset(odd)
        } else {
            TranscendenceReason::NoOrbitRelation
        };
        return (Verdict::DTranscendental(reason), CITE_INEQUIVALENT);
    }
    let why = format!("orbit relation k = {ks:?} at {} of {} samples (k_max = {})", ks.len(), samples.len(), opts.k_max);
    (Verdict::Inconclusive(why), CITE_INCONCLUSIVE)
}

fn point_json(p: &CurvePoint<Rat>) -> Value {
    let (x, y) = p.to_strings();
    json!({ "x": x, "y": y })
}

impl ClassificationReport {
    /// `k` of a D-algebraic verdict.
    pub fn k(&self) -> Option<i64> {
        match self.verdict {
            Verdict::DAlgebraic(k) => Some(k),
            _ => None,
        }
    }

    /// Report as JSON; object keys come out sorted.
    pub fn to_json(&self) -> Value {
        let reason = match &self.verdict {
            Verdict::NotCovered(s) | Verdict::Inconclusive(s) => Value::from(s.as_str()),
            Verdict::DTranscendental(TranscendenceReason::DoublePole) => Value::from("double pole"),
            Verdict::DTranscendental(TranscendenceReason::OddOffset(_)) => Value::from("odd offset"),
            Verdict::DTranscendental(TranscendenceReason::NoOrbitRelation) => Value::from("no orbit relation"),
            _ => Value::Null,
        };
        let samples: Vec<Value> = self
            .samples
            .iter()
            .map(|s| {
                json!({
                    "t": s.t.to_string(),
                    "group_closure": s.group_closure,
                    "orbit_k": s.orbit_k,
                    "odd_offset": s.odd_offset,
                    "certificate": s.certificate.as_ref().map(|c| json!({
                        "exponent": c.exponent,
                        "points": c.points.iter().map(point_json).collect::<Vec<_>>(),
                    })),
                })
            })
            .collect();
        json!({
            "model": self.model,
            "assumptions": { "a1": self.assumptions.a1, "a2": self.assumptions.a2, "diagnostic": self.assumptions.diagnostic },
            "d_phi_01": self.d_phi_01.as_ref().map(Rat::to_string),
            "poles": self.poles.as_ref().map(|p| json!({
                "case": p.case.to_string(),
                "p1": point_json(&p.p1),
                "p2": p.p2.as_ref().map(point_json),
            })),
            "samples": samples,
            "verdict": self.verdict.name(),
            "k": self.k(),
            "reason": reason,
            "theorem": self.theorem,
            "bounds": { "k_max": self.options.k_max, "n_max": self.options.n_max },
        })
    }
}

/// One row of the four-model table.
#[derive(Clone, Debug)]
pub struct TableRow {
    pub model: &'static str,
    pub expected: &'static str,
    pub report: ClassificationReport,
}

impl TableRow {
    pub fn matches(&self) -> bool {
        match (self.expected, &self.report.verdict) {
            ("DAlgebraic", Verdict::DAlgebraic(2)) => true,
            ("DTranscendental", Verdict::DTranscendental(_)) => true,
            _ => false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct FourModelTable {
    pub rows: Vec<TableRow>,
}

impl FourModelTable {
    pub fn matches(&self) -> bool {
        self.rows.iter().all(TableRow::matches)
    }

    pub fn render(&self) -> String {
        let mut out = format!("{:<10} {:<34} {:<16} {}\n", "model", "verdict", "expected", "status");
        for r in &self.rows {
            out += &format!(
                "{:<10} {:<34} {:<16} {}\n",
                r.model,
                r.report.verdict.to_string(),
                r.expected,
                if r.matches() { "ok" } else { "MISMATCH" }
            );
        }
        out
    }
}

/// Classifies the four unweighted diagonally symmetric models with an infinite
/// group: one D-algebraic (with `k = 2`), three D-transcendental.
pub fn reproduce_four_model_table(opts: &ClassifyOptions) -> Result<FourModelTable> {
    let rows = FOUR_MODELS
        .iter()
        .map(|&name| {
            let w = builtin_model(name)?;
            let expected = if name == "simple-ne" { "DAlgebraic" } else { "DTranscendental" };
            Ok(TableRow { model: name, expected, report: classify_named(&w, name, opts)? })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FourModelTable { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{E, N, NE, NW, S, SE, W};

    fn quick() -> ClassifyOptions {
        ClassifyOptions { n_max: 60, ..ClassifyOptions::default() }
    }

    fn verdict(name: &str) -> Verdict {
        classify(&builtin_model(name).unwrap(), &quick()).unwrap().verdict
    }

    #[test]
    fn decision_tree() {
        assert_eq!(verdict("simple-ne"), Verdict::DAlgebraic(2));
        assert!(matches!(verdict("simple-sw"), Verdict::DTranscendental(TranscendenceReason::DoublePole)));
        assert!(matches!(verdict("example-4.10"), Verdict::DTranscendental(TranscendenceReason::DoublePole)));
        assert!(matches!(verdict("sw-corner"), Verdict::DTranscendental(TranscendenceReason::OddOffset(_))));
        assert!(matches!(verdict("simple"), Verdict::FiniteGroupDetected(_)));
        let up = StepWeights::uniform(&[NW, N, NE, E, SE]).unwrap();
        assert_eq!(classify(&up, &quick()).unwrap().verdict, Verdict::Rational);
        let skew = StepWeights::uniform(&[N, S, E, W, SE]).unwrap();
        assert!(matches!(classify(&skew, &quick()).unwrap().verdict, Verdict::NotCovered(_)));
        let flat = StepWeights::uniform(&[NE, crate::model::SW]).unwrap();
        assert!(matches!(classify(&flat, &quick()).unwrap().verdict, Verdict::NotCovered(_)));
    }

    #[test]
    fn certificates_replay() {
        let opts = quick();
        let w = builtin_model("simple-ne").unwrap();
        let rep = classify(&w, &opts).unwrap();
        for s in &rep.samples {
            let cert = s.certificate.as_ref().unwrap();
            let curve = Curve::new(&build_kernel(&w, &s.t, true).unwrap());
            assert!(cert.replay(&curve));
            assert_eq!(cert.points.last(), rep.poles.as_ref().unwrap().p2.as_ref());
            // a tampered chain is rejected
            let mut bad = cert.clone();
            bad.points.swap(1, 2);
            assert!(!bad.replay(&curve));
        }
    }

    #[test]
    fn decide_mixed_evidence() {
        let ev = |k: Option<i64>, closure: Option<u32>| SampleEvidence {
            t: Rat::new(1, 2),
            group_closure: closure,
            orbit_k: k,
            odd_offset: None,
            certificate: None,
        };
        let opts = ClassifyOptions::default();
        assert!(matches!(decide(&[ev(Some(2), None), ev(None, None)], false, &opts).0, Verdict::Inconclusive(_)));
        assert!(matches!(decide(&[ev(Some(2), None), ev(Some(3), None)], false, &opts).0, Verdict::Inconclusive(_)));
        assert!(matches!(decide(&[ev(None, Some(6)), ev(None, None)], true, &opts).0, Verdict::Inconclusive(_)));
        assert_eq!(
            decide(&[ev(None, None), ev(None, None)], false, &opts).0,
            Verdict::DTranscendental(TranscendenceReason::NoOrbitRelation)
        );
    }

    #[test]
    fn json_shape() {
        let rep = classify_named(&builtin_model("simple-ne").unwrap(), "simple-ne", &quick()).unwrap();
        let js = rep.to_json();
        assert_eq!(js["verdict"], "DAlgebraic");
        assert_eq!(js["k"], 2);
        assert_eq!(js["d_phi_01"], "1/5");
        assert_eq!(js["poles"]["case"], "simple");
        assert_eq!(js["poles"]["p2"]["x"], json!(["-1", "1"]));
        assert_eq!(js["samples"].as_array().unwrap().len(), 3);
        assert_eq!(js["samples"][0]["t"], "1/7");
        assert_eq!(js["bounds"]["k_max"], 25);
        let text = serde_json::to_string(&js).unwrap();
        let keys: Vec<&str> = js.as_object().unwrap().keys().map(String::as_str).collect();
        let mut sorted = keys.clone();
        sorted.sort_unstable();
        assert_eq!(keys, sorted);
        assert!(text.starts_with("{\"assumptions\""));
    }

    #[test]
    fn table_stable_under_other_samples() {
        let base = reproduce_four_model_table(&quick()).unwrap();
        let other = ClassifyOptions { t_samples: vec![Rat::new(2, 11), Rat::new(5, 8)], ..quick() };
        let moved = reproduce_four_model_table(&other).unwrap();
        assert!(base.matches() && moved.matches());
        for (a, b) in base.rows.iter().zip(&moved.rows) {
            assert_eq!(a.report.verdict.name(), b.report.verdict.name(), "{}", a.model);
            assert_eq!(a.report.k(), b.report.k());
        }
    }

    #[test]
    fn larger_bounds_never_flip_the_verdict() {
        let algebraic = |v: &Verdict| matches!(v, Verdict::DAlgebraic(_));
        let transcendental = |v: &Verdict| matches!(v, Verdict::DTranscendental(_));
        for name in ["simple-ne", "ne-kite", "sw-corner", "simple-sw", "example-4.14"] {
            let w = builtin_model(name).unwrap();
            let small = ClassifyOptions { k_max: 3, n_max: 20, ..ClassifyOptions::default() };
            let a = classify(&w, &small).unwrap().verdict;
            let b = classify(&w, &quick()).unwrap().verdict;
            assert!(!(algebraic(&a) && transcendental(&b)), "{name}: {a} -> {b}");
            assert!(!(transcendental(&a) && algebraic(&b)), "{name}: {a} -> {b}");
            if !matches!(a, Verdict::Inconclusive(_)) {
                assert_eq!(a.name(), b.name(), "{name}");
            }
        }
    }

    #[test]
    fn thread_cap_reads_environment() {
        assert!(thread_cap() >= 1);
        let doubled = par_map(&[1, 2, 3, 4, 5], |x| x * 2);
        assert_eq!(doubled, vec![2, 4, 6, 8, 10]);
    }
}
