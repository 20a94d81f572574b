//! Acceptance criteria, one line per criterion.
//!
//! Runs without the libtest harness so the report is always printed; exits
//! non-zero if any criterion fails. Time limits are checked on the build
//! under test (debug for `cargo test`).

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;

use walk_kernel::arith::{Field, ProjPoint, QuadExt, Rat};
use walk_kernel::classify::{
    classify, classify_named, reproduce_four_model_table, ClassifyOptions, TranscendenceReason, Verdict,
};
use walk_kernel::curve::{Curve, CurvePoint, PoleCase};
use walk_kernel::kernel::build_kernel;
use walk_kernel::model::{assumptions, builtin_model, StepWeights, BUILTINS};
use walk_kernel::series::{enumerate, in_three_quarter_plane};
use walk_kernel::verify::verify_all;

type Outcome = Result<String, String>;

fn r(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}

fn default_ts() -> Vec<Rat> {
    ClassifyOptions::default().t_samples
}

fn curve(w: &StepWeights, t: &Rat, transformed: bool) -> Result<Curve, String> {
    Ok(Curve::new(&build_kernel(w, t, transformed).map_err(|e| e.to_string())?))
}

fn pt(x: (Rat, Rat), y: (Rat, Rat)) -> CurvePoint<Rat> {
    CurvePoint::new(ProjPoint::rats(x.0, x.1), ProjPoint::rats(y.0, y.1))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// 1: one D-algebraic and three D-transcendental verdicts, `k = 2` at every sample.
fn four_model_table() -> Outcome {
    let table = reproduce_four_model_table(&ClassifyOptions::default()).map_err(|e| e.to_string())?;
    ensure(table.matches(), || format!("table differs:\n{}", table.render()))?;
    let mut algebraic = 0;
    let mut transcendental = 0;
    for row in &table.rows {
        match &row.report.verdict {
            Verdict::DAlgebraic(k) => {
                algebraic += 1;
                ensure(*k == 2, || format!("{}: k = {k}", row.model))?;
                let ks: Vec<_> = row.report.samples.iter().map(|s| s.orbit_k).collect();
                ensure(ks.iter().all(|k| *k == Some(2)), || format!("{}: per-sample k {ks:?}", row.model))?;
                ensure(row.model == "simple-ne", || format!("D-algebraic model is {}", row.model))?;
            }
            Verdict::DTranscendental(_) => transcendental += 1,
            v => return Err(format!("{}: {v}", row.model)),
        }
    }
    ensure(algebraic == 1 && transcendental == 3, || {
        format!("{algebraic} D-algebraic, {transcendental} D-transcendental")
    })?;
    Ok("simple-ne DAlgebraic k=2 at 3 samples; ne-kite, sw-corner, simple-sw DTranscendental".into())
}

/// 2: the nine-node orbit from `P₁` to `P₂ = ([−λ:μ],[1:0])`.
fn axis_northeast_orbit() -> Outcome {
    let mut checked = 0;
    for lambda in [r(1, 5), r(1, 3)] {
        let mu = (Rat::one() - lambda.clone()) * r(1, 4);
        let w = builtin_model(&format!("example-4.7({lambda})")).map_err(|e| e.to_string())?;
        let i = |a: i64, b: i64| (Rat::from_int(a), Rat::from_int(b));
        let p2 = pt((-lambda.clone(), mu.clone()), i(1, 0));
        let expected = [
            ("sigma", pt(i(0, 1), i(1, 0))),
            ("iota1", pt(i(0, 1), i(-1, 1))),
            ("iota2", pt(i(1, 0), i(-1, 1))),
            ("iota1", pt(i(1, 0), i(0, 1))),
            ("iota2", pt(i(1, 0), i(0, 1))),
            ("iota1", pt(i(1, 0), i(-1, 1))),
            ("iota2", pt(i(0, 1), i(-1, 1))),
            ("iota1", pt(i(0, 1), i(1, 0))),
            ("iota2", p2.clone()),
        ];
        for t in default_ts() {
            let c = curve(&w, &t, true)?;
            let nodes = c.orbit(&expected[0].1, 4).map_err(|e| e.to_string())?;
            ensure(nodes.len() == 9, || format!("{} nodes", nodes.len()))?;
            for (k, (node, (map, p))) in nodes.iter().zip(&expected).enumerate() {
                ensure(node.map == *map && node.point == *p && c.contains(p), || {
                    format!("lambda={lambda} t={t} node {k}: got {} {}, expected {map} {p}", node.map, node.point)
                })?;
            }
            let poles = c.poles().map_err(|e| e.to_string())?;
            ensure(poles.p2.as_ref() == Some(&p2), || format!("lambda={lambda} t={t}: P2 = {:?}", poles.p2))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} orbits matched node-for-node"))
}

/// 3: `ι₁(P₁) = P₁`, `σ(P₁) = ([−1:1],[1:0])` on the untransformed curve; verdict DTranscendental.
fn example_odd_offset() -> Outcome {
    let w = builtin_model("example-4.14").map_err(|e| e.to_string())?;
    let p1 = CurvePoint::ints((0, 1), (1, 0));
    let target = CurvePoint::ints((-1, 1), (1, 0));
    for t in default_ts() {
        let c = curve(&w, &t, false)?;
        let i1 = c.iota1(&p1).map_err(|e| e.to_string())?;
        let s = c.sigma(&p1).map_err(|e| e.to_string())?;
        ensure(i1 == p1, || format!("t={t}: iota1(P1) = {i1}"))?;
        ensure(s == target, || format!("t={t}: sigma(P1) = {s}"))?;
    }
    let rep = classify_named(&w, "example-4.14", &ClassifyOptions::default()).map_err(|e| e.to_string())?;
    ensure(matches!(rep.verdict, Verdict::DTranscendental(_)), || format!("verdict {}", rep.verdict))?;
    Ok(format!("identities at 3 samples; {}", rep.verdict))
}

/// 4: `d^φ₀₁ = 0`, double pole, DTranscendental by the double-pole criterion.
fn example_double_pole() -> Outcome {
    let w = builtin_model("example-4.10").map_err(|e| e.to_string())?;
    let rep = classify_named(&w, "example-4.10", &ClassifyOptions::default()).map_err(|e| e.to_string())?;
    ensure(rep.d_phi_01 == Some(Rat::zero()), || format!("d_phi_01 = {:?}", rep.d_phi_01))?;
    let case = rep.poles.as_ref().map(|p| p.case);
    ensure(case == Some(PoleCase::Double), || format!("pole case {case:?}"))?;
    ensure(rep.verdict == Verdict::DTranscendental(TranscendenceReason::DoublePole), || {
        format!("verdict {}", rep.verdict)
    })?;
    ensure(rep.theorem.starts_with("double-pole criterion"), || format!("cites {:?}", rep.theorem))?;
    Ok(format!("{} citing the double-pole criterion", rep.verdict))
}

/// 5: all three residuals vanish to order 8.
fn functional_equations() -> Outcome {
    let mut count = 0;
    for b in BUILTINS {
        let w = builtin_model(b.name).map_err(|e| e.to_string())?;
        let a = assumptions(&w);
        if !(a.a1 && a.a2) {
            continue;
        }
        for t in [r(1, 3), r(1, 2)] {
            let rep = verify_all(&w, &t, 8).map_err(|e| e.to_string())?;
            for (eq, res) in &rep.residuals {
                ensure(res.is_zero(), || format!("{} t={t} {eq}: {:?}", b.name, res.first_nonzero()))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} residuals identically zero at N = 8"))
}

/// All step words of length `n`, followed one step at a time, with weights
/// scaled to integers by `scale`.
fn all_paths(steps: &[(i64, i64, i128)], n: usize) -> BTreeMap<(i64, i64), i128> {
    fn go(steps: &[(i64, i64, i128)], left: usize, at: (i64, i64), weight: i128, out: &mut BTreeMap<(i64, i64), i128>) {
        if left == 0 {
            *out.entry(at).or_default() += weight;
            return;
        }
        for &(di, dj, wt) in steps {
            let next = (at.0 + di, at.1 + dj);
            if in_three_quarter_plane(next.0, next.1) {
                go(steps, left - 1, next, weight * wt, out);
            }
        }
    }
    let mut out = BTreeMap::new();
    go(steps, n, (0, 0), 1, &mut out);
    out.retain(|_, c| *c != 0);
    out
}

fn to_i128(q: &Rat) -> Option<i128> {
    q.is_integer().then(|| q.numer().to_string().parse().ok()).flatten()
}

/// 6: the dynamic program agrees with brute force over every word.
fn oracle_equivalence() -> Outcome {
    const N: usize = 6;
    let mut total = 0usize;
    for b in BUILTINS {
        let w = builtin_model(b.name).map_err(|e| e.to_string())?;
        let support = w.support();
        // common denominator; equals |S| for unweighted models
        let scale = support.iter().fold(1i128, |acc, &s| {
            let d = to_i128(&Rat::from_bigints(w.get(s).denom().clone(), 1.into()).unwrap()).unwrap();
            acc / gcd(acc, d) * d
        });
        if w.is_unweighted() {
            ensure(scale == support.len() as i128, || format!("{}: scale {scale}", b.name))?;
        }
        let steps: Vec<_> = support
            .iter()
            .map(|&s| (s.0 as i64, s.1 as i64, to_i128(&(w.get(s) * &Rat::from(scale as i64))).unwrap()))
            .collect();
        let table = enumerate(&w, N);
        for n in 0..=N {
            let factor = Rat::from(scale as i64).pow(n as i32);
            let dp: Option<BTreeMap<_, _>> =
                table.level(n).iter().map(|(&m, c)| to_i128(&(c * &factor)).map(|v| (m, v))).collect();
            let dp = dp.ok_or_else(|| format!("{} n={n}: scaled count not an integer", b.name))?;
            let brute = all_paths(&steps, n);
            ensure(dp == brute, || format!("{} n={n}: DP and brute force differ", b.name))?;
            total += dp.len();
        }
    }
    Ok(format!("{} builtins, n <= {N}, {total} endpoint counts equal", BUILTINS.len()))
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// 7: involution, on-curve closure, Vieta, `4g² = d̂(y)`, `g∘ι₂ = −g` at random points.
fn property_suites() -> Outcome {
    const MODELS: [&str; 5] = ["simple-ne", "simple-sw", "ne-kite", "sw-corner", "example-4.14"];
    let ts = default_ts();
    let mut runner = TestRunner::deterministic();
    let strategy = (0..MODELS.len(), 0..ts.len(), -40i64..=40, 1i64..=13);
    let mut counts = [0usize; 5];
    let mut failures = Vec::new();
    let mut points = 0usize;
    let mut t_seen = [false; 3];
    while points < 300 {
        let (m, ti, xn, xd) = strategy.new_tree(&mut runner).map_err(|e| e.to_string())?.current();
        let w = builtin_model(MODELS[m]).map_err(|e| e.to_string())?;
        let c = curve(&w, &ts[ti], true)?;
        let x = ProjPoint::ints(xn, xd);
        let fiber = c.bihom().y_fiber(&x);
        let Ok(pts) = c.fiber_points(&x) else { continue };
        t_seen[ti] = true;
        let mut fail = |what: &str| failures.push(format!("{} t={} x={xn}/{xd}: {what}", MODELS[m], ts[ti]));
        for p in &pts {
            points += 1;
            let (i1, i2) = match (c.iota1(p), c.iota2(p)) {
                (Ok(a), Ok(b)) => (a, b),
                _ => {
                    fail("involution undefined");
                    continue;
                }
            };
            counts[0] += 1;
            if c.iota1(&i1).ok().as_ref() != Some(p) || c.iota2(&i2).ok().as_ref() != Some(p) {
                fail("not an involution");
            }
            counts[1] += 1;
            if !(c.contains(p) && c.contains(&i1) && c.contains(&i2)) {
                fail("left the curve");
            }
            if let (Some(y), Some(g), Some(g2)) = (p.py.affine(), c.g_at(p), c.g_at(&i2)) {
                counts[3] += 1;
                if QuadExt::rational(Rat::from_int(4)) * g.clone() * g.clone() != c.kernel().dy.eval(y) {
                    fail("4g^2 != d(y)");
                }
                counts[4] += 1;
                if g2 != -g {
                    fail("g not odd under iota2");
                }
            }
        }
        if !fiber.a.is_zero() {
            counts[2] += 2;
            let prod = pts[0].py.affine().zip(pts[1].py.affine()).map(|(a, b)| a.clone() * b.clone());
            if prod.and_then(|p| p.as_rat()) != Some(&fiber.c / &fiber.a) {
                fail("Vieta product");
            }
        }
    }
    ensure(t_seen.iter().all(|&s| s), || "not every t sample drawn".into())?;
    ensure(counts.iter().all(|&n| n >= 100), || format!("too few points per law: {counts:?}"))?;
    ensure(failures.is_empty(), || failures.join("; "))?;
    Ok(format!(
        "{points} points over 3 t; involution {}, on-curve {}, Vieta {}, g^2 {}, g-odd {}; 0 failures",
        counts[0], counts[1], counts[2], counts[3], counts[4]
    ))
}

/// 8: the simple walk closes at one `n` everywhere and is reported as finite.
fn finite_group_control() -> Outcome {
    let w = builtin_model("simple").map_err(|e| e.to_string())?;
    let mut orders = Vec::new();
    for t in default_ts() {
        let c = curve(&w, &t, true)?;
        let pts = c.generic_points(3);
        ensure(pts.len() == 3, || format!("t={t}: {} generic points", pts.len()))?;
        for q in &pts {
            orders.push(c.closure_order(q, 200).map_err(|e| e.to_string())?);
        }
    }
    let first = orders[0];
    ensure(first.is_some() && orders.iter().all(|o| *o == first), || format!("closure orders {orders:?}"))?;
    let rep = classify(&w, &ClassifyOptions::default()).map_err(|e| e.to_string())?;
    ensure(matches!(rep.verdict, Verdict::FiniteGroupDetected(_)), || format!("verdict {}", rep.verdict))?;
    Ok(format!("sigma^{} = id at 9 points; {}", first.unwrap(), rep.verdict))
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, fn() -> Outcome); 8] = [
        ("four-model table", 30, four_model_table),
        ("axis+NE orbit diagram", 1, axis_northeast_orbit),
        ("odd-offset example", 5, example_odd_offset),
        ("double-pole example", 5, example_double_pole),
        ("functional equations N=8", 60, functional_equations),
        ("DP vs brute-force oracle", 60, oracle_equivalence),
        ("curve property suites", 60, property_suites),
        ("finite-group control", 30, finite_group_control),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(*limit);
        let (tag, detail) = match (&outcome, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("over time limit; {d}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        println!(
            "[{tag}] {}. {name:<26} {:>8.3}s (limit {limit}s)  {detail}",
            i + 1,
            elapsed.as_secs_f64()
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
