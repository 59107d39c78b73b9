//! Acceptance criteria 1-9. Runs without the libtest harness so that one
//! PASS/FAIL line per criterion is always printed; exits nonzero if any fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use bsatlab::arith::{int, parse_rational, rat, uni_roots, Rational, UniPoly};
use bsatlab::bsat::{bernstein_sato, generation_check, lambda_set, SearchLimits};
use bsatlab::glue::sample::run_trials;
use bsatlab::line::{build_tilde, classify, quotient_report, ClassKind};
use bsatlab::par::Jobs;
use bsatlab::weyl::{
    act, check_functional_equation, parse_op, DiffOp, FsElement, OpMonomial, Setting,
};

const LIMIT_BSAT_LINE: Duration = Duration::from_secs(1);
const LIMIT_BSAT_SQUARE: Duration = Duration::from_secs(5);
const LIMIT_BSAT_CONE: Duration = Duration::from_secs(30);
const LIMIT_BSAT_CUSP: Duration = Duration::from_secs(300);
const LIMIT_LINE_MODEL: Duration = Duration::from_secs(1);
const LIMIT_GLUE_SUITE: Duration = Duration::from_secs(10);

const GENERATION_TRIPLES: usize = 100;
const GLUE_TRIALS: u64 = 200;
const GLUE_MAX_DIM: usize = 10;
const LINE_WINDOW: u32 = 12;
const QUOTIENT_WINDOW: u32 = 8;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(why())
    }
}

fn json_of(args: &[&str]) -> Result<(Value, Duration), String> {
    let start = Instant::now();
    let out = common::run(args, &[]);
    let elapsed = start.elapsed();
    if !out.status.success() {
        return Err(format!(
            "{args:?} exited with {:?}: {}",
            out.status.code(),
            String::from_utf8_lossy(&out.stderr).trim()
        ));
    }
    let v = serde_json::from_slice(&out.stdout).map_err(|e| format!("bad JSON: {e}"))?;
    Ok((v, elapsed))
}

fn rationals(v: &Value) -> Result<Vec<Rational>, String> {
    v.as_array()
        .ok_or("expected an array")?
        .iter()
        .map(|x| {
            let t = x.as_str().ok_or("expected a string")?;
            parse_rational(t).map_err(|e| e.to_string())
        })
        .collect()
}

/// Runs `bsat`, rebuilds `b` and `P` from the JSON and re-checks
/// `P f^{s+1} = b f^s` in-process.
fn certified_bsat(f: &str, vars: &[&str], limit: Duration) -> Result<(UniPoly, Duration), String> {
    let (json, elapsed) = json_of(&["bsat", f, "--vars", &vars.join(",")])?;
    ensure(elapsed < limit, || {
        format!("took {elapsed:?}, limit {limit:?}")
    })?;
    ensure(json["verified"] == Value::Bool(true), || {
        "verified is not true".into()
    })?;
    let mut coeffs = rationals(&json["b"]["monic_coeffs"])?;
    coeffs.reverse();
    let b = UniPoly::new(coeffs);
    let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
    let p_text = json["P"].as_str().ok_or("P missing")?;
    let p = parse_op(p_text, &names).map_err(|e| format!("P does not parse: {e}"))?;
    let setting = Setting::parse(f, vars).map_err(|e| e.to_string())?;
    ensure(check_functional_equation(&p, &b, &setting), || {
        format!("functional equation fails for P = {p_text}, b = {b}")
    })?;
    Ok((b, elapsed))
}

fn linear(c: i64, a: i64) -> UniPoly {
    UniPoly::from_i64(&[c, a])
}

fn criterion_1() -> Check {
    let (b, t) = certified_bsat("x", &["x"], LIMIT_BSAT_LINE)?;
    ensure(b == linear(1, 1), || format!("b = {b}"))?;
    Ok(format!("b = {b}, certified, {t:.2?}"))
}

fn criterion_2() -> Check {
    let (b, t) = certified_bsat("x^2", &["x"], LIMIT_BSAT_SQUARE)?;
    // d^2 x^(2s+2) = (2s+2)(2s+1) x^(2s)
    let oracle = (&linear(2, 2) * &linear(1, 2)).monic();
    ensure(b == oracle, || format!("b = {b}, expected {oracle}"))?;
    Ok(format!("b = {b}, certified, {t:.2?}"))
}

fn criterion_3() -> Check {
    let (b, t) = certified_bsat("x^2+y^2", &["x", "y"], LIMIT_BSAT_CONE)?;
    // Laplacian of (x^2+y^2)^(s+1) = 4 (s+1)^2 (x^2+y^2)^s
    let oracle = (&linear(1, 1) * &linear(1, 1)).scale(&int(4)).monic();
    ensure(b == oracle, || format!("b = {b}, expected {oracle}"))?;
    Ok(format!("b = {b}, certified, {t:.2?}"))
}

fn criterion_4() -> Check {
    let (b, t) = certified_bsat("x^2+y^3", &["x", "y"], LIMIT_BSAT_CUSP)?;
    ensure(b.degree() == Some(3), || {
        format!("deg b = {:?}", b.degree())
    })?;
    let roots = uni_roots(&b).map_err(|e| e.to_string())?;
    ensure(roots.iter().all(|r| r < &int(0)), || {
        format!("roots {roots:?}")
    })?;
    let shown: Vec<String> = roots.iter().map(|r| r.to_string()).collect();
    Ok(format!("roots {}, certified, {t:.2?}", shown.join(", ")))
}

/// Brute force: does `b` vanish at some `λ − n − j`, `j ≥ 0`?
fn hits_root(b: &UniPoly, lambda: &Rational, n: i64, roots: &[Rational]) -> bool {
    let lowest = roots.iter().min().cloned().unwrap_or_else(|| int(0));
    let mut point = lambda - int(n);
    while point >= lowest {
        if b.eval(&point) == int(0) {
            return true;
        }
        point -= int(1);
    }
    false
}

fn criterion_5() -> Check {
    let (json, _) = json_of(&["lambda", "x^2"])?;
    let residues = rationals(&json["residues_mod_1"])?;
    ensure(residues == vec![int(0), rat(1, 2)], || {
        format!("residues {residues:?}")
    })?;
    let setting = Setting::parse("x^2", &["x"]).map_err(|e| e.to_string())?;
    let r = bernstein_sato(&setting, &SearchLimits::default_for(&setting))
        .map_err(|e| e.to_string())?;
    let set = lambda_set(&r.b).map_err(|e| e.to_string())?;
    let lib: Vec<Rational> = set.residues().cloned().collect();
    ensure(lib == residues, || format!("library residues {lib:?}"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut positives = 0;
    for _ in 0..GENERATION_TRIPLES {
        let roots: Vec<Rational> = (0..rng.gen_range(1..=3))
            .map(|_| rat(-rng.gen_range(1..=12), rng.gen_range(1..=4)))
            .collect();
        let b = UniPoly::from_roots(&roots);
        let lambda = if rng.gen_bool(0.5) {
            &roots[0] + int(rng.gen_range(-5..=15))
        } else {
            rat(rng.gen_range(-40..=40), rng.gen_range(1..=4))
        };
        let n = rng.gen_range(0..=10);
        let here = generation_check(&b, &lambda, n).map_err(|e| e.to_string())?;
        let next = generation_check(&b, &lambda, n + 1).map_err(|e| e.to_string())?;
        ensure(!here || next, || {
            format!("not monotone at b = {b}, lambda = {lambda}, n = {n}")
        })?;
        ensure(here != hits_root(&b, &lambda, n, &roots), || {
            format!("disagrees with brute force at b = {b}, lambda = {lambda}, n = {n}")
        })?;
        positives += usize::from(here);
    }
    Ok(format!(
        "residues {{0, 1/2}}; {GENERATION_TRIPLES} triples monotone and match brute force ({positives} generate)"
    ))
}

fn criterion_6() -> Check {
    let report = quotient_report(QUOTIENT_WINDOW).map_err(|e| e.to_string())?;
    let line = Setting::parse("t", &["t"]).map_err(|e| e.to_string())?;
    let generator = FsElement::generator(&line);
    for n in 1..=QUOTIENT_WINDOW {
        let pi = &report.pis[n as usize - 1];
        let product = UniPoly::from_roots(&(0..i64::from(n)).map(int).collect::<Vec<_>>());
        ensure(pi == &product, || format!("pi_{n} = {pi}"))?;
        ensure(pi.degree() == Some(n as usize), || format!("deg pi_{n}"))?;
        let d_n = DiffOp::term(
            UniPoly::one(),
            OpMonomial {
                x: vec![0],
                d: vec![n],
            },
        );
        let applied = act(&d_n, &generator);
        ensure(
            applied.shift() == n && applied.numerator().x_coefficient(&[0]) == product,
            || format!("d^{n} t^s does not give pi_{n} t^(s-{n})"),
        )?;
    }
    let (json, _) = json_of(&[
        "line",
        "--quotient",
        "--window",
        &QUOTIENT_WINDOW.to_string(),
    ])?;
    let graded = json["graded"].as_array().map_or(0, Vec::len);
    let summands = json["delta_summands"].as_array().map_or(0, Vec::len);
    ensure(
        graded == QUOTIENT_WINDOW as usize && summands == QUOTIENT_WINDOW as usize,
        || format!("emitted {graded} graded rows and {summands} summands"),
    )?;
    Ok(format!(
        "pi_n = s(s-1)...(s-n+1) for n <= {QUOTIENT_WINDOW}, matches d^n t^s; graded and summand views emitted"
    ))
}

fn criterion_7() -> Check {
    let start = Instant::now();
    let n = LINE_WINDOW;
    let expect = |lambda: Rational, kind: ClassKind| -> Result<(), String> {
        let got = classify(&lambda, n).map_err(|e| e.to_string())?.kind;
        ensure(got == kind, || {
            format!("lambda = {lambda}: {got}, expected {kind}")
        })
    };
    for l in [rat(1, 2), rat(-7, 3), rat(5, 2)] {
        expect(l, ClassKind::BothIso)?;
    }
    for l in [0, 2, 5] {
        expect(int(l), ClassKind::JShriekOnly)?;
    }
    for l in [-1, -3, -6] {
        expect(int(l), ClassKind::JStarOnly)?;
    }
    let line = Setting::parse("t", &["t"]).map_err(|e| e.to_string())?;
    let b = bernstein_sato(&line, &SearchLimits::default_for(&line))
        .map_err(|e| e.to_string())?
        .b;
    let exceptional = lambda_set(&b).map_err(|e| e.to_string())?;
    let reach = i64::from(n) - 3;
    let module = build_tilde(n).map_err(|e| e.to_string())?;
    let mut swept = 0;
    let mut non_iso = BTreeSet::new();
    for q in 1..=6 {
        for p in -reach * q..=reach * q {
            let lambda = rat(p, q);
            let kind = module.classify(&lambda).map_err(|e| e.to_string())?.kind;
            if kind != ClassKind::BothIso {
                non_iso.insert(lambda.clone());
            }
            ensure(
                (kind != ClassKind::BothIso) == exceptional.contains(&lambda),
                || format!("lambda = {lambda}: {kind} disagrees with residues of b = {b}"),
            )?;
            swept += 1;
        }
    }
    let integers: BTreeSet<Rational> = (-reach..=reach).map(int).collect();
    ensure(non_iso == integers, || format!("non-iso set {non_iso:?}"))?;
    let t = start.elapsed();
    ensure(t < LIMIT_LINE_MODEL, || format!("took {t:?}"))?;
    Ok(format!("9 named cases; {swept} sweep points, non-iso set = integers in [-{reach}, {reach}], {t:.2?}"))
}

fn criterion_8() -> Check {
    let start = Instant::now();
    let trials = run_trials(8, GLUE_TRIALS, GLUE_MAX_DIM, Jobs::all());
    let t = start.elapsed();
    let mut max_dim = 0;
    for trial in &trials {
        let i = trial.index;
        let r = trial
            .report
            .as_ref()
            .map_err(|e| format!("trial {i}: {e}"))?;
        ensure(r.composition_holds(&trial.psi), || {
            format!("trial {i}: v c != S")
        })?;
        ensure(r.coker.dim == r.psi_dim && r.ker.dim == r.psi_dim, || {
            format!("trial {i}: dim")
        })?;
        ensure(r.comparison.rank() == r.psi_dim, || {
            format!("trial {i}: comparison not bijective")
        })?;
        for c in [&r.shriek, &r.star] {
            ensure(c.kernel_dim() == c.cokernel_dim(), || {
                format!("trial {i}: Euler characteristic")
            })?;
        }
        max_dim = max_dim.max(r.psi_dim);
    }
    ensure(trials.len() as u64 == GLUE_TRIALS, || {
        "missing trials".into()
    })?;
    ensure(t < LIMIT_GLUE_SUITE, || format!("took {t:?}"))?;
    Ok(format!(
        "{GLUE_TRIALS} instances up to dim {max_dim}, all checks hold, {t:.2?}"
    ))
}

fn criterion_9() -> Check {
    for (name, args) in common::CASES {
        let first = common::run(args, &[]);
        let second = common::run(args, &[]);
        ensure(first.status.success(), || format!("{name} failed"))?;
        ensure(first.stdout == second.stdout, || {
            format!("{name} differs between runs")
        })?;
    }
    Ok(format!(
        "{} golden invocations byte-identical across two runs",
        common::CASES.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("bsat x", criterion_1),
        ("bsat x^2", criterion_2),
        ("bsat x^2+y^2", criterion_3),
        ("bsat x^2+y^3", criterion_4),
        ("exceptional set and generation check", criterion_5),
        ("quotient of the line model", criterion_6),
        ("classification of specializations", criterion_7),
        ("gluing suite", criterion_8),
        ("determinism", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
