use proptest::prelude::*;

use bsatlab::arith::{int, rat, uni_roots, Rational, UniPoly};
use bsatlab::bsat::{
    bernstein_sato, deepening_schedule, generation_check, lambda_set, solve_at, Bounds,
    SearchLimits,
};
use bsatlab::par::Jobs;
use bsatlab::weyl::{check_functional_equation, Setting};

fn solve(f: &str, vars: &[&str]) -> bsatlab::bsat::BFunctionResult {
    let st = Setting::parse(f, vars).unwrap();
    bernstein_sato(&st, &SearchLimits::default_for(&st)).unwrap()
}

#[test]
fn powers_of_a_coordinate() {
    // b for x^k is the product of (s + i/k), i = 1..k.
    for k in 1..=3i64 {
        let r = solve(&format!("x^{k}"), &["x"]);
        let expected = UniPoly::from_roots(&(1..=k).map(|i| rat(-i, k)).collect::<Vec<_>>());
        assert_eq!(r.b, expected, "x^{k}");
    }
}

#[test]
fn roots_lie_in_the_open_interval() {
    // Roots of b are negative rationals, none below -(number of variables).
    for (f, vars) in [
        ("x", vec!["x"]),
        ("x*y", vec!["x", "y"]),
        ("x^2+y^2", vec!["x", "y"]),
        ("x^2+y^3", vec!["x", "y"]),
    ] {
        let r = solve(f, &vars);
        assert!(r.verified);
        let n = int(vars.len() as i64);
        for root in uni_roots(&r.b).unwrap() {
            assert!(root < int(0) && root >= -n.clone(), "{f}: root {root}");
        }
        assert!(r.b.eval(&int(-1)) == int(0), "{f}: -1 is always a root");
    }
}

#[test]
fn enlarging_bounds_keeps_b() {
    for (f, vars) in [
        ("x", vec!["x"]),
        ("x^2", vec!["x"]),
        ("x^3", vec!["x"]),
        ("x^2+y^2", vec!["x", "y"]),
    ] {
        let st = Setting::parse(f, &vars).unwrap();
        let r = bernstein_sato(&st, &SearchLimits::default_for(&st)).unwrap();
        let (b, op) = solve_at(&st, r.bounds.enlarged(), Jobs::sequential(), None)
            .unwrap()
            .expect("solvable at larger bounds");
        assert_eq!(b, r.b, "{f}");
        assert!(check_functional_equation(&op, &b, &st));
    }
}

#[test]
fn job_count_does_not_change_the_result() {
    let st = Setting::parse("x^2+y^3", &["x", "y"]).unwrap();
    let limits = SearchLimits::default_for(&st);
    let one = bernstein_sato(&st, &limits).unwrap();
    let many = bernstein_sato(&st, &limits.clone().with_jobs(Jobs(3))).unwrap();
    assert_eq!(one, many);
}

#[test]
fn cusp_residues() {
    let r = solve("x^2+y^3", &["x", "y"]);
    let set = lambda_set(&r.b).unwrap();
    let residues: Vec<Rational> = set.residues().cloned().collect();
    assert_eq!(residues, vec![int(0), rat(1, 6), rat(5, 6)]);
}

proptest! {
    #[test]
    fn generation_is_monotone_in_n(
        roots in prop::collection::vec((1i64..=12, 1i64..=4), 1..=3),
        lambda in (-30i64..=30, 1i64..=4),
        n in 0i64..=10,
    ) {
        let b = UniPoly::from_roots(&roots.iter().map(|&(p, q)| rat(-p, q)).collect::<Vec<_>>());
        let lambda = rat(lambda.0, lambda.1);
        if generation_check(&b, &lambda, n).unwrap() {
            prop_assert!(generation_check(&b, &lambda, n + 1).unwrap());
        }
    }

    #[test]
    fn schedule_steps_one_coordinate_at_a_time(o in 1u32..=4, x in 1u32..=5, s in 0u32..=3) {
        let st = Setting::parse("x^2+y^3", &["x", "y"]).unwrap();
        let max = Bounds::new(o, x, s);
        let sched = deepening_schedule(&st, max);
        prop_assert_eq!(*sched.last().unwrap(), max);
        for w in sched.windows(2) {
            let (a, b) = (w[0], w[1]);
            let steps = (b.order - a.order) + (b.x_degree - a.x_degree) + (b.s_degree - a.s_degree);
            prop_assert_eq!(steps, 1);
        }
    }
}
