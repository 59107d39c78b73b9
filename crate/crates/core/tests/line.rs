use proptest::prelude::*;

use bsatlab::arith::{int, rat, UniPoly};
use bsatlab::bsat::{bernstein_sato, lambda_set, SearchLimits};
use bsatlab::line::{
    build_tilde, classify, compute_shriek, quotient_report, ClassKind, LineError, TransitionKind,
};
use bsatlab::weyl::Setting;

#[test]
fn graded_components_are_falling_factorials() {
    let m = build_tilde(8).unwrap();
    for n in 1..=8i64 {
        let expected = UniPoly::from_roots(&(0..n).map(int).collect::<Vec<_>>());
        assert_eq!(m.generator(-n), &expected);
    }
    for k in 0..=8 {
        assert_eq!(m.generator(k), &UniPoly::one());
    }
}

#[test]
fn quotient_report_is_nested() {
    let q = quotient_report(8).unwrap();
    for pair in q.pis.windows(2) {
        assert!(pair[1].div_exact(&pair[0]).is_some());
    }
    let total: usize = q.s_support.iter().map(|(_, m)| m).sum();
    assert_eq!(total, (1..=8).sum::<usize>());
    assert_eq!(q.delta_summands.len(), 8);
    assert_eq!(q.delta_summands[0].index, 1);
}

#[test]
fn shriek_positions() {
    let (_, c) = compute_shriek(2, 8).unwrap();
    assert_eq!(c.failing_positions(TransitionKind::T), vec![2]);
    assert!(c.failing_positions(TransitionKind::D).is_empty());
    assert!(matches!(
        compute_shriek(5, 4),
        Err(LineError::WindowTooSmall { .. })
    ));
}

#[test]
fn exceptional_parameters_match_the_line_b_function() {
    let st = Setting::parse("t", &["t"]).unwrap();
    let b = bernstein_sato(&st, &SearchLimits::default_for(&st))
        .unwrap()
        .b;
    let set = lambda_set(&b).unwrap();
    let window = 10;
    let m = build_tilde(window).unwrap();
    for q in 1..=5 {
        for p in -7 * q..=7 * q {
            let lambda = rat(p, q);
            let kind = m.classify(&lambda).unwrap().kind;
            assert_eq!(
                kind != ClassKind::BothIso,
                set.contains(&lambda),
                "lambda = {lambda}"
            );
        }
    }
}

proptest! {
    #[test]
    fn non_integers_are_isomorphisms(
        (window, p, q) in (3u32..=10, 2i64..=7).prop_flat_map(|(w, q)| {
            let reach = (i64::from(w) - 1) * q - 1;
            (Just(w), -reach..=reach, Just(q))
        })
    ) {
        prop_assume!(p % q != 0);
        prop_assert_eq!(classify(&rat(p, q), window).unwrap().kind, ClassKind::BothIso);
    }

    #[test]
    fn integers_split_by_sign(window in 4u32..=12, l in -12i64..=12) {
        let n = i64::from(window);
        prop_assume!(l.abs() < n - 2);
        let kind = classify(&int(l), window).unwrap().kind;
        if l >= 0 {
            prop_assert_eq!(kind, ClassKind::JShriekOnly);
        } else {
            prop_assert_eq!(kind, ClassKind::JStarOnly);
        }
    }
}
