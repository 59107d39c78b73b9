use proptest::prelude::*;

use bsatlab::arith::{
    format_rational, nullspace, parse_rational, rat, uni_roots, QMatrix, Rational,
    RationalFunction, UniPoly,
};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn unipoly(max_len: usize) -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(small_rational(), 0..=max_len).prop_map(UniPoly::new)
}

fn roots(max: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(small_rational(), 0..=max)
}

proptest! {
    #[test]
    fn roots_of_products_are_unions(a in roots(3), b in roots(3)) {
        let p = &UniPoly::from_roots(&a) * &UniPoly::from_roots(&b);
        let mut expected: Vec<Rational> = a.iter().chain(&b).cloned().collect();
        expected.sort();
        prop_assert_eq!(uni_roots(&p).unwrap(), expected);
    }

    #[test]
    fn add_then_subtract(p in unipoly(5), q in unipoly(5)) {
        prop_assert_eq!(&(&p + &q) - &q, p);
    }

    #[test]
    fn division_with_remainder(p in unipoly(6), d in unipoly(3)) {
        prop_assume!(!d.is_zero());
        let (q, r) = p.div_rem(&d);
        prop_assert_eq!(&(&q * &d) + &r, p);
        prop_assert!(r.is_zero() || r.degree() < d.degree());
    }

    #[test]
    fn gcd_divides_both(a in roots(3), b in roots(3), c in roots(2)) {
        let common = UniPoly::from_roots(&c);
        let p = &UniPoly::from_roots(&a) * &common;
        let q = &UniPoly::from_roots(&b) * &common;
        let g = p.gcd(&q);
        prop_assert!(g.is_monic());
        prop_assert!(p.div_exact(&g).is_some());
        prop_assert!(q.div_exact(&g).is_some());
        prop_assert!(g.div_exact(&common).is_some());
    }

    #[test]
    fn rational_text_round_trip(r in small_rational()) {
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }

    #[test]
    fn rational_function_field_laws(a in unipoly(3), b in unipoly(3), c in unipoly(3)) {
        prop_assume!(!b.is_zero() && !c.is_zero());
        let x = RationalFunction::new(a, b.clone());
        let y = RationalFunction::new(c, b);
        prop_assert_eq!(&(&x + &y) - &y, x.clone());
        prop_assert_eq!(&(&x * &y) / &y, x);
    }

    #[test]
    fn polynomial_nullspace_is_annihilated(
        entries in prop::collection::vec(unipoly(3), 12),
        rows in 1usize..=3,
    ) {
        let cols = 4;
        let m: Vec<Vec<UniPoly>> = entries.chunks(cols).take(rows).map(|r| r.to_vec()).collect();
        let basis = nullspace(&m);
        prop_assert!(basis.len() >= cols - rows);
        for v in &basis {
            prop_assert!(v.iter().any(|x| !x.is_zero()));
            for row in &m {
                let mut acc = RationalFunction::zero();
                for (a, x) in row.iter().zip(v) {
                    acc = &acc + &(&RationalFunction::from_poly(a.clone()) * x);
                }
                prop_assert!(acc.is_zero());
            }
        }
    }

    #[test]
    fn rank_nullity(entries in prop::collection::vec(-3i64..=3, 20)) {
        let rows: Vec<Vec<Rational>> = entries.chunks(5).map(|r| r.iter().map(|&v| rat(v, 1)).collect()).collect();
        let m = QMatrix::from_rows(&rows, 5);
        let null = m.nullspace();
        prop_assert_eq!(m.rank() + null.len(), 5);
        for v in &null {
            prop_assert!(m.apply(v).iter().all(|x| *x == rat(0, 1)));
        }
    }
}

#[test]
fn nullspace_with_polynomial_entries() {
    // [[s, 1], [s^2, s]] has rank 1 over Q(s); kernel spanned by (1, -s).
    let s = UniPoly::s();
    let m = vec![vec![s.clone(), UniPoly::one()], vec![&s * &s, s.clone()]];
    let basis = nullspace(&m);
    assert_eq!(basis.len(), 1);
    let v = &basis[0];
    let ratio = &v[1] / &v[0];
    assert_eq!(ratio, RationalFunction::from_poly(-&s));
}

#[test]
fn irreducible_quadratic_has_no_rational_roots() {
    assert!(uni_roots(&UniPoly::from_i64(&[-2, 0, 1])).is_err());
}
