//! The undetermined-coefficient linear system for `P · f^{s+1} = b(s) · f^s`.
//!
//! Unknowns are the rational coefficients of
//! `P = Σ c_{β,α,k} s^k x^α ∂^β` (`|β| ≤ order`, `|α| ≤ x_degree`,
//! `k ≤ s_degree`) and of `b = Σ b_k s^k` (`k ≤ order + s_degree`). Both
//! sides are written over the common denominator `f^{s+1−order}`, where the
//! identity becomes a polynomial identity in `x` and `s`, one equation per
//! monomial.
//!
//! The derivatives `∂^β f^{s+1}` are built here directly from the product
//! rule at a fixed shift, without going through `weyl::act`; the functional
//! equation checker stays an independent code path.

use std::collections::BTreeMap;
use std::time::Instant;

use num_traits::Zero;

use crate::arith::{Monomial, MultiPoly, QMatrix, Rational, SparseEchelon, SparseRow, UniPoly};
use crate::par::{self, Jobs};
use crate::weyl::{DiffOp, OpMonomial, Setting};

use super::{Bounds, BsatError};

/// What an unknown multiplies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Unknown {
    Operator { x: Vec<u32>, d: Vec<u32>, s: u32 },
    B(u32),
}

#[derive(Clone, Debug)]
pub struct LinearSystem {
    pub unknowns: Vec<Unknown>,
    /// Number of leading operator unknowns; the rest are `b_0, …, b_D`.
    pub operator_unknowns: usize,
    pub rows: Vec<SparseRow>,
}

impl LinearSystem {
    pub fn b_degree_bound(&self) -> usize {
        self.unknowns.len() - self.operator_unknowns - 1
    }
}

fn exponent_vectors(nvars: usize, max_total: u32) -> Vec<Vec<u32>> {
    fn rec(prefix: &mut Vec<u32>, left: usize, budget: u32, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(prefix.clone());
            return;
        }
        for e in 0..=budget {
            prefix.push(e);
            rec(prefix, left - 1, budget - e, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(nvars), nvars, max_total, &mut out);
    out.sort_by(|a, b| {
        let (sa, sb): (u32, u32) = (a.iter().sum(), b.iter().sum());
        sa.cmp(&sb).then_with(|| b.cmp(a))
    });
    out
}

fn s_minus(k: u32) -> UniPoly {
    UniPoly::new(vec![
        Rational::from_integer((-i64::from(k)).into()),
        Rational::from_integer(1.into()),
    ])
}

/// Numerators `g_β` with `∂^β f^{s+1} = g_β · f^{s+1−order}` for all `|β| ≤ order`.
fn derivative_numerators(setting: &Setting, order: u32) -> BTreeMap<Vec<u32>, MultiPoly> {
    let n = setting.nvars();
    let f = setting.f();
    let partials: Vec<MultiPoly> = (0..n).map(|i| f.derivative(i)).collect();
    // h_β at shift |β| − 1 relative to f^s, i.e. ∂^β f^{s+1} = h_β f^{s+1−|β|}.
    let mut h: BTreeMap<Vec<u32>, MultiPoly> = BTreeMap::new();
    let betas = exponent_vectors(n, order);
    h.insert(vec![0; n], MultiPoly::one(n));
    for beta in &betas {
        if h.contains_key(beta) {
            continue;
        }
        let i = beta.iter().position(|&e| e > 0).expect("nonzero");
        let mut prev = beta.clone();
        prev[i] -= 1;
        let hp = &h[&prev];
        let k = prev.iter().sum::<u32>();
        // ∂_i (h f^{s+1−k}) = (∂_i h · f + (s + 1 − k) h ∂_i f) f^{s−k}
        let lin = &s_minus(k) + &UniPoly::one();
        let next = &(&hp.derivative(i) * f) + &(&hp.mul_unipoly(&lin) * &partials[i]);
        h.insert(beta.clone(), next);
    }
    betas
        .into_iter()
        .map(|beta| {
            let k: u32 = beta.iter().sum();
            let g = &h[&beta] * &f.pow(order - k);
            (beta, g)
        })
        .collect()
}

/// Assembles the system for the given bounds. Columns are built in parallel.
pub fn build_system(setting: &Setting, bounds: Bounds, jobs: Jobs) -> LinearSystem {
    let n = setting.nvars();
    let numerators = derivative_numerators(setting, bounds.order);
    let xs = exponent_vectors(n, bounds.x_degree);
    let mut unknowns = Vec::new();
    for d in numerators.keys() {
        for x in &xs {
            for s in 0..=bounds.s_degree {
                unknowns.push(Unknown::Operator {
                    x: x.clone(),
                    d: d.clone(),
                    s,
                });
            }
        }
    }
    let operator_unknowns = unknowns.len();
    let b_deg = bounds.order + bounds.s_degree;
    unknowns.extend((0..=b_deg).map(Unknown::B));

    // b(s) f^s = b(s) f^{order−1} · f^{s+1−order}
    let f_pow = setting.f().pow(bounds.order.saturating_sub(1));
    let f_shifted = if bounds.order == 0 {
        // order 0: the common denominator is f^{s+1}; then b f^s = b · f^{-1}
        // is not polynomial, and only b = 0 can occur.
        None
    } else {
        Some(f_pow)
    };
    let one = Rational::from_integer(1.into());
    let columns: Vec<Vec<(Monomial, Rational)>> = par::map(&unknowns, jobs, |u| {
        let poly = match u {
            Unknown::Operator { x, d, s } => numerators[d].mul_monomial(
                &one,
                &Monomial {
                    x: x.clone(),
                    s: *s,
                },
            ),
            Unknown::B(k) => match &f_shifted {
                Some(fp) => fp.mul_monomial(
                    &-one.clone(),
                    &Monomial {
                        x: vec![0; n],
                        s: *k,
                    },
                ),
                None => MultiPoly::zero(n),
            },
        };
        poly.terms().map(|(m, c)| (m.clone(), c.clone())).collect()
    });

    let mut by_monomial: BTreeMap<Monomial, SparseRow> = BTreeMap::new();
    for (j, col) in columns.into_iter().enumerate() {
        for (m, c) in col {
            by_monomial.entry(m).or_default().push((j, c));
        }
    }
    let mut rows: Vec<SparseRow> = by_monomial.into_values().collect();
    if bounds.order == 0 {
        // Force b = 0: with no derivatives the right side cannot match.
        for k in 0..=b_deg as usize {
            rows.push(vec![(operator_unknowns + k, one.clone())]);
        }
    }
    LinearSystem {
        unknowns,
        operator_unknowns,
        rows,
    }
}

/// Solves the system; returns the minimal-degree monic `b` and a particular
/// operator, or `None` when only `b = 0` is possible.
pub fn solve_system(
    system: &LinearSystem,
    nvars: usize,
    deadline: Option<Instant>,
) -> Result<Option<(UniPoly, DiffOp)>, BsatError> {
    let split = system.operator_unknowns;
    let mut ech = SparseEchelon::new(system.unknowns.len());
    for (i, row) in system.rows.iter().enumerate() {
        if i % 32 == 0 && deadline.is_some_and(|d| Instant::now() >= d) {
            return Err(BsatError::TimeBudgetExceeded);
        }
        ech.insert(row.clone());
    }
    let width = system.unknowns.len() - split;
    let constraints = ech.trailing_constraints(split);
    let admissible = QMatrix::from_rows(&constraints, width).nullspace();
    let Some(b_coeffs) = minimal_monic(&admissible, width) else {
        return Ok(None);
    };
    let x = ech
        .back_substitute(split, &b_coeffs)
        .expect("b lies in the admissible space");
    let mut op = DiffOp::zero(nvars);
    for (u, v) in system.unknowns[..split].iter().zip(&x) {
        if v.is_zero() {
            continue;
        }
        let Unknown::Operator { x, d, s } = u else {
            unreachable!("operator unknowns come first")
        };
        op.add_term(
            OpMonomial {
                x: x.clone(),
                d: d.clone(),
            },
            UniPoly::monomial(v.clone(), *s as usize),
        );
    }
    Ok(Some((UniPoly::new(b_coeffs), op)))
}

/// The unique monic element of least degree in the span of `basis`
/// (coefficient vectors by ascending degree).
fn minimal_monic(basis: &[Vec<Rational>], width: usize) -> Option<Vec<Rational>> {
    if basis.is_empty() {
        return None;
    }
    // Reverse coordinates so that RREF pivots on the highest degree first;
    // the last pivot row then has the lowest leading degree and leading one.
    let reversed: Vec<Vec<Rational>> = basis
        .iter()
        .map(|v| v.iter().rev().cloned().collect())
        .collect();
    let (rref, pivots) = QMatrix::from_rows(&reversed, width).rref();
    let last = pivots.len().checked_sub(1)?;
    let mut b: Vec<Rational> = rref.row(last).to_vec();
    b.reverse();
    Some(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponent_vectors_are_graded() {
        let v = exponent_vectors(2, 2);
        assert_eq!(v.len(), 6);
        assert_eq!(v[0], vec![0, 0]);
        assert_eq!(v[1], vec![1, 0]);
        assert_eq!(v[5], vec![0, 2]);
    }

    #[test]
    fn numerators_match_direct_differentiation() {
        // f = x^2: ∂² x^{2s+2} = (2s+2)(2s+1) x^{2s}, and over f^{s+1−2} = x^{2s−2}
        // the numerator is (2s+2)(2s+1) x^2.
        let st = Setting::parse("x^2", &["x"]).unwrap();
        let g = derivative_numerators(&st, 2);
        let expected = MultiPoly::var(1, 0)
            .pow(2)
            .mul_unipoly(&(&UniPoly::from_i64(&[2, 2]) * &UniPoly::from_i64(&[1, 2])));
        assert_eq!(g[&vec![2]], expected);
    }

    #[test]
    fn minimal_monic_picks_lowest_degree() {
        // span{(s+1)s, (s+1)} -> s+1
        let r = |v: i64| Rational::from_integer(v.into());
        let basis = vec![vec![r(0), r(1), r(1)], vec![r(1), r(1), r(0)]];
        assert_eq!(minimal_monic(&basis, 3), Some(vec![r(1), r(1), r(0)]));
        assert_eq!(minimal_monic(&[], 3), None);
    }
}
