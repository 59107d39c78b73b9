use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::arith::{Monomial, MultiPoly, Rational, UniPoly};

use super::WeylError;

/// `x^x · ∂^d` for one normal-ordered term.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct OpMonomial {
    pub x: Vec<u32>,
    pub d: Vec<u32>,
}

impl OpMonomial {
    pub fn order(&self) -> u32 {
        self.d.iter().sum()
    }

    pub fn x_degree(&self) -> u32 {
        self.x.iter().sum()
    }
}

/// Element of the Weyl algebra with coefficients in `Q[s]`, written with all
/// `x`'s to the left of all `∂`'s. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DiffOp {
    nvars: usize,
    terms: BTreeMap<OpMonomial, UniPoly>,
}

impl DiffOp {
    pub fn zero(nvars: usize) -> Self {
        DiffOp {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::scalar(nvars, UniPoly::one())
    }

    pub fn scalar(nvars: usize, c: UniPoly) -> Self {
        Self::term(
            c,
            OpMonomial {
                x: vec![0; nvars],
                d: vec![0; nvars],
            },
        )
    }

    pub fn term(c: UniPoly, m: OpMonomial) -> Self {
        assert_eq!(m.x.len(), m.d.len());
        let mut op = Self::zero(m.x.len());
        op.add_term(m, c);
        op
    }

    /// Multiplication by `x_i`.
    pub fn x(nvars: usize, i: usize) -> Self {
        let mut m = OpMonomial {
            x: vec![0; nvars],
            d: vec![0; nvars],
        };
        m.x[i] = 1;
        Self::term(UniPoly::one(), m)
    }

    /// `∂_i`.
    pub fn d(nvars: usize, i: usize) -> Self {
        let mut m = OpMonomial {
            x: vec![0; nvars],
            d: vec![0; nvars],
        };
        m.d[i] = 1;
        Self::term(UniPoly::one(), m)
    }

    /// Multiplication by a polynomial in `x` and `s`.
    pub fn from_poly(p: &MultiPoly) -> Self {
        let n = p.nvars();
        let mut op = Self::zero(n);
        for (m, c) in p.terms() {
            op.add_term(
                OpMonomial {
                    x: m.x.clone(),
                    d: vec![0; n],
                },
                UniPoly::monomial(c.clone(), m.s as usize),
            );
        }
        op
    }

    /// The multiplication operator this is, if it has no `∂`'s.
    pub fn to_poly(&self) -> Option<MultiPoly> {
        let mut p = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            if m.order() > 0 {
                return None;
            }
            for (k, a) in c.coeffs().iter().enumerate() {
                p.add_term(
                    Monomial {
                        x: m.x.clone(),
                        s: k as u32,
                    },
                    a.clone(),
                );
            }
        }
        Some(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&OpMonomial, &UniPoly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &OpMonomial) -> UniPoly {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: OpMonomial, c: UniPoly) {
        debug_assert_eq!(m.x.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// Highest total `∂`-degree (0 for the zero operator).
    pub fn order(&self) -> u32 {
        self.terms.keys().map(OpMonomial::order).max().unwrap_or(0)
    }

    pub fn x_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(OpMonomial::x_degree)
            .max()
            .unwrap_or(0)
    }

    pub fn s_degree(&self) -> usize {
        self.terms
            .values()
            .filter_map(UniPoly::degree)
            .max()
            .unwrap_or(0)
    }

    pub fn scale(&self, c: &UniPoly) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a * c);
        }
        out
    }

    /// Parseable text form, e.g. `1/4*dx^2 + (s + 1)*x*dy`.
    pub fn to_string_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (m, c) in self.terms.iter().rev() {
            let mut factors: Vec<String> = Vec::new();
            for (name, &e) in names.iter().zip(&m.x) {
                push_power(&mut factors, name, e);
            }
            for (name, &e) in names.iter().zip(&m.d) {
                push_power(&mut factors, &format!("d{name}"), e);
            }
            let (neg, coeff) = if c.is_constant() {
                let v = c.coeff(0);
                let mag = v.abs();
                let text = (!mag.is_one() || factors.is_empty()).then(|| mag.to_string());
                (v.is_negative(), text)
            } else {
                (false, Some(format!("({c})")))
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut parts: Vec<String> = coeff.into_iter().collect();
            parts.extend(factors);
            out.push_str(&parts.join("*"));
        }
        out
    }
}

fn push_power(factors: &mut Vec<String>, base: &str, e: u32) {
    match e {
        0 => {}
        1 => factors.push(base.to_string()),
        _ => factors.push(format!("{base}^{e}")),
    }
}

impl fmt::Debug for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("x{i}")).collect();
        write!(f, "DiffOp({})", self.to_string_with(&names))
    }
}

/// Normal-ordered product `a · b`, using `∂_i x_i = x_i ∂_i + 1` with `s` central.
pub fn op_multiply(a: &DiffOp, b: &DiffOp) -> Result<DiffOp, WeylError> {
    if a.nvars != b.nvars {
        return Err(WeylError::ArityMismatch {
            left: a.nvars,
            right: b.nvars,
        });
    }
    let n = a.nvars;
    let mut out = DiffOp::zero(n);
    for (ma, ca) in &a.terms {
        for (mb, cb) in &b.terms {
            let coeff = ca * cb;
            // ∂^{ma.d} x^{mb.x} expanded variable by variable (they commute).
            let mut partial: Vec<(Vec<u32>, Vec<u32>, BigInt)> =
                vec![(Vec::with_capacity(n), Vec::with_capacity(n), BigInt::one())];
            for i in 0..n {
                let (dd, xx) = (ma.d[i], mb.x[i]);
                let mut next = Vec::with_capacity(partial.len() * (dd.min(xx) as usize + 1));
                for (px, pd, pc) in &partial {
                    for (k, w) in commutation_weights(dd, xx) {
                        let mut nx = px.clone();
                        nx.push(ma.x[i] + xx - k);
                        let mut nd = pd.clone();
                        nd.push(dd - k + mb.d[i]);
                        next.push((nx, nd, pc * &w));
                    }
                }
                partial = next;
            }
            for (x, d, w) in partial {
                out.add_term(OpMonomial { x, d }, coeff.scale(&Rational::from_integer(w)));
            }
        }
    }
    Ok(out)
}

/// `∂^b x^g = Σ_k C(b,k) · g!/(g−k)! · x^{g−k} ∂^{b−k}`; yields `(k, weight)`.
fn commutation_weights(b: u32, g: u32) -> Vec<(u32, BigInt)> {
    let mut out = Vec::with_capacity(b.min(g) as usize + 1);
    let mut binom = BigInt::one();
    let mut falling = BigInt::one();
    for k in 0..=b.min(g) {
        out.push((k, &binom * &falling));
        binom = binom * (b - k) / (k + 1);
        falling *= g - k;
    }
    out
}

impl Mul for &DiffOp {
    type Output = DiffOp;
    /// Panics on arity mismatch; use [`op_multiply`] for the fallible form.
    fn mul(self, rhs: &DiffOp) -> DiffOp {
        op_multiply(self, rhs).expect("operator arity mismatch")
    }
}

impl Add for &DiffOp {
    type Output = DiffOp;
    fn add(self, rhs: &DiffOp) -> DiffOp {
        assert_eq!(self.nvars, rhs.nvars, "operator arity mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &DiffOp {
    type Output = DiffOp;
    fn sub(self, rhs: &DiffOp) -> DiffOp {
        self + &(-rhs)
    }
}

impl Neg for &DiffOp {
    type Output = DiffOp;
    fn neg(self) -> DiffOp {
        DiffOp {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x1() -> DiffOp {
        DiffOp::x(1, 0)
    }
    fn d1() -> DiffOp {
        DiffOp::d(1, 0)
    }

    #[test]
    fn defining_relation() {
        assert_eq!(&d1() * &x1(), &(&x1() * &d1()) + &DiffOp::one(1));
    }

    #[test]
    fn euler_operator_squared() {
        let e = &x1() * &d1();
        let x2d2 = &(&x1() * &x1()) * &(&d1() * &d1());
        assert_eq!(&e * &e, &x2d2 + &e);
    }

    #[test]
    fn distinct_variables_commute() {
        let dx = DiffOp::d(2, 0);
        let y = DiffOp::x(2, 1);
        assert_eq!(&dx * &y, &y * &dx);
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        assert!(matches!(
            op_multiply(&DiffOp::d(1, 0), &DiffOp::x(2, 0)),
            Err(WeylError::ArityMismatch { left: 1, right: 2 })
        ));
    }

    #[test]
    fn high_power_commutation() {
        // ∂^2 x^2 = x^2 ∂^2 + 4 x ∂ + 2
        let lhs = &(&d1() * &d1()) * &(&x1() * &x1());
        let names = vec!["x".to_string()];
        assert_eq!(lhs.to_string_with(&names), "x^2*dx^2 + 4*x*dx + 2");
    }
}
