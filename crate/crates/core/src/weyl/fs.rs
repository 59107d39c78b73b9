use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::arith::{Monomial, MultiPoly, Rational, UniPoly};

use super::{DiffOp, OpMonomial, Setting};

/// Element `q(x, s) · f^{s−K}` of `O[f^{-1}, s] · f^s`.
///
/// Kept canonical: either `K = 0` or `f` does not divide `q`. The zero
/// element has `q = 0, K = 0`.
#[derive(Clone, PartialEq, Eq)]
pub struct FsElement {
    num: MultiPoly,
    shift: u32,
    f: Arc<MultiPoly>,
}

impl FsElement {
    pub fn new(num: MultiPoly, shift: u32, f: Arc<MultiPoly>) -> Self {
        assert!(!f.is_zero(), "f must be nonzero");
        assert_eq!(num.nvars(), f.nvars(), "arity mismatch");
        let mut e = FsElement { num, shift, f };
        e.canonicalize();
        e
    }

    /// The generator `f^s`.
    pub fn generator(setting: &Setting) -> Self {
        Self::new(MultiPoly::one(setting.nvars()), 0, setting.f_arc())
    }

    /// `f · f^s`, i.e. `f^{s+1}`.
    pub fn f_times_generator(setting: &Setting) -> Self {
        Self::new(setting.f().clone(), 0, setting.f_arc())
    }

    /// `b(s) · f^s`.
    pub fn scalar_times_generator(setting: &Setting, b: &UniPoly) -> Self {
        Self::new(
            MultiPoly::from_unipoly(setting.nvars(), b),
            0,
            setting.f_arc(),
        )
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.num
    }

    pub fn shift(&self) -> u32 {
        self.shift
    }

    pub fn f(&self) -> &MultiPoly {
        &self.f
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_canonical(&self) -> bool {
        if self.num.is_zero() {
            return self.shift == 0;
        }
        self.shift == 0 || self.num.div_exact(&self.f).is_none()
    }

    fn canonicalize(&mut self) {
        if self.num.is_zero() {
            self.shift = 0;
            return;
        }
        while self.shift > 0 {
            match self.num.div_exact(&self.f) {
                Some(q) => {
                    self.num = q;
                    self.shift -= 1;
                }
                None => break,
            }
        }
    }

    /// Numerator of the same element written over `f^{s−k}`, `k ≥ shift`.
    pub fn numerator_at_shift(&self, k: u32) -> MultiPoly {
        assert!(
            k >= self.shift,
            "cannot lower the shift of a canonical element"
        );
        &self.num * &self.f.pow(k - self.shift)
    }

    pub fn add(&self, other: &FsElement) -> FsElement {
        debug_assert_eq!(self.f, other.f);
        let k = self.shift.max(other.shift);
        FsElement::new(
            &self.numerator_at_shift(k) + &other.numerator_at_shift(k),
            k,
            self.f.clone(),
        )
    }

    pub fn sub(&self, other: &FsElement) -> FsElement {
        self.add(&other.scale(&UniPoly::constant(Rational::from_integer(BigInt::from(-1)))))
    }

    /// Multiplication by `c(s)`.
    pub fn scale(&self, c: &UniPoly) -> FsElement {
        FsElement::new(self.num.mul_unipoly(c), self.shift, self.f.clone())
    }

    /// Multiplication by `x^exps`.
    pub fn mul_x_monomial(&self, exps: &[u32]) -> FsElement {
        let m = Monomial {
            x: exps.to_vec(),
            s: 0,
        };
        FsElement::new(
            self.num.mul_monomial(&Rational::from_integer(1.into()), &m),
            self.shift,
            self.f.clone(),
        )
    }

    /// `∂_i (q f^{s−K}) = ((∂_i q) f + (s − K) q ∂_i f) f^{s−K−1}`.
    pub fn derivative(&self, i: usize) -> FsElement {
        if self.is_zero() {
            return self.clone();
        }
        let s_minus_k = UniPoly::new(vec![
            Rational::from_integer(BigInt::from(-i64::from(self.shift))),
            Rational::from_integer(BigInt::from(1)),
        ]);
        let term1 = &self.num.derivative(i) * &self.f;
        let term2 = &self.num.mul_unipoly(&s_minus_k) * &self.f.derivative(i);
        FsElement::new(&term1 + &term2, self.shift + 1, self.f.clone())
    }

    /// The same element specialized at an integer `s = value ≥ K`, where
    /// `f^{s−K}` is an honest polynomial.
    pub fn specialize_integer(&self, value: u32) -> MultiPoly {
        assert!(value >= self.shift, "f^(s-K) is not polynomial at this s");
        let q = self
            .num
            .eval_s(&Rational::from_integer(BigInt::from(value)));
        &q * &self.f.pow(value - self.shift)
    }
}

impl std::fmt::Debug for FsElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FsElement({:?} · f^(s-{}))", self.num, self.shift)
    }
}

/// Applies `op` to `e`. Panics on arity mismatch.
pub fn act(op: &DiffOp, e: &FsElement) -> FsElement {
    assert_eq!(op.nvars(), e.num.nvars(), "operator arity mismatch");
    let n = op.nvars();
    let mut cache: HashMap<Vec<u32>, FsElement> = HashMap::new();
    cache.insert(vec![0; n], e.clone());
    let mut acc = FsElement::new(MultiPoly::zero(n), 0, e.f.clone());
    for (OpMonomial { x, d }, c) in op.terms() {
        let derived = apply_partials(&mut cache, d);
        acc = acc.add(&derived.mul_x_monomial(x).scale(c));
    }
    acc
}

/// `∂^d e`, memoized by exponent vector and built one partial at a time.
fn apply_partials(cache: &mut HashMap<Vec<u32>, FsElement>, d: &[u32]) -> FsElement {
    if let Some(hit) = cache.get(d) {
        return hit.clone();
    }
    let i = d
        .iter()
        .position(|&e| e > 0)
        .expect("zero exponent is cached");
    let mut prev = d.to_vec();
    prev[i] -= 1;
    let base = apply_partials(cache, &prev);
    let out = base.derivative(i);
    cache.insert(d.to_vec(), out.clone());
    out
}
