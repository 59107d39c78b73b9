use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Rational, UniPoly};

/// Monomial `x^exps · s^s_deg`. The derived order is lexicographic on
/// `(x_1, …, x_n, s)`, which is a monomial order with `s` smallest.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial {
    pub x: Vec<u32>,
    pub s: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            x: vec![0; nvars],
            s: 0,
        }
    }

    pub fn x_degree(&self) -> u32 {
        self.x.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            x: self.x.iter().zip(&other.x).map(|(a, b)| a + b).collect(),
            s: self.s + other.s,
        }
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.s <= other.s && self.x.iter().zip(&other.x).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial {
            x: self.x.iter().zip(&other.x).map(|(a, b)| a - b).collect(),
            s: self.s - other.s,
        }
    }
}

/// Polynomial in `x_1, …, x_n` and `s` with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::term(c, Monomial::one(nvars))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut p = Self::zero(m.x.len());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// The coordinate `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Monomial::one(nvars);
        m.x[i] = 1;
        Self::term(Rational::one(), m)
    }

    /// Embeds `p(s)` as a polynomial with no `x` dependence.
    pub fn from_unipoly(nvars: usize, p: &UniPoly) -> Self {
        let mut out = Self::zero(nvars);
        for (k, c) in p.coeffs().iter().enumerate() {
            out.add_term(
                Monomial {
                    x: vec![0; nvars],
                    s: k as u32,
                },
                c.clone(),
            );
        }
        out
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        debug_assert_eq!(m.x.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m);
        match slot {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Total degree in the `x` variables (`None` for zero).
    pub fn x_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::x_degree).max()
    }

    pub fn s_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.s).max()
    }

    pub fn depends_on_s(&self) -> bool {
        self.terms.keys().any(|m| m.s > 0)
    }

    pub fn is_constant(&self) -> bool {
        self.terms
            .keys()
            .all(|m| m.s == 0 && m.x.iter().all(|&e| e == 0))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, c: &Rational, mono: &Monomial) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.mul(mono), a * c))
                .collect(),
        }
    }

    /// Multiplies by the univariate polynomial `p(s)`.
    pub fn mul_unipoly(&self, p: &UniPoly) -> Self {
        let mut out = Self::zero(self.nvars);
        for (k, c) in p.coeffs().iter().enumerate() {
            let mono = Monomial {
                x: vec![0; self.nvars],
                s: k as u32,
            };
            out = &out + &self.mul_monomial(c, &mono);
        }
        out
    }

    /// Partial derivative with respect to `x_i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.x[i];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.x[i] -= 1;
            out.add_term(dm, c * Rational::from_integer(BigInt::from(e)));
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.nvars), |acc, _| &acc * self)
    }

    /// Exact quotient `self / divisor`, or `None` if `divisor` does not divide.
    ///
    /// Single-divisor multivariate division: a nonzero remainder term appears
    /// exactly when the divisor does not divide.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        let (lm, lc) = divisor.leading().expect("division by zero polynomial");
        let lc_inv = lc.recip();
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        while let Some((m, c)) = rem.leading() {
            if !lm.divides(m) {
                return None;
            }
            let qm = m.div(lm);
            let qc = c * &lc_inv;
            rem = &rem - &divisor.mul_monomial(&qc, &qm);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Evaluates every occurrence of `s` at `value`.
    pub fn eval_s(&self, value: &Rational) -> MultiPoly {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut pm = m.clone();
            pm.s = 0;
            let mut v = c.clone();
            for _ in 0..m.s {
                v *= value;
            }
            out.add_term(pm, v);
        }
        out
    }

    /// Evaluates at a point in `x` (with `s` still symbolic).
    pub fn eval_x(&self, point: &[Rational]) -> UniPoly {
        let mut coeffs: Vec<Rational> = Vec::new();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (xi, &e) in point.iter().zip(&m.x) {
                for _ in 0..e {
                    v *= xi;
                }
            }
            let k = m.s as usize;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, Rational::zero());
            }
            coeffs[k] += v;
        }
        UniPoly::new(coeffs)
    }

    /// Coefficient of `x^exps` as a polynomial in `s`.
    pub fn x_coefficient(&self, exps: &[u32]) -> UniPoly {
        let mut coeffs = Vec::new();
        for (m, c) in &self.terms {
            if m.x == exps {
                let k = m.s as usize;
                if coeffs.len() <= k {
                    coeffs.resize(k + 1, Rational::zero());
                }
                coeffs[k] += c;
            }
        }
        UniPoly::new(coeffs)
    }

    /// Human-readable form using the given variable names; `s` is always `s`.
    pub fn to_string_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            for (name, &e) in names.iter().zip(&m.x) {
                match e {
                    0 => {}
                    1 => factors.push(name.clone()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            match m.s {
                0 => {}
                1 => factors.push("s".into()),
                e => factors.push(format!("s^{e}")),
            }
            if factors.is_empty() {
                out.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    out.push_str(&format!("{mag}*"));
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("x{i}")).collect();
        write!(f, "MultiPoly({})", self.to_string_with(&names))
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let (mut acc, other) = if self.terms.len() >= rhs.terms.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        for (m, c) in &other.terms {
            acc.add_term(m.clone(), c.clone());
        }
        acc
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut acc = self.clone();
        for (m, c) in &rhs.terms {
            acc.add_term(m.clone(), -c);
        }
        acc
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut acc = MultiPoly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                acc.add_term(ma.mul(mb), ca * cb);
            }
        }
        acc
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}
