//! Exact arithmetic: rationals, polynomials in `s`, rational functions in `s`,
//! multivariate polynomials over `Q[s]`, and the linear algebra built on them.

mod linalg;
mod multipoly;
mod qmatrix;
mod ratfunc;
mod sparse;
mod unipoly;

pub use linalg::nullspace;
pub use multipoly::{Monomial, MultiPoly};
pub use qmatrix::QMatrix;
pub use ratfunc::RationalFunction;
pub use sparse::{SparseEchelon, SparseRow};
pub use unipoly::{uni_roots, UniPoly};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

/// Exact rational number. `BigRational` keeps itself reduced with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("polynomial {0} does not split into rational linear factors")]
    NonRationalFactor(String),
    #[error("zero polynomial has no well-defined roots")]
    ZeroPolynomial,
    #[error("malformed rational {0:?}")]
    BadRational(String),
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p"` or `"p/q"` (optional sign on `p`, surrounding whitespace allowed).
pub fn parse_rational(text: &str) -> Result<Rational, ArithError> {
    let bad = || ArithError::BadRational(text.to_string());
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let valid = |s: &str, signed: bool| {
        let digits = if signed {
            s.strip_prefix('-')
                .or_else(|| s.strip_prefix('+'))
                .unwrap_or(s)
        } else {
            s
        };
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(num, true) || !valid(den, false) {
        return Err(bad());
    }
    let n: BigInt = num.trim_start_matches('+').parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Fractional part in `[0, 1)`.
pub fn frac(r: &Rational) -> Rational {
    r - r.floor()
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}
