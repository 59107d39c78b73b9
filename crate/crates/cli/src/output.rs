//! JSON documents written to stdout. Field order is the declaration order.

use serde::Serialize;

use bsatlab::arith::{format_rational, uni_roots, QMatrix, Rational, UniPoly};
use bsatlab::bsat::Bounds;
use bsatlab::line::{ClassKind, DeltaSummand};

#[derive(Serialize)]
pub struct Root {
    pub value: String,
    pub mult: usize,
}

/// Groups a sorted list of roots by value.
pub fn roots_with_multiplicity(roots: &[Rational]) -> Vec<Root> {
    let mut out: Vec<Root> = Vec::new();
    for r in roots {
        let value = format_rational(r);
        match out.last_mut() {
            Some(last) if last.value == value => last.mult += 1,
            _ => out.push(Root { value, mult: 1 }),
        }
    }
    out
}

#[derive(Serialize)]
pub struct BOut {
    pub roots: Vec<Root>,
    /// Leading coefficient first.
    pub monic_coeffs: Vec<String>,
}

#[derive(Serialize)]
pub struct BsatOut {
    pub b: BOut,
    #[serde(rename = "P")]
    pub operator: String,
    pub verified: bool,
    pub bounds_used: Bounds,
}

#[derive(Serialize)]
pub struct LambdaOut {
    pub residues_mod_1: Vec<String>,
}

pub fn coeffs_descending(p: &UniPoly) -> Vec<String> {
    let deg = p.degree().unwrap_or(0);
    (0..=deg)
        .rev()
        .map(|k| format_rational(&p.coeff(k)))
        .collect()
}

/// `s*(s - 1)*(s - 2)` style product of linear factors.
pub fn factored(p: &UniPoly) -> String {
    let Ok(roots) = uni_roots(p) else {
        return p.to_string();
    };
    if roots.is_empty() {
        return "1".into();
    }
    roots
        .iter()
        .map(|r| {
            if r == &Rational::from_integer(0.into()) {
                "s".to_string()
            } else if r > &Rational::from_integer(0.into()) {
                format!("(s - {})", format_rational(r))
            } else {
                format!("(s + {})", format_rational(&-r))
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

#[derive(Serialize)]
pub struct TransitionOut {
    pub kind: &'static str,
    pub from: i64,
    pub to: i64,
    pub position: i64,
    pub scalar: String,
    pub checked: bool,
}

#[derive(Serialize)]
pub struct FailingOut {
    pub t: Vec<i64>,
    pub d: Vec<i64>,
}

#[derive(Serialize)]
pub struct LineClassOut {
    pub mode: &'static str,
    pub lambda: String,
    pub window: u32,
    pub classification: ClassKind,
    pub failing: FailingOut,
    pub transitions: Vec<TransitionOut>,
}

#[derive(Serialize)]
pub struct GradedOut {
    pub degree: i64,
    pub pi: String,
    pub pi_factored: String,
    pub quotient_dim: usize,
}

#[derive(Serialize)]
pub struct QuotientOut {
    pub window: u32,
    pub graded: Vec<GradedOut>,
    pub s_support: Vec<Root>,
    pub delta_summands: Vec<DeltaSummand>,
    pub indexing_note: &'static str,
}

pub const INDEXING_NOTE: &str = "degree -n carries k[s]/(pi_n) with s-support {0..n-1}; \
summand with s-eigenvalue e starts at degree -(e+1) and is listed with index e+1, \
the labelling k[s]/(s-n), n >= 1";

pub fn matrix(m: &QMatrix) -> Vec<Vec<String>> {
    m.to_rows()
        .iter()
        .map(|row| row.iter().map(format_rational).collect())
        .collect()
}

#[derive(Serialize)]
pub struct Conventions {
    pub coker_relation: &'static str,
    pub ker_condition: &'static str,
    pub comparison: &'static str,
    pub coker_sign: i32,
    pub ker_sign: i32,
}

#[derive(Serialize)]
pub struct PhiOut {
    pub c: Vec<Vec<String>>,
    pub v: Vec<Vec<String>>,
    pub c_invertible: bool,
    pub v_invertible: bool,
}

#[derive(Serialize)]
pub struct ComplexOut {
    pub degrees: [i32; 2],
    pub kernel_dim: usize,
    pub cokernel_dim: usize,
}

#[derive(Serialize)]
pub struct Restrictions {
    pub shriek: ComplexOut,
    pub star: ComplexOut,
}

#[derive(Serialize)]
pub struct GlueChecks {
    pub comparison_well_defined: bool,
    pub comparison_bijective: bool,
    pub comparison_transports_c_v: bool,
    pub phi_dim_equals_psi_dim: bool,
    pub restriction_euler_zero: bool,
    pub c_cokernel_dim: usize,
    pub k_dim_minus_s_k_dim: usize,
}

#[derive(Serialize)]
pub struct GlueOut {
    pub conventions: Conventions,
    pub psi_dim: usize,
    pub k_dim: usize,
    pub phi_dim: usize,
    pub coker: PhiOut,
    pub ker: PhiOut,
    pub comparison: Vec<Vec<String>>,
    pub v_c_equals_s: bool,
    pub restrictions: Restrictions,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checks: Option<GlueChecks>,
}
