//! Weyl-algebra operators with a central parameter `s`, their action on the
//! module generated by `f^s`, and the text syntax for both.

mod diffop;
mod fs;
mod parse;
mod setting;

pub use diffop::{op_multiply, DiffOp, OpMonomial};
pub use fs::{act, FsElement};
pub use parse::{identifiers, parse, parse_op, parse_poly, ParseError, Parsed};
pub use setting::Setting;

use thiserror::Error;

use crate::arith::UniPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeylError {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("arity mismatch: {left} vs {right} variables")]
    ArityMismatch { left: usize, right: usize },
    #[error("f is constant; its zero locus is empty or everything")]
    ConstantFunction,
    #[error("f must not involve the parameter s")]
    FunctionDependsOnS,
    #[error("at least one variable is required")]
    NoVariables,
    #[error("invalid or duplicate variable name {0:?}")]
    BadVariableName(String),
}

/// Whether `P · (f · f^s) = b(s) · f^s` holds identically.
pub fn check_functional_equation(p: &DiffOp, b: &UniPoly, setting: &Setting) -> bool {
    if p.nvars() != setting.nvars() {
        return false;
    }
    let lhs = act(p, &FsElement::f_times_generator(setting));
    let rhs = FsElement::scalar_times_generator(setting, b);
    lhs.sub(&rhs).is_zero()
}
