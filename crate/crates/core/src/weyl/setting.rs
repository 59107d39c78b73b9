use std::sync::Arc;

use crate::arith::MultiPoly;

use super::parse::{identifiers, parse_poly};
use super::WeylError;

/// Affine `n`-space with coordinates `names`, and the function `f` whose
/// zero locus is removed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Setting {
    names: Vec<String>,
    f: Arc<MultiPoly>,
}

impl Setting {
    pub fn new(names: Vec<String>, f: MultiPoly) -> Result<Self, WeylError> {
        validate_names(&names)?;
        if f.nvars() != names.len() {
            return Err(WeylError::ArityMismatch {
                left: names.len(),
                right: f.nvars(),
            });
        }
        if f.depends_on_s() {
            return Err(WeylError::FunctionDependsOnS);
        }
        if f.is_constant() {
            return Err(WeylError::ConstantFunction);
        }
        Ok(Setting {
            names,
            f: Arc::new(f),
        })
    }

    /// Parses `f` over the given variables.
    pub fn parse(f: &str, names: &[&str]) -> Result<Self, WeylError> {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        validate_names(&names)?;
        let poly = parse_poly(f, &names)?;
        Self::new(names, poly)
    }

    /// Parses `f`, taking its variables to be the identifiers it mentions in
    /// sorted order.
    pub fn infer(f: &str) -> Result<Self, WeylError> {
        let names = identifiers(f)?;
        if names.is_empty() {
            // Still parse so that malformed input reports a syntax error first.
            parse_poly(f, &[])?;
            return Err(WeylError::ConstantFunction);
        }
        let poly = parse_poly(f, &names)?;
        Self::new(names, poly)
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn f(&self) -> &MultiPoly {
        &self.f
    }

    pub fn f_arc(&self) -> Arc<MultiPoly> {
        self.f.clone()
    }

    pub fn f_string(&self) -> String {
        self.f.to_string_with(&self.names)
    }
}

fn validate_names(names: &[String]) -> Result<(), WeylError> {
    if names.is_empty() {
        return Err(WeylError::NoVariables);
    }
    for (i, name) in names.iter().enumerate() {
        let valid = name
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !valid || name == "s" || names[..i].contains(name) {
            return Err(WeylError::BadVariableName(name.clone()));
        }
    }
    Ok(())
}
