use std::collections::BTreeSet;

use num_traits::Signed;

use crate::arith::{frac, is_integer, uni_roots, ArithError, Rational, UniPoly};

/// `Z + roots(b)`, stored as the set of residues mod 1 in `[0, 1)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LambdaSet {
    residues: BTreeSet<Rational>,
}

impl LambdaSet {
    pub fn residues(&self) -> impl Iterator<Item = &Rational> {
        self.residues.iter()
    }

    pub fn len(&self) -> usize {
        self.residues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }

    pub fn contains(&self, lambda: &Rational) -> bool {
        self.residues.contains(&frac(lambda))
    }
}

pub fn lambda_set(b: &UniPoly) -> Result<LambdaSet, ArithError> {
    Ok(LambdaSet {
        residues: uni_roots(b)?.iter().map(frac).collect(),
    })
}

/// Whether `{λ − n − j : j = 0, 1, 2, …}` avoids every root of `b`, i.e.
/// whether `f^{s−n}` generates the localization at `λ`.
pub fn generation_check(b: &UniPoly, lambda: &Rational, n: i64) -> Result<bool, ArithError> {
    let start = lambda - Rational::from_integer(n.into());
    Ok(uni_roots(b)?.iter().all(|root| {
        let gap = &start - root;
        !(is_integer(&gap) && !gap.is_negative())
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn residues_of_classical_examples() {
        let line = lambda_set(&UniPoly::from_i64(&[1, 1])).unwrap();
        assert_eq!(line.residues().cloned().collect::<Vec<_>>(), vec![int(0)]);
        let square = lambda_set(&UniPoly::from_roots(&[int(-1), rat(-1, 2)])).unwrap();
        assert_eq!(
            square.residues().cloned().collect::<Vec<_>>(),
            vec![int(0), rat(1, 2)]
        );
        assert!(lambda_set(&UniPoly::one()).unwrap().is_empty());
        assert!(square.contains(&rat(-7, 2)));
        assert!(!square.contains(&rat(1, 3)));
    }

    #[test]
    fn generation_examples() {
        let b = UniPoly::from_i64(&[1, 1]);
        assert!(generation_check(&b, &rat(1, 2), 0).unwrap());
        assert!(!generation_check(&b, &int(0), 0).unwrap());
        assert!(generation_check(&b, &int(5), 7).unwrap());
        assert!(!generation_check(&b, &int(5), 6).unwrap());
    }

    #[test]
    fn non_split_b_is_an_error() {
        assert!(generation_check(&UniPoly::from_i64(&[1, 0, 1]), &int(0), 0).is_err());
        assert!(lambda_set(&UniPoly::from_i64(&[1, 0, 1])).is_err());
    }
}
