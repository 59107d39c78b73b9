use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::Rational;

/// Sparse row: `(column, value)` pairs sorted by column, no zero values.
pub type SparseRow = Vec<(usize, Rational)>;

/// Incrementally built row echelon form over `Q`.
///
/// Each inserted row is reduced by the existing pivot rows on its leading
/// entry until it is zero or leads in a fresh column; rows are stored scaled
/// to a leading one. Insertion order fixes the result.
#[derive(Clone, Debug, Default)]
pub struct SparseEchelon {
    ncols: usize,
    pivots: BTreeMap<usize, SparseRow>,
}

impl SparseEchelon {
    pub fn new(ncols: usize) -> Self {
        SparseEchelon {
            ncols,
            pivots: BTreeMap::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    pub fn pivot_row(&self, col: usize) -> Option<&SparseRow> {
        self.pivots.get(&col)
    }

    /// Reduces `row` and stores it. Returns the new pivot column, or `None`
    /// if the row was dependent on the rows already present.
    pub fn insert(&mut self, mut row: SparseRow) -> Option<usize> {
        debug_assert!(row.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(row.iter().all(|(c, v)| *c < self.ncols && !v.is_zero()));
        loop {
            let (lead, a) = match row.first() {
                None => return None,
                Some((c, a)) => (*c, a.clone()),
            };
            match self.pivots.get(&lead) {
                Some(p) => row = axpy(&row, &-a, p),
                None => {
                    if !a.is_one() {
                        let inv = a.recip();
                        for (_, v) in row.iter_mut() {
                            *v *= &inv;
                        }
                    }
                    self.pivots.insert(lead, row);
                    return Some(lead);
                }
            }
        }
    }

    /// Solves for the columns below `split` given fixed values of the columns
    /// at or above it. Free columns below `split` are set to zero.
    ///
    /// Returns `None` when the fixed values violate a constraint row (a pivot
    /// at or above `split`).
    pub fn back_substitute(&self, split: usize, fixed: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(fixed.len(), self.ncols - split);
        let value = |x: &[Rational], c: usize| -> Rational {
            if c >= split {
                fixed[c - split].clone()
            } else {
                x[c].clone()
            }
        };
        for (_, row) in self.pivots.range(split..) {
            let mut acc = Rational::zero();
            for (c, v) in row {
                acc += v * &fixed[c - split];
            }
            if !acc.is_zero() {
                return None;
            }
        }
        let mut x = vec![Rational::zero(); split];
        for (&p, row) in self.pivots.range(..split).rev() {
            let mut acc = Rational::zero();
            for (c, v) in row.iter().skip(1) {
                let xv = value(&x, *c);
                if !xv.is_zero() {
                    acc += v * xv;
                }
            }
            x[p] = -acc;
        }
        Some(x)
    }

    /// The pivot rows leading at or above `split`, restricted to those columns.
    /// These are the constraints left on the trailing unknowns once the
    /// leading unknowns are eliminated.
    pub fn trailing_constraints(&self, split: usize) -> Vec<Vec<Rational>> {
        self.pivots
            .range(split..)
            .map(|(_, row)| {
                let mut dense = vec![Rational::zero(); self.ncols - split];
                for (c, v) in row {
                    dense[c - split] = v.clone();
                }
                dense
            })
            .collect()
    }
}

/// `x + a·y` for sorted sparse rows.
fn axpy(x: &SparseRow, a: &Rational, y: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let cx = x.get(i).map(|e| e.0);
        let cy = y.get(j).map(|e| e.0);
        match (cx, cy) {
            (Some(a_c), Some(b_c)) if a_c == b_c => {
                let v = &x[i].1 + a * &y[j].1;
                if !v.is_zero() {
                    out.push((a_c, v));
                }
                i += 1;
                j += 1;
            }
            (Some(a_c), Some(b_c)) if a_c < b_c => {
                out.push(x[i].clone());
                i += 1;
            }
            (Some(_), None) => {
                out.push(x[i].clone());
                i += 1;
            }
            (_, Some(b_c)) => {
                out.push((b_c, a * &y[j].1));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}
