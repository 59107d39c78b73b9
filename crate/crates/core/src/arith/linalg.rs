use super::{RationalFunction, UniPoly};

/// Right nullspace over `Q(s)` of a matrix with entries in `Q[s]`.
///
/// Fraction-free Gauss–Jordan elimination: the pivot is the first nonzero
/// entry in row-major order among unprocessed rows, updates stay inside
/// `Q[s]`, and each updated row is divided by its content (the gcd of its
/// entries). One basis vector is emitted per free column, in column order,
/// with a one in that column.
pub fn nullspace(rows: &[Vec<UniPoly>]) -> Vec<Vec<RationalFunction>> {
    let ncols = rows.first().map_or(0, Vec::len);
    assert!(
        rows.iter().all(|r| r.len() == ncols),
        "nullspace: ragged matrix"
    );
    let mut m: Vec<Vec<UniPoly>> = rows.to_vec();
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut done = vec![false; m.len()];

    loop {
        let next = (0..m.len())
            .filter(|&r| !done[r])
            .find_map(|r| m[r].iter().position(|e| !e.is_zero()).map(|c| (r, c)));
        let Some((pr, pc)) = next else { break };
        done[pr] = true;
        pivots.push((pr, pc));
        let pivot_row = m[pr].clone();
        let d = pivot_row[pc].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == pr || row[pc].is_zero() {
                continue;
            }
            let a = row[pc].clone();
            for (e, p) in row.iter_mut().zip(&pivot_row) {
                *e = &(&d * e) - &(&a * p);
            }
            remove_content(row);
        }
    }

    let pivot_cols: Vec<Option<usize>> = {
        let mut v = vec![None; ncols];
        for (i, &(_, c)) in pivots.iter().enumerate() {
            v[c] = Some(i);
        }
        v
    };
    (0..ncols)
        .filter(|&j| pivot_cols[j].is_none())
        .map(|j| {
            let mut v = vec![RationalFunction::zero(); ncols];
            v[j] = RationalFunction::one();
            for &(r, c) in &pivots {
                if !m[r][j].is_zero() {
                    v[c] = RationalFunction::new(-&m[r][j], m[r][c].clone());
                }
            }
            v
        })
        .collect()
}

fn remove_content(row: &mut [UniPoly]) {
    let g = row
        .iter()
        .filter(|e| !e.is_zero())
        .fold(UniPoly::zero(), |acc, e| acc.gcd(e));
    if g.is_zero() || g.is_one() {
        return;
    }
    for e in row.iter_mut() {
        if !e.is_zero() {
            *e = e.div_exact(&g).expect("content divides every entry");
        }
    }
}
