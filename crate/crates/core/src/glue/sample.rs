//! Random instances: nilpotent operators of random Jordan type in a random
//! integer basis, and stable subspaces spanned by orbits of random vectors.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::{int, QMatrix, Rational};
use crate::par::{self, Jobs};

use super::{analyze, GlueError, GlueReport, NilpotentPsi, StableSubspace};

/// Block-diagonal nilpotent Jordan matrix (ones on the superdiagonal).
pub fn jordan_nilpotent(sizes: &[usize]) -> QMatrix {
    let n = sizes.iter().sum();
    let mut m = QMatrix::zeros(n, n);
    let mut start = 0;
    for &size in sizes {
        for i in start..start + size.saturating_sub(1) {
            m[(i, i + 1)] = int(1);
        }
        start += size;
    }
    m
}

fn random_partition<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut parts = Vec::new();
    let mut left = n;
    while left > 0 {
        let p = rng.gen_range(1..=left);
        parts.push(p);
        left -= p;
    }
    parts
}

/// Unit lower times unit upper triangular, small integer entries.
fn random_unimodular<R: Rng>(rng: &mut R, n: usize) -> QMatrix {
    let mut lower = QMatrix::identity(n);
    let mut upper = QMatrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            lower[(i, j)] = int(rng.gen_range(-2..=2));
            upper[(j, i)] = int(rng.gen_range(-2..=2));
        }
    }
    &lower * &upper
}

/// Independent spanning set of the smallest `op`-stable subspace containing `seeds`.
pub fn orbit_span(op: &QMatrix, seeds: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = op.nrows();
    let mut vectors = Vec::new();
    for seed in seeds {
        let mut v = seed.clone();
        for _ in 0..=n {
            if v.iter().all(|x| *x == int(0)) {
                break;
            }
            let next = op.apply(&v);
            vectors.push(v);
            v = next;
        }
    }
    let m = QMatrix::from_columns(&vectors, n);
    m.independent_columns()
        .into_iter()
        .map(|j| vectors[j].clone())
        .collect()
}

/// `dim Ψ` uniform in `1..=max_dim`; `K` is zero, everything, or an orbit span.
pub fn random_instance<R: Rng>(rng: &mut R, max_dim: usize) -> (NilpotentPsi, StableSubspace) {
    let n = rng.gen_range(1..=max_dim.max(1));
    let g = random_unimodular(rng, n);
    let g_inv = g.inverse().expect("unimodular");
    let op = &(&g * &jordan_nilpotent(&random_partition(rng, n))) * &g_inv;
    let psi = NilpotentPsi::new(op).expect("conjugate of a nilpotent matrix");
    let k = match rng.gen_range(0..6) {
        0 => StableSubspace::zero(&psi),
        1 => StableSubspace::full(&psi),
        _ => {
            let count = rng.gen_range(1..=2);
            let seeds: Vec<Vec<Rational>> = (0..count)
                .map(|_| (0..n).map(|_| int(rng.gen_range(-3..=3))).collect())
                .collect();
            let span = orbit_span(psi.operator(), &seeds);
            StableSubspace::new(&psi, &span).expect("orbit spans are stable")
        }
    };
    (psi, k)
}

/// One randomized instance and its analysis.
#[derive(Clone, Debug)]
pub struct Trial {
    pub index: u64,
    pub psi: NilpotentPsi,
    pub k: StableSubspace,
    pub report: Result<GlueReport, GlueError>,
}

/// Runs `count` trials; trial `i` uses its own generator seeded with `seed + i`,
/// so results do not depend on `jobs`.
pub fn run_trials(seed: u64, count: u64, max_dim: usize, jobs: Jobs) -> Vec<Trial> {
    let indices: Vec<u64> = (0..count).collect();
    par::map(&indices, jobs, |&index| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(index));
        let (psi, k) = random_instance(&mut rng, max_dim);
        let report = analyze(&psi, &k);
        Trial {
            index,
            psi,
            k,
            report,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jordan_shape() {
        let j = jordan_nilpotent(&[2, 1]);
        assert_eq!(j, QMatrix::from_i64(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]));
    }

    #[test]
    fn trials_are_reproducible_and_consistent() {
        let a = run_trials(7, 30, 6, Jobs::sequential());
        let b = run_trials(7, 30, 6, Jobs(4));
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.psi, y.psi);
            let r = x.report.as_ref().unwrap();
            assert!(r.composition_holds(&x.psi));
            assert_eq!(r.ker.dim, r.psi_dim);
            assert_eq!(r.c_cokernel_dim(), r.predicted_c_cokernel_dim());
        }
    }
}
