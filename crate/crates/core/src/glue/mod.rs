//! Gluing data in finite dimension.
//!
//! A space `Ψ` with a nilpotent endomorphism `S` and an `S`-stable subspace
//! `K` determine a space `Φ` with maps `c: Ψ → Φ`, `v: Φ → Ψ` and `v·c = S`.
//! `Φ` has a cokernel presentation `coker(K → Ψ ⊕ K)` and a kernel
//! presentation `ker(Ψ/K ⊕ Ψ → Ψ/K)`; both are built here in explicit
//! coordinates together with the map between them.
//!
//! Sign convention: the cokernel relation is `κ ↦ (ικ, −Sκ)`, the kernel
//! condition is `S̄w̄ − πu = 0`, and the comparison map is
//! `(u, κ) ↦ (πu, Su + ικ)`. With these signs `c(u) = [(u, 0)]`,
//! `v[(u, κ)] = Su + ικ` and `v(w̄, u) = u`.

pub mod sample;

use thiserror::Error;

use crate::arith::{QMatrix, Rational};

/// Sign of `S` in the cokernel relation `κ ↦ (ικ, ε·Sκ)`.
pub const COKER_SIGN: i32 = -1;
/// Sign of `π` in the kernel condition `S̄w̄ + ε'·πu = 0`.
pub const KER_SIGN: i32 = -1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GlueError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("nilpotency violated: S^{dim} != 0")]
    NotNilpotent { dim: usize },
    #[error("subspace basis is linearly dependent")]
    DependentBasis,
    #[error("stability violated: S(K) is not contained in K")]
    StabilityViolation,
    #[error("assertion failed: {0}")]
    AssertionFailure(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotentPsi {
    op: QMatrix,
}

impl NilpotentPsi {
    pub fn new(op: QMatrix) -> Result<Self, GlueError> {
        if !op.is_square() {
            return Err(GlueError::Shape(format!(
                "S is {}x{}, expected square",
                op.nrows(),
                op.ncols()
            )));
        }
        let dim = op.nrows();
        if dim > 0 && !op.pow(dim as u32).is_zero() {
            return Err(GlueError::NotNilpotent { dim });
        }
        Ok(NilpotentPsi { op })
    }

    pub fn dim(&self) -> usize {
        self.op.nrows()
    }

    pub fn operator(&self) -> &QMatrix {
        &self.op
    }
}

/// An `S`-stable subspace, stored by a basis (the columns of `basis`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableSubspace {
    basis: QMatrix,
}

impl StableSubspace {
    pub fn new(psi: &NilpotentPsi, vectors: &[Vec<Rational>]) -> Result<Self, GlueError> {
        let n = psi.dim();
        if let Some(bad) = vectors.iter().find(|v| v.len() != n) {
            return Err(GlueError::Shape(format!(
                "subspace vector of length {}, expected {n}",
                bad.len()
            )));
        }
        let basis = QMatrix::from_columns(vectors, n);
        if basis.rank() != vectors.len() {
            return Err(GlueError::DependentBasis);
        }
        let k = StableSubspace { basis };
        restricted_operator(psi, &k)?;
        Ok(k)
    }

    pub fn zero(psi: &NilpotentPsi) -> Self {
        StableSubspace {
            basis: QMatrix::zeros(psi.dim(), 0),
        }
    }

    pub fn full(psi: &NilpotentPsi) -> Self {
        StableSubspace {
            basis: QMatrix::identity(psi.dim()),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn basis(&self) -> &QMatrix {
        &self.basis
    }
}

/// `Φ` in some coordinates, with `c: Ψ → Φ` and `v: Φ → Ψ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiDatum {
    pub dim: usize,
    pub c: QMatrix,
    pub v: QMatrix,
}

impl PhiDatum {
    pub fn v_after_c(&self) -> QMatrix {
        &self.v * &self.c
    }
}

/// `0 → source →d→ target → 0` placed in degrees `low` and `low + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoTermComplex {
    pub low_degree: i32,
    pub differential: QMatrix,
}

impl TwoTermComplex {
    pub fn source_dim(&self) -> usize {
        self.differential.ncols()
    }

    pub fn target_dim(&self) -> usize {
        self.differential.nrows()
    }

    /// Cohomology in degree `low`.
    pub fn kernel_dim(&self) -> usize {
        self.source_dim() - self.differential.rank()
    }

    /// Cohomology in degree `low + 1`.
    pub fn cokernel_dim(&self) -> usize {
        self.target_dim() - self.differential.rank()
    }
}

/// A basis extended greedily by standard vectors, with the inverse change of basis.
struct Splitting {
    sub_dim: usize,
    complement: QMatrix,
    coords: QMatrix,
}

impl Splitting {
    /// `basis` must have independent columns.
    fn new(basis: &QMatrix) -> Self {
        let n = basis.nrows();
        let k = basis.ncols();
        let full = basis.hstack(&QMatrix::identity(n));
        let picked = full.independent_columns();
        debug_assert_eq!(picked[..k], (0..k).collect::<Vec<_>>()[..]);
        let complement = full.select_columns(&picked[k..]);
        let coords = full
            .select_columns(&picked)
            .inverse()
            .expect("extended basis is invertible");
        Splitting {
            sub_dim: k,
            complement,
            coords,
        }
    }

    /// Coordinates along the original basis.
    fn sub_coords(&self) -> QMatrix {
        self.coords.row_block(0, self.sub_dim)
    }

    /// Projection onto the quotient, in complement coordinates.
    fn quotient_coords(&self) -> QMatrix {
        self.coords.row_block(self.sub_dim, self.coords.nrows())
    }
}

fn check_shapes(psi: &NilpotentPsi, k: &StableSubspace) -> Result<(), GlueError> {
    if k.ambient_dim() != psi.dim() {
        return Err(GlueError::Shape(format!(
            "subspace lives in dimension {}, S acts on dimension {}",
            k.ambient_dim(),
            psi.dim()
        )));
    }
    Ok(())
}

/// `S|_K` in the basis of `K`; fails exactly when `K` is not stable.
pub fn restricted_operator(psi: &NilpotentPsi, k: &StableSubspace) -> Result<QMatrix, GlueError> {
    check_shapes(psi, k)?;
    let images = psi.operator() * k.basis();
    let cols = images
        .columns()
        .iter()
        .map(|col| k.basis().solve(col).ok_or(GlueError::StabilityViolation))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(QMatrix::from_columns(&cols, k.dim()))
}

struct CokerParts {
    datum: PhiDatum,
    relations: QMatrix,
    lift: QMatrix,
}

fn coker_parts(psi: &NilpotentPsi, k: &StableSubspace) -> Result<CokerParts, GlueError> {
    let n = psi.dim();
    let kd = k.dim();
    let s_k = restricted_operator(psi, k)?;
    let relations = k
        .basis()
        .vstack(&s_k.scale(&Rational::from_integer(COKER_SIGN.into())));
    let split = Splitting::new(&relations);
    let proj = split.quotient_coords();
    let c = &proj * &QMatrix::identity(n).vstack(&QMatrix::zeros(kd, n));
    let v = &psi.operator().hstack(k.basis()) * &split.complement;
    Ok(CokerParts {
        datum: PhiDatum { dim: n, c, v },
        relations,
        lift: split.complement,
    })
}

struct KerParts {
    datum: PhiDatum,
    condition: QMatrix,
    coords: QMatrix,
    projection: QMatrix,
    quotient_op: QMatrix,
}

fn ker_parts(psi: &NilpotentPsi, k: &StableSubspace) -> Result<KerParts, GlueError> {
    check_shapes(psi, k)?;
    restricted_operator(psi, k)?;
    let n = psi.dim();
    let q = n - k.dim();
    let split = Splitting::new(k.basis());
    let projection = split.quotient_coords();
    let quotient_op = &(&projection * psi.operator()) * &split.complement;
    let condition = quotient_op.hstack(&projection.scale(&Rational::from_integer(KER_SIGN.into())));
    let basis = QMatrix::from_columns(&condition.nullspace(), q + n);
    if basis.ncols() != n {
        return Err(GlueError::AssertionFailure(format!(
            "kernel presentation has dimension {}, expected {n}",
            basis.ncols()
        )));
    }
    let coords = Splitting::new(&basis).sub_coords();
    let c = &coords * &projection.vstack(psi.operator());
    let v = basis.row_block(q, q + n);
    Ok(KerParts {
        datum: PhiDatum { dim: n, c, v },
        condition,
        coords,
        projection,
        quotient_op,
    })
}

/// `Φ = coker(K → Ψ ⊕ K)`.
pub fn phi_coker(psi: &NilpotentPsi, k: &StableSubspace) -> Result<PhiDatum, GlueError> {
    Ok(coker_parts(psi, k)?.datum)
}

/// `Φ' = ker(Ψ/K ⊕ Ψ → Ψ/K)`.
pub fn phi_ker(psi: &NilpotentPsi, k: &StableSubspace) -> Result<PhiDatum, GlueError> {
    Ok(ker_parts(psi, k)?.datum)
}

/// Matrix of the induced map `Φ → Φ'` between the two presentations, after
/// checking that it is well defined, bijective and compatible with `c`, `v`.
pub fn comparison_iso(psi: &NilpotentPsi, k: &StableSubspace) -> Result<QMatrix, GlueError> {
    let co = coker_parts(psi, k)?;
    let ke = ker_parts(psi, k)?;
    let n = psi.dim();
    let q = n - k.dim();
    let ambient = ke
        .projection
        .hstack(&QMatrix::zeros(q, k.dim()))
        .vstack(&psi.operator().hstack(k.basis()));
    let fail = |what: &str| Err(GlueError::AssertionFailure(what.to_string()));
    if !(&ambient * &co.relations).is_zero() {
        return fail("comparison map does not vanish on the relations");
    }
    let lifted = &ambient * &co.lift;
    if !(&ke.condition * &lifted).is_zero() {
        return fail("comparison map leaves the kernel presentation");
    }
    let t = &ke.coords * &lifted;
    if t.rank() != n {
        return fail("comparison map is not bijective");
    }
    if &t * &co.datum.c != ke.datum.c {
        return fail("comparison map does not carry c to c");
    }
    if &ke.datum.v * &t != co.datum.v {
        return fail("comparison map does not carry v to v");
    }
    Ok(t)
}

/// `S̄` on `Ψ/K`, in degrees 0 and 1.
pub fn restrict_shriek(
    psi: &NilpotentPsi,
    k: &StableSubspace,
) -> Result<TwoTermComplex, GlueError> {
    Ok(TwoTermComplex {
        low_degree: 0,
        differential: ker_parts(psi, k)?.quotient_op,
    })
}

/// `S|_K`, in degrees −1 and 0.
pub fn restrict_star(psi: &NilpotentPsi, k: &StableSubspace) -> Result<TwoTermComplex, GlueError> {
    Ok(TwoTermComplex {
        low_degree: -1,
        differential: restricted_operator(psi, k)?,
    })
}

/// Everything computed for one `(Ψ, S, K)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlueReport {
    pub psi_dim: usize,
    pub k_dim: usize,
    pub coker: PhiDatum,
    pub ker: PhiDatum,
    pub comparison: QMatrix,
    pub shriek: TwoTermComplex,
    pub star: TwoTermComplex,
}

impl GlueReport {
    /// `v·c = S` in both presentations.
    pub fn composition_holds(&self, psi: &NilpotentPsi) -> bool {
        &self.coker.v_after_c() == psi.operator() && &self.ker.v_after_c() == psi.operator()
    }

    /// `dim coker(c)`, computed from the matrix of `c`.
    pub fn c_cokernel_dim(&self) -> usize {
        self.coker.dim - self.coker.c.rank()
    }

    /// `dim K − dim S(K)`, computed from the restricted operator.
    pub fn predicted_c_cokernel_dim(&self) -> usize {
        self.k_dim - self.star.differential.rank()
    }
}

pub fn analyze(psi: &NilpotentPsi, k: &StableSubspace) -> Result<GlueReport, GlueError> {
    Ok(GlueReport {
        psi_dim: psi.dim(),
        k_dim: k.dim(),
        coker: phi_coker(psi, k)?,
        ker: phi_ker(psi, k)?,
        comparison: comparison_iso(psi, k)?,
        shriek: restrict_shriek(psi, k)?,
        star: restrict_star(psi, k)?,
    })
}
