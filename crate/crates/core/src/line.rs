//! Graded model of `j_*(O_U · t^s)` on the affine line with `f = t`.
//!
//! `j_*` has `Q[s]`-basis `t^{s+m}`, `m ∈ Z`; `t` raises `m` by one and
//! `∂` sends `t^{s+m}` to `(s+m) t^{s+m−1}`. The submodule generated by
//! `t^s` is graded, so it is a sequence of ideals `I_m ⊂ Q[s]`, each stored
//! by its monic generator. Within a window `[−N, N]` the closure computation
//! is exact: every ideal with `m ≥ 0` is the unit ideal, so paths leaving the
//! window contribute nothing new.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::arith::{is_integer, uni_roots, Rational, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LineError {
    #[error("window must be at least 1")]
    EmptyWindow,
    #[error("window {window} too small for lambda = {lambda}: need window > |lambda| + 2")]
    WindowTooSmall { lambda: String, window: u32 },
    #[error("specialization at s = {n} classified as {found}, expected JShriekOnly")]
    NotShriek { n: u32, found: ClassKind },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedModule {
    window: u32,
    generators: BTreeMap<i64, UniPoly>,
}

impl GradedModule {
    pub fn window(&self) -> u32 {
        self.window
    }

    /// Monic generator of `I_m` (zero for the zero ideal). Panics outside the window.
    pub fn generator(&self, m: i64) -> &UniPoly {
        &self.generators[&m]
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.generators.keys().copied()
    }
}

/// Closure of `{t^s}` under `t` and `∂` inside the window `[−N, N]`.
pub fn build_tilde(window: u32) -> Result<GradedModule, LineError> {
    if window == 0 {
        return Err(LineError::EmptyWindow);
    }
    let n = i64::from(window);
    let mut gens: BTreeMap<i64, UniPoly> = (-n..=n).map(|m| (m, UniPoly::zero())).collect();
    gens.insert(0, UniPoly::one());
    let s_plus = |m: i64| {
        UniPoly::new(vec![
            Rational::from_integer(m.into()),
            Rational::from_integer(1.into()),
        ])
    };
    loop {
        let mut changed = false;
        for m in -n..=n {
            let g = gens[&m].clone();
            if g.is_zero() {
                continue;
            }
            if m < n {
                let up = gens[&(m + 1)].gcd(&g);
                if up != gens[&(m + 1)] {
                    gens.insert(m + 1, up);
                    changed = true;
                }
            }
            if m > -n {
                let down = gens[&(m - 1)].gcd(&(&s_plus(m) * &g));
                if down != gens[&(m - 1)] {
                    gens.insert(m - 1, down);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    Ok(GradedModule {
        window,
        generators: gens,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupportPoint {
    pub eigenvalue: String,
    pub multiplicity: usize,
}

/// One `δ`-type summand of the quotient: the generalized `s`-eigenspace for
/// eigenvalue `e`, spanned by the classes at degrees `−(e+1), −(e+2), …`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaSummand {
    pub eigenvalue: i64,
    /// `e + 1`, for comparison with the indexing `k[s]/(s − n)`, `n ≥ 1`.
    pub index: i64,
    /// Degree of the class killed by `t` (the `δ` generator).
    pub generator_degree: i64,
    /// Number of degrees of this summand inside the window.
    pub length_in_window: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientReport {
    pub window: u32,
    /// `π_n` for `n = 1..=N`: the quotient at degree `−n` is `Q[s]/(π_n)`.
    pub pis: Vec<UniPoly>,
    /// Roots of all `π_n` with multiplicity, ascending.
    pub s_support: Vec<(Rational, usize)>,
    pub delta_summands: Vec<DeltaSummand>,
}

/// `j_*(t^s) / D[s]·t^s` degree by degree. Degrees `m ≥ 0` contribute nothing.
pub fn quotient_report(window: u32) -> Result<QuotientReport, LineError> {
    let module = build_tilde(window)?;
    let n = i64::from(window);
    let pis: Vec<UniPoly> = (1..=n).map(|k| module.generator(-k).clone()).collect();
    for (k, pi) in pis.iter().enumerate() {
        assert_eq!(pi.degree(), Some(k + 1), "deg π_n = n");
        if k > 0 {
            assert!(pi.div_exact(&pis[k - 1]).is_some(), "π_n | π_(n+1)");
        }
    }
    let mut support: BTreeMap<Rational, usize> = BTreeMap::new();
    for pi in &pis {
        for r in uni_roots(pi).expect("π_n is a product of linear factors") {
            *support.entry(r).or_default() += 1;
        }
    }
    let delta_summands = support
        .keys()
        .map(|e| {
            let e = e.to_integer().try_into().expect("small integer eigenvalue");
            DeltaSummand {
                eigenvalue: e,
                index: e + 1,
                generator_degree: -(e + 1),
                length_in_window: (n - e) as u32,
            }
        })
        .collect();
    Ok(QuotientReport {
        window,
        pis,
        s_support: support.into_iter().collect(),
        delta_summands,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum TransitionKind {
    /// Multiplication by `t`, degree `m → m+1`.
    T,
    /// `∂`, degree `m → m−1`.
    D,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transition {
    pub kind: TransitionKind,
    pub from: i64,
    pub to: i64,
    /// Matrix entry in generator coordinates, evaluated at `s = λ`.
    pub scalar: Rational,
}

impl Transition {
    /// Conventional label: `j` for the `t`-map `−(j+1) → −j`, and `m` for the
    /// `∂`-map `m → m−1`.
    pub fn position(&self) -> i64 {
        match self.kind {
            TransitionKind::T => -self.from - 1,
            TransitionKind::D => self.from,
        }
    }

    pub fn is_bijective(&self) -> bool {
        !self.scalar.is_zero()
    }
}

/// `M̃ / (s − λ) M̃` on the window: every component is one-dimensional.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecializedModule {
    pub lambda: Rational,
    pub window: u32,
    pub ranks: BTreeMap<i64, u32>,
    pub t_transitions: Vec<Transition>,
    pub d_transitions: Vec<Transition>,
}

impl SpecializedModule {
    fn interior(&self, t: &Transition) -> bool {
        let n = i64::from(self.window);
        t.from.abs() < n && t.to.abs() < n
    }

    /// Transitions used for classification (both endpoints strictly inside the window).
    pub fn interior_transitions(&self) -> impl Iterator<Item = &Transition> {
        self.t_transitions
            .iter()
            .chain(&self.d_transitions)
            .filter(|t| self.interior(t))
    }
}

impl GradedModule {
    /// `M̃ / (s − λ)` on the window: every component is one-dimensional.
    pub fn specialize(&self, lambda: &Rational) -> SpecializedModule {
        let n = i64::from(self.window);
        let s_plus = |m: i64| {
            UniPoly::new(vec![
                Rational::from_integer(m.into()),
                Rational::from_integer(1.into()),
            ])
        };
        let ranks = self
            .degrees()
            .map(|m| (m, u32::from(!self.generator(m).is_zero())))
            .collect();
        let ratio = |num: &UniPoly, den: &UniPoly| -> Rational {
            num.div_exact(den)
                .expect("submodule maps land in the target ideal")
                .eval(lambda)
        };
        let t_transitions = (-n..n)
            .map(|m| Transition {
                kind: TransitionKind::T,
                from: m,
                to: m + 1,
                scalar: ratio(self.generator(m), self.generator(m + 1)),
            })
            .collect();
        let d_transitions = (-n + 1..=n)
            .map(|m| Transition {
                kind: TransitionKind::D,
                from: m,
                to: m - 1,
                scalar: ratio(&(&s_plus(m) * self.generator(m)), self.generator(m - 1)),
            })
            .collect();
        SpecializedModule {
            lambda: lambda.clone(),
            window: self.window,
            ranks,
            t_transitions,
            d_transitions,
        }
    }

    /// Same as [`classify`], reusing this module.
    pub fn classify(&self, lambda: &Rational) -> Result<Classification, LineError> {
        check_window(lambda, self.window)?;
        Ok(classify_specialized(&self.specialize(lambda)))
    }
}

pub fn specialize(lambda: &Rational, window: u32) -> Result<SpecializedModule, LineError> {
    Ok(build_tilde(window)?.specialize(lambda))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ClassKind {
    /// Both `j_! → M̃_λ` and `M̃_λ → j_*` are isomorphisms.
    BothIso,
    /// Only `M̃_λ → j_*` is an isomorphism (every `t`-transition bijective).
    JStarOnly,
    /// Only `j_! → M̃_λ` is an isomorphism (every `∂`-transition bijective).
    JShriekOnly,
    Neither,
}

impl fmt::Display for ClassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub kind: ClassKind,
    pub failing: Vec<Transition>,
}

impl Classification {
    pub fn failing_positions(&self, kind: TransitionKind) -> Vec<i64> {
        self.failing
            .iter()
            .filter(|t| t.kind == kind)
            .map(Transition::position)
            .collect()
    }
}

fn check_window(lambda: &Rational, window: u32) -> Result<(), LineError> {
    if window == 0 {
        return Err(LineError::EmptyWindow);
    }
    if is_integer(lambda) {
        let need = lambda.to_integer().magnitude() + 2u32;
        if num_bigint::BigUint::from(window) <= need {
            return Err(LineError::WindowTooSmall {
                lambda: lambda.to_string(),
                window,
            });
        }
    }
    Ok(())
}

pub fn classify_specialized(module: &SpecializedModule) -> Classification {
    let failing: Vec<Transition> = module
        .interior_transitions()
        .filter(|t| !t.is_bijective())
        .cloned()
        .collect();
    let t_ok = failing.iter().all(|t| t.kind != TransitionKind::T);
    let d_ok = failing.iter().all(|t| t.kind != TransitionKind::D);
    let kind = match (t_ok, d_ok) {
        (true, true) => ClassKind::BothIso,
        (true, false) => ClassKind::JStarOnly,
        (false, true) => ClassKind::JShriekOnly,
        (false, false) => ClassKind::Neither,
    };
    Classification { kind, failing }
}

pub fn classify(lambda: &Rational, window: u32) -> Result<Classification, LineError> {
    build_tilde(window)?.classify(lambda)
}

/// `M̃ / (s − n)` for a positive integer `n`, checked to be the `!`-extension.
pub fn compute_shriek(
    n: u32,
    window: u32,
) -> Result<(SpecializedModule, Classification), LineError> {
    let lambda = Rational::from_integer(n.into());
    check_window(&lambda, window)?;
    let module = specialize(&lambda, window)?;
    let class = classify_specialized(&module);
    if class.kind != ClassKind::JShriekOnly {
        return Err(LineError::NotShriek {
            n,
            found: class.kind,
        });
    }
    Ok((module, class))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn falling(n: i64) -> UniPoly {
        UniPoly::from_roots(&(0..n).map(int).collect::<Vec<_>>())
    }

    #[test]
    fn closure_components() {
        let m = build_tilde(6).unwrap();
        assert!(m.generator(0).is_one());
        assert!(m.generator(6).is_one());
        assert_eq!(m.generator(-1), &UniPoly::s());
        assert_eq!(m.generator(-3), &falling(3));
        assert_eq!(build_tilde(0), Err(LineError::EmptyWindow));
    }

    #[test]
    fn quotient_low_degrees() {
        let q = quotient_report(2).unwrap();
        assert_eq!(q.pis, vec![UniPoly::s(), falling(2)]);
        assert_eq!(q.s_support, vec![(int(0), 2), (int(1), 1)]);
        assert_eq!(q.delta_summands[1].generator_degree, -2);
    }

    #[test]
    fn specialization_scalars_follow_closed_forms() {
        for lambda in [rat(1, 2), int(2), int(-3), rat(-7, 3)] {
            let sm = specialize(&lambda, 8).unwrap();
            for t in &sm.t_transitions {
                let expected = if t.from < 0 {
                    &lambda - int(-t.from - 1)
                } else {
                    int(1)
                };
                assert_eq!(t.scalar, expected, "t from {}", t.from);
            }
            for d in &sm.d_transitions {
                let expected = if d.from <= 0 {
                    int(1)
                } else {
                    &lambda + int(d.from)
                };
                assert_eq!(d.scalar, expected, "d from {}", d.from);
            }
        }
    }

    #[test]
    fn single_vanishing_transition() {
        let sm = specialize(&int(2), 8).unwrap();
        let zeros: Vec<_> = sm
            .interior_transitions()
            .filter(|t| !t.is_bijective())
            .collect();
        assert_eq!(zeros.len(), 1);
        assert_eq!((zeros[0].kind, zeros[0].position()), (TransitionKind::T, 2));
        let sm = specialize(&int(-3), 8).unwrap();
        let zeros: Vec<_> = sm
            .interior_transitions()
            .filter(|t| !t.is_bijective())
            .collect();
        assert_eq!((zeros[0].kind, zeros[0].position()), (TransitionKind::D, 3));
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify(&rat(1, 2), 8).unwrap().kind, ClassKind::BothIso);
        assert_eq!(classify(&int(-3), 8).unwrap().kind, ClassKind::JStarOnly);
        let c = classify(&int(2), 8).unwrap();
        assert_eq!(c.kind, ClassKind::JShriekOnly);
        assert_eq!(c.failing_positions(TransitionKind::T), vec![2]);
        assert!(matches!(
            classify(&int(6), 8),
            Err(LineError::WindowTooSmall { .. })
        ));
    }

    #[test]
    fn shriek_algorithm() {
        let (_, c) = compute_shriek(5, 8).unwrap();
        assert_eq!(c.failing_positions(TransitionKind::T), vec![5]);
        assert!(matches!(
            compute_shriek(5, 4),
            Err(LineError::WindowTooSmall { .. })
        ));
    }
}
