//! Bernstein–Sato polynomial search for `O_U · f^s` and the exceptional set
//! of parameters derived from its roots.
//!
//! The search looks for `P ∈ D[s]` and monic `b` with `P · f^{s+1} = b(s) f^s`
//! among operators of bounded order, `x`-degree and `s`-degree, enlarging the
//! bounds one coordinate at a time. Minimality of `b` is relative to the
//! bounds at which the first solution appears.

mod lambda;
mod system;

pub use lambda::{generation_check, lambda_set, LambdaSet};
pub use system::{build_system, solve_system, LinearSystem, Unknown};

use std::fmt;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::arith::{ArithError, UniPoly};
use crate::par::{self, Jobs};
use crate::weyl::{check_functional_equation, DiffOp, Setting};

/// Search-space bounds for the operator `P`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Bounds {
    /// Maximal total order in `∂`.
    pub order: u32,
    /// Maximal total degree in `x` of each coefficient.
    pub x_degree: u32,
    /// Maximal degree in `s` of each coefficient.
    pub s_degree: u32,
}

impl Bounds {
    pub fn new(order: u32, x_degree: u32, s_degree: u32) -> Self {
        Bounds {
            order,
            x_degree,
            s_degree,
        }
    }

    /// Every coordinate raised by one.
    pub fn enlarged(self) -> Self {
        Bounds::new(self.order + 1, self.x_degree + 1, self.s_degree + 1)
    }

    fn get(self, i: usize) -> u32 {
        [self.order, self.x_degree, self.s_degree][i]
    }

    fn bump(&mut self, i: usize) {
        match i {
            0 => self.order += 1,
            1 => self.x_degree += 1,
            _ => self.s_degree += 1,
        }
    }
}

impl fmt::Display for Bounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "order {}, x-degree {}, s-degree {}",
            self.order, self.x_degree, self.s_degree
        )
    }
}

#[derive(Clone, Debug)]
pub struct SearchLimits {
    pub max: Bounds,
    pub jobs: Jobs,
    pub deadline: Option<Instant>,
}

impl SearchLimits {
    pub fn new(max: Bounds) -> Self {
        SearchLimits {
            max,
            jobs: Jobs::default(),
            deadline: None,
        }
    }

    pub fn with_jobs(mut self, jobs: Jobs) -> Self {
        self.jobs = jobs;
        self
    }

    pub fn with_deadline(mut self, deadline: Option<Instant>) -> Self {
        self.deadline = deadline;
        self
    }

    /// Defaults scaled to `f`: order 4, `x`-degree `deg f + 2`, `s`-degree 3.
    pub fn default_for(setting: &Setting) -> Self {
        let deg = setting.f().x_degree().unwrap_or(1);
        Self::new(Bounds::new(4, deg + 2, 3))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BFunctionResult {
    /// Monic, of least degree among solutions within `bounds`.
    pub b: UniPoly,
    pub operator: DiffOp,
    /// Outcome of the independent functional-equation check.
    pub verified: bool,
    /// Bounds of the level at which the solution was found.
    pub bounds: Bounds,
    /// Number of schedule levels solved (including the successful one).
    pub levels_tried: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BsatError {
    #[error("no functional equation found within bounds ({largest})")]
    BoundsExhausted { largest: Bounds },
    #[error("time budget exhausted")]
    TimeBudgetExceeded,
    #[error("solver output failed the independent functional-equation check: b = {b}")]
    CertificationFailed { b: String },
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Deepening schedule: start at `(1, deg f, 1)` (clipped to `max`) and raise
/// order, `x`-degree, `s`-degree in turn, skipping coordinates at their cap.
pub fn deepening_schedule(setting: &Setting, max: Bounds) -> Vec<Bounds> {
    let deg = setting.f().x_degree().unwrap_or(1);
    let mut cur = Bounds::new(1.min(max.order), deg.min(max.x_degree), 1.min(max.s_degree));
    let mut out = vec![cur];
    let mut i = 0;
    while let Some(next) = (0..3)
        .map(|k| (i + k) % 3)
        .find(|&k| cur.get(k) < max.get(k))
    {
        cur.bump(next);
        out.push(cur);
        i = (next + 1) % 3;
    }
    out
}

/// Solves one level of the schedule.
pub fn solve_at(
    setting: &Setting,
    bounds: Bounds,
    jobs: Jobs,
    deadline: Option<Instant>,
) -> Result<Option<(UniPoly, DiffOp)>, BsatError> {
    let system = build_system(setting, bounds, jobs);
    solve_system(&system, setting.nvars(), deadline)
}

/// Runs the deepening search and certifies the result.
///
/// With more than one job, consecutive levels are solved speculatively in
/// parallel; the reported result is always the first success in schedule
/// order, so the output does not depend on the job count.
pub fn bernstein_sato(
    setting: &Setting,
    limits: &SearchLimits,
) -> Result<BFunctionResult, BsatError> {
    let schedule = deepening_schedule(setting, limits.max);
    let width = limits.jobs.width();
    let mut tried = 0;
    for chunk in schedule.chunks(width) {
        if limits.deadline.is_some_and(|d| Instant::now() >= d) {
            return Err(BsatError::TimeBudgetExceeded);
        }
        let outcomes = if chunk.len() == 1 {
            vec![solve_at(setting, chunk[0], limits.jobs, limits.deadline)]
        } else {
            par::map(chunk, limits.jobs, |&b| {
                solve_at(setting, b, Jobs::sequential(), limits.deadline)
            })
        };
        for (bounds, outcome) in chunk.iter().zip(outcomes) {
            tried += 1;
            if let Some((b, operator)) = outcome? {
                let verified = check_functional_equation(&operator, &b, setting);
                if !verified {
                    return Err(BsatError::CertificationFailed { b: b.to_string() });
                }
                return Ok(BFunctionResult {
                    b,
                    operator,
                    verified,
                    bounds: *bounds,
                    levels_tried: tried,
                });
            }
        }
    }
    Err(BsatError::BoundsExhausted {
        largest: *schedule.last().expect("schedule is never empty"),
    })
}
