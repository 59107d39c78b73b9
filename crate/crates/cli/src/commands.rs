use std::fmt;
use std::fs;
use std::time::Instant;

use serde::Deserialize;

use bsatlab::arith::{format_rational, parse_rational, uni_roots, QMatrix, Rational};
use bsatlab::bsat::{bernstein_sato, lambda_set, BFunctionResult, BsatError, SearchLimits};
use bsatlab::glue::{self, GlueError, GlueReport, NilpotentPsi, StableSubspace};
use bsatlab::line::{self, LineError, SpecializedModule, TransitionKind};
use bsatlab::par::Jobs;
use bsatlab::weyl::{Setting, WeylError};

use crate::output::*;
use crate::{Format, GlueArgs, LineArgs, SolverArgs};

#[derive(Debug)]
pub enum Failure {
    /// Exit 1: unparsable or malformed input.
    Input(String),
    /// Exit 2: search bounds, window or time budget exhausted.
    Limit(String),
    /// Exit 3: an invariant of the input or of the computation failed.
    Invariant(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Limit(_) => 2,
            Failure::Invariant(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (Failure::Input(m) | Failure::Limit(m) | Failure::Invariant(m)) = self;
        f.write_str(m)
    }
}

impl From<WeylError> for Failure {
    fn from(e: WeylError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<BsatError> for Failure {
    fn from(e: BsatError) -> Self {
        match e {
            BsatError::BoundsExhausted { .. } | BsatError::TimeBudgetExceeded => {
                Failure::Limit(e.to_string())
            }
            BsatError::CertificationFailed { .. } | BsatError::Arith(_) => {
                Failure::Invariant(e.to_string())
            }
        }
    }
}

impl From<LineError> for Failure {
    fn from(e: LineError) -> Self {
        match e {
            LineError::EmptyWindow => Failure::Input(e.to_string()),
            LineError::WindowTooSmall { .. } => Failure::Limit(e.to_string()),
            LineError::NotShriek { .. } => Failure::Invariant(e.to_string()),
        }
    }
}

impl From<GlueError> for Failure {
    fn from(e: GlueError) -> Self {
        match e {
            GlueError::Shape(_) => Failure::Input(e.to_string()),
            _ => Failure::Invariant(e.to_string()),
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("output types serialize")
}

fn solve(
    args: &SolverArgs,
    deadline: Option<Instant>,
) -> Result<(Setting, BFunctionResult), Failure> {
    let setting = match &args.vars {
        Some(names) => {
            let names: Vec<&str> = names.iter().map(|n| n.trim()).collect();
            Setting::parse(&args.f, &names)?
        }
        None => Setting::infer(&args.f)?,
    };
    let mut limits = SearchLimits::default_for(&setting)
        .with_jobs(Jobs(args.jobs))
        .with_deadline(deadline);
    if let Some(v) = args.max_order {
        limits.max.order = v;
    }
    if let Some(v) = args.max_xdeg {
        limits.max.x_degree = v;
    }
    if let Some(v) = args.max_sdeg {
        limits.max.s_degree = v;
    }
    let result = bernstein_sato(&setting, &limits)?;
    Ok((setting, result))
}

pub fn bsat(args: &SolverArgs, deadline: Option<Instant>) -> Result<String, Failure> {
    let (setting, r) = solve(args, deadline)?;
    let roots = uni_roots(&r.b).map_err(|e| Failure::Invariant(e.to_string()))?;
    Ok(to_json(&BsatOut {
        b: BOut {
            roots: roots_with_multiplicity(&roots),
            monic_coeffs: coeffs_descending(&r.b),
        },
        operator: r.operator.to_string_with(setting.names()),
        verified: r.verified,
        bounds_used: r.bounds,
    }))
}

pub fn lambda(args: &SolverArgs, deadline: Option<Instant>) -> Result<String, Failure> {
    let (_, r) = solve(args, deadline)?;
    let set = lambda_set(&r.b).map_err(|e| Failure::Invariant(e.to_string()))?;
    Ok(to_json(&LambdaOut {
        residues_mod_1: set.residues().map(format_rational).collect(),
    }))
}

fn class_out(
    mode: &'static str,
    module: &SpecializedModule,
    class: &line::Classification,
) -> LineClassOut {
    let n = i64::from(module.window);
    let transitions = module
        .t_transitions
        .iter()
        .chain(&module.d_transitions)
        .map(|t| TransitionOut {
            kind: match t.kind {
                TransitionKind::T => "t",
                TransitionKind::D => "d",
            },
            from: t.from,
            to: t.to,
            position: t.position(),
            scalar: format_rational(&t.scalar),
            checked: t.from.abs() < n && t.to.abs() < n,
        })
        .collect();
    LineClassOut {
        mode,
        lambda: format_rational(&module.lambda),
        window: module.window,
        classification: class.kind,
        failing: FailingOut {
            t: class.failing_positions(TransitionKind::T),
            d: class.failing_positions(TransitionKind::D),
        },
        transitions,
    }
}

fn class_table(out: &LineClassOut) -> String {
    let mut s = format!(
        "lambda {}  window {}  {}\n",
        out.lambda, out.window, out.classification
    );
    s += &format!("failing t positions: {:?}\n", out.failing.t);
    s += &format!("failing d positions: {:?}\n", out.failing.d);
    s += "kind  from    to  pos  scalar\n";
    for t in &out.transitions {
        let mark = if t.checked { "" } else { "  (boundary)" };
        s += &format!(
            "{:<4} {:>4} {:>5} {:>4}  {}{}\n",
            t.kind, t.from, t.to, t.position, t.scalar, mark
        );
    }
    s.trim_end().to_string()
}

fn quotient_table(out: &QuotientOut) -> String {
    let mut s = format!("window {}\n", out.window);
    s += "degree  dim  pi\n";
    for g in &out.graded {
        s += &format!("{:>6} {:>4}  {}\n", g.degree, g.quotient_dim, g.pi_factored);
    }
    s += "eigenvalue  index  generator_degree  length\n";
    for d in &out.delta_summands {
        s += &format!(
            "{:>10} {:>6} {:>17} {:>7}\n",
            d.eigenvalue, d.index, d.generator_degree, d.length_in_window
        );
    }
    s.trim_end().to_string()
}

pub fn line(args: &LineArgs) -> Result<String, Failure> {
    let table = args.format == Format::Table;
    if args.quotient {
        let report = line::quotient_report(args.window)?;
        let out = QuotientOut {
            window: report.window,
            graded: report
                .pis
                .iter()
                .enumerate()
                .map(|(i, pi)| GradedOut {
                    degree: -(i as i64 + 1),
                    pi: pi.to_string(),
                    pi_factored: factored(pi),
                    quotient_dim: pi.degree().unwrap_or(0),
                })
                .collect(),
            s_support: report
                .s_support
                .iter()
                .map(|(v, m)| Root {
                    value: format_rational(v),
                    mult: *m,
                })
                .collect(),
            delta_summands: report.delta_summands,
            indexing_note: INDEXING_NOTE,
        };
        return Ok(if table {
            quotient_table(&out)
        } else {
            to_json(&out)
        });
    }
    let out = if let Some(n) = args.shriek {
        let (module, class) = line::compute_shriek(n, args.window)?;
        class_out("shriek", &module, &class)
    } else {
        let text = args.lambda.as_deref().expect("clap enforces one mode");
        let lambda = parse_rational(text).map_err(|e| Failure::Input(e.to_string()))?;
        let class = line::classify(&lambda, args.window)?;
        let module = line::specialize(&lambda, args.window)?;
        class_out("classify", &module, &class)
    };
    Ok(if table {
        class_table(&out)
    } else {
        to_json(&out)
    })
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Entry {
    Int(i64),
    Text(String),
}

impl Entry {
    fn value(&self) -> Result<Rational, Failure> {
        match self {
            Entry::Int(v) => Ok(Rational::from_integer((*v).into())),
            Entry::Text(t) => parse_rational(t).map_err(|e| Failure::Input(e.to_string())),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GlueInput {
    dim: usize,
    #[serde(rename = "S")]
    s: Vec<Vec<Entry>>,
    #[serde(rename = "K", default)]
    k: Vec<Vec<Entry>>,
}

fn rational_rows(
    rows: &[Vec<Entry>],
    width: usize,
    what: &str,
) -> Result<Vec<Vec<Rational>>, Failure> {
    rows.iter()
        .map(|row| {
            if row.len() != width {
                return Err(Failure::Input(format!(
                    "{what}: row of length {}, expected {width}",
                    row.len()
                )));
            }
            row.iter().map(Entry::value).collect()
        })
        .collect()
}

fn phi_out(phi: &glue::PhiDatum) -> PhiOut {
    PhiOut {
        c: matrix(&phi.c),
        v: matrix(&phi.v),
        c_invertible: phi.c.inverse().is_some(),
        v_invertible: phi.v.inverse().is_some(),
    }
}

fn complex_out(c: &glue::TwoTermComplex) -> ComplexOut {
    ComplexOut {
        degrees: [c.low_degree, c.low_degree + 1],
        kernel_dim: c.kernel_dim(),
        cokernel_dim: c.cokernel_dim(),
    }
}

pub fn glue(args: &GlueArgs) -> Result<String, Failure> {
    let text = fs::read_to_string(&args.input)
        .map_err(|e| Failure::Input(format!("{}: {e}", args.input.display())))?;
    let input: GlueInput =
        serde_json::from_str(&text).map_err(|e| Failure::Input(format!("malformed input: {e}")))?;
    if input.s.len() != input.dim {
        return Err(Failure::Input(format!(
            "S has {} rows, expected {}",
            input.s.len(),
            input.dim
        )));
    }
    let s = QMatrix::from_rows(&rational_rows(&input.s, input.dim, "S")?, input.dim);
    let k = rational_rows(&input.k, input.dim, "K")?;
    let psi = NilpotentPsi::new(s)?;
    let k = StableSubspace::new(&psi, &k)?;
    let report: GlueReport = glue::analyze(&psi, &k)?;
    let v_c_equals_s = report.composition_holds(&psi);
    let checks = args.checks.then(|| GlueChecks {
        // analyze only returns after the comparison map passed these checks
        comparison_well_defined: true,
        comparison_bijective: report.comparison.rank() == report.psi_dim,
        comparison_transports_c_v: &report.comparison * &report.coker.c == report.ker.c
            && &report.ker.v * &report.comparison == report.coker.v,
        phi_dim_equals_psi_dim: report.coker.dim == report.psi_dim
            && report.ker.dim == report.psi_dim,
        restriction_euler_zero: [&report.shriek, &report.star]
            .iter()
            .all(|c| c.kernel_dim() == c.cokernel_dim()),
        c_cokernel_dim: report.c_cokernel_dim(),
        k_dim_minus_s_k_dim: report.predicted_c_cokernel_dim(),
    });
    if let Some(c) = &checks {
        let ok = v_c_equals_s
            && c.comparison_bijective
            && c.comparison_transports_c_v
            && c.phi_dim_equals_psi_dim
            && c.restriction_euler_zero
            && c.c_cokernel_dim == c.k_dim_minus_s_k_dim;
        if !ok {
            return Err(Failure::Invariant(format!(
                "consistency checks failed:\n{}",
                to_json(c)
            )));
        }
    }
    Ok(to_json(&GlueOut {
        conventions: Conventions {
            coker_relation: "k -> (k, -S k)",
            ker_condition: "S w - pi u = 0",
            comparison: "(u, k) -> (pi u, S u + k)",
            coker_sign: glue::COKER_SIGN,
            ker_sign: glue::KER_SIGN,
        },
        psi_dim: report.psi_dim,
        k_dim: report.k_dim,
        phi_dim: report.coker.dim,
        coker: phi_out(&report.coker),
        ker: phi_out(&report.ker),
        comparison: matrix(&report.comparison),
        v_c_equals_s,
        restrictions: Restrictions {
            shriek: complex_out(&report.shriek),
            star: complex_out(&report.star),
        },
        checks,
    }))
}
