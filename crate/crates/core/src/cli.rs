//! Command-line front end. Every command prints one JSON document on stdout.
//!
//! Exit codes: 0 on success, 1 when a check, solve or bundle verification
//! comes out negative, 2 on usage errors and malformed input.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bordism::{named_class, pair, BordismClassQ};
use crate::bundle::{default_sweep, run_sweep, verify_eq3, Eq3Report, ProjectiveBundleSpec};
use crate::constraints::{
    build_system, check_feasibility, solve_for, ProblemJson, SolutionFamily, SystemJson, Unknown,
};
use crate::error::{Error, Result};
use crate::graded::{
    coproduct, format_monomial, parse_polynomial, restrict, to_p, to_ph, GeneratorSystem,
    GradedPolynomial, PolynomialJson, TensorJson,
};
use crate::linalg::format_rational;
use crate::primitives::{ap_basis_definitional, ap_basis_monomial, np_basis, Subspace};

pub const MAX_DEGREE_VAR: &str = "APKAPPA_MAX_DEGREE";
const DEFAULT_MAX_DEGREE: u32 = 32;

#[derive(Parser, Debug)]
#[command(name = "apkappa", version, about = "Almost-primitive classes and kappa-number relations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Method {
    /// Closed-form criterion on monomials.
    Monomial,
    /// Kernel of the primitivity defect.
    Kernel,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Stable {
    Ph,
    P,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Basis of AP^degree(d).
    ApBasis {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        degree: u32,
        #[arg(long, value_enum, default_value = "monomial")]
        method: Method,
    },
    /// Basis of NP^degree(d).
    NpBasis {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        degree: u32,
    },
    /// Coproduct of a class.
    Coproduct {
        #[arg(long)]
        x: String,
        /// Rewrite the class in these generators first.
        #[arg(long, value_enum)]
        system: Option<Stable>,
    },
    /// Restriction of a class to H*(BSO(d)).
    Restrict {
        #[arg(long)]
        x: String,
        #[arg(long)]
        d: u32,
    },
    /// Characteristic number <x, c>.
    Pair {
        #[arg(long)]
        x: String,
        /// Named class such as cp4 or cp2xcp2.
        #[arg(long, conflicts_with = "class_json")]
        class: Option<String>,
        /// Class as JSON {"dim", "numbers"}.
        #[arg(long)]
        class_json: Option<String>,
    },
    /// Relations for fibre dimension d and base dimension p.
    Equations {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        fibre: String,
    },
    /// Checks concrete data against the relations.
    Check {
        #[arg(long)]
        input: std::path::PathBuf,
    },
    /// Solves the relations for the unknown entries of the data.
    Solve {
        #[arg(long)]
        input: std::path::PathBuf,
    },
    /// Compares both sides of the relation on projective bundles.
    VerifyBundle {
        #[arg(long, requires = "twists")]
        m: Option<u32>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, requires = "m")]
        twists: Option<Vec<i64>>,
        #[arg(long)]
        x: Option<String>,
        /// Without --m/--twists, runs the whole family m <= 3, r <= 4,
        /// twists in {-1, 0, 1, 2}.
        #[arg(long, conflicts_with = "x")]
        sweep: bool,
    },
}

/// What a command produced: a document and whether its verdict was positive.
struct Outcome {
    value: Value,
    ok: bool,
}

impl Outcome {
    fn ok(value: Value) -> Self {
        Outcome { value, ok: true }
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match max_degree().and_then(|cap| execute(&cli.command, cap)) {
        Ok(outcome) => {
            let text = serde_json::to_string(&outcome.value).expect("JSON output");
            let _ = writeln!(out, "{text}");
            if outcome.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn max_degree() -> Result<u32> {
    match std::env::var(MAX_DEGREE_VAR) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("{MAX_DEGREE_VAR}={s:?} is not a degree"))),
        Err(_) => Ok(DEFAULT_MAX_DEGREE),
    }
}

fn cap(degree: u32, limit: u32) -> Result<()> {
    if degree > limit {
        return Err(Error::InvalidInput(format!(
            "degree {degree} exceeds {MAX_DEGREE_VAR}={limit}"
        )));
    }
    Ok(())
}

fn cap_class(x: &GradedPolynomial, limit: u32) -> Result<()> {
    let top = x
        .terms()
        .map(|(m, _)| m.degree(x.system()))
        .max()
        .unwrap_or(0);
    cap(top, limit)
}

fn parse_class(s: &str) -> Result<GradedPolynomial> {
    parse_polynomial(s, None)
}

fn execute(command: &Command, limit: u32) -> Result<Outcome> {
    match command {
        Command::ApBasis { d, degree, method } => {
            cap(*degree, limit)?;
            let space = match method {
                Method::Monomial => ap_basis_monomial(*d, *degree)?,
                Method::Kernel => ap_basis_definitional(*d, *degree)?,
            };
            Ok(Outcome::ok(subspace_json(&space)))
        }
        Command::NpBasis { d, degree } => {
            cap(*degree, limit)?;
            Ok(Outcome::ok(subspace_json(&np_basis(*d, *degree)?)))
        }
        Command::Coproduct { x, system } => {
            let x = parse_class(x)?;
            cap_class(&x, limit)?;
            let x = match system {
                Some(Stable::Ph) => to_ph(&x)?,
                Some(Stable::P) => to_p(&x)?,
                None => x,
            };
            let delta = coproduct(&x)?;
            Ok(Outcome::ok(serde_json::to_value(TensorJson::from(&delta)).expect("JSON")))
        }
        Command::Restrict { x, d } => {
            let x = parse_class(x)?;
            cap_class(&x, limit)?;
            let y = restrict(&x, *d)?;
            Ok(Outcome::ok(serde_json::to_value(PolynomialJson::from(&y)).expect("JSON")))
        }
        Command::Pair { x, class, class_json } => {
            let x = parse_class(x)?;
            cap_class(&x, limit)?;
            let c = match (class, class_json) {
                (Some(name), None) => named_class(name)?,
                (None, Some(text)) => serde_json::from_str::<BordismClassQ>(text)
                    .map_err(|e| Error::Parse(format!("class JSON: {e}")))?,
                _ => return Err(Error::InvalidInput("give exactly one of --class, --class-json".into())),
            };
            cap(c.dim(), limit)?;
            Ok(Outcome::ok(json!({ "value": format_rational(&pair(&x, &c)?) })))
        }
        Command::Equations { d, p, fibre } => {
            cap(d + p, limit)?;
            let f = named_class(fibre).or_else(|_| {
                serde_json::from_str::<BordismClassQ>(fibre)
                    .map_err(|e| Error::Parse(format!("fibre: {e}")))
            })?;
            let system = build_system(*d, *p, &f)?;
            let mut j = SystemJson::new(*d, *p, &f, &system);
            j.note = dimension_note(*d);
            Ok(Outcome::ok(serde_json::to_value(j).expect("JSON")))
        }
        Command::Check { input } => {
            let problem = read_problem(input)?;
            cap(problem.d + problem.p, limit)?;
            let problem = problem.to_feasibility()?;
            let verdict = check_feasibility(&problem)?;
            let mut j = json!({
                "satisfied": verdict.satisfied,
                "violations": verdict.violations.iter().map(|v| json!({
                    "x": v.x.to_string(),
                    "lhs": format_rational(&v.lhs),
                    "rhs": format_rational(&v.rhs),
                })).collect::<Vec<_>>(),
            });
            add_note(&mut j, problem.d);
            Ok(Outcome {
                value: j,
                ok: verdict.satisfied,
            })
        }
        Command::Solve { input } => {
            let problem = read_problem(input)?;
            cap(problem.d + problem.p, limit)?;
            let partial = problem.to_partial()?;
            let mut j = match solve_for(&partial) {
                Ok(family) => solution_json(partial.d, &family),
                Err(Error::NoSolution) => json!({ "feasible": false }),
                Err(e) => return Err(e),
            };
            let ok = j["feasible"] == Value::Bool(true);
            add_note(&mut j, partial.d);
            Ok(Outcome { value: j, ok })
        }
        Command::VerifyBundle {
            m,
            twists,
            x,
            sweep,
        } => verify_bundle(*m, twists.as_deref(), x.as_deref(), *sweep, limit),
    }
}

fn read_problem(path: &std::path::Path) -> Result<ProblemJson> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// The relations hold for every fibre dimension; realising arbitrary
/// solutions by bundles is only known for `d = 2` and even `d >= 6`.
fn dimension_note(d: u32) -> Option<String> {
    if d == 4 {
        Some("d = 4: the relations hold, but solutions are only known to be realisable by bundles for d = 2 and even d >= 6".into())
    } else if d % 2 == 1 {
        Some("odd d: the relations hold, realisability by bundles is not addressed".into())
    } else {
        None
    }
}

fn add_note(j: &mut Value, d: u32) {
    if let Some(note) = dimension_note(d) {
        j["note"] = Value::String(note);
    }
}

fn term_strings(x: &GradedPolynomial) -> Vec<String> {
    x.sorted_terms()
        .into_iter()
        .map(|(m, c)| {
            let mono = format_monomial(x.system(), m);
            if c == &num_traits::One::one() {
                mono
            } else {
                format!("{}*{mono}", format_rational(c))
            }
        })
        .collect()
}

fn subspace_json(space: &Subspace) -> Value {
    json!({
        "dim": space.dim(),
        "basis": space.basis().iter().map(term_strings).collect::<Vec<_>>(),
        "elements": space.basis().iter().map(PolynomialJson::from).collect::<Vec<_>>(),
    })
}

fn unknown_name(u: &Unknown, d: u32) -> String {
    match u {
        Unknown::Total(m) => format!("total:{}", format_monomial(GeneratorSystem::P, m)),
        Unknown::Base(m) => format!("base:{}", format_monomial(GeneratorSystem::P, m)),
        Unknown::Kappa(s) => {
            let parts: Vec<String> = s
                .monomials()
                .iter()
                .map(|c| format_monomial(GeneratorSystem::Bso(d), c))
                .collect();
            format!("kappa:{}", parts.join(","))
        }
    }
}

fn solution_json(d: u32, family: &SolutionFamily) -> Value {
    let vector = |v: &[crate::linalg::Rational]| v.iter().map(format_rational).collect::<Vec<_>>();
    json!({
        "feasible": true,
        "unknowns": family.unknowns.iter().map(|u| unknown_name(u, d)).collect::<Vec<_>>(),
        "particular": vector(&family.particular),
        "directions": family.directions.iter().map(|v| vector(v)).collect::<Vec<_>>(),
        "pinned": family
            .unknowns
            .iter()
            .filter(|u| family.is_pinned(u))
            .map(|u| unknown_name(u, d))
            .collect::<Vec<_>>(),
    })
}

#[derive(Serialize)]
struct BundleJson<'a> {
    m: u32,
    twists: &'a [i64],
}

fn report_json(spec: &ProjectiveBundleSpec, r: &Eq3Report) -> Value {
    json!({
        "bundle": BundleJson { m: spec.m(), twists: spec.twists() },
        "x": r.x.to_string(),
        "lhs": format_rational(&r.lhs),
        "kappa_term": format_rational(&r.kappa_term),
        "middle_term": format_rational(&r.middle_term),
        "equal": r.equal,
    })
}

fn verify_bundle(
    m: Option<u32>,
    twists: Option<&[i64]>,
    x: Option<&str>,
    sweep: bool,
    limit: u32,
) -> Result<Outcome> {
    let spec = match (m, twists) {
        (Some(m), Some(t)) => Some(ProjectiveBundleSpec::new(m, t.to_vec())?),
        _ => None,
    };
    match (spec, x) {
        (Some(spec), Some(x)) => {
            cap(spec.total_dim(), limit)?;
            let report = verify_eq3(&spec, &parse_class(x)?)?;
            Ok(Outcome {
                ok: report.equal,
                value: report_json(&spec, &report),
            })
        }
        (Some(spec), None) => {
            cap(spec.total_dim(), limit)?;
            let basis = ap_basis_monomial(spec.fibre_dim(), spec.total_dim())?;
            let reports = basis
                .basis()
                .iter()
                .map(|x| verify_eq3(&spec, x))
                .collect::<Result<Vec<_>>>()?;
            let ok = reports.iter().all(|r| r.equal);
            Ok(Outcome {
                ok,
                value: json!({
                    "bundles": 1,
                    "checks": reports.len(),
                    "equal": ok,
                    "reports": reports.iter().map(|r| report_json(&spec, r)).collect::<Vec<_>>(),
                }),
            })
        }
        (None, None) if sweep => {
            let specs = default_sweep();
            if let Some(top) = specs.iter().map(ProjectiveBundleSpec::total_dim).max() {
                cap(top, limit)?;
            }
            let summary = run_sweep(&specs)?;
            let ok = summary.failures.is_empty();
            Ok(Outcome {
                ok,
                value: json!({
                    "bundles": summary.bundles,
                    "checks": summary.checks,
                    "equal": ok,
                    "failures": summary
                        .failures
                        .iter()
                        .map(|(s, r)| report_json(s, r))
                        .collect::<Vec<_>>(),
                }),
            })
        }
        _ => Err(Error::InvalidInput(
            "verify-bundle needs --m and --twists, or --sweep".into(),
        )),
    }
}
