//! Command dispatch for the `unicent` binary.
//!
//! [`run`] does all the work and returns an [`Outcome`] holding the rendered
//! output and the exit code, so the binary is a thin wrapper and the same
//! path is exercised by the tests.
//!
//! Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 1 | usage or parse error |
//! | 2 | mathematical refusal (disconnected proper Levi center, inadmissible purity prediction) |
//! | 3 | a `check` item failed, or an internal consistency check tripped |

pub mod checks;
pub mod report;

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use unicent::{
    center_of_levi, center_order, e_polynomial, jg_homology, parse_spec, poincare_from_purity,
    point_count_poly, weyl_order, BettiTable, Error, GroupSpec, Isogeny, LeviSet, QPolynomial,
    RootDatum, TPolynomial,
};

use crate::checks::{run_checks, Status};
use crate::report::{int_value, ints_value, matrix_value, rational_value, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_REFUSAL: i32 = 2;
pub const EXIT_CHECK_FAILED: i32 = 3;

pub const DEFAULT_MAX_RANK: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Info,
    Pi0,
    Count,
    Epoly,
    Poincare,
    Cgbetti,
    Jgbetti,
    Check,
}

impl Command {
    pub const ALL: [Command; 8] = [
        Command::Info,
        Command::Pi0,
        Command::Count,
        Command::Epoly,
        Command::Poincare,
        Command::Cgbetti,
        Command::Jgbetti,
        Command::Check,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Info => "info",
            Command::Pi0 => "pi0",
            Command::Count => "count",
            Command::Epoly => "epoly",
            Command::Poincare => "poincare",
            Command::Cgbetti => "cgbetti",
            Command::Jgbetti => "jgbetti",
            Command::Check => "check",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown command '{s}'"))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Table,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "table" => Ok(Format::Table),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format '{s}' (expected table or json)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    pub format: Format,
    /// 1-based labels for `pi0 --levi`.
    pub levi: Option<Vec<usize>>,
    pub all: bool,
    pub max_rank: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            format: Format::Table,
            levi: None,
            all: false,
            max_rank: DEFAULT_MAX_RANK,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub exit_code: i32,
    pub report: Option<Report>,
    pub stdout: String,
    pub stderr: String,
}

/// Parses a comma-separated list of 1-based labels such as `1,3`.
pub fn parse_levi_labels(s: &str) -> Result<Vec<usize>, String> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("invalid Levi label '{}'", t.trim()))
        })
        .collect()
}

fn poly_value(p: &QPolynomial, var: &str) -> Value {
    json!({
        "variable": var,
        "coefficients": ints_value(p.coeffs()),
        "display": p.to_string(),
    })
}

fn tpoly_value(p: &TPolynomial) -> Value {
    json!({
        "variable": "t",
        "coefficients": ints_value(p.coeffs()),
        "display": p.to_string(),
        "label": "purity-predicted",
    })
}

fn betti_value(b: &BettiTable) -> Value {
    json!(b.as_slice())
}

fn isogeny_name(d: &RootDatum) -> &'static str {
    match d.isogeny() {
        Isogeny::Adjoint => "adjoint",
        Isogeny::SimplyConnected => "sc",
        Isogeny::Lattice(_) => "lattice",
    }
}

fn pi0_row(d: &RootDatum, s: LeviSet) -> Value {
    let c = center_of_levi(d, s).expect("validated against rank");
    json!({
        "levi": s.labels(),
        "factors": ints_value(c.pi0.factors()),
        "order": int_value(&c.pi0.order()),
        "center_dim": c.dim,
    })
}

enum Failure {
    Usage(String),
    Math(Error),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_refusal() {
            Failure::Math(e)
        } else if matches!(e, Error::BoundaryNotSphere { .. }) {
            Failure::Check(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

fn execute(
    command: Command,
    spec: &GroupSpec,
    opts: &Options,
    report: &mut Report,
) -> Result<(), Failure> {
    let d = spec.datum();
    let n = d.rank();
    match command {
        Command::Info => {
            report
                .section("rank", json!(n))
                .section("cartan_type", json!(d.cartan_type().to_string()))
                .section("isogeny", json!(isogeny_name(d)))
                .section("center_order", int_value(&center_order(d)))
                .section("weyl_order", int_value(&weyl_order(d.cartan_type())))
                .section("cartan_matrix", matrix_value(d.cartan().to_rows()))
                .section("char_lattice", matrix_value(d.char_lattice().to_rows()));
        }
        Command::Pi0 => {
            let rows: Vec<Value> = match (&opts.levi, opts.all) {
                (Some(labels), false) => {
                    let s = LeviSet::from_labels(labels)
                        .filter(|s| s.is_subset(d.all()))
                        .ok_or_else(|| {
                            Failure::Usage(format!("Levi labels must lie in 1..={n}"))
                        })?;
                    vec![pi0_row(d, s)]
                }
                (Some(_), true) => {
                    return Err(Failure::Usage(
                        "--levi and --all are mutually exclusive".into(),
                    ))
                }
                (None, _) => LeviSet::all_subsets(n)
                    .into_iter()
                    .map(|s| pi0_row(d, s))
                    .collect(),
            };
            report.section("pi0", Value::Array(rows));
        }
        Command::Count => {
            report.section("point_count", poly_value(&point_count_poly(d), "q"));
        }
        Command::Epoly => {
            report.section("e_polynomial", poly_value(&e_polynomial(d), "uv"));
        }
        Command::Poincare => {
            let p = poincare_from_purity(d)?;
            report.section("poincare", tpoly_value(&p));
            report
                .warnings
                .push("purity-predicted: assumes the mixed Hodge structure is pure".into());
        }
        Command::Cgbetti => {
            let b = unicent::boundary_homology(d)?;
            report
                .section("boundary_betti", betti_value(&b))
                .section("sphere_dimension", json!(2 * n - 1));
        }
        Command::Jgbetti => {
            let r = jg_homology(d)?;
            report.section(
                "assembly",
                json!({
                    "betti": betti_value(&r.betti),
                    "boundary_betti": betti_value(&r.boundary_betti),
                    "cells_attached": int_value(&r.cells_attached),
                    "boundary_rank": r.boundary_rank,
                    "intersection_number": rational_value(&r.intersection_number),
                    "purity_match": r.purity_match,
                }),
            );
        }
        Command::Check => {
            let items = run_checks(d);
            let failed = items.iter().filter(|i| i.status == Status::Fail).count();
            let passed = items.iter().filter(|i| i.status == Status::Pass).count();
            let skipped = items.len() - failed - passed;
            report
                .section(
                    "checks",
                    Value::Array(items.iter().map(|i| i.to_json()).collect()),
                )
                .section("passed", json!(passed))
                .section("failed", json!(failed))
                .section("skipped", json!(skipped));
            if failed > 0 {
                let names: Vec<&str> = items
                    .iter()
                    .filter(|i| i.status == Status::Fail)
                    .map(|i| i.name)
                    .collect();
                return Err(Failure::Check(format!(
                    "failed checks: {}",
                    names.join(", ")
                )));
            }
        }
    }
    Ok(())
}

fn error_json(
    command: Command,
    spec: &str,
    kind: &str,
    message: &str,
    witness: Option<LeviSet>,
) -> String {
    let mut v = json!({
        "command": command.name(),
        "spec": spec,
        "error": { "kind": kind, "message": message },
    });
    if let Some(w) = witness {
        v["error"]["witness"] = json!(w.labels());
    }
    let mut s = serde_json::to_string_pretty(&v).expect("valid JSON");
    s.push('\n');
    s
}

/// Runs one command on one group spec.
pub fn run(command: Command, spec: &str, opts: &Options) -> Outcome {
    let parsed = parse_spec(spec).and_then(|g| {
        if g.datum().rank() > opts.max_rank {
            Err(Error::Syntax {
                pos: 0,
                msg: format!(
                    "rank {} exceeds --max-rank {} (raise the limit to proceed)",
                    g.datum().rank(),
                    opts.max_rank
                ),
            })
        } else {
            Ok(g)
        }
    });
    let g = match parsed {
        Ok(g) => g,
        Err(e) => {
            let msg = format!("error: invalid group spec '{spec}': {e}");
            return Outcome {
                exit_code: EXIT_USAGE,
                report: None,
                stdout: match opts.format {
                    Format::Json => error_json(command, spec, "usage", &e.to_string(), None),
                    Format::Table => String::new(),
                },
                stderr: msg + "\n",
            };
        }
    };
    let canonical = g.canonical();
    let mut report = Report::new(command.name(), &canonical);
    let result = execute(command, &g, opts, &mut report);
    let rendered = match opts.format {
        Format::Json => report.render_json(),
        Format::Table => report.render_table(),
    };
    match result {
        Ok(()) => Outcome {
            exit_code: EXIT_OK,
            report: Some(report),
            stdout: rendered,
            stderr: String::new(),
        },
        Err(Failure::Usage(msg)) => Outcome {
            exit_code: EXIT_USAGE,
            report: None,
            stdout: match opts.format {
                Format::Json => error_json(command, &canonical, "usage", &msg, None),
                Format::Table => String::new(),
            },
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Math(e)) => {
            let witness = match &e {
                Error::NontrivialPi0(s) => Some(*s),
                _ => None,
            };
            let msg = match witness {
                Some(s) => format!(
                    "refused: pi0(Z(L_S)) is nontrivial for the proper Levi set S = {s}; \
                     the handle-attachment assembly does not apply"
                ),
                None => format!("refused: {e}"),
            };
            Outcome {
                exit_code: EXIT_REFUSAL,
                report: None,
                stdout: match opts.format {
                    Format::Json => error_json(command, &canonical, "refusal", &msg, witness),
                    Format::Table => String::new(),
                },
                stderr: msg + "\n",
            }
        }
        Err(Failure::Check(msg)) => Outcome {
            exit_code: EXIT_CHECK_FAILED,
            report: Some(report),
            stdout: rendered,
            stderr: format!("error: {msg}\n"),
        },
    }
}
