//! Command-line front end for `lsder-core`.
//!
//! [`run`] does all the work and returns the exit code with both output
//! streams, so the binary is a thin wrapper and tests can call it in-process.

pub mod parse;

use std::io::Read;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lsder_core::envfox::{jacobian, mat_is_nilpotent};
use lsder_core::genpos::{self, Prover};
use lsder_core::structconst::{format_combination, CheckOutcome, IndexedAlgebra};
use lsder_core::{
    Ambient, DerivationAlgebra, Identity, Probe, QuotientSpace, Signature, VarietyPresentation,
};
use serde_json::{json, Value};

use parse::{parse_derivation, parse_element, parse_identity, parse_range, ParseError};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Parser)]
#[command(
    name = "lsder",
    version,
    about = "Derivations of free m-ary algebras, computed exactly"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Arity m of the operation.
    #[arg(long, global = true, default_value_t = 2)]
    pub arity: usize,
    /// Operation invariant under permutations of its arguments (default).
    #[arg(long, global = true, overrides_with = "no_symmetric")]
    pub symmetric: bool,
    #[arg(long, global = true, overrides_with = "symmetric")]
    pub no_symmetric: bool,
    /// Adjoin a two-sided unit `1` (binary only).
    #[arg(long, global = true)]
    pub unital: bool,
    /// Number of generators x1..xn.
    #[arg(long, global = true, default_value_t = 1)]
    pub vars: usize,
    /// Largest degree computed in a quotient.
    #[arg(long, global = true, default_value_t = 8)]
    pub truncate: usize,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Defining identity of the variety; repeatable. For `check-identity`, the identity to test.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub identity: Vec<String>,
}

impl Common {
    pub fn signature(&self) -> Result<Signature, Failure> {
        Signature::new(self.arity, !self.no_symmetric, self.unital, self.vars)
            .map_err(Failure::domain)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Side {
    Left,
    Right,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Left-symmetric product D_F·D_G of two derivations.
    Product { left: String, right: String },
    /// Apply a derivation to an element.
    Apply { derivation: String, element: String },
    /// Search for a vanishing left or right power of a derivation.
    Nilpotent {
        derivation: String,
        #[arg(long, value_enum, default_value_t = Side::Both)]
        side: Side,
        #[arg(long, default_value_t = 8)]
        bound: usize,
    },
    /// Jacobian matrix of Fox derivatives, with a nilpotency search.
    Jacobian {
        derivation: String,
        #[arg(long, default_value_t = 8)]
        bound: usize,
    },
    /// Generation of the positive part by D and DX: a word's certificate, or a span check.
    Generate {
        word: Option<String>,
        #[arg(long, default_value_t = 5)]
        degree: usize,
    },
    /// Homogeneous components of the relatively free algebra.
    Quotient {
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Normal form of an element modulo the identities.
    Reduce { element: String },
    /// Test an identity on a built-in algebra given by structure constants.
    CheckIdentity {
        #[arg(long)]
        builtin: String,
        #[arg(long, allow_hyphen_values = true, default_value = "-1..12")]
        range: String,
    },
    /// Engel index of the one-generated relatively free algebra.
    Engel {
        #[arg(long, default_value_t = 8)]
        bound: usize,
    },
    /// Multiplication table of a built-in algebra.
    Structconst {
        #[arg(long)]
        builtin: String,
        #[arg(long, allow_hyphen_values = true, default_value = "0..4")]
        range: String,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Product { .. } => "product",
            Command::Apply { .. } => "apply",
            Command::Nilpotent { .. } => "nilpotent",
            Command::Jacobian { .. } => "jacobian",
            Command::Generate { .. } => "generate",
            Command::Quotient { .. } => "quotient",
            Command::Reduce { .. } => "reduce",
            Command::CheckIdentity { .. } => "check-identity",
            Command::Engel { .. } => "engel",
            Command::Structconst { .. } => "structconst",
        }
    }
}

/// Why a command failed, with its exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    /// Malformed input: exit code 2.
    Usage(String),
    /// Well-formed input the engine rejects: exit code 1.
    Domain(String),
}

impl Failure {
    fn domain(e: impl ToString) -> Self {
        Failure::Domain(e.to_string())
    }

    pub fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Domain(_) => 1,
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        match e {
            ParseError::Syntax(s) => Failure::Usage(s.to_string()),
            ParseError::Domain(d) => Failure::Domain(d.to_string()),
        }
    }
}

impl From<lsder_core::Error> for Failure {
    fn from(e: lsder_core::Error) -> Self {
        Failure::domain(e)
    }
}

/// Result of a finished invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// A command's result: the JSON value and the same data as text.
struct Report {
    result: Value,
    text: String,
    truncation: Option<usize>,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let (stdout, stderr) = if code == 0 {
                (rendered, String::new())
            } else {
                (String::new(), rendered)
            };
            return Output {
                code,
                stdout,
                stderr,
            };
        }
    };
    match execute(&cli, stdin) {
        Ok(report) => Output {
            code: 0,
            stdout: render(&cli, report),
            stderr: String::new(),
        },
        Err(f) => {
            let msg = match &f {
                Failure::Usage(m) | Failure::Domain(m) => m,
            };
            Output {
                code: f.code(),
                stdout: String::new(),
                stderr: format!("error: {msg}\n"),
            }
        }
    }
}

fn render(cli: &Cli, report: Report) -> String {
    if !cli.common.json {
        return format!("{}\n", report.text);
    }
    let c = &cli.common;
    let doc = json!({
        "command": cli.command.name(),
        "signature": {
            "arity": c.arity,
            "symmetric": !c.no_symmetric,
            "unital": c.unital,
            "vars": c.vars,
        },
        "result": report.result,
        "truncation": report.truncation,
        "version": VERSION,
    });
    format!(
        "{}\n",
        serde_json::to_string_pretty(&doc).expect("serializable")
    )
}

/// Substitutes standard input for at most one payload equal to `-`.
struct Payloads<'a> {
    stdin: &'a mut dyn Read,
    used: bool,
}

impl Payloads<'_> {
    fn get(&mut self, text: &str) -> Result<String, Failure> {
        if text != "-" {
            return Ok(text.to_string());
        }
        if self.used {
            return Err(Failure::Usage(
                "only one payload may be read from standard input".into(),
            ));
        }
        self.used = true;
        let mut buf = String::new();
        self.stdin
            .read_to_string(&mut buf)
            .map_err(|e| Failure::Usage(format!("reading standard input: {e}")))?;
        Ok(buf.trim().to_string())
    }
}

fn identities(common: &Common, sig: &Signature) -> Result<Vec<Identity>, Failure> {
    common
        .identity
        .iter()
        .map(|t| Ok(parse_identity(t, sig)?))
        .collect()
}

fn quotient(common: &Common, sig: Signature) -> Result<QuotientSpace, Failure> {
    let pres = VarietyPresentation::new(sig, identities(common, &sig)?);
    Ok(QuotientSpace::new(pres, common.truncate)?)
}

/// Free ambient unless identities are given.
fn ambient(common: &Common, sig: Signature) -> Result<Ambient, Failure> {
    if common.identity.is_empty() {
        Ok(Ambient::free(sig))
    } else {
        Ok(Ambient::variety(quotient(common, sig)?))
    }
}

fn probe_json(p: &Probe) -> Value {
    match p {
        Probe::Index(k) => json!({"status": "nilpotent", "index": k}),
        Probe::Absent { bound } => json!({"status": "not_nilpotent", "bound": bound}),
        Probe::Unknown { truncation } => json!({"status": "unknown", "truncation": truncation}),
    }
}

fn strings<T: ToString>(items: impl IntoIterator<Item = T>) -> Vec<String> {
    items.into_iter().map(|i| i.to_string()).collect()
}

fn basis_symbol(alg: &IndexedAlgebra) -> &'static str {
    match alg.name() {
        "leibniz_der" => "f",
        "dual_leibniz_der" => "g",
        "dual_leibniz_alg" => "x",
        _ => "e",
    }
}

fn execute(cli: &Cli, stdin: &mut dyn Read) -> Result<Report, Failure> {
    let common = &cli.common;
    let sig = common.signature()?;
    let mut payloads = Payloads { stdin, used: false };
    let trunc = |a: &Ambient| a.truncation();
    match &cli.command {
        Command::Product { left, right } => {
            let ambient = ambient(common, sig)?;
            let alg = DerivationAlgebra::new(ambient.clone());
            let u = alg.derivation(parse_derivation(&payloads.get(left)?, &sig)?)?;
            let v = alg.derivation(parse_derivation(&payloads.get(right)?, &sig)?)?;
            let p = alg.lsym_mul(&u, &v)?;
            Ok(Report {
                text: p.to_string(),
                result: json!({"derivation": p.to_string(), "coords": strings(p.coords())}),
                truncation: trunc(&ambient),
            })
        }
        Command::Apply {
            derivation,
            element,
        } => {
            let ambient = ambient(common, sig)?;
            let alg = DerivationAlgebra::new(ambient.clone());
            let d = alg.derivation(parse_derivation(&payloads.get(derivation)?, &sig)?)?;
            let a = parse_element(&payloads.get(element)?, &sig)?;
            let image = alg.apply(&d, &a)?;
            Ok(Report {
                text: image.to_string(),
                result: json!({"element": image.to_string()}),
                truncation: trunc(&ambient),
            })
        }
        Command::Nilpotent {
            derivation,
            side,
            bound,
        } => {
            let ambient = ambient(common, sig)?;
            let alg = DerivationAlgebra::new(ambient.clone());
            let d = alg.derivation(parse_derivation(&payloads.get(derivation)?, &sig)?)?;
            let mut result = serde_json::Map::new();
            let mut lines = Vec::new();
            if matches!(side, Side::Left | Side::Both) {
                let p = alg.is_left_nilpotent(&d, *bound)?;
                lines.push(format!("left: {p}"));
                result.insert("left".into(), probe_json(&p));
            }
            if matches!(side, Side::Right | Side::Both) {
                let p = alg.is_right_nilpotent(&d, *bound)?;
                lines.push(format!("right: {p}"));
                result.insert("right".into(), probe_json(&p));
            }
            Ok(Report {
                text: lines.join("\n"),
                result: Value::Object(result),
                truncation: trunc(&ambient),
            })
        }
        Command::Jacobian { derivation, bound } => {
            let ambient = ambient(common, sig)?;
            let coords = parse_derivation(&payloads.get(derivation)?, &sig)?;
            let coords: Vec<_> = coords
                .iter()
                .map(|c| ambient.reduce(c))
                .collect::<Result<_, _>>()?;
            let j = jacobian(&ambient, &coords)?;
            let p = mat_is_nilpotent(&ambient, &j, *bound)?;
            let rows: Vec<Vec<String>> = j.rows().iter().map(strings).collect();
            Ok(Report {
                text: format!("{j}\n{p}"),
                result: json!({"matrix": rows, "nilpotency": probe_json(&p)}),
                truncation: trunc(&ambient),
            })
        }
        Command::Generate { word, degree } => {
            if !sig.symmetric || sig.unital || sig.num_generators != 1 {
                return Err(Failure::Domain(
                    "generate works in the one-generator symmetric non-unital algebra".into(),
                ));
            }
            match word {
                Some(w) => {
                    let e = parse_element(&payloads.get(w)?, &sig)?;
                    let mut terms = e.terms();
                    let target = match (terms.next(), terms.next()) {
                        (Some((w, c)), None) if *c == lsder_core::q(1) => w.clone(),
                        _ => return Err(Failure::Domain("expected a single word".into())),
                    };
                    let cert = Prover::new(sig.arity)?.certificate(&target)?;
                    let rho = genpos::rho(&target)?;
                    Ok(Report {
                        text: format!("{target} d1 = {cert}"),
                        result: json!({"word": target.to_string(), "rho": rho, "expression": cert.to_string()}),
                        truncation: None,
                    })
                }
                None => {
                    let report = genpos::span_check(*degree, sig.arity)?;
                    let mut lines: Vec<String> = report
                        .rows
                        .iter()
                        .map(|r| {
                            format!(
                                "degree {}: {} / {}",
                                r.degree, r.closure_dimension, r.reduced_words
                            )
                        })
                        .collect();
                    lines.push(if report.passed() {
                        "PASS".into()
                    } else {
                        "FAIL".into()
                    });
                    let rows: Vec<Value> = report
                        .rows
                        .iter()
                        .map(|r| {
                            json!({"degree": r.degree, "closure_dimension": r.closure_dimension, "reduced_words": r.reduced_words})
                        })
                        .collect();
                    Ok(Report {
                        text: lines.join("\n"),
                        result: json!({"rows": rows, "passed": report.passed()}),
                        truncation: None,
                    })
                }
            }
        }
        Command::Quotient { degree } => {
            let qs = quotient(common, sig)?;
            let degrees: Vec<usize> = match degree {
                Some(d) => vec![*d],
                None => (1..=qs.truncation()).collect(),
            };
            let mut rows = Vec::new();
            let mut lines = Vec::new();
            for d in degrees {
                let basis = strings(qs.quotient_basis(d)?);
                let relations = qs.relation_space(d)?.len();
                lines.push(format!(
                    "degree {d}: dimension {}, relations {relations}, basis [{}]",
                    basis.len(),
                    basis.join(", ")
                ));
                rows.push(json!({"degree": d, "dimension": basis.len(), "relations": relations, "basis": basis}));
            }
            let result = match degree {
                Some(_) => rows.pop().expect("one row"),
                None => json!({"components": rows}),
            };
            Ok(Report {
                text: lines.join("\n"),
                result,
                truncation: Some(qs.truncation()),
            })
        }
        Command::Reduce { element } => {
            let ambient = ambient(common, sig)?;
            let e = ambient.reduce(&parse_element(&payloads.get(element)?, &sig)?)?;
            Ok(Report {
                text: e.to_string(),
                result: json!({"element": e.to_string()}),
                truncation: trunc(&ambient),
            })
        }
        Command::CheckIdentity { builtin, range } => {
            let alg = IndexedAlgebra::builtin(builtin)?;
            let (lo, hi) = parse_range(range).map_err(|e| Failure::Usage(e.message))?;
            // structure-constant algebras are binary and not commutative
            let shape = Signature::new(2, false, false, 1)?;
            let [text] = common.identity.as_slice() else {
                return Err(Failure::Usage(
                    "check-identity needs exactly one --identity".into(),
                ));
            };
            let id = parse_identity(text, &shape)?;
            let symbol = basis_symbol(&alg);
            let (text, counterexample) = match alg.check_identity(&id, lo, hi)? {
                CheckOutcome::Pass => ("PASS".to_string(), Value::Null),
                CheckOutcome::Counterexample { indices, lhs, rhs } => {
                    let at = strings(indices.iter().map(|i| format!("{symbol}{i}")));
                    let (l, r) = (
                        format_combination(&lhs, symbol),
                        format_combination(&rhs, symbol),
                    );
                    (
                        format!("FAIL at ({}): {l} vs {r}", at.join(", ")),
                        json!({"indices": indices, "lhs": l, "rhs": r}),
                    )
                }
            };
            Ok(Report {
                result: json!({
                    "algebra": alg.name(),
                    "identity": id.to_string(),
                    "range": [lo, hi],
                    "passed": counterexample.is_null(),
                    "counterexample": counterexample,
                }),
                text,
                truncation: None,
            })
        }
        Command::Engel { bound } => {
            let qs = quotient(common, sig)?;
            let p = qs.engel_index(*bound)?;
            Ok(Report {
                text: p.to_string(),
                result: json!({"engel": probe_json(&p)}),
                truncation: Some(qs.truncation()),
            })
        }
        Command::Structconst { builtin, range } => {
            let alg = IndexedAlgebra::builtin(builtin)?;
            let (lo, hi) = parse_range(range).map_err(|e| Failure::Usage(e.message))?;
            let symbol = basis_symbol(&alg);
            let mut lines = Vec::new();
            let mut products = Vec::new();
            for s in alg.indices(lo, hi) {
                for t in alg.indices(lo, hi) {
                    let value = alg.product(&alg.basis(s)?, &alg.basis(t)?)?;
                    let value = format_combination(&value, symbol);
                    lines.push(format!("{symbol}{s} * {symbol}{t} = {value}"));
                    products.push(json!({"s": s, "t": t, "value": value}));
                }
            }
            Ok(Report {
                text: lines.join("\n"),
                result: json!({"algebra": alg.name(), "range": [lo, hi], "products": products}),
                truncation: None,
            })
        }
    }
}
