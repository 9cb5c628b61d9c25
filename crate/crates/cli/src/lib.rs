//! Dispatch for the `tower` command-line tool.
//!
//! Every subcommand produces a JSON value; `--format text` renders it as
//! `key: value` lines. Exit codes: 0 success, 1 a check that is expected to
//! hold failed, 2 usage or input error.

use std::ffi::OsString;

use adic_core::adic::{AdicRingInstance, BoundedSearchBudget};
use adic_core::completion::PadicNumber;
use adic_core::filterlab::{verify_identity, FilterIdentity};
use adic_core::perfectoid::{perfectoid_report, PerfectoidConfig, PerfectoidModel};
use adic_core::ring::{Domain, RingElement};
use adic_core::spa::{membership_detail, DiscPoint, RationalSubsetDescriptor};
use adic_core::suite::{random_poly, random_rational, run_suite, SuiteConfig};
use adic_core::valuation::{check_axioms, ValuationDescriptor};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// Options shared by every subcommand.
#[derive(Clone, Debug, Args)]
pub struct RunConfig {
    /// Prime p; also binds the symbol `p` in expressions.
    #[arg(long = "p", global = true)]
    pub p: Option<u64>,
    /// Absolute p-adic precision N.
    #[arg(long, global = true, default_value_t = 16)]
    pub prec: i64,
    /// Search budget (maximal power or carrier size).
    #[arg(long, global = true, default_value_t = 16)]
    pub budget: u32,
    /// Number of random samples.
    #[arg(long, global = true, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Parser)]
#[command(
    name = "tower",
    version,
    about = "Checks for valuations, adic spaces and perfectoid models"
)]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// p-adic numbers.
    #[command(subcommand)]
    Padic(PadicCommand),
    /// Exhaustive filter identities on finite carriers.
    #[command(subcommand)]
    Filter(FilterCommand),
    /// Valuations.
    #[command(subcommand)]
    Valuation(ValuationCommand),
    /// Adic topologies on PID instances.
    #[command(subcommand)]
    Adic(AdicCommand),
    /// Points of the adic unit disc.
    #[command(subcommand)]
    Spa(SpaCommand),
    /// Perfectoid field checks.
    #[command(subcommand)]
    Perfectoid(PerfectoidCommand),
    /// Runs the full acceptance battery.
    Suite,
}

#[derive(Debug, Subcommand)]
pub enum PadicCommand {
    /// Evaluates a rational expression in ℚ_p to precision `--prec`.
    Eval {
        #[arg(long)]
        expr: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum FilterCommand {
    /// Verifies an identity on all carriers up to `--size` points.
    Verify {
        #[arg(long)]
        identity: String,
        #[arg(long, default_value_t = 3)]
        size: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum ValuationCommand {
    /// Evaluates a valuation on one element.
    Eval {
        #[arg(long = "val")]
        valuation: String,
        #[arg(long)]
        expr: String,
    },
    /// Checks the valuation axioms on `--samples` random pairs.
    Axioms {
        #[arg(long = "val")]
        valuation: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum AdicCommand {
    /// Topological nilpotence with witnesses up to `--budget`.
    Nilpotent {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        expr: String,
    },
    /// Membership of `expr` in `I^power`.
    InIdeal {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        expr: String,
        #[arg(long)]
        power: u32,
    },
    /// Power-boundedness.
    PowerBounded {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        expr: String,
    },
    /// The `T · U` openness lemma for a comma-separated `T` and generator of `U`.
    MulTOpen {
        #[arg(long)]
        ring: String,
        #[arg(long = "t")]
        t: String,
        #[arg(long = "u")]
        u: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum SpaCommand {
    /// Membership of a point in a rational subset.
    Member {
        #[arg(long)]
        point: String,
        #[arg(long)]
        subset: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum PerfectoidCommand {
    /// Runs every field check on `qp:<p>` or `tower:<p>:<k_max>`.
    Check {
        #[arg(long)]
        model: String,
    },
}

/// Outcome of a dispatch: exit code and the two output streams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl std::fmt::Display) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.to_string(),
    }
}

fn require_p(config: &RunConfig) -> Result<u64, Failure> {
    config
        .p
        .ok_or_else(|| usage("this subcommand needs --p <prime>"))
}

fn parse_element(expr: &str, p: Option<u64>) -> Result<RingElement, Failure> {
    match p {
        Some(p) => RingElement::parse_with_prime(expr, p),
        None => RingElement::parse(expr),
    }
    .map_err(usage)
}

pub fn dispatch<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let format = cli.config.format;
    match execute(&cli) {
        Ok((value, passed)) => Outcome {
            code: if passed { EXIT_OK } else { EXIT_CHECK_FAILED },
            stdout: render(&value, format),
            stderr: String::new(),
        },
        Err(failure) => Outcome {
            code: failure.code,
            stdout: String::new(),
            stderr: render(&json!({ "error": failure.message }), format),
        },
    }
}

fn execute(cli: &Cli) -> Result<(Value, bool), Failure> {
    let config = &cli.config;
    match &cli.command {
        Command::Padic(PadicCommand::Eval { expr }) => {
            let p = require_p(config)?;
            let q = parse_element(expr, Some(p))?
                .as_rational()
                .cloned()
                .ok_or_else(|| usage("expression must be a rational number"))?;
            let x = PadicNumber::from_rational(p, &q, config.prec).map_err(usage)?;
            let residue = (config.prec >= 0)
                .then(|| x.residue(config.prec as u32))
                .flatten()
                .map(|r| r.to_string());
            Ok((
                json!({
                    "p": p,
                    "precision": config.prec,
                    "value": q.to_string(),
                    "digits": x.to_digits().ok(),
                    "residue": residue,
                    "valuation": x.exponent(),
                }),
                true,
            ))
        }
        Command::Filter(FilterCommand::Verify { identity, size }) => {
            let identity: FilterIdentity = identity.parse().map_err(usage)?;
            let report = verify_identity(identity, *size).map_err(usage)?;
            let passed = report.passed();
            Ok((serde_json::to_value(report).expect("serializable"), passed))
        }
        Command::Valuation(ValuationCommand::Eval { valuation, expr }) => {
            let v: ValuationDescriptor = valuation.parse().map_err(usage)?;
            let x = parse_element(expr, config.p)?;
            let value = v.eval(&x).map_err(usage)?;
            Ok((
                json!({ "valuation": v.to_string(), "element": x.to_string(), "value": value.to_string() }),
                true,
            ))
        }
        Command::Valuation(ValuationCommand::Axioms { valuation }) => {
            let v: ValuationDescriptor = valuation.parse().map_err(usage)?;
            let p = config.p.unwrap_or(3);
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            let pairs: Vec<(RingElement, RingElement)> = (0..config.samples)
                .map(|_| {
                    (
                        random_in(v.domain(), p, &mut rng),
                        random_in(v.domain(), p, &mut rng),
                    )
                })
                .collect();
            let report = check_axioms(&v, &pairs).map_err(usage)?;
            let passed = report.passed();
            Ok((
                json!({
                    "valuation": v.to_string(),
                    "pairs_checked": report.pairs_checked,
                    "violations": report.violations.iter().map(|x| json!({
                        "axiom": format!("{:?}", x.axiom),
                        "x": x.x.to_string(),
                        "y": x.y.to_string(),
                    })).collect::<Vec<_>>(),
                }),
                passed,
            ))
        }
        Command::Adic(command) => adic(command, config),
        Command::Spa(SpaCommand::Member { point, subset }) => {
            let p = require_p(config)?;
            let x = DiscPoint::parse(point, p).map_err(usage)?;
            let r = RationalSubsetDescriptor::parse(subset, p).map_err(usage)?;
            let detail = membership_detail(&x, &r).map_err(usage)?;
            Ok((
                json!({
                    "point": x.to_string(),
                    "subset": r.to_string(),
                    "member": detail.member,
                    "v_of_s": detail.v_of_s.to_string(),
                    "v_of_t": detail.v_of_t.iter().map(|(k, v)| (k.clone(), Value::String(v.to_string()))).collect::<serde_json::Map<_, _>>(),
                }),
                true,
            ))
        }
        Command::Perfectoid(PerfectoidCommand::Check { model }) => {
            let model: PerfectoidModel = model.parse().map_err(usage)?;
            let perfectoid_config = PerfectoidConfig {
                samples: config.samples,
                seed: config.seed,
                ..PerfectoidConfig::default()
            };
            let report = perfectoid_report(model, &perfectoid_config).map_err(usage)?;
            Ok((serde_json::to_value(report).expect("serializable"), true))
        }
        Command::Suite => {
            let report = run_suite(&SuiteConfig { seed: config.seed });
            let passed = report.passed;
            Ok((serde_json::to_value(report).expect("serializable"), passed))
        }
    }
}

fn random_in(domain: Domain, p: u64, rng: &mut ChaCha8Rng) -> RingElement {
    match domain {
        Domain::Rationals => RingElement::from(random_rational(p, rng)),
        Domain::Polynomials => RingElement::from(random_poly(p, rng)),
        Domain::Laurent => {
            let shift: i64 = rng.gen_range(-2..=2);
            &RingElement::from(random_poly(p, rng))
                * &RingElement::x().pow(shift).expect("X is invertible")
        }
    }
}

fn adic(command: &AdicCommand, config: &RunConfig) -> Result<(Value, bool), Failure> {
    let (ring_text, expr_text) = match command {
        AdicCommand::Nilpotent { ring, expr }
        | AdicCommand::InIdeal { ring, expr, .. }
        | AdicCommand::PowerBounded { ring, expr } => (ring, Some(expr)),
        AdicCommand::MulTOpen { ring, .. } => (ring, None),
    };
    let ring: AdicRingInstance = ring_text.parse().map_err(usage)?;
    let p = Some(ring.prime());
    let x = expr_text.map(|e| parse_element(e, p)).transpose()?;
    let budget = BoundedSearchBudget::new(config.budget).map_err(usage)?;
    let mut value = match command {
        AdicCommand::Nilpotent { .. } => {
            let answer = ring
                .is_topologically_nilpotent(x.as_ref().expect("has expr"), budget)
                .map_err(usage)?;
            serde_json::to_value(answer).expect("serializable")
        }
        AdicCommand::InIdeal { power, .. } => {
            json!({ "power": power, "member": ring.in_ideal_power(x.as_ref().expect("has expr"), *power).map_err(usage)? })
        }
        AdicCommand::PowerBounded { .. } => {
            let answer = ring
                .is_power_bounded(x.as_ref().expect("has expr"), budget)
                .map_err(usage)?;
            serde_json::to_value(answer).expect("serializable")
        }
        AdicCommand::MulTOpen { t, u, .. } => {
            let t = t
                .split(',')
                .map(|s| parse_element(s, p))
                .collect::<Result<Vec<_>, _>>()?;
            let u = parse_element(u, p)?;
            let outcome = adic_core::adic::mul_t_open_check(&ring, &t, &u).map_err(usage)?;
            serde_json::to_value(outcome).expect("serializable")
        }
    };
    let object = value.as_object_mut().expect("object");
    object.insert("ring".into(), Value::String(ring.to_string()));
    if let Some(x) = &x {
        object.insert("element".into(), Value::String(x.to_string()));
    }
    Ok((value, true))
}

/// JSON, or `key: value` lines with nested keys joined by dots.
pub fn render(value: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut text = serde_json::to_string_pretty(value).expect("serializable");
            text.push('\n');
            text
        }
        Format::Text => {
            let mut lines = Vec::new();
            flatten("", value, &mut lines);
            let mut text = lines.join("\n");
            text.push('\n');
            text
        }
    }
}

fn flatten(prefix: &str, value: &Value, lines: &mut Vec<String>) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                flatten(&key(k), v, lines);
            }
        }
        Value::Array(items) if !items.is_empty() => {
            for (i, v) in items.iter().enumerate() {
                flatten(&key(&i.to_string()), v, lines);
            }
        }
        Value::String(s) => lines.push(format!("{prefix}: {s}")),
        other => lines.push(format!("{prefix}: {other}")),
    }
}
