use std::io::{self, BufRead, IsTerminal};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use bordcalc_core::config::Config;
use bordcalc_core::verify::{verify, Report};
use bordcalc_core::{Engine, Error};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

mod commands;

use commands::Outcome;

const SCHEMA: &str = "bordcalc/1";

#[derive(Parser)]
#[command(
    name = "bordcalc",
    version,
    about = "Exact calculator for Z/2-equivariant unoriented bordism over GF(2)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Config file (`key = value` lines); defaults to $BORDCALC_CONFIG.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Rewrite steps allowed per normal form.
    #[arg(long, global = true, value_name = "N")]
    fuel: Option<u64>,
    /// Largest window slack tried by `member`.
    #[arg(long, global = true, value_name = "N")]
    slack: Option<u32>,
    /// Degree bound for `verify`, or the single degree for `basis-table`.
    #[arg(long, global = true, value_name = "N", allow_hyphen_values = true)]
    degree: Option<i64>,
}

#[derive(Args)]
struct Inputs {
    /// Expressions; read one per line from stdin when omitted.
    exprs: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Normal form of a presentation expression.
    Nf(Inputs),
    /// Localization in N_*[c_j][e, e^-1].
    Loc(Inputs),
    /// Augmentation (underlying non-equivariant class).
    Alpha(Inputs),
    /// The operator Gamma.
    Gamma(Inputs),
    /// Exact division by e.
    DivideE(Inputs),
    /// Whether a Laurent element lies in the image of localization.
    Member(Inputs),
    /// Whether the normal form is e-free.
    Geometric(Inputs),
    /// Image in the transversality-obstruction quotient.
    Quotient(Inputs),
    /// Euler class of m*tau + k*sigma, given as `m,k`.
    Euler(Inputs),
    /// Fixed-point data of a catalog manifold.
    Phi(Inputs),
    /// Boundary map on the bundle algebra.
    Delta(Inputs),
    /// Compare dictionary(phi(M)) with the localized Pontryagin-Thom class.
    Compare(Inputs),
    /// Stiefel-Whitney numbers and bordism class of a catalog space.
    Charnum {
        #[command(flatten)]
        inputs: Inputs,
        /// Line class for numbers in N_*(BZ/2), e.g. `u`.
        #[arg(long, allow_hyphen_values = true)]
        reference: Option<String>,
    },
    /// Run a verification suite.
    Verify {
        /// loc, seq, basis, gamma, geomcomp, trobs, cf-exact, compare or all.
        suite: String,
    },
    /// Additive basis per degree; ranges like `-2..4`.
    BasisTable {
        #[arg(allow_hyphen_values = true)]
        ranges: Vec<String>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Nf(_) => "nf",
            Command::Loc(_) => "loc",
            Command::Alpha(_) => "alpha",
            Command::Gamma(_) => "gamma",
            Command::DivideE(_) => "divide-e",
            Command::Member(_) => "member",
            Command::Geometric(_) => "geometric",
            Command::Quotient(_) => "quotient",
            Command::Euler(_) => "euler",
            Command::Phi(_) => "phi",
            Command::Delta(_) => "delta",
            Command::Compare(_) => "compare",
            Command::Charnum { .. } => "charnum",
            Command::Verify { .. } => "verify",
            Command::BasisTable { .. } => "basis-table",
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Capacity(_) | Error::FuelExhausted { .. } => 3,
        Error::NotDivisible(_) | Error::Integrity(_) => 1,
        Error::Parse(_) | Error::Config(_) | Error::UnknownSuite(_) | Error::Contract(_) => 2,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Contract(_) => "contract",
        Error::Capacity(_) => "capacity",
        Error::FuelExhausted { .. } => "fuel",
        Error::NotDivisible(_) => "not_divisible",
        Error::Integrity(_) => "integrity",
        Error::Parse(_) => "syntax",
        Error::Config(_) => "config",
        Error::UnknownSuite(_) => "unknown_suite",
    }
}

fn error_json(e: &Error) -> Value {
    let mut v = json!({ "kind": error_kind(e), "message": e.to_string() });
    if let Error::Parse(p) = e {
        v["position"] = json!(p.position);
        v["expected"] = json!(p.expected);
    }
    v
}

fn describe_error(input: &str, e: &Error) -> String {
    match e {
        Error::Parse(p) => format!("{e}\n  {input}\n  {}^", " ".repeat(p.position)),
        _ => e.to_string(),
    }
}

fn config_json(cfg: &Config) -> Value {
    json!({
        "max_degree": cfg.max_degree,
        "fuel": cfg.fuel,
        "slack": cfg.slack_cap,
        "window": cfg.window_height,
        "coef.max_degree": cfg.coef_max_degree,
        "coef.generators": cfg.coef_generators.to_string(),
    })
}

fn read_inputs(exprs: &[String]) -> anyhow::Result<Vec<String>> {
    if !exprs.is_empty() {
        return Ok(exprs.to_vec());
    }
    let stdin = io::stdin();
    if stdin.is_terminal() {
        anyhow::bail!("no expression given (pass one as an argument or pipe a list on stdin)");
    }
    let mut out = Vec::new();
    for line in stdin.lock().lines() {
        let line = line.context("reading stdin")?;
        let line = line.trim();
        if !line.is_empty() && !line.starts_with('#') {
            out.push(line.to_string());
        }
    }
    Ok(out)
}

struct Run {
    results: Vec<Value>,
    text: Vec<String>,
    code: u8,
}

impl Run {
    fn new() -> Self {
        Self {
            results: Vec::new(),
            text: Vec::new(),
            code: 0,
        }
    }

    fn record(&mut self, input: &str, batch: bool, outcome: Result<Outcome, Error>) {
        match outcome {
            Ok(o) => {
                if o.failed {
                    self.code = self.code.max(1);
                }
                self.results.push(
                    json!({ "input": input, "ok": !o.failed, "output": o.text, "value": o.value }),
                );
                self.text.push(if batch {
                    format!("{input} => {}", o.text)
                } else {
                    o.text
                });
            }
            Err(e) => {
                self.code = self.code.max(exit_code(&e));
                eprintln!("error: {}", describe_error(input, &e));
                self.results
                    .push(json!({ "input": input, "ok": false, "error": error_json(&e) }));
            }
        }
    }
}

fn report_json(report: &Report) -> Value {
    serde_json::to_value(report).expect("reports serialize")
}

fn run(cli: &Cli) -> anyhow::Result<u8> {
    let start = Instant::now();
    let mut cfg = Config::resolve(cli.config.as_deref())?;
    if let Some(f) = cli.fuel {
        cfg.fuel = f;
    }
    if let Some(s) = cli.slack {
        cfg.slack_cap = s;
    }
    let engine: Engine = cfg.engine()?;
    let mut run = Run::new();
    let mut extra = json!({});
    match &cli.command {
        Command::Verify { suite } => {
            let degree = cli.degree.unwrap_or(cfg.max_degree);
            let report = match verify(suite, degree, &engine) {
                Ok(r) => r,
                Err(e) => {
                    run.record(suite, false, Err(e));
                    return finish(cli, &cfg, run, extra, start);
                }
            };
            for c in &report.checks {
                let deg = c.degree.map(|d| format!(" d={d}")).unwrap_or_default();
                run.text.push(format!(
                    "{} [{}{deg}] {}: {}",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.suite,
                    c.name,
                    c.detail
                ));
            }
            let failed = report.failures().count();
            run.text.push(format!(
                "{} of {} checks passed ({} ms)",
                report.checks.len() - failed,
                report.checks.len(),
                report.elapsed_ms
            ));
            if !report.passed() {
                run.code = 1;
            }
            extra = json!({ "report": report_json(&report) });
        }
        Command::BasisTable { ranges } => {
            let mut degrees = Vec::new();
            if let Some(d) = cli.degree {
                degrees.push((d.to_string(), d));
            }
            for r in ranges {
                match commands::degree_range(r) {
                    Ok((lo, hi)) => degrees.extend((lo..=hi).map(|d| (d.to_string(), d))),
                    Err(e) => run.record(r, false, Err(e)),
                }
            }
            if degrees.is_empty() && ranges.is_empty() {
                degrees.extend((0..=cfg.max_degree).map(|d| (d.to_string(), d)));
            }
            for (label, d) in degrees {
                let outcome = commands::basis_degree(&engine, d);
                run.record(&label, false, outcome);
            }
        }
        cmd => {
            let inputs = match cmd {
                Command::Charnum { inputs, .. } => inputs,
                Command::Nf(i)
                | Command::Loc(i)
                | Command::Alpha(i)
                | Command::Gamma(i)
                | Command::DivideE(i)
                | Command::Member(i)
                | Command::Geometric(i)
                | Command::Quotient(i)
                | Command::Euler(i)
                | Command::Phi(i)
                | Command::Delta(i)
                | Command::Compare(i) => i,
                Command::Verify { .. } | Command::BasisTable { .. } => unreachable!(),
            };
            let exprs = read_inputs(&inputs.exprs)?;
            let batch = exprs.len() > 1;
            for input in &exprs {
                let outcome = match cmd {
                    Command::Nf(_) => commands::nf(&engine, input),
                    Command::Loc(_) => commands::loc(&engine, input),
                    Command::Alpha(_) => commands::alpha(&engine, input),
                    Command::Gamma(_) => commands::gamma(&engine, input),
                    Command::DivideE(_) => commands::divide_e(&engine, input),
                    Command::Member(_) => commands::member(&engine, input),
                    Command::Geometric(_) => commands::geometric(&engine, input),
                    Command::Quotient(_) => commands::quotient(&engine, input),
                    Command::Euler(_) => commands::euler(&engine, input),
                    Command::Phi(_) => commands::phi_cmd(&engine, input),
                    Command::Delta(_) => commands::delta_cmd(&engine, input),
                    Command::Compare(_) => commands::compare(&engine, input),
                    Command::Charnum { reference, .. } => {
                        commands::charnum(&engine, input, reference.as_deref())
                    }
                    Command::Verify { .. } | Command::BasisTable { .. } => unreachable!(),
                };
                run.record(input, batch, outcome);
            }
        }
    }
    finish(cli, &cfg, run, extra, start)
}

fn finish(cli: &Cli, cfg: &Config, run: Run, extra: Value, start: Instant) -> anyhow::Result<u8> {
    if cli.json {
        let mut doc = json!({
            "schema": SCHEMA,
            "command": cli.command.name(),
            "config": config_json(cfg),
            "results": run.results,
            "passed": run.code == 0,
            "exit_code": run.code,
            "elapsed_ms": start.elapsed().as_millis() as u64,
        });
        if let Value::Object(map) = extra {
            for (k, v) in map {
                doc[k] = v;
            }
        }
        println!("{}", serde_json::to_string_pretty(&doc)?);
    } else {
        for line in &run.text {
            println!("{line}");
        }
    }
    Ok(run.code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = e.downcast_ref::<Error>().map(exit_code).unwrap_or(2);
            ExitCode::from(code)
        }
    }
}
