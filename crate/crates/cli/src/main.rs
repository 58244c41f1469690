mod error;
mod eval;
mod expr;
mod workspace;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use fincat_core::linalg::FieldSpec;
use fincat_core::verify::{run_suite, Check, Execution, Report, SampleSpace, Suite, Timing};
use serde::Serialize;
use serde_json::{json, Value as Json};

use crate::error::{CliError, CliResult};
use crate::eval::{summarize, Evaluator};
use crate::workspace::Workspace;

#[derive(Parser, Debug)]
#[command(name = "fincat", version, about = "Exact computations with algebras, modules and finitely presented functors")]
struct Cli {
    /// Ground field: Q or gf:p.
    #[arg(long, global = true)]
    field: Option<FieldSpec>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 20)]
    samples: usize,
    /// Also write the JSON report here.
    #[arg(long, global = true)]
    out: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate an expression such as `simples(tensor(kxk, M2))` over a workspace.
    Compute { workspace: String, expression: String },
    /// Run a property suite on the workspace, or on the built-in sample space.
    Verify { suite: String, workspace: Option<String> },
    /// List the property suites.
    Suites,
}

#[derive(Serialize)]
struct ComputeReport {
    command: String,
    seed: u64,
    result: Json,
    checks: Vec<Check>,
    timing: Timing,
}

fn command_echo() -> String {
    let args: Vec<String> = std::env::args().skip(1).collect();
    format!("fincat {}", args.join(" "))
}

fn emit(cli: &Cli, full: &Json, text: &str) -> CliResult<()> {
    let pretty = serde_json::to_string_pretty(full).expect("json values serialize");
    if let Some(path) = &cli.out {
        std::fs::write(path, format!("{pretty}\n")).map_err(|e| CliError::Io { path: path.clone(), message: e.to_string() })?;
    }
    match cli.format {
        Format::Json => println!("{pretty}"),
        Format::Text => print!("{text}"),
    }
    Ok(())
}

fn check_lines(checks: &[Check]) -> String {
    checks
        .iter()
        .map(|c| format!("{} {} {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name, c.witness))
        .collect()
}

fn result_lines(result: &Json) -> String {
    let Json::Object(fields) = result else { return format!("result: {result}\n") };
    let mut out = String::new();
    for (key, v) in fields {
        let line = v.to_string();
        if line.len() <= 160 {
            out.push_str(&format!("{key}: {line}\n"));
        } else {
            out.push_str(&format!("{key}: ({} bytes, see --format json)\n", line.len()));
        }
    }
    out
}

fn compute(cli: &Cli, path: &str, expression: &str) -> CliResult<bool> {
    let ws = Workspace::load(path, cli.field)?;
    let parsed = expr::parse(expression)?;
    let start = Instant::now();
    let (result, checks) = match (Evaluator { ws: &ws }).eval(&parsed) {
        Ok(v) => summarize(&ws, &v),
        Err(CliError::Precondition { column, message }) => (
            json!({"kind": "error"}),
            vec![Check { name: "evaluate".into(), passed: false, witness: json!({"column": column, "error": message}) }],
        ),
        Err(e) => return Err(e),
    };
    let report = ComputeReport {
        command: command_echo(),
        seed: cli.seed,
        result,
        checks,
        timing: Timing { elapsed_ms: start.elapsed().as_millis() as u64 },
    };
    let passed = report.checks.iter().all(|c| c.passed);
    let mut text = format!("{}\n", report.command);
    text.push_str(&result_lines(&report.result));
    text.push_str(&check_lines(&report.checks));
    emit(cli, &serde_json::to_value(&report).expect("json"), &text)?;
    Ok(passed)
}

fn verify(cli: &Cli, suite: &str, path: Option<&str>) -> CliResult<bool> {
    let suite: Suite = suite.parse()?;
    let space = match (path, cli.field) {
        (Some(p), flag) => Workspace::load(p, flag)?.sample_space()?,
        (None, Some(f)) => SampleSpace::standard_over(f),
        (None, None) => SampleSpace::standard(),
    };
    let mut report: Report = run_suite(suite, &space, cli.seed, cli.samples, Execution::default())?;
    report.command = command_echo();
    let mut text = format!("{}\n", report.command);
    text.push_str(&check_lines(&report.checks));
    text.push_str(&format!("{}/{} passed in {} ms\n", report.passed(), report.samples, report.timing.elapsed_ms));
    emit(cli, &serde_json::to_value(&report).expect("json"), &text)?;
    Ok(report.all_passed())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let outcome = match &cli.command {
        Command::Compute { workspace, expression } => compute(&cli, workspace, expression),
        Command::Verify { suite, workspace } => verify(&cli, suite, workspace.as_deref()),
        Command::Suites => {
            for s in Suite::ALL {
                println!("{s}");
            }
            Ok(true)
        }
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            if let (CliError::Parse { column, .. } | CliError::Eval { column, .. }, Command::Compute { expression, .. }) = (&e, &cli.command) {
                eprintln!("  {expression}\n  {}^", " ".repeat(column.saturating_sub(1)));
            }
            ExitCode::from(2)
        }
    }
}
