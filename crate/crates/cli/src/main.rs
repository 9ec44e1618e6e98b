use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use cliffweyl_cli::eval::{eval, AlgebraSpec};
use cliffweyl_cli::parser::parse;
use cliffweyl_cli::suites::{run_suite, SuiteError, SuiteParams, SUITES};

/// Exact computation in Clifford–Weyl algebras and their deformations.
///
/// With an expression, evaluates it in --algebra and prints the canonical
/// form. With --suite, runs a verification suite.
#[derive(Parser, Debug)]
#[command(name = "cliffweyl", version)]
struct Cli {
    /// cw:<n>,<2k> for C(n,2k) or ore:<n> for A_L(n).
    #[arg(long)]
    algebra: Option<AlgebraSpec>,
    /// Suite to run.
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
    suite: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the JSON report here ("-" for stdout).
    #[arg(long)]
    json: Option<String>,
    #[arg(long)]
    maxdeg: Option<u32>,
    #[arg(long)]
    cases: Option<usize>,
    /// Expression to evaluate.
    expr: Option<String>,
}

const USAGE: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match (&cli.suite, &cli.expr) {
        (Some(suite), None) => suite_command(&cli, suite),
        (None, Some(expr)) => eval_command(&cli, expr),
        _ => {
            eprintln!("error: give exactly one of --suite <name> or an expression");
            ExitCode::from(USAGE)
        }
    }
}

fn eval_command(cli: &Cli, text: &str) -> ExitCode {
    let Some(spec) = cli.algebra else {
        eprintln!("error: evaluating an expression needs --algebra");
        return ExitCode::from(USAGE);
    };
    let expr = match parse(text) {
        Ok(e) => e,
        Err(e) => {
            eprintln!("{text}\n{}^\nerror: {e}", " ".repeat(e.pos));
            return ExitCode::from(USAGE);
        }
    };
    match eval(spec, &expr) {
        Ok(v) => {
            println!("{v}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(USAGE)
        }
    }
}

fn suite_command(cli: &Cli, suite: &str) -> ExitCode {
    let params = SuiteParams { algebra: cli.algebra, seed: cli.seed, maxdeg: cli.maxdeg, cases: cli.cases };
    let result = match run_suite(suite, &params) {
        Ok(r) => r,
        Err(e @ (SuiteError::UnknownSuite(_) | SuiteError::InvalidParams { .. })) => {
            eprintln!("error: {e}");
            return ExitCode::from(USAGE);
        }
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let status = if result.passed { "PASS" } else { "FAIL" };
    // keep stdout clean for the report when it goes there
    let mut summary: Box<dyn Write> =
        if cli.json.as_deref() == Some("-") { Box::new(io::stderr()) } else { Box::new(io::stdout()) };
    let mut text = format!(
        "{} [{}, seed {}]: {status}, {} cases, {} failures\n",
        result.suite,
        result.params.algebra,
        result.params.seed,
        result.cases,
        result.failures.len()
    );
    for (k, v) in &result.outputs {
        text += &format!("  {k} = {v}\n");
    }
    for f in result.failures.iter().take(5) {
        text += &format!("  failed: {}\n    lhs: {}\n    rhs: {}\n", f.inputs, f.lhs, f.rhs);
    }
    let _ = summary.write_all(text.as_bytes());
    eprintln!("wall time: {:.3} s", result.wall_time.as_secs_f64());
    if let Some(path) = &cli.json {
        let json = result.to_json();
        let written = if path == "-" {
            writeln!(io::stdout(), "{json}")
        } else {
            fs::write(path, json + "\n")
        };
        if let Err(e) = written {
            eprintln!("error: cannot write {path}: {e}");
            return ExitCode::from(USAGE);
        }
    }
    if result.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
