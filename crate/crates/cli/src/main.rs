use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use wfca_core::matgrp::{DEFAULT_Q_BOUND, HARD_Q_BOUND};
use wfca_core::verify::{format_report, run_all, FieldPolicy, Format, Outcome, Stages, VerifyConfig, DEFAULT_Q_SET};
use wfca_core::Error;

#[derive(Parser)]
#[command(
    name = "wfca",
    version,
    about = "Compare the weighted fusion category algebra of GL2(q) with the q-Schur algebra"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the whole comparison.
    Verify(RunArgs),
    /// Sylow subgroup, centric classes and the weighted fusion category algebra.
    Fusion(RunArgs),
    /// The q-Schur algebra as the image of kG on k[G/B], and the principal block.
    Schur(RunArgs),
    /// The q-Schur algebra S(2,2) as a Hecke endomorphism algebra.
    Hecke(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Odd prime power.
    #[arg(long, required_unless_present = "all")]
    q: Option<u64>,
    /// Run every q of the default set (3, 5, 7, 9, 11, 13).
    #[arg(long, conflicts_with = "q")]
    all: bool,
    /// Accept q up to 31.
    #[arg(long)]
    extended: bool,
    /// Degree e of the coefficient field GF(2^e), or `auto`.
    #[arg(long, default_value = "auto")]
    field_degree: FieldPolicy,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// `json` or `text`.
    #[arg(long, default_value = "text")]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn run(stages: Stages, args: RunArgs) -> anyhow::Result<ExitCode> {
    let config = VerifyConfig {
        field_degree: args.field_degree,
        seed: args.seed,
        q_bound: if args.extended { HARD_Q_BOUND } else { DEFAULT_Q_BOUND },
        stages,
    };
    let qs: Vec<u64> = match args.q {
        Some(q) => vec![q],
        None => DEFAULT_Q_SET.to_vec(),
    };
    let mut reports = Vec::with_capacity(qs.len());
    for r in run_all(&qs, &config) {
        match r {
            Ok(r) => reports.push(r),
            Err(e @ (Error::InvalidQ { .. } | Error::InvalidArgument(_))) => {
                eprintln!("error: {e}");
                return Ok(ExitCode::from(2));
            }
            Err(e @ (Error::Bound(_) | Error::FieldTooLarge { .. })) => {
                eprintln!("error: {e}");
                return Ok(ExitCode::from(3));
            }
            Err(e) => return Err(e.into()),
        }
    }
    let body = match (args.format, reports.as_slice()) {
        (Format::Json, [single]) => format_report(single, Format::Json),
        (Format::Json, many) => serde_json::to_string_pretty(many)? + "\n",
        (Format::Text, many) => many.iter().map(|r| format_report(r, Format::Text)).collect::<Vec<_>>().join("\n"),
    };
    match &args.out {
        Some(path) if path.as_os_str().is_empty() => {
            eprintln!("error: empty output path");
            return Ok(ExitCode::from(2));
        }
        Some(path) => std::fs::write(path, &body).with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().write_all(body.as_bytes())?,
    }
    let outcome = reports.iter().map(|r| r.outcome).max_by_key(|o| o.exit_code()).unwrap_or(Outcome::Pass);
    for r in &reports {
        let status = match r.outcome {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Bound => "BOUND",
        };
        eprintln!("q = {:>2}: {status}", r.q);
    }
    Ok(ExitCode::from(outcome.exit_code() as u8))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (stages, args) = match cli.command {
        Command::Verify(a) => (Stages::ALL, a),
        Command::Fusion(a) => (Stages::FUSION, a),
        Command::Schur(a) => (Stages::SCHUR, a),
        Command::Hecke(a) => (Stages::HECKE, a),
    };
    match run(stages, args) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
