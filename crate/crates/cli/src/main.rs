use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use horn_core::job::{parse_job, render_json, run, Command};
use horn_core::Convention;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Cmd {
    Rank,
    Puiseux,
    Series,
    Decompose,
    Identity,
    Psi,
    Verify,
    All,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Conv {
    Falling,
    Rising,
}

/// Holonomic rank, Puiseux and Gamma-series solutions of bivariate Horn
/// systems.
#[derive(Parser, Debug)]
#[command(name = "horn-rank", version)]
struct Args {
    #[arg(value_enum)]
    command: Cmd,
    /// Job file with the matrix `B` and parameters `c`.
    file: PathBuf,
    /// Seed for generic parameters and weights; overrides the job file.
    #[arg(long)]
    seed: Option<u64>,
    /// Truncation window |z|_1 <= N for series; overrides the job file.
    #[arg(long)]
    window: Option<i64>,
    #[arg(long, value_enum)]
    convention: Option<Conv>,
    /// Write the JSON report here.
    #[arg(long)]
    json: Option<PathBuf>,
}

fn command(c: Cmd) -> Command {
    match c {
        Cmd::Rank => Command::Rank,
        Cmd::Puiseux => Command::Puiseux,
        Cmd::Series => Command::Series,
        Cmd::Decompose => Command::Decompose,
        Cmd::Identity => Command::Identity,
        Cmd::Psi => Command::Psi,
        Cmd::Verify => Command::Verify,
        Cmd::All => Command::All,
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let text = match std::fs::read_to_string(&args.file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.file.display());
            return ExitCode::from(1);
        }
    };
    let mut spec = match parse_job(&text) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {}: {e}", args.file.display());
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    if let Some(s) = args.seed {
        spec.seed = s;
    }
    if let Some(w) = args.window {
        if w < 1 {
            eprintln!("error: --window must be positive");
            return ExitCode::from(1);
        }
        spec.window = w;
    }
    if let Some(c) = args.convention {
        spec.convention = match c {
            Conv::Falling => Convention::Falling,
            Conv::Rising => Convention::Rising,
        };
    }
    let start = Instant::now();
    let report = match run(command(args.command), &spec) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    print!("{}", report.text);
    eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    if let Some(path) = args.json {
        if let Err(e) = std::fs::write(&path, render_json(&report.json)) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(1);
        }
    }
    ExitCode::SUCCESS
}
