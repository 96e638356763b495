use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use pgcensus::harness::numeric_field;
use pgcensus::{
    census_report, exit, load_w, run_numeric, run_symbolic, save_w, HarnessError, Level,
    NumericOptions, VerificationReport,
};

#[derive(Parser)]
#[command(name = "pgcensus", version, about = "Verify the Pfaffian-Grassmannian class relation symbolically and by point counts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
    /// Count points for a saved W and run the fast checks
    Count {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        w: PathBuf,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Record per-phase wall time in the report
        #[arg(long)]
        timing: bool,
    },
}

#[derive(Subcommand)]
enum Suite {
    /// Polynomial identities S1-S4 in Z[L]
    Symbolic {
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        timing: bool,
    },
    /// Sample a generic W over F_q and check N1-N8
    Numeric {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Level::Fast)]
        level: Level,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long, default_value_t = 100)]
        max_retries: u32,
        #[arg(long)]
        save_w: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        timing: bool,
    },
}

fn emit(report: &VerificationReport, out: Option<&PathBuf>) -> Result<(), HarnessError> {
    let text = report.to_json();
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| HarnessError::Io(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<VerificationReport, HarnessError> {
    match cli.command {
        Command::Verify {
            suite: Suite::Symbolic { out, timing },
        } => {
            let report = run_symbolic(timing)?;
            emit(&report, out.as_ref())?;
            Ok(report)
        }
        Command::Verify {
            suite:
                Suite::Numeric {
                    q,
                    seed,
                    level,
                    workers,
                    max_retries,
                    save_w: save_path,
                    out,
                    timing,
                },
        } => {
            let opts = NumericOptions {
                q,
                seed,
                level,
                workers: workers.max(1),
                max_retries,
                timing,
            };
            let (report, sampled) = run_numeric(&opts)?;
            if let Some(path) = save_path {
                save_w(&path, &sampled.w, &sampled.genericity.histogram)?;
            }
            emit(&report, out.as_ref())?;
            Ok(report)
        }
        Command::Count {
            q,
            w,
            workers,
            out,
            timing,
        } => {
            numeric_field(q)?;
            let system = load_w(&w, workers.max(1))?;
            if system.q() != q {
                return Err(HarnessError::Usage(format!(
                    "--q {q} does not match the saved system's q={}",
                    system.q()
                )));
            }
            let report = census_report(&system, Level::Fast, workers.max(1), timing)?;
            emit(&report, out.as_ref())?;
            Ok(report)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::PASS };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let code = match run(cli) {
        Ok(report) if report.verdict => exit::PASS,
        Ok(report) => {
            for c in report.checks.iter().filter(|c| !c.pass) {
                eprintln!("FAILED {}: {} != {}", c.name, c.lhs, c.rhs);
            }
            exit::CHECK_FAILED
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
