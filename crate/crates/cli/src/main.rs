use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use neutral_asymp::runner::{self, RunOverrides};

/// Simulate neutral difference equations and check when their solutions are
/// asymptotically polynomial.
#[derive(Parser)]
#[command(name = "neutral-asymp", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment config and write trace.csv, decomposition.json and verdict.json.
    Run {
        config: PathBuf,
        /// Override the config's horizon N.
        #[arg(long)]
        horizon: Option<i64>,
        /// Output directory (default: the config's `output`, else `out/` next to the config).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List every catalog identifier with its parameters.
    Catalog,
    /// Run the bundled fixtures twice and check exit codes and byte-identical outputs.
    Selftest {
        /// Scratch directory for fixture outputs (default: a temporary directory).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run {
            config,
            horizon,
            out,
        } => {
            let report = runner::run_path(
                &config,
                &RunOverrides {
                    horizon,
                    out_dir: out,
                },
            );
            let code = report.exit_code();
            if code == runner::EXIT_PASS {
                println!("pass: {}", report.message);
            } else {
                eprintln!("exit {code}: {}", report.message);
            }
            if let Some(dir) = &report.out_dir {
                if code != runner::EXIT_CONFIG {
                    println!("outputs in {}", dir.display());
                }
            }
            ExitCode::from(code as u8)
        }
        Command::Catalog => {
            print!("{}", runner::catalog_text());
            ExitCode::SUCCESS
        }
        Command::Selftest { out } => {
            let tmp;
            let scratch = match out {
                Some(dir) => dir,
                None => match tempfile::tempdir() {
                    Ok(dir) => {
                        tmp = dir;
                        tmp.path().to_path_buf()
                    }
                    Err(e) => {
                        eprintln!("cannot create scratch directory: {e}");
                        return ExitCode::from(1);
                    }
                },
            };
            if let Err(e) = std::fs::create_dir_all(&scratch) {
                eprintln!("cannot create {}: {e}", scratch.display());
                return ExitCode::from(1);
            }
            let lines = match runner::selftest(&scratch) {
                Ok(lines) => lines,
                Err(e) => {
                    eprintln!("selftest aborted: {e}");
                    return ExitCode::from(1);
                }
            };
            let mut ok = true;
            for line in &lines {
                ok &= line.pass();
                println!(
                    "{} {:<30} expected exit {} got {} deterministic={}",
                    if line.pass() { "PASS" } else { "FAIL" },
                    line.fixture,
                    line.expected,
                    line.got,
                    line.deterministic
                );
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
