//! `cosmotime run <scenario.json>`: executes the tasks of a scenario and writes
//! one CSV (and possibly JSON) artifact per task.
//!
//! Exit codes: 0 when every task passes, 1 on input errors, 2 when a bound check,
//! verdict or numerical step fails.

mod output;
mod scenario;
mod tasks;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use output::{Provenance, Sink};
use tasks::{Context, Status};

#[derive(Parser)]
#[command(name = "cosmotime", version, about = "Cosmological time and CMC barrier scenarios")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file.
    Run {
        scenario: PathBuf,
        /// Worker threads (0 uses all cores).
        #[arg(long, default_value_t = 0)]
        threads: usize,
        /// Directory for the artifacts.
        #[arg(long, default_value = ".")]
        out: PathBuf,
        #[arg(long)]
        verbose: bool,
    },
}

fn input_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("input error: {msg}");
    ExitCode::from(1)
}

fn run(path: &Path, threads: usize, out: PathBuf, verbose: bool) -> ExitCode {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return input_error(format!("{}: {e}", path.display())),
    };
    let sc = match scenario::parse(&text) {
        Ok(s) => s,
        Err(e) => return input_error(format!("{}: {e:#}", path.display())),
    };
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
        return input_error(format!("thread pool: {e}"));
    }
    let domain = match sc.domain.as_ref().map(|d| d.build::<f64>()).transpose() {
        Ok(d) => d,
        Err(e) => return input_error(format!("domain: {e}")),
    };
    let prov = Provenance {
        scenario: path.file_name().map_or_else(|| path.display().to_string(), |f| f.to_string_lossy().into_owned()),
        seed: sc.seed,
    };
    let sink = Sink { dir: out, prefix: sc.output.clone() };

    let mut failed = false;
    println!("{:<4} {:<16} {:<6} summary", "#", "task", "status");
    for (index, task) in sc.tasks.iter().enumerate() {
        let cx = Context {
            domain: domain.as_ref(),
            sink: &sink,
            prov: &prov,
            index,
            seed: sc.seed.wrapping_add(0x1_0000 * index as u64),
            verbose,
        };
        if verbose {
            eprintln!("running task {index} ({})", task.name());
        }
        match tasks::run(task, &cx) {
            Ok(o) => {
                let status = match &o.status {
                    Status::Pass => "pass",
                    Status::Fail(_) => "FAIL",
                };
                println!("{:<4} {:<16} {:<6} {}", index, task.name(), status, o.summary);
                if let Status::Fail(why) = &o.status {
                    eprintln!("task {index} ({}) failed: {why}", task.name());
                    failed = true;
                }
                if verbose {
                    for a in &o.artifacts {
                        eprintln!("  wrote {}", a.display());
                    }
                }
            }
            Err(e) => {
                println!("{:<4} {:<16} {:<6} {e:#}", index, task.name(), "ERROR");
                eprintln!("task {index} ({}) failed: {e:#}", task.name());
                failed = true;
            }
        }
    }
    if failed {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run { scenario, threads, out, verbose } => run(&scenario, threads, out, verbose),
    }
}
