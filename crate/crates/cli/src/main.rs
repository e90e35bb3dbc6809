// Copyright 2026 The qlbm Authors
// SPDX-License-Identifier: Apache-2.0

//! `qlbm` command-line driver.
//!
//! Exit codes: 0 when every run passes, 1 when a run is FAILED or hits a
//! runtime error, 2 on configuration errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qlbm_core::artifacts::{spy_csv, write_artifacts};
use qlbm_core::config::{CaseConfig, Engine};
use qlbm_core::gates::gate_count_estimate;
use qlbm_core::runner::{run_case, CaseSetup, Status};
use qlbm_core::{d2q9, Error};

#[derive(Parser)]
#[command(
    name = "qlbm",
    version,
    about = "Quantum lattice Boltzmann benchmark runner"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one or more case configs; several configs run in parallel.
    Run {
        #[arg(long = "config", required = true)]
        configs: Vec<PathBuf>,
        /// Overrides the `engine` key.
        #[arg(long, value_enum)]
        engine: Option<EngineArg>,
        /// Overrides `out_dir`; with several configs each case gets a subdirectory.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Print closed-form gate-count estimates for an `n`-qubit register.
    EstimateGates {
        #[arg(long)]
        qubits: u32,
    },
    /// Write an operator's sparsity pattern as `row,col,value`.
    Spy {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_enum, default_value = "streaming")]
        operator: OperatorArg,
        /// Output file; defaults to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Quantum,
    ClassicalLinear,
    ClassicalFull,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Quantum => Engine::Quantum,
            EngineArg::ClassicalLinear => Engine::ClassicalLinear,
            EngineArg::ClassicalFull => Engine::ClassicalFull,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OperatorArg {
    Streaming,
    Collision,
}

const EXIT_FAILED: u8 = 1;
const EXIT_CONFIG: u8 = 2;

fn load(path: &Path) -> Result<CaseConfig, u8> {
    CaseConfig::load(path).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        EXIT_CONFIG
    })
}

fn run_one(mut cfg: CaseConfig, label: &str) -> u8 {
    let out = match run_case(&cfg) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {label}: {e}");
            return if matches!(e, Error::Config(_)) {
                EXIT_CONFIG
            } else {
                EXIT_FAILED
            };
        }
    };
    let r = &out.report;
    let dev = r
        .max_deviation
        .map_or("n/a".to_string(), |d| format!("{d:.3e}"));
    println!(
        "{label}: {} {}x{} engine={} steps={} l2={:.4e} max_dev={dev} status={:?}",
        r.case.as_str(),
        r.nx,
        r.ny,
        r.engine.tag(),
        r.steps,
        r.l2_error,
        r.status
    );
    if let Some(dir) = cfg.out_dir.take() {
        match write_artifacts(&out, &d2q9(), &dir) {
            Ok(files) => println!("{label}: wrote {} files to {}", files.len(), dir.display()),
            Err(e) => {
                eprintln!("error: {label}: {e}");
                return EXIT_FAILED;
            }
        }
    }
    match r.status {
        Status::Pass => 0,
        Status::Failed => EXIT_FAILED,
    }
}

fn run(configs: &[PathBuf], engine: Option<EngineArg>, out_dir: Option<PathBuf>) -> u8 {
    let mut loaded = Vec::new();
    for path in configs {
        let mut cfg = match load(path) {
            Ok(cfg) => cfg,
            Err(code) => return code,
        };
        if let Some(e) = engine {
            cfg.engine = e.into();
        }
        if let Some(dir) = &out_dir {
            cfg.out_dir = Some(if configs.len() > 1 {
                let stem = path
                    .file_stem()
                    .map_or("case".into(), |s| s.to_string_lossy().into_owned());
                dir.join(stem)
            } else {
                dir.clone()
            });
        }
        loaded.push((path.display().to_string(), cfg));
    }
    std::thread::scope(|s| {
        let handles: Vec<_> = loaded
            .into_iter()
            .map(|(label, cfg)| s.spawn(move || run_one(cfg, &label)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or(EXIT_FAILED))
            .max()
            .unwrap_or(0)
    })
}

fn estimate(qubits: u32) -> u8 {
    match gate_count_estimate(qubits) {
        Ok(e) => {
            println!(
                "{}",
                serde_json::to_string_pretty(&e).expect("plain struct")
            );
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_CONFIG
        }
    }
}

fn spy(config: &Path, operator: OperatorArg, out: Option<PathBuf>) -> u8 {
    let cfg = match load(config) {
        Ok(cfg) => cfg,
        Err(code) => return code,
    };
    let setup = match CaseSetup::new(&cfg) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_CONFIG;
        }
    };
    let op = match operator {
        OperatorArg::Streaming => &setup.streaming,
        OperatorArg::Collision => &setup.collision,
    };
    let csv = spy_csv(op);
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, csv) {
                eprintln!("error: {}: {e}", path.display());
                return EXIT_FAILED;
            }
        }
        None => print!("{csv}"),
    }
    0
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Run {
            configs,
            engine,
            out_dir,
        } => run(&configs, engine, out_dir),
        Command::EstimateGates { qubits } => estimate(qubits),
        Command::Spy {
            config,
            operator,
            out,
        } => spy(&config, operator, out),
    };
    ExitCode::from(code)
}
