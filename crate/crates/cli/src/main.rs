//! `lhqpf`: command-line access to every pipeline stage. Each subcommand
//! prints one JSON report (schema-versioned) to stdout or `--out`.

mod commands;
mod config;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::config::Config;
use crate::report::Failure;

#[derive(Parser, Debug)]
#[command(
    name = "lhqpf",
    version,
    about = "Circuit-to-Hamiltonian, SAT/LH/QPF reductions and partition-function estimation"
)]
pub struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// TOML file with coefficient and guard settings.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// RNG seed.
    #[arg(long, global = true, env = "LHQPF_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Include wall-clock timing (makes reports non-reproducible).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// DIMACS CNF utilities.
    #[command(subcommand)]
    Cnf(CnfCommand),
    /// Build the SAT verification circuit for a CNF file.
    Verifier {
        path: PathBuf,
        /// Include the elementary circuit JSON.
        #[arg(long)]
        emit_circuit: bool,
    },
    /// Clock schedules: legal-state table and condition checks.
    Clock {
        #[arg(long, value_enum, default_value_t = ScheduleArg::Dual)]
        schedule: ScheduleArg,
        #[arg(long, default_value_t = 3)]
        a: usize,
        #[arg(long, default_value_t = 2)]
        d: usize,
        /// Length T of the unary clock.
        #[arg(long, default_value_t = 10)]
        t: usize,
        /// Check the forward/backward/pause conditions exhaustively.
        #[arg(long)]
        verify: bool,
        /// Print the table as CSV instead of a JSON report.
        #[arg(long)]
        csv: bool,
    },
    /// Circuit JSON → canonical form → local Hamiltonian.
    Ham {
        path: PathBuf,
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long)]
        emit_ham: bool,
    },
    /// Ground energy (and optionally Z or a decision) of a Hamiltonian JSON.
    Spectrum {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        #[arg(long)]
        beta: Option<f64>,
        #[arg(long, requires = "e_no")]
        e_yes: Option<f64>,
        #[arg(long, requires = "e_yes")]
        e_no: Option<f64>,
    },
    /// SAT reductions from a CNF file.
    Reduce {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = ReduceTarget::Trivial)]
        to: ReduceTarget,
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, default_value_t = 0.125)]
        epsilon: f64,
        #[arg(long)]
        emit_ham: bool,
    },
    /// Shifted-grid partition-function estimate of a Hamiltonian JSON.
    Qpf {
        path: PathBuf,
        #[arg(long)]
        beta: f64,
        #[arg(long, default_value_t = 1)]
        c: u32,
        #[arg(long, value_enum, default_value_t = BackendArg::Oracle)]
        backend: BackendArg,
        #[arg(long, default_value_t = 0.99)]
        confidence: f64,
        /// Also compute Z exactly and report the relative error.
        #[arg(long)]
        compare_exact: bool,
        /// Count every boundary leak (oracle backend).
        #[arg(long)]
        adversarial: bool,
        /// Include every interval count in the report.
        #[arg(long)]
        record_counts: bool,
        /// Run sequentially even when built with the parallel feature.
        #[arg(long)]
        sequential: bool,
    },
    /// CNF → verifier → canonical circuit → (d+1)-local Hamiltonian.
    Pipeline {
        path: PathBuf,
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, default_value_t = 0.125)]
        epsilon: f64,
        #[arg(long)]
        emit_ham: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum CnfCommand {
    /// Check that every clause has width at most k.
    Validate {
        path: PathBuf,
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
    /// Brute-force satisfiability (n ≤ 24).
    Solve { path: PathBuf },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ScheduleArg {
    Unary,
    Johnson,
    Dual,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum MethodArg {
    Dense,
    Lanczos,
    Auto,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ReduceTarget {
    /// Diagonal clause penalties.
    Trivial,
    /// Circuit-based (d+1)-local Hamiltonian.
    Lh,
    /// Trivial reduction followed by LH → QPF.
    Qpf,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum BackendArg {
    Exact,
    Oracle,
    Statevector,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = std::time::Instant::now();
    let result = Config::load(cli.config.as_deref())
        .map_err(Failure::Io)
        .and_then(|cfg| commands::run(&cli, &cfg));
    match result {
        Ok(outcome) => {
            let mut report = outcome.report;
            if cli.timing {
                report.timing = Some(report::Timing {
                    wall_ms: started.elapsed().as_secs_f64() * 1e3,
                });
            }
            let text = match &outcome.raw {
                Some(raw) => raw.clone(),
                None => report.to_pretty(),
            };
            if let Err(e) = report::emit(cli.out.as_deref(), &text) {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            ExitCode::from(outcome.exit)
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
