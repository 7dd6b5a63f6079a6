//! `avp`: solve, analyze, and reproduce the reference experiment from the
//! command line.
//!
//! Exit codes: 0 success, 1 invalid input, 2 numeric failure, 3 grid
//! misalignment at a segment break point, 4 reference table not reproduced.

mod analyze;
mod error;
mod problem;
mod solve;
mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use avp_core::{CorrectorSolver, Execution, MethodKind, MethodSpec, RkTableau};

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "avp", version, about = "One-step ODE solvers for conditions anywhere in the interval")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve the problem described by a JSON problem file.
    Solve(solve::SolveArgs),
    /// Evaluate stability, convergence, Lipschitz or order diagnostics.
    Analyze(analyze::AnalyzeArgs),
    /// Reproduce the reference table (RK4, h = 0.1, both directions).
    Table1(table::Table1Args),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodName {
    ExplicitEuler,
    EulerPc,
    TrapezoidPc,
    Rk4,
    GeneralRk,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SolverName {
    FixedPoint,
    Newton,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExecName {
    Sequential,
    Parallel,
}

impl From<ExecName> for Execution {
    fn from(e: ExecName) -> Self {
        match e {
            ExecName::Sequential => Execution::Sequential,
            ExecName::Parallel => Execution::Parallel,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct MethodArgs {
    #[arg(long, value_enum, default_value = "rk4")]
    pub method: MethodName,
    /// JSON tableau for general-rk: {"weights", "denominator"?, "offsets", "coefficients"}.
    #[arg(long, value_name = "FILE")]
    pub tableau: Option<PathBuf>,
    /// Corrector stopping tolerance (predictor-corrector methods).
    #[arg(long, default_value_t = avp_core::steppers::DEFAULT_CORRECTOR_TOL)]
    pub corrector_tol: f64,
    #[arg(long, default_value_t = avp_core::steppers::DEFAULT_CORRECTOR_MAX_ITERS)]
    pub max_iters: usize,
    #[arg(long, value_enum, default_value = "fixed-point")]
    pub solver: SolverName,
}

impl MethodArgs {
    pub fn spec(&self) -> Result<MethodSpec, CliError> {
        let kind = match self.method {
            MethodName::ExplicitEuler => MethodKind::ExplicitEuler,
            MethodName::EulerPc => MethodKind::EulerPc,
            MethodName::TrapezoidPc => MethodKind::TrapezoidPc,
            MethodName::Rk4 => MethodKind::ClassicalRk4,
            MethodName::GeneralRk => {
                let path = self
                    .tableau
                    .as_ref()
                    .ok_or_else(|| CliError::Input("--method general-rk requires --tableau FILE".into()))?;
                let text = std::fs::read_to_string(path).map_err(|e| CliError::input(&path.display().to_string(), e))?;
                let tableau: RkTableau =
                    serde_json::from_str(&text).map_err(|e| CliError::input(&path.display().to_string(), e))?;
                MethodKind::GeneralRk(tableau)
            }
        };
        if self.tableau.is_some() && self.method != MethodName::GeneralRk {
            return Err(CliError::Input("--tableau is only used with --method general-rk".into()));
        }
        let solver = match self.solver {
            SolverName::FixedPoint => CorrectorSolver::FixedPoint,
            SolverName::Newton => CorrectorSolver::Newton,
        };
        let spec = MethodSpec::new(kind)
            .with_tolerance(self.corrector_tol)
            .with_max_iters(self.max_iters)
            .with_solver(solver);
        spec.validate()?;
        Ok(spec)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // Usage errors are input errors; keep 2 reserved for numeric failures.
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let outcome = match &cli.command {
        Command::Solve(args) => solve::run(args),
        Command::Analyze(args) => analyze::run(args),
        Command::Table1(args) => table::run(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("avp: error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
