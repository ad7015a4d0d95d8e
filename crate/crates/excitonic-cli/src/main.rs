//! Command-line surface of the excitonic toolkit: phase decompositions, gate
//! construction and verification, iSWAP timing solutions, parameter sweeps,
//! and machine-readable reports.
//!
//! Exit codes: 0 success, 2 invalid config, 3 numerical-contract failure,
//! 4 verification mismatch. Errors are emitted as a JSON object on stderr.

mod commands;
mod config;
mod output;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Engine(excitonic::Error),
}

impl CliError {
    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }

    pub fn message(&self) -> String {
        match self {
            CliError::Config(m) => m.clone(),
            CliError::Engine(e) => e.to_string(),
        }
    }

    fn kind(&self) -> &'static str {
        use excitonic::Error as E;
        match self {
            CliError::Config(_) => "invalid-config",
            CliError::Engine(e) => match e {
                E::InvalidArgument(_) => "invalid-argument",
                E::DimensionMismatch { .. } => "dimension-mismatch",
                E::CapacityExceeded { .. } => "capacity-exceeded",
                E::DegenerateDrive => "degenerate-drive",
                E::NotHermitian { .. } => "not-hermitian",
                E::NotUnitary { .. } => "not-unitary",
                E::NoConvergence { .. } => "no-convergence",
                E::NotCyclic { .. } => "not-cyclic",
                E::Accuracy(_) => "accuracy",
                E::RefinementNotConverged { .. } => "refinement-not-converged",
                E::CancellationInfeasible { .. } => "cancellation-infeasible",
                E::CancellationFailed { .. } => "cancellation-failed",
                E::DecompositionMismatch { .. } => "decomposition-mismatch",
            },
        }
    }

    fn exit_code(&self) -> i32 {
        use excitonic::Error as E;
        match self {
            CliError::Config(_) => 2,
            CliError::Engine(e) => match e {
                E::InvalidArgument(_)
                | E::DimensionMismatch { .. }
                | E::CapacityExceeded { .. }
                | E::DegenerateDrive => 2,
                E::NotHermitian { .. }
                | E::NotUnitary { .. }
                | E::NoConvergence { .. }
                | E::NotCyclic { .. }
                | E::Accuracy(_)
                | E::RefinementNotConverged { .. }
                | E::CancellationInfeasible { .. } => 3,
                E::CancellationFailed { .. } | E::DecompositionMismatch { .. } => 4,
            },
        }
    }
}

impl From<excitonic::Error> for CliError {
    fn from(e: excitonic::Error) -> Self {
        CliError::Engine(e)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Parser)]
#[command(
    name = "excitonic",
    version,
    about = "Exciton-qubit dynamics, geometric phases and gate synthesis for coupled quantum dots"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// JSON config document for the subcommand
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Override one config value by dotted path, e.g. --set drive.amplitude=0.2
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    sets: Vec<String>,

    /// Write the primary output to a file instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Output format (default: json; sweep defaults to csv)
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose one cyclic evolution into total, dynamic and geometric phase
    Phase,
    /// Propagate the driven dot or the coupled pair, optionally with a trajectory dump
    Evolve,
    /// Emit one gate matrix in closed form
    Gate,
    /// Solve the commensurate-timing constraints for an exact iSWAP
    IswapSchedule,
    /// Compose the seven-gate sequence and verify it against standard CNOT
    CnotVerify,
    /// Evaluate a quantity over a parameter grid, deterministically
    Sweep,
}

fn run(cli: Cli) -> Result<(), CliError> {
    let mut doc = config::load(cli.config.as_deref())?;
    config::apply_overrides(&mut doc, &cli.sets)?;
    let out = cli.out.as_deref();

    match cli.command {
        Command::Phase => {
            let text = commands::cmd_phase(doc, cli.format.unwrap_or(Format::Json))?;
            output::emit(out, &text)
        }
        Command::Evolve => {
            let text = commands::cmd_evolve(doc, cli.format.unwrap_or(Format::Json))?;
            output::emit(out, &text)
        }
        Command::Gate => {
            let text = commands::cmd_gate(doc, cli.format.unwrap_or(Format::Json))?;
            output::emit(out, &text)
        }
        Command::IswapSchedule => {
            let result = commands::cmd_iswap_schedule(doc, cli.format.unwrap_or(Format::Json))?;
            if let Some((path, content)) = &result.candidates_csv {
                output::emit(Some(std::path::Path::new(path)), content)?;
            }
            output::emit(out, &result.primary)
        }
        Command::CnotVerify => {
            let text = commands::cmd_cnot_verify(doc, cli.format.unwrap_or(Format::Json))?;
            output::emit(out, &text)
        }
        Command::Sweep => {
            let text = commands::cmd_sweep(doc, cli.format.unwrap_or(Format::Csv))?;
            output::emit(out, &text)
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => {}
        Err(e) => {
            let report = json!({
                "error": { "kind": e.kind(), "message": e.message() }
            });
            eprintln!("{}", serde_json::to_string_pretty(&report).expect("error JSON"));
            std::process::exit(e.exit_code());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use excitonic::Error as E;

    #[test]
    fn exit_codes_by_error_class() {
        assert_eq!(CliError::config("x").exit_code(), 2);
        assert_eq!(CliError::Engine(E::DegenerateDrive).exit_code(), 2);
        assert_eq!(
            CliError::Engine(E::CapacityExceeded { dim: 8192, max: 4096 }).exit_code(),
            2
        );
        assert_eq!(
            CliError::Engine(E::NotCyclic {
                overlap: 0.5,
                tolerance: 1e-8
            })
            .exit_code(),
            3
        );
        assert_eq!(
            CliError::Engine(E::Accuracy("drift".into())).exit_code(),
            3
        );
        assert_eq!(
            CliError::Engine(E::CancellationInfeasible { margin: -0.1 }).exit_code(),
            3
        );
        assert_eq!(
            CliError::Engine(E::DecompositionMismatch {
                fidelity: 0.2,
                fidelity_alt: 0.1,
                elements: String::new()
            })
            .exit_code(),
            4
        );
        assert_eq!(
            CliError::Engine(E::CancellationFailed {
                net_dynamic: 0.3,
                total: 0.0,
                expected_total: 0.1,
                loops: vec![]
            })
            .exit_code(),
            4
        );
    }

    #[test]
    fn error_kinds_are_kebab_case() {
        assert_eq!(CliError::Engine(E::DegenerateDrive).kind(), "degenerate-drive");
        assert_eq!(CliError::config("x").kind(), "invalid-config");
    }
}
