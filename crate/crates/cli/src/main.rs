use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use squeezelink::experiments::{
    optima_table, position_table, run_network, squeezing_for, steady_point, sweep_epsilon, transfer_curve,
    validate_elimination, SweepConfig, Table, ValidationOptions,
};
use squeezelink::models::PhysicalParams;
use squeezelink::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "squeezelink", version, about = "Steady-state atomic entanglement from two-mode squeezed light")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Flat key=value configuration file.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// CSV destination; stdout when absent.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// full | transformed | effective | network
    #[arg(long, global = true)]
    model: Option<String>,
    /// Fock truncation per cavity mode, or a comma list for validate-elim.
    #[arg(long, global = true, value_name = "N")]
    n_max: Option<String>,
    /// Residual tolerance for evolution solves.
    #[arg(long, global = true)]
    tol: Option<String>,
    /// Configuration override, applied after the config file.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    set: Vec<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Steady state of one model at the first grid point.
    Steady,
    /// Effective-model EoF over the ε × N grid with per-ε optima.
    SweepEps,
    /// EoF averaged over Gaussian atomic position spread.
    PositionAvg,
    /// Atomic EoF against the EoF of the squeezed light.
    Transfer,
    /// Full versus effective model at g and g/2.
    ValidateElim,
    /// Three-node chain steady state and node-B measurement.
    Network,
}

fn build_config(common: &Common) -> Result<SweepConfig> {
    let mut cfg = match &common.config {
        Some(path) => SweepConfig::load(path)?,
        None => SweepConfig::default(),
    };
    for pair in &common.set {
        cfg.apply_override(pair)?;
    }
    let flags = [("model", &common.model), ("n_max", &common.n_max), ("tol", &common.tol)];
    for (key, value) in flags {
        if let Some(v) = value {
            cfg.set(key, v)?;
        }
    }
    if let Some(out) = &common.out {
        cfg.out = Some(out.clone());
    }
    cfg.validate()?;
    Ok(cfg)
}

fn emit(table: &Table, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(path) => table.write(path),
        None => std::io::stdout()
            .lock()
            .write_all(table.to_csv().as_bytes())
            .map_err(|e| Error::Io(format!("stdout: {e}"))),
    }
}

fn validate(cfg: &SweepConfig) -> Result<Table> {
    let phys = PhysicalParams::from_epsilon(cfg.g, cfg.kappa, cfg.epsilon[0])?;
    let sq = squeezing_for(cfg.m_policy, cfg.n[0])?;
    let opts = ValidationOptions { tol: cfg.tol, max_steps: cfg.max_steps, tail_limit: cfg.tail_limit };
    let report = validate_elimination(&phys, &sq, &cfg.n_max, &opts)?;
    if let Some(ratio) = report.ratio {
        eprintln!("distance ratio g/(g/2): {ratio:.6}");
    }
    if let Some(shift) = report.n_max_shift {
        eprintln!("n_max shift at g: {shift:.3e}");
    }
    report.table()
}

fn run(cli: &Cli) -> Result<()> {
    let cfg = build_config(&cli.common)?;
    let table = match cli.command {
        Command::Steady => steady_point(&cfg)?,
        Command::SweepEps => {
            let sweep = sweep_epsilon(&cfg)?;
            if let Some(path) = &cfg.summary_out {
                optima_table(&sweep.optima)?.write(path)?;
            }
            sweep.table
        }
        Command::PositionAvg => position_table(&cfg)?,
        Command::Transfer => transfer_curve(&cfg)?,
        Command::ValidateElim => validate(&cfg)?,
        Command::Network => run_network(&cfg)?.table,
    };
    emit(&table, cfg.out.as_ref())
}

fn exit_code(e: &Error) -> u8 {
    match e.root() {
        Error::NotConverged { .. } | Error::NonUnique { .. } | Error::NotPositive { .. } => 2,
        Error::TruncationTail { .. } => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn dedicated_flags_override_set() {
        let cli = Cli::parse_from(["squeezelink", "--set", "tol=1e-3", "--tol", "1e-5", "steady"]);
        assert_eq!(build_config(&cli.common).unwrap().tol, 1e-5);
    }

    #[test]
    fn exit_codes_follow_root_cause() {
        let tail = Error::TruncationTail { tail: 1.0, limit: 0.0 }.at("x");
        assert_eq!(exit_code(&tail), 3);
        assert_eq!(exit_code(&Error::NotConverged { steps: 1, residual: 1.0 }), 2);
        assert_eq!(exit_code(&Error::Config { line: 2, reason: "r".into() }), 1);
    }
}
