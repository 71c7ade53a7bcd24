//! Parameter sweeps and validation studies, with their configuration
//! and CSV output.

pub mod config;
pub mod csv;
mod network;
mod position;
mod sweep;
mod validation;

pub use config::{parse_grid, MPolicy, ModelSelector, SweepConfig};
pub use csv::{format_g12, Cell, Table};
pub use network::{run_network, NetworkReport};
pub use position::{position_average, position_table, PositionAverage};
pub use sweep::{optima_table, sweep_epsilon, transfer_curve, EpsilonOptimum, EpsilonSweep};
pub use validation::{validate_elimination, ElimRow, EliminationReport, ValidationOptions};

use crate::algebra::{partial_trace, HilbertSpace, StateVector};
use crate::entanglement::{concurrence, eof_from_concurrence};
use crate::error::{Error, Result};
use crate::models::{
    build_effective_me, build_full_me, build_transformed_me, dark_state, two_mode_squeezed_vacuum, PhysicalParams,
    SqueezingParams,
};
use crate::steady::{steady_state_direct, steady_state_evolve, EvolveOptions, SteadyStateReport};

/// Squeezing parameters for photon number `n` under `policy`.
pub fn squeezing_for(policy: MPolicy, n: f64) -> Result<SqueezingParams> {
    match policy {
        MPolicy::Perfect => SqueezingParams::perfect(n),
        MPolicy::Explicit(m) => SqueezingParams::new(n, m),
    }
}

/// Steady state of the symmetric effective model at coupling `g` with
/// Γ = ε g²/κ.
pub fn effective_steady_state(g: f64, kappa: f64, epsilon: f64, sq: &SqueezingParams) -> Result<SteadyStateReport> {
    let phys = PhysicalParams::from_epsilon(g, kappa, epsilon)?;
    steady_state_direct(&build_effective_me(&phys, sq)?)
}

/// |gg⟩ ⊗ two-mode squeezed vacuum, the seed for cavity-model evolution.
pub fn cavity_seed(n: f64, n_max: usize) -> Result<crate::algebra::DensityMatrix> {
    let atoms = StateVector::basis(HilbertSpace::new(vec![2, 2])?, &[0, 0])?;
    Ok(atoms.tensor(&two_mode_squeezed_vacuum(n, n_max)?).to_density())
}

/// Runs one model at the first grid point of `cfg` and reports the
/// atomic state.
pub fn steady_point(cfg: &SweepConfig) -> Result<Table> {
    let (eps, n) = (cfg.epsilon[0], cfg.n[0]);
    let n_max = cfg.n_max[0];
    let sq = squeezing_for(cfg.m_policy, n)?;
    let phys = PhysicalParams::from_epsilon(cfg.g, cfg.kappa, eps)?;
    let opts = EvolveOptions { dt: None, tol: cfg.tol, max_steps: cfg.max_steps };
    let report = match cfg.model {
        ModelSelector::Effective => steady_state_direct(&build_effective_me(&phys, &sq)?)?,
        ModelSelector::Full => {
            steady_state_evolve(&build_full_me(&phys, &sq, n_max)?, &cavity_seed(n, n_max)?, &opts)?
        }
        ModelSelector::Transformed => {
            let l = build_transformed_me(&phys, &sq, n_max)?;
            let seed = StateVector::basis(l.space().clone(), &[0, 0, 0, 0])?.to_density();
            steady_state_evolve(&l, &seed, &opts)?
        }
        ModelSelector::Network => return Ok(run_network(cfg)?.table),
    };
    report.check_truncation(cfg.tail_limit)?;
    let atoms = if report.state.space().num_factors() == 4 {
        partial_trace(&report.state, &[0, 1])?
    } else {
        report.state.clone()
    };
    let c = concurrence(&atoms)?;
    let mut table = Table::new(&[
        "model",
        "epsilon",
        "N",
        "M",
        "g",
        "kappa",
        "gamma_sp",
        "n_max",
        "method",
        "steps",
        "residual",
        "truncation_tail",
        "concurrence",
        "eof",
        "dark_fidelity",
    ]);
    let n_max_cell: Cell = if cfg.model == ModelSelector::Effective { "".into() } else { n_max.into() };
    table.push(vec![
        cfg.model.to_string().into(),
        eps.into(),
        n.into(),
        sq.m().into(),
        cfg.g.into(),
        cfg.kappa.into(),
        phys.gamma_sp.into(),
        n_max_cell,
        format!("{:?}", report.method).to_lowercase().into(),
        report.steps.into(),
        report.residual.into(),
        report.truncation_tail.map(Cell::from).unwrap_or_else(|| "".into()),
        c.into(),
        eof_from_concurrence(c).into(),
        atoms.fidelity_pure(&dark_state(n)?)?.into(),
    ])?;
    Ok(table)
}

fn require_effective(cfg: &SweepConfig, what: &str) -> Result<()> {
    if cfg.model != ModelSelector::Effective {
        return Err(Error::Config { line: 0, reason: format!("{what} runs on the effective model, not '{}'", cfg.model) });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn steady_point_effective_dark_state() {
        let mut cfg = SweepConfig::default();
        cfg.apply_overrides(&["epsilon=0", "n=1"]).unwrap();
        let t = steady_point(&cfg).unwrap();
        let row = &t.rows()[0];
        let eof = t.column("eof").unwrap();
        assert_eq!(row[eof], Cell::Num(crate::entanglement::eof_two_qubit(&dark_state(1.0).unwrap().to_density()).unwrap()));
        let fid = t.column("dark_fidelity").unwrap();
        match row[fid] {
            Cell::Num(f) => assert!(f > 1.0 - 1e-10),
            _ => panic!("fidelity cell"),
        }
    }

    #[test]
    fn steady_point_full_model_reports_tail() {
        let mut cfg = SweepConfig::default();
        cfg.apply_overrides(&["model=full", "epsilon=0", "n=0.3", "n_max=3", "g=0.1"]).unwrap();
        assert!(matches!(steady_point(&cfg), Err(Error::TruncationTail { .. })));
        cfg.apply_overrides(&["tail_limit=0.5"]).unwrap();
        let t = steady_point(&cfg).unwrap();
        assert_eq!(t.len(), 1);
    }

    #[test]
    fn transformed_model_needs_ideal_conditions() {
        let mut cfg = SweepConfig::default();
        cfg.apply_overrides(&["model=transformed", "epsilon=0.1", "n=0.3", "n_max=3"]).unwrap();
        assert!(matches!(steady_point(&cfg), Err(Error::ImperfectSqueezing(_))));
        cfg.apply_overrides(&["epsilon=0", "tail_limit=1"]).unwrap();
        let t = steady_point(&cfg).unwrap();
        match t.rows()[0][t.column("dark_fidelity").unwrap()] {
            Cell::Num(f) => assert!(f > 1.0 - 1e-6, "{f}"),
            _ => panic!("fidelity cell"),
        }
    }
}
