use super::{squeezing_for, Cell, SweepConfig, Table};
use crate::algebra::{hermitian_eigen, DensityMatrix, StateVector};
use crate::entanglement::{eof_two_qubit, entanglement_entropy};
use crate::error::{Error, Result};
use crate::models::{build_network_me, network_dark_state, PhysicalParams};
use crate::protocols::{measure_node_b, NodeBasis, NodeOutcome};
use crate::steady::steady_state_direct;

/// States with top eigenvalue above 1 − PURITY_TOL are treated as pure.
const PURITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct NetworkReport {
    pub n: f64,
    pub state: DensityMatrix,
    pub fidelity: f64,
    /// Entropies across A|(BC) and (AB)|C; `None` for mixed states.
    pub entropy_a: Option<f64>,
    pub entropy_c: Option<f64>,
    pub outcomes: Vec<NodeOutcome>,
    pub residual: f64,
    pub table: Table,
}

fn dominant_vector(rho: &DensityMatrix) -> Result<Option<StateVector>> {
    let (values, vectors) = hermitian_eigen(rho.matrix());
    let top = values.len() - 1;
    if values[top] < 1.0 - PURITY_TOL {
        return Ok(None);
    }
    StateVector::normalized(rho.space().clone(), vectors.column(top).into_owned()).map(Some)
}

/// Steady state of the three-node chain at N = `cfg.n[0]`, both links
/// driven alike, followed by a Bell-type measurement of node B.
pub fn run_network(cfg: &SweepConfig) -> Result<NetworkReport> {
    let (eps, n) = (cfg.epsilon[0], cfg.n[0]);
    let phys = PhysicalParams::from_epsilon(cfg.g, cfg.kappa, eps)?;
    let sq = squeezing_for(cfg.m_policy, n)?;
    let report = steady_state_direct(&build_network_me(&phys, [sq, sq], cfg.ideal)?)?;
    let state = report.state;
    let fidelity = state.fidelity_pure(&network_dark_state(n)?)?;
    let (entropy_a, entropy_c) = match dominant_vector(&state)? {
        Some(psi) => (Some(entanglement_entropy(&psi, &[0])?), Some(entanglement_entropy(&psi, &[2])?)),
        None => (None, None),
    };
    let outcomes = measure_node_b(&state, &NodeBasis::bell())?;
    let mut table = Table::new(&[
        "N",
        "epsilon",
        "ideal",
        "fidelity",
        "entropy_a_bc",
        "entropy_ab_c",
        "outcome",
        "probability",
        "eof_ac",
    ]);
    let opt = |v: Option<f64>| v.map(Cell::from).unwrap_or_else(|| "".into());
    for o in &outcomes {
        let eof = o.post_state.as_ref().map(eof_two_qubit).transpose()?;
        table.push(vec![
            n.into(),
            eps.into(),
            cfg.ideal.into(),
            fidelity.into(),
            opt(entropy_a),
            opt(entropy_c),
            o.label.clone().into(),
            o.probability.into(),
            opt(eof),
        ])?;
    }
    if !fidelity.is_finite() {
        return Err(Error::InvalidState(format!("network fidelity {fidelity}")));
    }
    Ok(NetworkReport { n, state, fidelity, entropy_a, entropy_c, outcomes, residual: report.residual, table })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entanglement::binary_entropy;

    fn config(overrides: &[&str]) -> SweepConfig {
        let mut cfg = SweepConfig::default();
        cfg.apply_overrides(overrides).unwrap();
        cfg
    }

    #[test]
    fn ideal_network_at_one_photon() {
        let r = run_network(&config(&["model=network", "n=1", "ideal=true", "epsilon=0.1"])).unwrap();
        assert!(r.fidelity > 1.0 - 1e-8);
        let h = binary_entropy(2.0 / 3.0);
        assert!((r.entropy_a.unwrap() - h).abs() < 1e-8);
        assert!((r.entropy_c.unwrap() - h).abs() < 1e-8);
        let mut success = 0.0;
        for o in r.outcomes.iter().filter(|o| o.label.starts_with("psi")) {
            assert!((o.probability - 2.0 / 9.0).abs() < 1e-9);
            assert!((eof_two_qubit(o.post_state.as_ref().unwrap()).unwrap() - 1.0).abs() < 1e-8);
            success += o.probability;
        }
        assert!((success - 4.0 / 9.0).abs() < 1e-9);
        assert_eq!(r.table.len(), 4);
    }

    #[test]
    fn vacuum_gives_no_entanglement() {
        let r = run_network(&config(&["model=network", "n=0", "ideal=true", "epsilon=0"])).unwrap();
        assert!(r.entropy_a.unwrap().abs() < 1e-10);
        assert!(r.entropy_c.unwrap().abs() < 1e-10);
        for o in &r.outcomes {
            if let Some(post) = &o.post_state {
                assert!(eof_two_qubit(post).unwrap() < 1e-10);
            }
        }
    }

    #[test]
    fn emission_mixes_the_state() {
        let r = run_network(&config(&["model=network", "n=1", "epsilon=0.1"])).unwrap();
        assert!(r.fidelity < 0.99);
        assert!(r.entropy_a.is_none());
        let col = r.table.column("entropy_a_bc").unwrap();
        assert_eq!(r.table.rows()[0][col], Cell::Text(String::new()));
    }
}
