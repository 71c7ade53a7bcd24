use super::{cavity_seed, Table};
use crate::algebra::partial_trace;
use crate::error::{Error, Result};
use crate::models::{build_effective_me, build_full_me, PhysicalParams, SqueezingParams};
use crate::steady::{steady_state_direct, steady_state_evolve, EvolveOptions, DEFAULT_TAIL_LIMIT};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationOptions {
    pub tol: f64,
    pub max_steps: usize,
    pub tail_limit: f64,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        let evolve = EvolveOptions::default();
        Self { tol: evolve.tol, max_steps: evolve.max_steps, tail_limit: DEFAULT_TAIL_LIMIT }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElimRow {
    pub g: f64,
    pub gamma_sp: f64,
    pub n_max: usize,
    /// Trace distance between the full-model atomic marginal and the
    /// effective steady state.
    pub distance: f64,
    pub tail: f64,
    pub steps: usize,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EliminationReport {
    pub rows: Vec<ElimRow>,
    /// distance(g) / distance(g/2) at the largest n_max.
    pub ratio: Option<f64>,
    /// |distance(n_max) − distance(previous n_max)| at coupling g.
    pub n_max_shift: Option<f64>,
}

impl EliminationReport {
    pub fn table(&self) -> Result<Table> {
        let mut t = Table::new(&["g", "gamma_sp", "n_max", "distance", "truncation_tail", "steps", "residual"]);
        for r in &self.rows {
            t.push(vec![
                r.g.into(),
                r.gamma_sp.into(),
                r.n_max.into(),
                r.distance.into(),
                r.tail.into(),
                r.steps.into(),
                r.residual.into(),
            ])?;
        }
        Ok(t)
    }
}

fn compare(phys: &PhysicalParams, sq: &SqueezingParams, n_max: usize, opts: &ValidationOptions) -> Result<ElimRow> {
    let evolve = EvolveOptions { dt: None, tol: opts.tol, max_steps: opts.max_steps };
    let full = steady_state_evolve(&build_full_me(phys, sq, n_max)?, &cavity_seed(sq.n(), n_max)?, &evolve)?;
    full.check_truncation(opts.tail_limit)?;
    let effective = steady_state_direct(&build_effective_me(phys, sq)?)?;
    let atoms = partial_trace(&full.state, &[0, 1])?;
    Ok(ElimRow {
        g: phys.g(),
        gamma_sp: phys.gamma_sp,
        n_max,
        distance: atoms.trace_distance(&effective.state)?,
        tail: full.truncation_tail.unwrap_or(0.0),
        steps: full.steps,
        residual: full.residual,
    })
}

/// Full-model versus effective-model atomic steady states at coupling
/// g and g/2. Γ is scaled by 1/4 at g/2 so that ε = Γκ/g² is unchanged.
pub fn validate_elimination(
    phys: &PhysicalParams,
    sq: &SqueezingParams,
    n_max_list: &[usize],
    opts: &ValidationOptions,
) -> Result<EliminationReport> {
    if n_max_list.is_empty() {
        return Err(Error::InvalidParameter("n_max list is empty".into()));
    }
    let half = PhysicalParams::new(phys.g_a / 2.0, phys.g_b / 2.0, phys.kappa, phys.gamma_sp / 4.0)?;
    let mut rows = Vec::with_capacity(2 * n_max_list.len());
    for p in [phys, &half] {
        for &n_max in n_max_list {
            rows.push(compare(p, sq, n_max, opts).map_err(|e| e.at(format!("g={} n_max={n_max}", p.g())))?);
        }
    }
    let k = n_max_list.len();
    let (at_g, at_half) = (rows[k - 1].distance, rows[2 * k - 1].distance);
    let ratio = (at_half > 0.0).then(|| at_g / at_half);
    let n_max_shift = (k > 1).then(|| (rows[k - 1].distance - rows[k - 2].distance).abs());
    Ok(EliminationReport { rows, ratio, n_max_shift })
}
