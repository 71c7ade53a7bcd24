use super::{effective_steady_state, require_effective, squeezing_for, SweepConfig, Table};
use crate::algebra::{CMatrix, DensityMatrix};
use crate::entanglement::eof_two_qubit;
use crate::error::{Error, Result};
use crate::models::{build_effective_me, PhysicalParams, SqueezingParams};
use crate::protocols::optimize_filter;
use crate::quadrature::gaussian_rule;
use crate::steady::steady_state_direct;

pub const MIN_QUAD_ORDER: usize = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct PositionAverage {
    pub eof: f64,
    pub eof_filtered: f64,
    pub success_prob: f64,
    /// Position-averaged atomic state.
    pub state: DensityMatrix,
}

/// Averages the effective steady state over Gaussian-distributed phases
/// θ_a, θ_b ~ Normal(0, s²) with g_α = g cos θ_α and Γ = ε g²/κ fixed,
/// then evaluates EoF and the optimized filter on the averaged state.
pub fn position_average(
    s: f64,
    sq: &SqueezingParams,
    epsilon: f64,
    quad_order: usize,
    g: f64,
    kappa: f64,
) -> Result<PositionAverage> {
    if quad_order < MIN_QUAD_ORDER {
        return Err(Error::InvalidParameter(format!("quadrature order {quad_order} < {MIN_QUAD_ORDER}")));
    }
    let (theta, p) = gaussian_rule(quad_order, s)?;
    let state = if s == 0.0 {
        effective_steady_state(g, kappa, epsilon, sq)?.state
    } else {
        let phys = PhysicalParams::from_epsilon(g, kappa, epsilon)?;
        let mut acc = CMatrix::zeros(4, 4);
        let mut space = None;
        for (ta, pa) in theta.iter().zip(&p) {
            for (tb, pb) in theta.iter().zip(&p) {
                let point = phys.with_couplings(g * ta.cos(), g * tb.cos());
                let rho = steady_state_direct(&build_effective_me(&point, sq)?)
                    .map_err(|e| e.at(format!("theta_a={ta} theta_b={tb}")))?
                    .state;
                acc += rho.matrix().scale(pa * pb);
                space.get_or_insert_with(|| rho.space().clone());
            }
        }
        let acc = acc.unscale(acc.trace().re);
        DensityMatrix::new(space.expect("at least one node"), (&acc + acc.adjoint()).scale(0.5))?
    };
    let eof = eof_two_qubit(&state)?;
    let (_, out) = optimize_filter(&state)?;
    Ok(PositionAverage { eof, eof_filtered: out.eof_after, success_prob: out.success_prob, state })
}

/// Position averaging over the s × ε × N grid of `cfg`.
pub fn position_table(cfg: &SweepConfig) -> Result<Table> {
    require_effective(cfg, "position-avg")?;
    let mut table = Table::new(&["s", "epsilon", "N", "quad_order", "eof", "eof_filtered", "success_prob"]);
    for &s in &cfg.s {
        for &eps in &cfg.epsilon {
            for &n in &cfg.n {
                let avg = squeezing_for(cfg.m_policy, n)
                    .and_then(|sq| position_average(s, &sq, eps, cfg.quad_order, cfg.g, cfg.kappa))
                    .map_err(|e| e.at(format!("s={s} epsilon={eps} N={n}")))?;
                let (eof_filtered, success_prob) =
                    if cfg.filter { (avg.eof_filtered, avg.success_prob) } else { (avg.eof, 1.0) };
                table.push(vec![
                    s.into(),
                    eps.into(),
                    n.into(),
                    cfg.quad_order.into(),
                    avg.eof.into(),
                    eof_filtered.into(),
                    success_prob.into(),
                ])?;
            }
        }
    }
    Ok(table)
}
