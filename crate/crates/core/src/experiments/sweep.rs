use super::{effective_steady_state, require_effective, squeezing_for, Cell, SweepConfig, Table};
use crate::entanglement::{eof_two_qubit, squeezed_state_eof};
use crate::error::Result;
use crate::protocols::{optimize_filter, FilterLevel};

/// Per-ε optimum over the N grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpsilonOptimum {
    pub epsilon: f64,
    /// N maximizing the unfiltered EoF.
    pub n_best: f64,
    pub eof_best: f64,
    /// Optimized-filter EoF and success probability at `n_best`.
    pub eof_filtered_at_best: f64,
    pub success_prob_at_best: f64,
    /// N maximizing the filtered EoF, and that maximum.
    pub n_best_filtered: f64,
    pub eof_best_filtered: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EpsilonSweep {
    pub table: Table,
    pub optima: Vec<EpsilonOptimum>,
}

#[derive(Debug, Clone, Copy)]
struct Point {
    eof: f64,
    eof_filtered: f64,
    success_prob: f64,
    theta: f64,
    level: Option<FilterLevel>,
    residual: f64,
    m: f64,
}

fn evaluate(cfg: &SweepConfig, eps: f64, n: f64) -> Result<Point> {
    let sq = squeezing_for(cfg.m_policy, n)?;
    let report = effective_steady_state(cfg.g, cfg.kappa, eps, &sq)?;
    let eof = eof_two_qubit(&report.state)?;
    let (eof_filtered, success_prob, theta, level) = if cfg.filter {
        let (spec, out) = optimize_filter(&report.state)?;
        let level = (spec.theta_a() > 0.0).then_some(spec.target());
        (out.eof_after, out.success_prob, spec.theta_a(), level)
    } else {
        (eof, 1.0, 0.0, None)
    };
    Ok(Point { eof, eof_filtered, success_prob, theta, level, residual: report.residual, m: sq.m() })
}

fn level_name(level: Option<FilterLevel>) -> &'static str {
    match level {
        None => "none",
        Some(FilterLevel::Ground) => "ground",
        Some(FilterLevel::Excited) => "excited",
    }
}

/// EoF of the effective steady state on the ε × N grid, with optional
/// optimized filtering and the per-ε optimum over N.
pub fn sweep_epsilon(cfg: &SweepConfig) -> Result<EpsilonSweep> {
    require_effective(cfg, "sweep-eps")?;
    let mut table = Table::new(&[
        "epsilon",
        "N",
        "M",
        "eof",
        "eof_filtered",
        "success_prob",
        "filter_theta",
        "filter_level",
        "residual",
        "best_n",
        "best_n_filtered",
    ]);
    let mut optima = Vec::with_capacity(cfg.epsilon.len());
    for &eps in &cfg.epsilon {
        let points: Vec<Point> = cfg
            .n
            .iter()
            .map(|&n| evaluate(cfg, eps, n).map_err(|e| e.at(format!("epsilon={eps} N={n}"))))
            .collect::<Result<_>>()?;
        let argmax = |key: fn(&Point) -> f64| {
            (0..points.len()).fold(0, |best, i| if key(&points[i]) > key(&points[best]) { i } else { best })
        };
        let best = argmax(|p| p.eof);
        let best_f = argmax(|p| p.eof_filtered);
        for (i, (p, &n)) in points.iter().zip(&cfg.n).enumerate() {
            table.push(vec![
                eps.into(),
                n.into(),
                p.m.into(),
                p.eof.into(),
                p.eof_filtered.into(),
                p.success_prob.into(),
                p.theta.into(),
                level_name(p.level).into(),
                p.residual.into(),
                (i == best).into(),
                (i == best_f).into(),
            ])?;
        }
        optima.push(EpsilonOptimum {
            epsilon: eps,
            n_best: cfg.n[best],
            eof_best: points[best].eof,
            eof_filtered_at_best: points[best].eof_filtered,
            success_prob_at_best: points[best].success_prob,
            n_best_filtered: cfg.n[best_f],
            eof_best_filtered: points[best_f].eof_filtered,
        });
    }
    Ok(EpsilonSweep { table, optima })
}

pub fn optima_table(optima: &[EpsilonOptimum]) -> Result<Table> {
    let mut t = Table::new(&[
        "epsilon",
        "n_best",
        "eof_best",
        "eof_filtered_at_best",
        "success_prob_at_best",
        "n_best_filtered",
        "eof_best_filtered",
    ]);
    for o in optima {
        t.push(vec![
            o.epsilon.into(),
            o.n_best.into(),
            o.eof_best.into(),
            o.eof_filtered_at_best.into(),
            o.success_prob_at_best.into(),
            o.n_best_filtered.into(),
            o.eof_best_filtered.into(),
        ])?;
    }
    Ok(t)
}

/// Atomic EoF against the entanglement of the driving squeezed light.
pub fn transfer_curve(cfg: &SweepConfig) -> Result<Table> {
    require_effective(cfg, "transfer")?;
    let mut table =
        Table::new(&["epsilon", "N", "squeezed_eof", "eof", "eof_filtered", "success_prob", "transfer_ratio"]);
    for &eps in &cfg.epsilon {
        for &n in &cfg.n {
            let p = evaluate(cfg, eps, n).map_err(|e| e.at(format!("epsilon={eps} N={n}")))?;
            let source = squeezed_state_eof(n)?;
            let ratio: Cell = if source > 0.0 { (p.eof / source).into() } else { "".into() };
            table.push(vec![
                eps.into(),
                n.into(),
                source.into(),
                p.eof.into(),
                p.eof_filtered.into(),
                p.success_prob.into(),
                ratio,
            ])?;
        }
    }
    Ok(table)
}
