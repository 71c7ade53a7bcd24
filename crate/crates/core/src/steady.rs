//! Stationary states of a Liouvillian.
//!
//! The direct solver replaces the first row of the dense supermatrix
//! with the trace constraint and solves by LU. The evolution solver
//! integrates dρ/dt = Lρ with classical RK4 on the sparse supermatrix
//! and is the route for the four-factor models.
//!
//! Gap estimates depend on the method: the second-smallest singular
//! value of L (SVD path), the smallest LU pivot magnitude of the
//! trace-constrained system (pivot path), or the observed exponential
//! decay rate of ‖Lρ‖ near convergence (evolution).

use crate::algebra::{c, hermitian_eigen, CMatrix, CVector, DensityMatrix, C64, PSD_FLOOR};
use crate::error::{Error, Result};
use crate::models::Liouvillian;

/// Largest supermatrix side accepted by the dense solver.
pub const DENSE_LIMIT: usize = 4096;
/// Largest supermatrix side for which uniqueness uses a full SVD.
pub const SVD_LIMIT: usize = 1296;
/// Default bound on the top-two-level Fock population of a truncated mode.
pub const DEFAULT_TAIL_LIMIT: f64 = 1e-6;
/// Accepted direct solutions satisfy ‖Lρ‖ < RESIDUAL_REL·‖L‖.
pub const RESIDUAL_REL: f64 = 1e-8;
const RANK_TOL: f64 = 1e-10;
const RK4_STABILITY: f64 = 2.5;
const GAP_WINDOW: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverMethod {
    Direct,
    Evolve,
}

#[derive(Debug, Clone)]
pub struct SteadyStateReport {
    pub state: DensityMatrix,
    /// ‖Lρ‖ (Frobenius) of the returned state.
    pub residual: f64,
    /// `None` when the Liouvillian is too large for a rank test.
    pub unique: Option<bool>,
    pub spectral_gap_estimate: Option<f64>,
    /// Largest summed population of the top two Fock levels over the
    /// cavity factors; `None` for models without cavity modes.
    pub truncation_tail: Option<f64>,
    pub method: SolverMethod,
    pub steps: usize,
}

impl SteadyStateReport {
    /// Errors when the Fock truncation tail exceeds `limit`.
    pub fn check_truncation(&self, limit: f64) -> Result<()> {
        match self.truncation_tail {
            Some(tail) if !(tail < limit) => Err(Error::TruncationTail { tail, limit }),
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Uniqueness {
    pub unique: bool,
    pub gap: f64,
}

/// Null-space dimension test from the two smallest singular values of L.
pub fn uniqueness_check(l: &Liouvillian) -> Result<Uniqueness> {
    let n = l.supermatrix().dim();
    if n > SVD_LIMIT {
        return Err(Error::InvalidParameter(format!(
            "uniqueness check needs supermatrix side <= {SVD_LIMIT}, got {n}"
        )));
    }
    let mut sv: Vec<f64> = l.to_dense().singular_values().iter().copied().collect();
    sv.sort_by(f64::total_cmp);
    let s_max = sv.last().copied().unwrap_or(0.0);
    let gap = sv.get(1).copied().unwrap_or(0.0);
    Ok(Uniqueness { unique: s_max > 0.0 && gap > RANK_TOL * s_max, gap })
}

/// Dense solve of Lρ = 0 with Tr ρ = 1.
pub fn steady_state_direct(l: &Liouvillian) -> Result<SteadyStateReport> {
    let d = l.hilbert_dim();
    let n = d * d;
    if n > DENSE_LIMIT {
        return Err(Error::InvalidParameter(format!(
            "supermatrix side {n} exceeds the dense limit {DENSE_LIMIT}; use steady_state_evolve"
        )));
    }
    let mut a = l.to_dense();
    for col in 0..n {
        a[(0, col)] = c(0.0);
    }
    for k in 0..d {
        a[(0, k * d + k)] = c(1.0);
    }
    let lu = a.lu();
    let pivots: Vec<f64> = lu.u().diagonal().iter().map(|v| v.norm()).collect();
    let p_max = pivots.iter().copied().fold(0.0, f64::max);
    let p_min = pivots.iter().copied().fold(f64::INFINITY, f64::min);
    let uniq = if n <= SVD_LIMIT {
        uniqueness_check(l)?
    } else {
        Uniqueness { unique: p_min > RANK_TOL * p_max, gap: p_min }
    };
    if !uniq.unique || !(p_min > 1e-14 * p_max) {
        return Err(Error::NonUnique { gap: uniq.gap });
    }
    let mut b = CVector::zeros(n);
    b[0] = c(1.0);
    let x = lu.solve(&b).ok_or(Error::NonUnique { gap: uniq.gap })?;
    let rho = CMatrix::from_column_slice(d, d, x.as_slice());
    let mut report = finalize(l, rho, SolverMethod::Direct, 0)?;
    if !(report.residual < RESIDUAL_REL * l.norm().max(f64::MIN_POSITIVE)) {
        return Err(Error::NotConverged { steps: 0, residual: report.residual });
    }
    report.unique = Some(true);
    report.spectral_gap_estimate = Some(uniq.gap);
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolveOptions {
    /// Step size; `None` picks [`stable_dt`].
    pub dt: Option<f64>,
    /// Stop once ‖Lρ‖ < tol.
    pub tol: f64,
    pub max_steps: usize,
}

impl Default for EvolveOptions {
    fn default() -> Self {
        Self { dt: None, tol: 1e-10, max_steps: 2_000_000 }
    }
}

/// A step size inside the RK4 stability region, from the row-sum bound
/// on the spectral radius of L.
pub fn stable_dt(l: &Liouvillian) -> f64 {
    let bound = l.supermatrix().max_row_sum();
    if bound > 0.0 {
        RK4_STABILITY / bound
    } else {
        1.0
    }
}

/// Integrates dρ/dt = Lρ from `rho0` with RK4 until ‖Lρ‖ < tol.
///
/// The integration runs on the smallest coordinate subspace that
/// contains `rho0` and is invariant under L, which for the cavity
/// models keeps only coherences between states of equal excitation
/// difference.
pub fn steady_state_evolve(l: &Liouvillian, rho0: &DensityMatrix, opts: &EvolveOptions) -> Result<SteadyStateReport> {
    if rho0.space() != l.space() {
        return Err(Error::InvalidSelection(format!(
            "initial state on {} for a model on {}",
            rho0.space(),
            l.space()
        )));
    }
    if !(opts.tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tol = {} must be positive", opts.tol)));
    }
    let d = l.hilbert_dim();
    let full_x = rho0.matrix().as_slice();
    let sector = l.supermatrix().reachable_from((0..full_x.len()).filter(|&i| full_x[i] != c(0.0)));
    let reduced;
    let sm = if sector.len() < full_x.len() {
        reduced = l.supermatrix().restrict(&sector);
        &reduced
    } else {
        l.supermatrix()
    };
    let bound = sm.max_row_sum();
    let dt = opts.dt.unwrap_or(if bound > 0.0 { RK4_STABILITY / bound } else { 1.0 });
    if !(dt > 0.0) || dt * bound > RK4_STABILITY * 1.1 {
        return Err(Error::InvalidParameter(format!(
            "dt = {dt} outside the RK4 stability bound {:.3e}",
            RK4_STABILITY * 1.1 / bound
        )));
    }
    let n = sm.dim();
    let mut x: Vec<C64> = sector.iter().map(|&i| full_x[i]).collect();
    let mut k1 = vec![c(0.0); n];
    let mut k2 = vec![c(0.0); n];
    let mut k3 = vec![c(0.0); n];
    let mut k4 = vec![c(0.0); n];
    let mut tmp = vec![c(0.0); n];
    sm.mul_vec_into(&x, &mut k1);
    let mut residual = norm(&k1);
    let mut steps = 0usize;
    let mut history: Vec<f64> = Vec::new();
    let half = c(0.5 * dt);
    let full = c(dt);
    let sixth = c(dt / 6.0);
    while !(residual < opts.tol) {
        if steps >= opts.max_steps || !residual.is_finite() {
            return Err(Error::NotConverged { steps, residual });
        }
        axpy_into(&x, half, &k1, &mut tmp);
        sm.mul_vec_into(&tmp, &mut k2);
        axpy_into(&x, half, &k2, &mut tmp);
        sm.mul_vec_into(&tmp, &mut k3);
        axpy_into(&x, full, &k3, &mut tmp);
        sm.mul_vec_into(&tmp, &mut k4);
        for i in 0..n {
            x[i] += sixth * (k1[i] + c(2.0) * (k2[i] + k3[i]) + k4[i]);
        }
        steps += 1;
        sm.mul_vec_into(&x, &mut k1);
        residual = norm(&k1);
        history.push(residual);
    }
    let window = GAP_WINDOW.min(steps / 2);
    let gap = if window > 0 {
        let (a, b) = (history[steps - 1 - window], history[steps - 1]);
        (a > 0.0 && b > 0.0 && b < a).then(|| (a / b).ln() / (window as f64 * dt))
    } else {
        None
    };
    let mut rho = CMatrix::zeros(d, d);
    let out = rho.as_mut_slice();
    for (&i, v) in sector.iter().zip(&x) {
        out[i] = *v;
    }
    let mut report = finalize(l, rho, SolverMethod::Evolve, steps)?;
    report.spectral_gap_estimate = gap;
    if l.supermatrix().dim() <= SVD_LIMIT {
        let uniq = uniqueness_check(l)?;
        report.unique = Some(uniq.unique);
    }
    Ok(report)
}

/// Largest summed population of the two highest Fock levels over the
/// cavity factors (positions 2 and 3) of a four-factor state.
pub fn truncation_tail(state: &DensityMatrix) -> Option<f64> {
    let dims = state.space().dims();
    if dims.len() != 4 {
        return None;
    }
    let strides = state.space().strides();
    let diag = state.matrix().diagonal();
    let mut worst: f64 = 0.0;
    for f in [2, 3] {
        let top = dims[f];
        let tail: f64 = (0..diag.len())
            .filter(|&i| (i / strides[f]) % top >= top - 2)
            .map(|i| diag[i].re)
            .sum();
        worst = worst.max(tail);
    }
    Some(worst)
}

fn finalize(l: &Liouvillian, rho: CMatrix, method: SolverMethod, steps: usize) -> Result<SteadyStateReport> {
    let herm = (&rho + rho.adjoint()).scale(0.5);
    let tr = herm.trace().re;
    if !(tr.abs() > 1e-300) || !tr.is_finite() {
        return Err(Error::InvalidState(format!("steady state has trace {tr}")));
    }
    let herm = herm.unscale(tr);
    let (vals, vecs) = hermitian_eigen(&herm);
    let min_eig = vals[0];
    if min_eig < PSD_FLOOR {
        return Err(Error::NotPositive { min_eig });
    }
    let matrix = if min_eig < 0.0 {
        let clipped = vals.map(|v| c(v.max(0.0)));
        let m = &vecs * CMatrix::from_diagonal(&clipped) * vecs.adjoint();
        let m = (&m + m.adjoint()).scale(0.5);
        let t = m.trace().re;
        m.unscale(t)
    } else {
        herm
    };
    let residual = l.apply(&matrix).norm();
    let state = DensityMatrix::new(l.space().clone(), matrix)?;
    let truncation_tail = if l.kind().has_cavity_modes() { truncation_tail(&state) } else { None };
    Ok(SteadyStateReport {
        state,
        residual,
        unique: None,
        spectral_gap_estimate: None,
        truncation_tail,
        method,
        steps,
    })
}

fn norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn axpy_into(x: &[C64], a: C64, y: &[C64], out: &mut [C64]) {
    for ((o, xi), yi) in out.iter_mut().zip(x).zip(y) {
        *o = xi + a * yi;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{embed, partial_trace, sigma_minus, HilbertSpace, StateVector};
    use crate::models::{
        build_effective_me, build_full_me, dark_state, full_dark_state, PhysicalParams, SqueezingParams,
    };
    use proptest::prelude::*;

    fn qubit_decay(rate: f64) -> Liouvillian {
        let space = HilbertSpace::new(vec![2]).unwrap();
        Liouvillian::lindblad(&space, None, &[(sigma_minus(), rate)]).unwrap()
    }

    #[test]
    fn decaying_qubit_goes_to_ground() {
        let r = steady_state_direct(&qubit_decay(0.7)).unwrap();
        assert!((r.state.matrix()[(0, 0)].re - 1.0).abs() < 1e-14);
        assert!(r.residual < 1e-14);
        assert_eq!(r.unique, Some(true));
        assert_eq!(r.truncation_tail, None);
    }

    #[test]
    fn zero_generator_is_not_unique() {
        let l = Liouvillian::zero(&HilbertSpace::new(vec![2, 2]).unwrap());
        assert!(!uniqueness_check(&l).unwrap().unique);
        assert!(matches!(steady_state_direct(&l), Err(Error::NonUnique { .. })));
    }

    #[test]
    fn decoupled_decaying_qubits_are_unique() {
        let space = HilbertSpace::new(vec![2, 2]).unwrap();
        let a = embed(&sigma_minus(), &space, 0).unwrap();
        let b = embed(&sigma_minus(), &space, 1).unwrap();
        let l = Liouvillian::lindblad(&space, None, &[(a, 1.0), (b, 0.5)]).unwrap();
        assert!(uniqueness_check(&l).unwrap().unique);
        let r = steady_state_direct(&l).unwrap();
        assert!((r.state.matrix()[(0, 0)].re - 1.0).abs() < 1e-14);
    }

    #[test]
    fn effective_dark_state_at_one_photon() {
        let phys = PhysicalParams::symmetric(0.1, 1.0, 0.0).unwrap();
        let l = build_effective_me(&phys, &SqueezingParams::perfect(1.0).unwrap()).unwrap();
        let r = steady_state_direct(&l).unwrap();
        assert!(r.state.fidelity_pure(&dark_state(1.0).unwrap()).unwrap() > 1.0 - 1e-10);
        assert!(r.spectral_gap_estimate.unwrap() > 0.0);
    }

    #[test]
    fn stationary_initial_state_returns_immediately() {
        let phys = PhysicalParams::symmetric(0.1, 1.0, 0.0).unwrap();
        let l = build_effective_me(&phys, &SqueezingParams::perfect(0.5).unwrap()).unwrap();
        let rho0 = dark_state(0.5).unwrap().to_density();
        let r = steady_state_evolve(&l, &rho0, &EvolveOptions::default()).unwrap();
        assert_eq!(r.steps, 0);
        assert_eq!(r.method, SolverMethod::Evolve);
    }

    #[test]
    fn evolve_rejects_unstable_step() {
        let l = qubit_decay(1.0);
        let rho0 = DensityMatrix::maximally_mixed(l.space().clone());
        let opts = EvolveOptions { dt: Some(10.0), ..Default::default() };
        assert!(matches!(steady_state_evolve(&l, &rho0, &opts), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn evolve_reports_iteration_cap() {
        let l = qubit_decay(1.0);
        let rho0 = DensityMatrix::maximally_mixed(l.space().clone());
        let opts = EvolveOptions { max_steps: 3, ..Default::default() };
        assert!(matches!(
            steady_state_evolve(&l, &rho0, &opts),
            Err(Error::NotConverged { steps: 3, .. })
        ));
    }

    #[test]
    fn evolve_gap_matches_decay_rate() {
        // coherence decays at rate/2, population at rate; the slowest sets the estimate
        let l = qubit_decay(0.4);
        let space = l.space().clone();
        let plus = StateVector::normalized(space, CVector::from_vec(vec![c(1.0), c(1.0)])).unwrap();
        let opts = EvolveOptions { dt: Some(0.1), tol: 1e-12, ..Default::default() };
        let r = steady_state_evolve(&l, &plus.to_density(), &opts).unwrap();
        assert!((r.spectral_gap_estimate.unwrap() - 0.2).abs() < 1e-3);
    }

    #[test]
    fn truncation_tail_of_squeezed_vacuum() {
        let n = 0.3;
        let psi = full_dark_state(n, 6).unwrap().to_density();
        let x: f64 = n / (n + 1.0);
        let norm: f64 = (0..6).map(|k| x.powi(k)).sum();
        let expected = (x.powi(4) + x.powi(5)) / norm;
        assert!((truncation_tail(&psi).unwrap() - expected).abs() < 1e-14);
        let r = SteadyStateReport {
            state: psi,
            residual: 0.0,
            unique: None,
            spectral_gap_estimate: None,
            truncation_tail: Some(expected),
            method: SolverMethod::Evolve,
            steps: 0,
        };
        assert!(matches!(r.check_truncation(1e-6), Err(Error::TruncationTail { .. })));
        assert!(r.check_truncation(1e-2).is_ok());
    }

    #[test]
    fn full_model_relaxes_to_dark_state() {
        let n = 0.3;
        let phys = PhysicalParams::symmetric(0.1, 1.0, 0.0).unwrap();
        let l = build_full_me(&phys, &SqueezingParams::perfect(n).unwrap(), 4).unwrap();
        let atoms = HilbertSpace::new(vec![2, 2]).unwrap();
        let ground = StateVector::basis(atoms, &[0, 0]).unwrap();
        let cav = crate::models::two_mode_squeezed_vacuum(n, 4).unwrap();
        let rho0 = ground.tensor(&cav).to_density();
        let r = steady_state_evolve(&l, &rho0, &EvolveOptions { tol: 1e-9, ..Default::default() }).unwrap();
        assert!(r.steps > 0);
        let atomic = partial_trace(&r.state, &[0, 1]).unwrap();
        assert!(atomic.fidelity_pure(&dark_state(n).unwrap()).unwrap() > 0.999);
        assert!(r.truncation_tail.is_some());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]
        #[test]
        fn direct_and_evolve_agree(n in 0.05f64..2.0, eps in 0.0f64..1.0, frac in 0.5f64..1.0) {
            let phys = PhysicalParams::from_epsilon(0.1, 1.0, eps).unwrap();
            let sq = SqueezingParams::new(n, frac * (n * (n + 1.0)).sqrt()).unwrap();
            let l = build_effective_me(&phys, &sq).unwrap();
            let direct = steady_state_direct(&l).unwrap();
            let rho0 = DensityMatrix::maximally_mixed(l.space().clone());
            let evolved = steady_state_evolve(&l, &rho0, &EvolveOptions { tol: 1e-12, ..Default::default() }).unwrap();
            prop_assert!(direct.state.trace_distance(&evolved.state).unwrap() < 1e-7);
            prop_assert_eq!(evolved.unique, Some(true));
        }
    }
}
