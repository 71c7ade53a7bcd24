use crate::algebra::{c, CVector, HilbertSpace, StateVector};
use crate::error::{Error, Result};

fn check_n(n: f64) -> Result<()> {
    if !(n >= 0.0) || !n.is_finite() {
        return Err(Error::InvalidParameter(format!("N = {n} must be finite and >= 0")));
    }
    Ok(())
}

/// √((N+1)/(2N+1)) |gg⟩ + √(N/(2N+1)) |ee⟩.
pub fn dark_state(n: f64) -> Result<StateVector> {
    check_n(n)?;
    let norm = 2.0 * n + 1.0;
    let mut amps = CVector::zeros(4);
    amps[0] = c(((n + 1.0) / norm).sqrt());
    amps[3] = c((n / norm).sqrt());
    StateVector::normalized(HilbertSpace::new(vec![2, 2])?, amps)
}

/// Stationary state of the three-node network on `[2, 4, 2]`; the middle
/// factor holds B's ground levels |i,j⟩ at index 2i + j.
pub fn network_dark_state(n: f64) -> Result<StateVector> {
    check_n(n)?;
    let norm = 2.0 * n + 1.0;
    let idx = |a: usize, i: usize, j: usize, cc: usize| a * 8 + (2 * i + j) * 2 + cc;
    let mut amps = CVector::zeros(16);
    amps[idx(0, 0, 0, 0)] = c((n + 1.0) / norm);
    amps[idx(1, 1, 1, 1)] = c(n / norm);
    let mixed = (n * (n + 1.0)).sqrt() / norm;
    amps[idx(0, 0, 1, 1)] = c(mixed);
    amps[idx(1, 1, 0, 0)] = c(mixed);
    StateVector::normalized(HilbertSpace::new(vec![2, 4, 2])?, amps)
}

/// Vacuum of the Bogoliubov modes written in the bare Fock basis and
/// truncated at `n_max` levels per mode (renormalized):
/// Σ_k (−1)^k (N/(N+1))^{k/2} |k, k⟩.
pub fn two_mode_squeezed_vacuum(n: f64, n_max: usize) -> Result<StateVector> {
    check_n(n)?;
    let space = HilbertSpace::new(vec![n_max, n_max])?;
    let ratio = (n / (n + 1.0)).sqrt();
    let mut amps = CVector::zeros(n_max * n_max);
    let mut amp = 1.0;
    for k in 0..n_max {
        amps[k * n_max + k] = c(amp);
        amp *= -ratio;
    }
    StateVector::normalized(space, amps)
}

/// Dark state of the full model: atomic dark state ⊗ truncated squeezed
/// vacuum of the cavities.
pub fn full_dark_state(n: f64, n_max: usize) -> Result<StateVector> {
    Ok(dark_state(n)?.tensor(&two_mode_squeezed_vacuum(n, n_max)?))
}
