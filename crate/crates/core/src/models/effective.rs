//! Two-atom master equation with the cavity modes adiabatically
//! eliminated: both atoms see a common squeezed reservoir with
//! renormalized parameters.

#[cfg(test)]
use super::effective_bath_params;
use super::{
    EffectiveBathParams, Liouvillian, ModelKind, PhysicalParams, SqueezingParams,
    SuperBuilder,
};
use crate::algebra::{c, embed, sigma_minus, CMatrix, HilbertSpace};
use crate::error::{Error, Result};

/// Adds a squeezed-reservoir dissipator acting on the pair (x, y) of
/// lowering operators:
///
/// decay_x D[x] + decay_y D[y] + excite_x D[x†] + excite_y D[y†]
/// + corr·(xρy + yρx − ½{xy + yx, ρ}) + h.c.
pub(crate) fn squeezed_pair(
    sb: &mut SuperBuilder,
    x: &CMatrix,
    y: &CMatrix,
    decay: (f64, f64),
    excite: (f64, f64),
    corr: f64,
) {
    sb.dissipator(x, decay.0);
    sb.dissipator(y, decay.1);
    sb.dissipator(&x.adjoint(), excite.0);
    sb.dissipator(&y.adjoint(), excite.1);
    // cross(X, Y†): X ρ Y − ½{Y X, ρ}
    sb.cross(x, &y.adjoint(), c(corr));
    sb.cross(y, &x.adjoint(), c(corr));
}

fn atomic_pair() -> Result<(HilbertSpace, CMatrix, CMatrix)> {
    let space = HilbertSpace::new(vec![2, 2])?;
    let sm_a = embed(&sigma_minus(), &space, 0)?.into_matrix();
    let sm_b = embed(&sigma_minus(), &space, 1)?.into_matrix();
    Ok((space, sm_a, sm_b))
}

/// Effective two-qubit Liouvillian for arbitrary couplings g_a, g_b.
///
/// Cavity-mediated rates scale as 2g_α²/κ for each atom and the
/// correlation term as 2g_a g_b/κ; spontaneous emission adds Γ to each
/// atom's decay. With g_a = g_b this is entrywise the same generator as
/// [`build_effective_me_from_bath`] fed with [`effective_bath_params`].
pub fn build_effective_me(phys: &PhysicalParams, sq: &SqueezingParams) -> Result<Liouvillian> {
    let (space, sm_a, sm_b) = atomic_pair()?;
    let k = 2.0 / phys.kappa;
    let purcell_a = k * phys.g_a * phys.g_a;
    let purcell_b = k * phys.g_b * phys.g_b;
    let n = sq.n();
    let mut sb = SuperBuilder::new(space.total());
    squeezed_pair(
        &mut sb,
        &sm_a,
        &sm_b,
        (purcell_a * (n + 1.0) + phys.gamma_sp, purcell_b * (n + 1.0) + phys.gamma_sp),
        (purcell_a * n, purcell_b * n),
        -k * phys.g_a * phys.g_b * sq.m(),
    );
    let label = format!(
        "effective g_a={} g_b={} kappa={} gamma={} N={} M={}",
        phys.g_a, phys.g_b, phys.kappa, phys.gamma_sp, n, sq.m()
    );
    Ok(Liouvillian::from_builder(space, sb, ModelKind::Effective, label))
}

/// Symmetric effective generator written directly in the renormalized
/// reservoir parameters (γ, n, m).
pub fn build_effective_me_from_bath(bath: &EffectiveBathParams) -> Result<Liouvillian> {
    if !(bath.gamma_eff >= 0.0) || !(bath.n_eff >= 0.0) {
        return Err(Error::InvalidParameter(format!("unphysical bath {bath:?}")));
    }
    let (space, sm_a, sm_b) = atomic_pair()?;
    let g = bath.gamma_eff;
    let decay = g * (bath.n_eff + 1.0);
    let excite = g * bath.n_eff;
    let mut sb = SuperBuilder::new(space.total());
    squeezed_pair(&mut sb, &sm_a, &sm_b, (decay, decay), (excite, excite), g * bath.m_eff);
    let label = format!("effective gamma={} n={} m={}", g, bath.n_eff, bath.m_eff);
    Ok(Liouvillian::from_builder(space, sb, ModelKind::Effective, label))
}

#[cfg(test)]
fn build_symmetric(phys: &PhysicalParams, sq: &SqueezingParams) -> Result<Liouvillian> {
    build_effective_me_from_bath(&effective_bath_params(phys, sq)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{partial_trace, DensityMatrix, StateVector};
    use crate::models::test_support::assert_trace_and_hermiticity;
    use crate::models::{dark_state, SqueezingParams};

    fn null_vector(l: &Liouvillian) -> DensityMatrix {
        // dense null vector via SVD, test-only (the solver module has its own route)
        let dense = l.to_dense();
        let svd = dense.svd(false, true);
        let v_t = svd.v_t.unwrap();
        let (idx, _) = svd
            .singular_values
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .unwrap();
        let row = v_t.row(idx).adjoint();
        let d = l.hilbert_dim();
        let m = CMatrix::from_column_slice(d, d, row.as_slice());
        let tr = m.trace();
        let m = m / tr;
        let m = (&m + m.adjoint()).scale(0.5);
        DensityMatrix::new(l.space().clone(), m).unwrap()
    }

    #[test]
    fn symmetric_generator_matches_bath_form() {
        for (g, eps, n, m_frac) in [(0.1, 0.0, 1.0, 1.0), (0.05, 0.3, 0.6, 1.0), (0.2, 2.0, 0.4, 0.7)] {
            let phys = PhysicalParams::from_epsilon(g, 1.0, eps).unwrap();
            let sq = SqueezingParams::new(n, m_frac * (n * (n + 1.0f64)).sqrt()).unwrap();
            let a = build_effective_me(&phys, &sq).unwrap().to_dense();
            let b = build_symmetric(&phys, &sq).unwrap().to_dense();
            assert!((&a - &b).norm() < 1e-14 * a.norm(), "g={g} eps={eps}");
        }
    }

    #[test]
    fn trace_and_hermiticity_preserved() {
        let phys = PhysicalParams::new(0.1, 0.07, 1.0, 0.002).unwrap();
        let sq = SqueezingParams::new(0.8, 0.6).unwrap();
        assert_trace_and_hermiticity(&build_effective_me(&phys, &sq).unwrap(), 100);
    }

    #[test]
    fn ideal_steady_state_is_dark_state() {
        let phys = PhysicalParams::symmetric(0.1, 1.0, 0.0).unwrap();
        for n in [0.3, 1.0, 3.0] {
            let l = build_effective_me(&phys, &SqueezingParams::perfect(n).unwrap()).unwrap();
            let psi = dark_state(n).unwrap();
            assert!(l.apply_state(&psi.to_density()).norm() < 1e-15);
            let rho = null_vector(&l);
            assert!(rho.fidelity_pure(&psi).unwrap() > 1.0 - 1e-10);
        }
    }

    #[test]
    fn vacuum_reservoir_relaxes_to_ground() {
        let phys = PhysicalParams::symmetric(0.1, 1.0, 0.0).unwrap();
        let l = build_effective_me(&phys, &SqueezingParams::vacuum()).unwrap();
        let gg = StateVector::basis(l.space().clone(), &[0, 0]).unwrap();
        assert_eq!(l.apply_state(&gg.to_density()).norm(), 0.0);
        // |ee⟩ population decays at 2γ with γ = 2g²/κ
        let ee = StateVector::basis(l.space().clone(), &[1, 1]).unwrap().to_density();
        let d = l.apply_state(&ee);
        assert!((d[(3, 3)].re + 2.0 * 0.02).abs() < 1e-15);
    }

    #[test]
    fn uncoupled_atom_gives_product_steady_state() {
        let phys = PhysicalParams::new(0.1, 0.0, 1.0, 0.001).unwrap();
        let sq = SqueezingParams::perfect(0.5).unwrap();
        let l = build_effective_me(&phys, &sq).unwrap();
        let rho = null_vector(&l);
        let ra = partial_trace(&rho, &[0]).unwrap();
        let rb = partial_trace(&rho, &[1]).unwrap();
        assert!((ra.tensor(&rb).matrix() - rho.matrix()).norm() < 1e-10);
        // atom B only decays
        assert!((rb.matrix()[(0, 0)].re - 1.0).abs() < 1e-10);
    }

    #[test]
    fn swap_symmetry_of_symmetric_model() {
        let phys = PhysicalParams::from_epsilon(0.1, 1.0, 0.2).unwrap();
        let l = build_effective_me(&phys, &SqueezingParams::new(0.7, 0.8).unwrap()).unwrap();
        let rho = null_vector(&l);
        let swap = [0usize, 2, 1, 3];
        let m = rho.matrix();
        let swapped = CMatrix::from_fn(4, 4, |i, j| m[(swap[i], swap[j])]);
        assert!((swapped - m).norm() < 1e-10);
    }
}
