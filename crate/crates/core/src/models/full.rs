//! Atoms-plus-cavities master equation, in the bare cavity modes and in
//! the Bogoliubov-transformed modes.

use super::{Liouvillian, ModelKind, PhysicalParams, SqueezingParams, SuperBuilder};
use crate::algebra::{annihilation, c, embed, layout, sigma_minus, HilbertSpace, Operator};
use crate::error::{Error, Result};

struct FullOperators {
    space: HilbertSpace,
    sm_a: Operator,
    sm_b: Operator,
    mode_a: Operator,
    mode_b: Operator,
}

fn full_operators(n_max: usize) -> Result<FullOperators> {
    let space = HilbertSpace::new(vec![2, 2, n_max, n_max])?;
    let mode = annihilation(n_max)?;
    Ok(FullOperators {
        sm_a: embed(&sigma_minus(), &space, layout::ATOM_A)?,
        sm_b: embed(&sigma_minus(), &space, layout::ATOM_B)?,
        mode_a: embed(&mode, &space, layout::MODE_A)?,
        mode_b: embed(&mode, &space, layout::MODE_B)?,
        space,
    })
}

/// Full model: Jaynes–Cummings coupling of each atom to its cavity,
/// cavities driven by a common broadband two-mode squeezed reservoir,
/// plus atomic spontaneous emission.
///
/// The reservoir term is written in Lindblad form,
/// κ(N+1)Σ D[α] + κN Σ D[α†] + 2κM (aρb + bρa − abρ − ρab + h.c.) with
/// D[x] = 2xρx† − x†xρ − ρx†x, which is exactly
/// κ Σ_{ã,b̃} (2αρα† − α†αρ − ρα†α) at perfect squeezing.
pub fn build_full_me(phys: &PhysicalParams, sq: &SqueezingParams, n_max: usize) -> Result<Liouvillian> {
    let ops = full_operators(n_max)?;
    let d = ops.space.total();
    let mut sb = SuperBuilder::new(d);

    let h_a = &(&ops.mode_a * &ops.sm_a.dagger()) + &(&ops.mode_a.dagger() * &ops.sm_a);
    let h_b = &(&ops.mode_b * &ops.sm_b.dagger()) + &(&ops.mode_b.dagger() * &ops.sm_b);
    let h = &h_a.scale(phys.g_a) + &h_b.scale(phys.g_b);
    sb.hamiltonian(h.matrix());

    let kappa = phys.kappa;
    for mode in [&ops.mode_a, &ops.mode_b] {
        sb.dissipator(mode.matrix(), 2.0 * kappa * (sq.n() + 1.0));
        sb.dissipator(mode.dagger().matrix(), 2.0 * kappa * sq.n());
    }
    // 2κM(aρb − ½{ba, ρ}) + h.c. and the a ↔ b partner
    let m_coeff = c(2.0 * kappa * sq.m());
    sb.cross(ops.mode_a.matrix(), ops.mode_b.dagger().matrix(), m_coeff);
    sb.cross(ops.mode_b.matrix(), ops.mode_a.dagger().matrix(), m_coeff);

    sb.dissipator(ops.sm_a.matrix(), phys.gamma_sp);
    sb.dissipator(ops.sm_b.matrix(), phys.gamma_sp);

    let label = format!(
        "full g_a={} g_b={} kappa={} gamma={} N={} M={} n_max={}",
        phys.g_a, phys.g_b, kappa, phys.gamma_sp, sq.n(), sq.m(), n_max
    );
    Ok(Liouvillian::from_builder(ops.space, sb, ModelKind::Full, label))
}

/// τ⁻_a = √(N+1) σ⁻_a − √N σ⁺_b and τ⁻_b = √(N+1) σ⁻_b − √N σ⁺_a on `space`
/// with atoms at factors 0 and 1.
pub fn tau_operators(n_photon: f64, space: &HilbertSpace) -> Result<(Operator, Operator)> {
    if !(n_photon >= 0.0) {
        return Err(Error::InvalidParameter(format!("N = {n_photon} must be >= 0")));
    }
    let sm_a = embed(&sigma_minus(), space, layout::ATOM_A)?;
    let sm_b = embed(&sigma_minus(), space, layout::ATOM_B)?;
    let u = (n_photon + 1.0).sqrt();
    let v = n_photon.sqrt();
    let tau_a = &sm_a.scale(u) - &sm_b.dagger().scale(v);
    let tau_b = &sm_b.scale(u) - &sm_a.dagger().scale(v);
    Ok((tau_a, tau_b))
}

/// Perfect-squeezing model in the Bogoliubov modes ã, b̃ (factors 2, 3 are
/// Fock spaces of the transformed modes): −i[H̃, ρ] + κ Σ (2αρα† − {α†α, ρ})
/// with H̃_α = g(τ⁺_α α̃ + α̃† τ⁻_α).
pub fn build_transformed_me(phys: &PhysicalParams, sq: &SqueezingParams, n_max: usize) -> Result<Liouvillian> {
    if !sq.is_perfect() {
        return Err(Error::ImperfectSqueezing(format!(
            "M = {} but sqrt(N(N+1)) = {}",
            sq.m(),
            super::perfect_correlation(sq.n())
        )));
    }
    if phys.gamma_sp != 0.0 {
        return Err(Error::ImperfectSqueezing(format!("Gamma = {} must be 0", phys.gamma_sp)));
    }
    if !phys.is_symmetric() {
        return Err(Error::InvalidParameter("transformed model needs g_a = g_b".into()));
    }
    let ops = full_operators(n_max)?;
    let (tau_a, tau_b) = tau_operators(sq.n(), &ops.space)?;
    let g = phys.g_a;
    let h_a = &(&tau_a.dagger() * &ops.mode_a) + &(&ops.mode_a.dagger() * &tau_a);
    let h_b = &(&tau_b.dagger() * &ops.mode_b) + &(&ops.mode_b.dagger() * &tau_b);
    let h = (&h_a + &h_b).scale(g);

    let mut sb = SuperBuilder::new(ops.space.total());
    sb.hamiltonian(h.matrix());
    sb.dissipator(ops.mode_a.matrix(), 2.0 * phys.kappa);
    sb.dissipator(ops.mode_b.matrix(), 2.0 * phys.kappa);
    let label = format!("transformed g={} kappa={} N={} n_max={}", g, phys.kappa, sq.n(), n_max);
    Ok(Liouvillian::from_builder(ops.space, sb, ModelKind::Transformed, label))
}
