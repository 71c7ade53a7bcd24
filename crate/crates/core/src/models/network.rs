//! Three-node chain A – B – C at the effective atomic level.
//!
//! Atom B keeps four ground levels |i,j⟩ (index 2i + j): the i label is
//! exchanged with cavity mode b₁ (linked to A) and the j label with mode
//! b₂ (linked to C). Each link is an independent squeezed reservoir of
//! the two-atom effective form.

use super::effective::squeezed_pair;
use super::{perfect_correlation, Liouvillian, ModelKind, PhysicalParams, SqueezingParams, SuperBuilder};
use crate::algebra::{c, embed, sigma_minus, CMatrix, HilbertSpace, Operator};
use crate::error::Result;

/// Lowering operators of the network on `[2, 4, 2]`.
#[derive(Debug, Clone)]
pub struct NetworkOperators {
    pub space: HilbertSpace,
    pub sm_a: Operator,
    pub sm_b1: Operator,
    pub sm_b2: Operator,
    pub sm_c: Operator,
}

/// σ⁺_{b1} = |1,0⟩⟨0,0| + |1,1⟩⟨0,1|, σ⁺_{b2} = |0,1⟩⟨0,0| + |1,1⟩⟨1,0|;
/// the returned operators are the lowering (adjoint) forms.
pub fn network_link_operators() -> Result<NetworkOperators> {
    let space = HilbertSpace::new(vec![2, 4, 2])?;
    let b_space = HilbertSpace::new(vec![4])?;
    let level = |i: usize, j: usize| 2 * i + j;
    let mut raise_b1 = CMatrix::zeros(4, 4);
    raise_b1[(level(1, 0), level(0, 0))] = c(1.0);
    raise_b1[(level(1, 1), level(0, 1))] = c(1.0);
    let mut raise_b2 = CMatrix::zeros(4, 4);
    raise_b2[(level(0, 1), level(0, 0))] = c(1.0);
    raise_b2[(level(1, 1), level(1, 0))] = c(1.0);
    let sm_b1 = Operator::new(b_space.clone(), raise_b1.adjoint())?;
    let sm_b2 = Operator::new(b_space, raise_b2.adjoint())?;
    Ok(NetworkOperators {
        sm_a: embed(&sigma_minus(), &space, 0)?,
        sm_b1: embed(&sm_b1, &space, 1)?,
        sm_b2: embed(&sm_b2, &space, 1)?,
        sm_c: embed(&sigma_minus(), &space, 2)?,
        space,
    })
}

/// Effective network Liouvillian. Link A–B₁ is driven by `sq_pair[0]`,
/// link C–B₂ by `sq_pair[1]`. Atoms A and C couple with `phys.g_a`, both
/// Raman transitions of B with `phys.g_b`.
///
/// With `ideal` set, spontaneous emission is dropped and each link is
/// driven at perfect squeezing M = √(N(N+1)) for its N.
pub fn build_network_me(
    phys: &PhysicalParams,
    sq_pair: [SqueezingParams; 2],
    ideal: bool,
) -> Result<Liouvillian> {
    let ops = network_link_operators()?;
    let gamma_sp = if ideal { 0.0 } else { phys.gamma_sp };
    let k = 2.0 / phys.kappa;
    let mut sb = SuperBuilder::new(ops.space.total());
    let links = [(&ops.sm_a, &ops.sm_b1, &sq_pair[0]), (&ops.sm_c, &ops.sm_b2, &sq_pair[1])];
    for (outer, inner, sq) in links {
        let n = sq.n();
        let m = if ideal { perfect_correlation(n) } else { sq.m() };
        let purcell_outer = k * phys.g_a * phys.g_a;
        let purcell_inner = k * phys.g_b * phys.g_b;
        squeezed_pair(
            &mut sb,
            outer.matrix(),
            inner.matrix(),
            (purcell_outer * (n + 1.0) + gamma_sp, purcell_inner * (n + 1.0) + gamma_sp),
            (purcell_outer * n, purcell_inner * n),
            -k * phys.g_a * phys.g_b * m,
        );
    }
    let label = format!(
        "network g_a={} g_b={} kappa={} gamma={} N1={} N2={} ideal={}",
        phys.g_a,
        phys.g_b,
        phys.kappa,
        gamma_sp,
        sq_pair[0].n(),
        sq_pair[1].n(),
        ideal
    );
    Ok(Liouvillian::from_builder(ops.space, sb, ModelKind::Network, label))
}
