//! Liouvillian builders for every master-equation variant and the
//! analytic dark states they should relax to.
//!
//! All Liouvillians act on column-stacked density matrices. Factor
//! orders are fixed per model:
//!
//! | model        | factors                                   |
//! |--------------|-------------------------------------------|
//! | full         | atom A, atom B, cavity a, cavity b        |
//! | transformed  | atom A, atom B, mode ã, mode b̃            |
//! | effective    | atom A, atom B                            |
//! | network      | atom A, atom B (4 ground levels), atom C  |
//!
//! Spontaneous emission uses Γ(σ⁻ρσ⁺ − ½{σ⁺σ⁻, ρ}), so an isolated
//! excited atom decays at rate Γ and the cavity-mediated plus free decay
//! adds up to (g²/κ)(2+ε).

mod dark;
mod effective;
mod full;
mod network;
mod params;
mod superop;

pub use dark::{dark_state, full_dark_state, network_dark_state, two_mode_squeezed_vacuum};
pub use effective::{build_effective_me, build_effective_me_from_bath};
pub use full::{build_full_me, build_transformed_me, tau_operators};
pub use network::{build_network_me, network_link_operators, NetworkOperators};
pub use params::{
    effective_bath_params, perfect_correlation, EffectiveBathParams, PhysicalParams, SqueezingParams,
    SQUEEZING_BOUND_TOL,
};
pub use superop::SparseMatrix;

use crate::algebra::{c, CMatrix, DensityMatrix, HilbertSpace, Operator};
use crate::error::{Error, Result};
use superop::SuperBuilder;

/// Which master equation produced a Liouvillian.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    Full,
    Transformed,
    Effective,
    Network,
    Custom,
}

impl ModelKind {
    /// Models with truncated Fock factors at positions 2 and 3.
    pub fn has_cavity_modes(self) -> bool {
        matches!(self, ModelKind::Full | ModelKind::Transformed)
    }
}

/// Generator L of dρ/dt = Lρ as a sparse d²×d² supermatrix.
#[derive(Debug, Clone)]
pub struct Liouvillian {
    space: HilbertSpace,
    matrix: SparseMatrix,
    kind: ModelKind,
    label: String,
}

impl Liouvillian {
    /// Generic Lindblad generator −i[H, ·] + Σ rate·D[L].
    pub fn lindblad(space: &HilbertSpace, hamiltonian: Option<&Operator>, jumps: &[(Operator, f64)]) -> Result<Self> {
        let d = space.total();
        let mut sb = SuperBuilder::new(d);
        if let Some(h) = hamiltonian {
            check_space(h, space)?;
            sb.hamiltonian(h.matrix());
        }
        for (op, rate) in jumps {
            check_space(op, space)?;
            if !(*rate >= 0.0) {
                return Err(Error::InvalidParameter(format!("jump rate {rate} must be >= 0")));
            }
            sb.dissipator(op.matrix(), *rate);
        }
        Ok(Self::from_builder(space.clone(), sb, ModelKind::Custom, "lindblad".into()))
    }

    /// The zero generator; every state is stationary.
    pub fn zero(space: &HilbertSpace) -> Self {
        let d = space.total();
        Self::from_builder(space.clone(), SuperBuilder::new(d), ModelKind::Custom, "zero".into())
    }

    fn from_builder(space: HilbertSpace, sb: SuperBuilder, kind: ModelKind, label: String) -> Self {
        Self { space, matrix: sb.finish(), kind, label }
    }

    pub fn space(&self) -> &HilbertSpace {
        &self.space
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn supermatrix(&self) -> &SparseMatrix {
        &self.matrix
    }

    /// Hilbert-space dimension d (the supermatrix is d²×d²).
    pub fn hilbert_dim(&self) -> usize {
        self.space.total()
    }

    pub fn apply(&self, rho: &CMatrix) -> CMatrix {
        let d = self.hilbert_dim();
        assert_eq!(rho.nrows(), d, "density matrix dimension mismatch");
        let mut out = vec![c(0.0); d * d];
        self.matrix.mul_vec_into(rho.as_slice(), &mut out);
        CMatrix::from_column_slice(d, d, &out)
    }

    pub fn apply_state(&self, rho: &DensityMatrix) -> CMatrix {
        self.apply(rho.matrix())
    }

    /// Frobenius norm of the supermatrix.
    pub fn norm(&self) -> f64 {
        self.matrix.frobenius_norm()
    }

    pub fn to_dense(&self) -> CMatrix {
        self.matrix.to_dense()
    }
}

fn check_space(op: &Operator, space: &HilbertSpace) -> Result<()> {
    if op.space() != space {
        return Err(Error::Dimension {
            index: 0,
            reason: format!("operator on {} used in a model on {}", op.space(), space),
        });
    }
    Ok(())
}
