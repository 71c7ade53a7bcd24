//! Complex operator algebra on tensor-product Hilbert spaces.
//!
//! Composite spaces are ordered lists of factor dimensions. Kronecker
//! products always follow the declared factor order, so factor 0 is the
//! most significant index of the flattened basis.

mod linalg;
mod operator;
mod space;
mod state;

pub use linalg::{hermitian_eigen, hermitian_eigenvalues, psd_sqrt};
pub use operator::{
    annihilation, bogoliubov_modes, embed, sigma_minus, sigma_plus, tensor, Factor, Operator,
};
pub use space::HilbertSpace;
pub use state::{partial_trace, DensityMatrix, StateVector};
pub(crate) use state::PSD_FLOOR;

pub type C64 = num_complex::Complex64;
pub type CMatrix = nalgebra::DMatrix<C64>;
pub type CVector = nalgebra::DVector<C64>;

/// Factor order of the full atom-cavity model: atom A, atom B, cavity a, cavity b.
pub mod layout {
    pub const ATOM_A: usize = 0;
    pub const ATOM_B: usize = 1;
    pub const MODE_A: usize = 2;
    pub const MODE_B: usize = 3;

    /// Qubit basis index of the ground state |g⟩.
    pub const GROUND: usize = 0;
    /// Qubit basis index of the excited state |e⟩.
    pub const EXCITED: usize = 1;
}

pub(crate) fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}
