use std::ops::{Add, Mul, Sub};

use super::{c, layout, CMatrix, HilbertSpace, C64};
use crate::error::{Error, Result};

/// Square complex matrix acting on a composite Hilbert space.
///
/// Arithmetic operators panic when the two operands live on different
/// spaces; builders in this crate only combine operators created on the
/// same model space.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    space: HilbertSpace,
    matrix: CMatrix,
}

impl Operator {
    pub fn new(space: HilbertSpace, matrix: CMatrix) -> Result<Self> {
        let d = space.total();
        if matrix.nrows() != d || matrix.ncols() != d {
            return Err(Error::Dimension {
                index: 0,
                reason: format!(
                    "matrix is {}x{} but space {} has dimension {}",
                    matrix.nrows(),
                    matrix.ncols(),
                    space,
                    d
                ),
            });
        }
        Ok(Self { space, matrix })
    }

    pub fn identity(space: &HilbertSpace) -> Self {
        let d = space.total();
        Self { space: space.clone(), matrix: CMatrix::identity(d, d) }
    }

    pub fn zeros(space: &HilbertSpace) -> Self {
        let d = space.total();
        Self { space: space.clone(), matrix: CMatrix::zeros(d, d) }
    }

    pub fn space(&self) -> &HilbertSpace {
        &self.space
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn dagger(&self) -> Self {
        Self { space: self.space.clone(), matrix: self.matrix.adjoint() }
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self { space: self.space.clone(), matrix: self.matrix.scale(factor) }
    }

    pub fn scale_complex(&self, factor: C64) -> Self {
        Self { space: self.space.clone(), matrix: &self.matrix * factor }
    }

    /// [A, B] = AB - BA.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    fn assert_same_space(&self, other: &Self) {
        assert_eq!(self.space, other.space, "operators act on different spaces");
    }
}

impl Mul for &Operator {
    type Output = Operator;
    fn mul(self, rhs: &Operator) -> Operator {
        self.assert_same_space(rhs);
        Operator { space: self.space.clone(), matrix: &self.matrix * &rhs.matrix }
    }
}

impl Add for &Operator {
    type Output = Operator;
    fn add(self, rhs: &Operator) -> Operator {
        self.assert_same_space(rhs);
        Operator { space: self.space.clone(), matrix: &self.matrix + &rhs.matrix }
    }
}

impl Sub for &Operator {
    type Output = Operator;
    fn sub(self, rhs: &Operator) -> Operator {
        self.assert_same_space(rhs);
        Operator { space: self.space.clone(), matrix: &self.matrix - &rhs.matrix }
    }
}

/// One slot of a Kronecker product.
#[derive(Debug, Clone)]
pub enum Factor {
    Op(Operator),
    Identity(usize),
}

/// Kronecker product of `factors` in the given order.
pub fn tensor(factors: &[Factor]) -> Result<Operator> {
    if factors.is_empty() {
        return Err(Error::InvalidSelection("tensor of an empty factor list".into()));
    }
    let mut dims = Vec::new();
    let mut matrix = CMatrix::identity(1, 1);
    for (index, factor) in factors.iter().enumerate() {
        match factor {
            Factor::Op(op) => {
                dims.extend_from_slice(op.space.dims());
                matrix = matrix.kronecker(&op.matrix);
            }
            Factor::Identity(d) => {
                if *d < 2 {
                    return Err(Error::Dimension {
                        index,
                        reason: format!("identity dimension {d} is below 2"),
                    });
                }
                dims.push(*d);
                matrix = matrix.kronecker(&CMatrix::identity(*d, *d));
            }
        }
    }
    Operator::new(HilbertSpace::new(dims)?, matrix)
}

/// Place `op` on the factors of `space` starting at `index`, identities elsewhere.
pub fn embed(op: &Operator, space: &HilbertSpace, index: usize) -> Result<Operator> {
    let width = op.space.num_factors();
    if index + width > space.num_factors() {
        return Err(Error::Dimension {
            index,
            reason: format!("operator on {} does not fit into {}", op.space, space),
        });
    }
    for (k, &d) in op.space.dims().iter().enumerate() {
        if space.dims()[index + k] != d {
            return Err(Error::Dimension {
                index: index + k,
                reason: format!("operator factor has dimension {d}, space has {}", space.dims()[index + k]),
            });
        }
    }
    let mut factors = Vec::with_capacity(space.num_factors() - width + 1);
    factors.extend(space.dims()[..index].iter().map(|&d| Factor::Identity(d)));
    factors.push(Factor::Op(op.clone()));
    factors.extend(space.dims()[index + width..].iter().map(|&d| Factor::Identity(d)));
    tensor(&factors)
}

/// Truncated bosonic annihilation operator, ⟨k-1|a|k⟩ = √k.
///
/// The creation operator is its exact adjoint, so a† maps the top Fock
/// level to zero.
pub fn annihilation(n_max: usize) -> Result<Operator> {
    if n_max < 2 {
        return Err(Error::InvalidParameter(format!("Fock truncation n_max = {n_max} is below 2")));
    }
    let mut m = CMatrix::zeros(n_max, n_max);
    for k in 1..n_max {
        m[(k - 1, k)] = c((k as f64).sqrt());
    }
    Operator::new(HilbertSpace::new(vec![n_max])?, m)
}

/// σ⁻ = |g⟩⟨e|.
pub fn sigma_minus() -> Operator {
    let mut m = CMatrix::zeros(2, 2);
    m[(layout::GROUND, layout::EXCITED)] = c(1.0);
    Operator { space: qubit_space(), matrix: m }
}

/// σ⁺ = |e⟩⟨g|.
pub fn sigma_plus() -> Operator {
    sigma_minus().dagger()
}

fn qubit_space() -> HilbertSpace {
    HilbertSpace::new(vec![2]).expect("qubit space")
}

/// Bogoliubov modes ã = √(N+1) a + √N b†, b̃ = √(N+1) b + √N a† on the
/// full model space `[2, 2, n_max, n_max]`, built from the truncated
/// ladder operators.
pub fn bogoliubov_modes(n_photon: f64, n_max: usize) -> Result<(Operator, Operator)> {
    if !(n_photon >= 0.0) || !n_photon.is_finite() {
        return Err(Error::InvalidParameter(format!("mean photon number N = {n_photon} must be >= 0")));
    }
    let space = HilbertSpace::new(vec![2, 2, n_max, n_max])?;
    let mode = annihilation(n_max)?;
    let a = embed(&mode, &space, layout::MODE_A)?;
    let b = embed(&mode, &space, layout::MODE_B)?;
    let u = (n_photon + 1.0).sqrt();
    let v = n_photon.sqrt();
    let a_t = &a.scale(u) + &b.dagger().scale(v);
    let b_t = &b.scale(u) + &a.dagger().scale(v);
    Ok((a_t, b_t))
}
