use super::{c, hermitian_eigen, hermitian_eigenvalues, psd_sqrt, CMatrix, CVector, HilbertSpace};
use crate::error::{Error, Result};

const NORM_TOL: f64 = 1e-12;
const HERMITIAN_TOL: f64 = 1e-10;
const TRACE_TOL: f64 = 1e-10;
/// Most negative eigenvalue accepted as numerical noise.
pub(crate) const PSD_FLOOR: f64 = -1e-8;

/// Normalized pure state on a composite space.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    space: HilbertSpace,
    amplitudes: CVector,
}

impl StateVector {
    pub fn new(space: HilbertSpace, amplitudes: CVector) -> Result<Self> {
        if amplitudes.len() != space.total() {
            return Err(Error::Dimension {
                index: 0,
                reason: format!("{} amplitudes for space {}", amplitudes.len(), space),
            });
        }
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidState(format!("state norm {norm} differs from 1")));
        }
        Ok(Self { space, amplitudes })
    }

    /// Normalizes `amplitudes` before wrapping them.
    pub fn normalized(space: HilbertSpace, amplitudes: CVector) -> Result<Self> {
        let norm = amplitudes.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidState("cannot normalize a zero vector".into()));
        }
        Self::new(space, amplitudes.unscale(norm))
    }

    /// Basis state with the given per-factor indices.
    pub fn basis(space: HilbertSpace, indices: &[usize]) -> Result<Self> {
        if indices.len() != space.num_factors() {
            return Err(Error::InvalidSelection(format!(
                "{} indices for {} factors",
                indices.len(),
                space.num_factors()
            )));
        }
        let mut flat = 0;
        for (k, (&i, stride)) in indices.iter().zip(space.strides()).enumerate() {
            if i >= space.dims()[k] {
                return Err(Error::Dimension { index: k, reason: format!("level {i} out of range") });
            }
            flat += i * stride;
        }
        let mut amps = CVector::zeros(space.total());
        amps[flat] = c(1.0);
        Self::new(space, amps)
    }

    pub fn space(&self) -> &HilbertSpace {
        &self.space
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    pub fn tensor(&self, other: &Self) -> Self {
        Self {
            space: self.space.concat(&other.space),
            amplitudes: self.amplitudes.kronecker(&other.amplitudes),
        }
    }

    pub fn to_density(&self) -> DensityMatrix {
        DensityMatrix {
            space: self.space.clone(),
            matrix: &self.amplitudes * self.amplitudes.adjoint(),
        }
    }
}

/// Hermitian, unit-trace, positive-semidefinite operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    space: HilbertSpace,
    matrix: CMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity (1e-10), unit trace (1e-10) and numerical
    /// positivity (minimum eigenvalue ≥ -1e-8).
    pub fn new(space: HilbertSpace, matrix: CMatrix) -> Result<Self> {
        let d = space.total();
        if matrix.nrows() != d || matrix.ncols() != d {
            return Err(Error::Dimension {
                index: 0,
                reason: format!("{}x{} matrix for space {}", matrix.nrows(), matrix.ncols(), space),
            });
        }
        let herm = (&matrix - matrix.adjoint()).camax();
        if herm > HERMITIAN_TOL {
            return Err(Error::InvalidState(format!("not Hermitian (deviation {herm:.3e})")));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::InvalidState(format!("trace {tr} differs from 1")));
        }
        let min_eig = hermitian_eigenvalues(&matrix)[0];
        if min_eig < PSD_FLOOR {
            return Err(Error::NotPositive { min_eig });
        }
        Ok(Self { space, matrix })
    }

    pub fn maximally_mixed(space: HilbertSpace) -> Self {
        let d = space.total();
        Self { space, matrix: CMatrix::identity(d, d).unscale(d as f64) }
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

    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.matrix).iter().copied().collect()
    }

    pub fn tensor(&self, other: &Self) -> Self {
        Self {
            space: self.space.concat(&other.space),
            matrix: self.matrix.kronecker(&other.matrix),
        }
    }

    /// ⟨ψ|ρ|ψ⟩.
    pub fn fidelity_pure(&self, psi: &StateVector) -> Result<f64> {
        if psi.space() != &self.space {
            return Err(Error::InvalidSelection(format!("state on {} vs {}", psi.space(), self.space)));
        }
        let v = psi.amplitudes();
        Ok((v.adjoint() * &self.matrix * v)[(0, 0)].re)
    }

    /// Uhlmann fidelity (Tr √(√ρ σ √ρ))².
    pub fn fidelity(&self, other: &Self) -> Result<f64> {
        self.check_same_space(other)?;
        let s = psd_sqrt(&self.matrix);
        let inner = &s * &other.matrix * &s;
        let tr: f64 = hermitian_eigenvalues(&inner).iter().map(|v| v.max(0.0).sqrt()).sum();
        Ok(tr * tr)
    }

    /// ½ ‖ρ − σ‖₁.
    pub fn trace_distance(&self, other: &Self) -> Result<f64> {
        self.check_same_space(other)?;
        let diff = &self.matrix - &other.matrix;
        Ok(0.5 * hermitian_eigenvalues(&diff).iter().map(|v| v.abs()).sum::<f64>())
    }

    /// Von Neumann entropy in bits.
    pub fn entropy_bits(&self) -> f64 {
        hermitian_eigen(&self.matrix)
            .0
            .iter()
            .filter(|&&p| p > 1e-300)
            .map(|&p| -p * p.log2())
            .sum::<f64>()
            .max(0.0)
    }

    fn check_same_space(&self, other: &Self) -> Result<()> {
        if self.space != other.space {
            return Err(Error::InvalidSelection(format!("states on {} vs {}", self.space, other.space)));
        }
        Ok(())
    }
}

/// Reduced state on the factors listed in `keep` (strictly increasing).
pub fn partial_trace(state: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let space = state.space();
    let n = space.num_factors();
    if keep.is_empty() {
        return Err(Error::InvalidSelection("keep set is empty".into()));
    }
    if keep.iter().any(|&k| k >= n) || keep.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidSelection(format!(
            "keep set {keep:?} must be strictly increasing indices below {n}"
        )));
    }
    let traced: Vec<usize> = (0..n).filter(|k| !keep.contains(k)).collect();
    let kept_space = space.subspace(keep)?;
    if traced.is_empty() {
        return Ok(DensityMatrix { space: kept_space, matrix: state.matrix.clone() });
    }
    let strides = space.strides();
    let offsets = |factors: &[usize]| -> Vec<usize> {
        // flat offsets of every multi-index over `factors`, first factor slowest
        let mut out = vec![0usize];
        for &f in factors {
            let mut next = Vec::with_capacity(out.len() * space.dims()[f]);
            for &base in &out {
                for i in 0..space.dims()[f] {
                    next.push(base + i * strides[f]);
                }
            }
            out = next;
        }
        out
    };
    let kept = offsets(keep);
    let rest = offsets(&traced);
    let dk = kept.len();
    let m = state.matrix();
    let reduced = CMatrix::from_fn(dk, dk, |r, col| {
        rest.iter().map(|&t| m[(kept[r] + t, kept[col] + t)]).sum()
    });
    Ok(DensityMatrix { space: kept_space, matrix: reduced })
}
