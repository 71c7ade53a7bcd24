use nalgebra::{DVector, SymmetricEigen};

use super::{CMatrix, C64};

/// Eigen-decomposition of the Hermitian part of `m`, eigenvalues ascending.
pub fn hermitian_eigen(m: &CMatrix) -> (DVector<f64>, CMatrix) {
    let herm = (m + m.adjoint()).scale(0.5);
    let eig = SymmetricEigen::new(herm);
    let n = eig.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = DVector::from_iterator(n, order.iter().map(|&i| eig.eigenvalues[i]));
    let mut vectors = CMatrix::zeros(n, n);
    for (col, &i) in order.iter().enumerate() {
        vectors.set_column(col, &eig.eigenvectors.column(i));
    }
    (values, vectors)
}

pub fn hermitian_eigenvalues(m: &CMatrix) -> DVector<f64> {
    hermitian_eigen(m).0
}

/// Square root of a positive-semidefinite Hermitian matrix; negative
/// eigenvalues from round-off are clamped to zero.
pub fn psd_sqrt(m: &CMatrix) -> CMatrix {
    let (values, vectors) = hermitian_eigen(m);
    let roots = values.map(|v| C64::new(v.max(0.0).sqrt(), 0.0));
    &vectors * CMatrix::from_diagonal(&roots) * vectors.adjoint()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn eigenvalues_ascending_for_complex_hermitian() {
        // sigma_y has eigenvalues -1, 1
        let m = CMatrix::from_row_slice(
            2,
            2,
            &[C64::new(0.0, 0.0), C64::new(0.0, -1.0), C64::new(0.0, 1.0), C64::new(0.0, 0.0)],
        );
        let (vals, vecs) = hermitian_eigen(&m);
        assert_relative_eq!(vals[0], -1.0, epsilon = 1e-14);
        assert_relative_eq!(vals[1], 1.0, epsilon = 1e-14);
        let back = &vecs * CMatrix::from_diagonal(&vals.map(|v| C64::new(v, 0.0))) * vecs.adjoint();
        assert!((back - m).norm() < 1e-13);
    }

    #[test]
    fn sqrt_squares_back() {
        let m = CMatrix::from_row_slice(
            2,
            2,
            &[C64::new(2.0, 0.0), C64::new(0.5, 0.5), C64::new(0.5, -0.5), C64::new(1.0, 0.0)],
        );
        let r = psd_sqrt(&m);
        assert!((&r * &r - m).norm() < 1e-13);
    }
}
