//! Gauss–Hermite quadrature from the Golub–Welsch eigenproblem.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};

/// Nodes and weights for ∫ e^{−x²} f(x) dx ≈ Σ wᵢ f(xᵢ), nodes ascending.
pub fn gauss_hermite(order: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if order == 0 {
        return Err(Error::InvalidParameter("quadrature order must be >= 1".into()));
    }
    let mut jacobi = DMatrix::<f64>::zeros(order, order);
    for k in 1..order {
        let b = (k as f64 / 2.0).sqrt();
        jacobi[(k, k - 1)] = b;
        jacobi[(k - 1, k)] = b;
    }
    let eig = SymmetricEigen::new(jacobi);
    let mut pairs: Vec<(f64, f64)> = (0..order)
        .map(|i| {
            let v0 = eig.eigenvectors[(0, i)];
            (eig.eigenvalues[i], std::f64::consts::PI.sqrt() * v0 * v0)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    // the rule is symmetric; enforce it exactly
    for i in 0..order / 2 {
        let j = order - 1 - i;
        let x = 0.5 * (pairs[j].0 - pairs[i].0);
        let w = 0.5 * (pairs[i].1 + pairs[j].1);
        pairs[i] = (-x, w);
        pairs[j] = (x, w);
    }
    if order % 2 == 1 {
        pairs[order / 2].0 = 0.0;
    }
    Ok(pairs.into_iter().unzip())
}

/// Points θᵢ and probabilities pᵢ with Σ pᵢ f(θᵢ) ≈ E[f(θ)] for
/// θ ~ Normal(0, s²).
pub fn gaussian_rule(order: usize, s: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    if !(s >= 0.0) || !s.is_finite() {
        return Err(Error::InvalidParameter(format!("spread s = {s} must be finite and >= 0")));
    }
    let (x, w) = gauss_hermite(order)?;
    let norm = std::f64::consts::PI.sqrt();
    Ok((x.iter().map(|xi| std::f64::consts::SQRT_2 * s * xi).collect(), w.iter().map(|wi| wi / norm).collect()))
}
