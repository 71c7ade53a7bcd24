//! Entanglement measures: Wootters concurrence and entanglement of
//! formation for qubit pairs, entropy of entanglement for pure states.

use crate::algebra::{hermitian_eigen, partial_trace, CMatrix, DensityMatrix, StateVector};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntanglementMethod {
    Concurrence,
    PureStateEntropy,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntanglementReport {
    pub concurrence: f64,
    pub eof_bits: f64,
    pub method: EntanglementMethod,
}

/// Binary entropy in bits, with h(0) = h(1) = 0.
pub fn binary_entropy(x: f64) -> f64 {
    let term = |p: f64| if p > 0.0 { -p * p.log2() } else { 0.0 };
    term(x) + term(1.0 - x)
}

fn check_two_qubits(rho: &DensityMatrix) -> Result<()> {
    if rho.space().dims() != [2, 2] {
        return Err(Error::Dimension {
            index: 0,
            reason: format!("concurrence needs a [2,2] state, got {}", rho.space()),
        });
    }
    Ok(())
}

/// C = max(0, λ₁ − λ₂ − λ₃ − λ₄) with λ the decreasing square roots of
/// the spectrum of ρ(σy⊗σy)ρ*(σy⊗σy).
///
/// The λ are obtained as singular values of Wᵀ(σy⊗σy)W, where the
/// columns of W are the eigenvectors of ρ scaled by √pᵢ; this avoids the
/// square root of near-zero eigenvalues that limits the √ρ ρ̃ √ρ route.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    check_two_qubits(rho)?;
    let (vals, vecs) = hermitian_eigen(rho.matrix());
    let w = CMatrix::from_fn(4, 4, |i, j| vecs[(i, j)] * vals[j].max(0.0).sqrt());
    // σy⊗σy is the anti-diagonal with signs (−1, 1, 1, −1)
    let sign = [-1.0, 1.0, 1.0, -1.0];
    let flipped = CMatrix::from_fn(4, 4, |i, j| w[(3 - i, j)] * sign[i]);
    let tau = w.transpose() * flipped;
    let mut lambdas: Vec<f64> = tau.singular_values().iter().copied().collect();
    lambdas.sort_by(|a, b| b.total_cmp(a));
    Ok((lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).clamp(0.0, 1.0))
}

/// Entanglement of formation in ebits from the concurrence.
pub fn eof_from_concurrence(c: f64) -> f64 {
    let c = c.clamp(0.0, 1.0);
    binary_entropy((1.0 + (1.0 - c * c).max(0.0).sqrt()) / 2.0)
}

pub fn eof_two_qubit(rho: &DensityMatrix) -> Result<f64> {
    Ok(eof_from_concurrence(concurrence(rho)?))
}

pub fn entanglement_report(rho: &DensityMatrix) -> Result<EntanglementReport> {
    let c = concurrence(rho)?;
    Ok(EntanglementReport { concurrence: c, eof_bits: eof_from_concurrence(c), method: EntanglementMethod::Concurrence })
}

/// Von Neumann entropy (bits) of the reduction of `psi` onto the
/// factors in `subset` (strictly increasing).
pub fn entanglement_entropy(psi: &StateVector, subset: &[usize]) -> Result<f64> {
    partial_trace(&psi.to_density(), subset).map(|r| r.entropy_bits())
}

/// Entropy of entanglement of a two-mode squeezed vacuum with mean
/// photon number N per mode: (N+1)log₂(N+1) − N log₂N.
pub fn squeezed_state_eof(n: f64) -> Result<f64> {
    if !(n >= 0.0) || !n.is_finite() {
        return Err(Error::InvalidParameter(format!("N = {n} must be finite and >= 0")));
    }
    if n == 0.0 {
        return Ok(0.0);
    }
    Ok((n + 1.0) * (n + 1.0).log2() - n * n.log2())
}

/// Applies U_A ⊗ U_B to a two-qubit state.
pub fn apply_local_unitaries(rho: &DensityMatrix, u_a: &CMatrix, u_b: &CMatrix) -> Result<DensityMatrix> {
    check_two_qubits(rho)?;
    let u = u_a.kronecker(u_b);
    let m = &u * rho.matrix() * u.adjoint();
    DensityMatrix::new(rho.space().clone(), (&m + m.adjoint()).scale(0.5))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{c, hermitian_eigenvalues, CVector, HilbertSpace, C64};
    use crate::models::{dark_state, network_dark_state, two_mode_squeezed_vacuum};
    use proptest::prelude::*;

    fn qubits() -> HilbertSpace {
        HilbertSpace::new(vec![2, 2]).unwrap()
    }

    fn pure(amps: [C64; 4]) -> StateVector {
        StateVector::normalized(qubits(), CVector::from_row_slice(&amps)).unwrap()
    }

    fn unitary(seed: &[f64]) -> CMatrix {
        let m = CMatrix::from_fn(2, 2, |i, j| C64::new(seed[2 * i + j], seed[4 + 2 * i + j]));
        m.qr().q()
    }

    #[test]
    fn bell_and_product_states() {
        let h = 0.5f64.sqrt();
        let bell = pure([c(h), c(0.0), c(0.0), c(h)]).to_density();
        assert!((concurrence(&bell).unwrap() - 1.0).abs() < 1e-12);
        assert!((eof_two_qubit(&bell).unwrap() - 1.0).abs() < 1e-12);
        let product = pure([c(0.6), c(0.8), c(0.0), c(0.0)]).to_density();
        assert!(concurrence(&product).unwrap() < 1e-12);
        assert_eq!(eof_two_qubit(&DensityMatrix::maximally_mixed(qubits())).unwrap(), 0.0);
    }

    #[test]
    fn dark_state_values() {
        let rho = dark_state(1.0).unwrap().to_density();
        assert!((concurrence(&rho).unwrap() - 2.0 * 2f64.sqrt() / 3.0).abs() < 1e-10);
        assert!((eof_two_qubit(&rho).unwrap() - 0.918_295_834_054_489_6).abs() < 1e-9);
        for n in [0.2, 0.7, 3.0] {
            let rho = dark_state(n).unwrap().to_density();
            let expect = 2.0 * (n * (n + 1.0f64)).sqrt() / (2.0 * n + 1.0);
            assert!((concurrence(&rho).unwrap() - expect).abs() < 1e-10);
        }
    }

    #[test]
    fn werner_boundary_is_separable() {
        let h = 0.5f64.sqrt();
        let bell = pure([c(h), c(0.0), c(0.0), c(h)]).to_density();
        let p = 1.0 / 3.0;
        let m = bell.matrix() * c(p) + CMatrix::identity(4, 4) * c((1.0 - p) / 4.0);
        // partial transpose on the second qubit has a zero eigenvalue here
        let pt = CMatrix::from_fn(4, 4, |i, j| m[((i & 2) | (j & 1), (j & 2) | (i & 1))]);
        assert!(hermitian_eigenvalues(&pt)[0].abs() < 1e-12);
        let rho = DensityMatrix::new(qubits(), m).unwrap();
        assert!(eof_two_qubit(&rho).unwrap() < 1e-10);
        let entangled = DensityMatrix::new(qubits(), bell.matrix() * c(0.4) + CMatrix::identity(4, 4) * c(0.15)).unwrap();
        assert!((concurrence(&entangled).unwrap() - 0.1).abs() < 1e-10);
    }

    #[test]
    fn wrong_shape_rejected() {
        let rho = DensityMatrix::maximally_mixed(HilbertSpace::new(vec![2, 3]).unwrap());
        assert!(matches!(concurrence(&rho), Err(Error::Dimension { .. })));
    }

    #[test]
    fn entropy_of_pure_states() {
        let h = 0.5f64.sqrt();
        assert!((entanglement_entropy(&pure([c(h), c(0.0), c(0.0), c(h)]), &[0]).unwrap() - 1.0).abs() < 1e-12);
        assert!(entanglement_entropy(&pure([c(0.6), c(0.8), c(0.0), c(0.0)]), &[1]).unwrap() < 1e-12);
    }

    #[test]
    fn network_bipartition_entropy() {
        for n in [0.5, 1.0, 50.0] {
            let psi = network_dark_state(n).unwrap();
            let expect = binary_entropy((n + 1.0) / (2.0 * n + 1.0));
            assert!((entanglement_entropy(&psi, &[0]).unwrap() - expect).abs() < 1e-10);
            assert!((entanglement_entropy(&psi, &[2]).unwrap() - expect).abs() < 1e-10);
        }
        assert!(entanglement_entropy(&network_dark_state(50.0).unwrap(), &[0]).unwrap() > 0.999);
    }

    #[test]
    fn squeezed_state_entropy() {
        assert_eq!(squeezed_state_eof(0.0).unwrap(), 0.0);
        assert!((squeezed_state_eof(1.0).unwrap() - 2.0).abs() < 1e-15);
        assert!(squeezed_state_eof(-1.0).is_err());
        for n in [0.3, 1.0] {
            let psi = two_mode_squeezed_vacuum(n, 60).unwrap();
            let s = entanglement_entropy(&psi, &[0]).unwrap();
            assert!((s - squeezed_state_eof(n).unwrap()).abs() < 1e-8, "N={n}");
        }
    }

    #[test]
    fn eof_strictly_increasing_in_concurrence() {
        let mut prev = eof_from_concurrence(0.0);
        for k in 1..=1000 {
            let e = eof_from_concurrence(k as f64 / 1000.0);
            assert!(e > prev);
            prev = e;
        }
        assert!((prev - 1.0).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn local_unitary_invariance(
            a in prop::array::uniform8(-1.0f64..1.0),
            b in prop::array::uniform8(-1.0f64..1.0),
            s in prop::array::uniform8(-1.0f64..1.0),
            mix in 0.0f64..0.999,
        ) {
            let psi = pure([C64::new(s[0], s[1]), C64::new(s[2], s[3]), C64::new(s[4], s[5]), C64::new(s[6], s[7] + 1e-3)]);
            let m = psi.to_density().matrix() * c(mix) + CMatrix::identity(4, 4) * c((1.0 - mix) / 4.0);
            let rho = DensityMatrix::new(qubits(), m).unwrap();
            let moved = apply_local_unitaries(&rho, &unitary(&a), &unitary(&b)).unwrap();
            prop_assert!((concurrence(&rho).unwrap() - concurrence(&moved).unwrap()).abs() < 1e-10);
        }

        #[test]
        fn pure_state_eof_equals_entropy(s in prop::array::uniform8(-1.0f64..1.0)) {
            let psi = pure([C64::new(s[0], s[1]), C64::new(s[2], s[3]), C64::new(s[4], s[5]), C64::new(s[6], s[7] + 1e-3)]);
            let eof = eof_two_qubit(&psi.to_density()).unwrap();
            let ent = entanglement_entropy(&psi, &[0]).unwrap();
            prop_assert!((eof - ent).abs() < 1e-10, "eof {} entropy {}", eof, ent);
            prop_assert!((0.0..=1.0).contains(&eof));
        }
    }
}
