use crate::error::{Error, Result};

/// Slack allowed on the squeezing bound M ≤ √(N(N+1)).
pub const SQUEEZING_BOUND_TOL: f64 = 1e-12;

/// Broadband two-mode squeezed drive: mean photon number `n` and
/// two-mode correlation `m` (real, nonnegative).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezingParams {
    n: f64,
    m: f64,
}

impl SqueezingParams {
    pub fn new(n: f64, m: f64) -> Result<Self> {
        if !(n >= 0.0) || !n.is_finite() {
            return Err(Error::InvalidParameter(format!("N = {n} must be finite and >= 0")));
        }
        if !(m >= 0.0) || !m.is_finite() {
            return Err(Error::InvalidParameter(format!("M = {m} must be finite and >= 0")));
        }
        let bound = perfect_correlation(n);
        if m > bound + SQUEEZING_BOUND_TOL {
            return Err(Error::SqueezingBound { n, m, bound });
        }
        Ok(Self { n, m })
    }

    /// M = √(N(N+1)).
    pub fn perfect(n: f64) -> Result<Self> {
        Self::new(n, perfect_correlation(n.max(0.0)))
    }

    pub fn vacuum() -> Self {
        Self { n: 0.0, m: 0.0 }
    }

    pub fn n(&self) -> f64 {
        self.n
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn is_perfect(&self) -> bool {
        (self.m - perfect_correlation(self.n)).abs() <= SQUEEZING_BOUND_TOL
    }
}

pub fn perfect_correlation(n: f64) -> f64 {
    (n * (n + 1.0)).sqrt()
}

/// Atom–cavity couplings, cavity field decay and spontaneous emission.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    pub g_a: f64,
    pub g_b: f64,
    pub kappa: f64,
    pub gamma_sp: f64,
}

impl PhysicalParams {
    pub fn new(g_a: f64, g_b: f64, kappa: f64, gamma_sp: f64) -> Result<Self> {
        if !(kappa > 0.0) || !kappa.is_finite() {
            return Err(Error::InvalidParameter(format!("kappa = {kappa} must be positive")));
        }
        // negative couplings arise from standing-wave positions past a node
        if !g_a.is_finite() || !g_b.is_finite() {
            return Err(Error::InvalidParameter("couplings must be finite".into()));
        }
        if !(gamma_sp >= 0.0) || !gamma_sp.is_finite() {
            return Err(Error::InvalidParameter(format!("Gamma = {gamma_sp} must be >= 0")));
        }
        Ok(Self { g_a, g_b, kappa, gamma_sp })
    }

    pub fn symmetric(g: f64, kappa: f64, gamma_sp: f64) -> Result<Self> {
        if g < 0.0 {
            return Err(Error::InvalidParameter(format!("g = {g} must be >= 0")));
        }
        Self::new(g, g, kappa, gamma_sp)
    }

    /// Symmetric couplings with Γ chosen so that Γκ/g² = `epsilon`.
    pub fn from_epsilon(g: f64, kappa: f64, epsilon: f64) -> Result<Self> {
        if !(epsilon >= 0.0) || !epsilon.is_finite() {
            return Err(Error::InvalidParameter(format!("epsilon = {epsilon} must be >= 0")));
        }
        Self::symmetric(g, kappa, epsilon * g * g / kappa)
    }

    /// Geometric-mean coupling √(g_a g_b) (sign of the product kept out).
    pub fn g(&self) -> f64 {
        (self.g_a * self.g_b).abs().sqrt()
    }

    pub fn is_symmetric(&self) -> bool {
        self.g_a == self.g_b
    }

    /// ε = Γκ/g²; infinite when the coupling vanishes and Γ > 0.
    pub fn epsilon(&self) -> f64 {
        let g2 = self.g_a * self.g_b;
        if self.gamma_sp == 0.0 {
            0.0
        } else {
            self.gamma_sp * self.kappa / g2.abs()
        }
    }

    /// Same cavity and emission rates with new couplings.
    pub fn with_couplings(&self, g_a: f64, g_b: f64) -> Self {
        Self { g_a, g_b, ..*self }
    }
}

/// Renormalized reservoir seen by the atoms after eliminating the
/// cavity modes: decay rate γ, thermal number n, correlation m.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveBathParams {
    pub gamma_eff: f64,
    pub n_eff: f64,
    pub m_eff: f64,
}

/// γ = (g²/κ)(2+ε), n = N/(1+ε/2), m = −M/(1+ε/2) for equal couplings.
pub fn effective_bath_params(phys: &PhysicalParams, sq: &SqueezingParams) -> Result<EffectiveBathParams> {
    if !phys.is_symmetric() {
        return Err(Error::InvalidParameter(
            "effective bath parameters are defined for g_a = g_b; build the asymmetric model directly".into(),
        ));
    }
    let g2 = phys.g_a * phys.g_a;
    if g2 == 0.0 {
        return Err(Error::InvalidParameter("effective bath parameters need g > 0".into()));
    }
    let eps = phys.epsilon();
    let shrink = 1.0 / (1.0 + eps / 2.0);
    Ok(EffectiveBathParams {
        gamma_eff: g2 / phys.kappa * (2.0 + eps),
        n_eff: sq.n() * shrink,
        m_eff: -sq.m() * shrink,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn squeezing_bound_enforced() {
        assert!(SqueezingParams::new(1.0, 2f64.sqrt()).is_ok());
        assert!(matches!(SqueezingParams::new(1.0, 1.5), Err(Error::SqueezingBound { .. })));
        assert!(SqueezingParams::new(-0.1, 0.0).is_err());
        assert!(SqueezingParams::perfect(0.6).unwrap().is_perfect());
    }

    #[test]
    fn bath_params_without_emission() {
        let phys = PhysicalParams::from_epsilon(0.1, 1.0, 0.0).unwrap();
        let sq = SqueezingParams::perfect(0.8).unwrap();
        let p = effective_bath_params(&phys, &sq).unwrap();
        assert_relative_eq!(p.gamma_eff, 2.0 * 0.01, max_relative = 1e-15);
        assert_eq!(p.n_eff, 0.8);
        assert_eq!(p.m_eff, -sq.m());
    }

    #[test]
    fn bath_params_at_epsilon_two() {
        let phys = PhysicalParams::from_epsilon(0.2, 1.0, 2.0).unwrap();
        let sq = SqueezingParams::perfect(1.0).unwrap();
        let p = effective_bath_params(&phys, &sq).unwrap();
        assert_relative_eq!(p.gamma_eff, 4.0 * 0.04, max_relative = 1e-14);
        assert_relative_eq!(p.n_eff, 0.5, max_relative = 1e-14);
        assert_relative_eq!(p.m_eff, -sq.m() / 2.0, max_relative = 1e-14);
    }

    #[test]
    fn bath_params_reject_asymmetric() {
        let phys = PhysicalParams::new(0.1, 0.05, 1.0, 0.0).unwrap();
        assert!(effective_bath_params(&phys, &SqueezingParams::vacuum()).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn renormalized_bath_stays_physical(n in 0.0f64..20.0, eps in 0.0f64..10.0) {
            let phys = PhysicalParams::from_epsilon(0.1, 1.0, eps).unwrap();
            let sq = SqueezingParams::perfect(n).unwrap();
            let p = effective_bath_params(&phys, &sq).unwrap();
            prop_assert!(p.m_eff * p.m_eff <= p.n_eff * (p.n_eff + 1.0) * (1.0 + 1e-12) + 1e-15);
            if eps > 0.0 && n > 0.0 {
                prop_assert!(p.n_eff < n);
                prop_assert!(p.m_eff.abs() < sq.m());
            }
        }
    }
}
