//! Local operations applied after the steady state is reached: the
//! auxiliary-level filtering measurement and the projective measurement
//! on the middle node of the network.
//!
//! Storing the excitation (|e⟩ → |g'⟩) before filtering is an exact
//! relabeling of the upper qubit level, so filters act directly on the
//! two-level states produced by the solvers.

use std::f64::consts::FRAC_PI_2;

use crate::algebra::{c, CMatrix, CVector, DensityMatrix, HilbertSpace};
use crate::entanglement::eof_two_qubit;
use crate::error::{Error, Result};

/// Filtered states with success probability below this are rejected.
pub const MIN_SUCCESS_PROB: f64 = 1e-12;
/// Grid points of the coarse angle scan on [0, π/2].
pub const SCAN_POINTS: usize = 181;
/// Golden-section stopping width in radians.
pub const ANGLE_TOL: f64 = 1e-6;
const ORTHONORMAL_TOL: f64 = 1e-10;

/// Qubit level whose amplitude the filter attenuates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FilterLevel {
    Ground,
    Excited,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FilterSpec {
    theta_a: f64,
    theta_b: f64,
    target: FilterLevel,
}

impl FilterSpec {
    pub fn new(theta_a: f64, theta_b: f64, target: FilterLevel) -> Result<Self> {
        for theta in [theta_a, theta_b] {
            if !(0.0..=FRAC_PI_2).contains(&theta) {
                return Err(Error::InvalidParameter(format!("filter angle {theta} outside [0, pi/2]")));
            }
        }
        Ok(Self { theta_a, theta_b, target })
    }

    pub fn symmetric(theta: f64, target: FilterLevel) -> Result<Self> {
        Self::new(theta, theta, target)
    }

    pub fn identity() -> Self {
        Self { theta_a: 0.0, theta_b: 0.0, target: FilterLevel::Ground }
    }

    /// Attenuates |g⟩ by (N/(N+1))^{1/4} on both atoms, which turns the
    /// dark state for photon number N into a Bell state.
    pub fn balancing(n: f64) -> Result<Self> {
        if !(n > 0.0) || !n.is_finite() {
            return Err(Error::InvalidParameter(format!("balancing angle needs N > 0, got {n}")));
        }
        Self::symmetric((n / (n + 1.0)).powf(0.25).acos(), FilterLevel::Ground)
    }

    pub fn theta_a(&self) -> f64 {
        self.theta_a
    }

    pub fn theta_b(&self) -> f64 {
        self.theta_b
    }

    pub fn target(&self) -> FilterLevel {
        self.target
    }

    fn kraus(&self) -> CMatrix {
        let single = |theta: f64| match self.target {
            FilterLevel::Ground => [theta.cos(), 1.0],
            FilterLevel::Excited => [1.0, theta.cos()],
        };
        let (a, b) = (single(self.theta_a), single(self.theta_b));
        CMatrix::from_diagonal(&CVector::from_fn(4, |k, _| c(a[k / 2] * b[k % 2])))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FilterOutcome {
    pub post_state: DensityMatrix,
    pub success_prob: f64,
    pub eof_after: f64,
}

/// No-detection branch of the filtering measurement:
/// ρ' = FρF†/p with F = F_a ⊗ F_b diagonal.
pub fn filter_state(rho: &DensityMatrix, spec: &FilterSpec) -> Result<FilterOutcome> {
    if rho.space().dims() != [2, 2] {
        return Err(Error::Dimension { index: 0, reason: format!("filter needs a [2,2] state, got {}", rho.space()) });
    }
    let f = spec.kraus();
    let m = &f * rho.matrix() * &f;
    let p = m.trace().re;
    if !(p >= MIN_SUCCESS_PROB) {
        return Err(Error::FilteredOut(p));
    }
    let post_state = DensityMatrix::new(rho.space().clone(), m.unscale(p))?;
    let eof_after = eof_two_qubit(&post_state)?;
    Ok(FilterOutcome { post_state, success_prob: p, eof_after })
}

fn score(rho: &DensityMatrix, spec: &FilterSpec) -> f64 {
    filter_state(rho, spec).map(|o| o.eof_after).unwrap_or(0.0)
}

/// Maximizes `f` on [lo, hi] assuming a single peak.
fn golden_max(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> (f64, f64) {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - r * (hi - lo);
    let mut x2 = lo + r * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > ANGLE_TOL {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

fn scan_angle(f: impl Fn(f64) -> f64) -> (f64, f64) {
    let step = FRAC_PI_2 / (SCAN_POINTS - 1) as f64;
    let mut best = (0.0, f(0.0));
    let mut best_k = 0;
    for k in 1..SCAN_POINTS {
        let theta = k as f64 * step;
        let v = f(theta);
        if v > best.1 {
            best = (theta, v);
            best_k = k;
        }
    }
    let lo = best_k.saturating_sub(1) as f64 * step;
    let hi = ((best_k + 1).min(SCAN_POINTS - 1)) as f64 * step;
    let refined = golden_max(lo, hi, &f);
    if refined.1 > best.1 {
        refined
    } else {
        best
    }
}

/// Best symmetric filter (θ_a = θ_b) over both attenuated levels.
/// Falls back to the identity filter when nothing beats the input EoF.
pub fn optimize_filter(rho: &DensityMatrix) -> Result<(FilterSpec, FilterOutcome)> {
    let mut best_spec = FilterSpec::identity();
    let mut best = filter_state(rho, &best_spec)?;
    for target in [FilterLevel::Ground, FilterLevel::Excited] {
        let (theta, value) = scan_angle(|t| score(rho, &FilterSpec { theta_a: t, theta_b: t, target }));
        if value > best.eof_after {
            let spec = FilterSpec::symmetric(theta, target)?;
            best = filter_state(rho, &spec)?;
            best_spec = spec;
        }
    }
    Ok((best_spec, best))
}

/// Two-angle search: a `points`×`points` grid per level followed by
/// alternating golden-section refinement of each angle.
pub fn optimize_filter_2d(rho: &DensityMatrix, points: usize) -> Result<(FilterSpec, FilterOutcome)> {
    if points < 3 {
        return Err(Error::InvalidParameter(format!("grid needs at least 3 points, got {points}")));
    }
    let (mut best_spec, mut best) = optimize_filter(rho)?;
    let step = FRAC_PI_2 / (points - 1) as f64;
    for target in [FilterLevel::Ground, FilterLevel::Excited] {
        let eval = |a: f64, b: f64| score(rho, &FilterSpec { theta_a: a, theta_b: b, target });
        let mut cur = (0.0, 0.0, eval(0.0, 0.0));
        for i in 0..points {
            for j in 0..points {
                let (a, b) = (i as f64 * step, j as f64 * step);
                let v = eval(a, b);
                if v > cur.2 {
                    cur = (a, b, v);
                }
            }
        }
        for _ in 0..4 {
            let lo = (cur.0 - step).max(0.0);
            let hi = (cur.0 + step).min(FRAC_PI_2);
            let (a, v) = golden_max(lo, hi, |a| eval(a, cur.1));
            if v > cur.2 {
                cur = (a, cur.1, v);
            }
            let lo = (cur.1 - step).max(0.0);
            let hi = (cur.1 + step).min(FRAC_PI_2);
            let (b, v) = golden_max(lo, hi, |b| eval(cur.0, b));
            if v > cur.2 {
                cur = (cur.0, b, v);
            }
        }
        if cur.2 > best.eof_after {
            let spec = FilterSpec::new(cur.0, cur.1, target)?;
            best = filter_state(rho, &spec)?;
            best_spec = spec;
        }
    }
    Ok((best_spec, best))
}

/// Orthonormal basis of node B's four ground levels |i,j⟩ (index 2i+j).
#[derive(Debug, Clone, PartialEq)]
pub struct NodeBasis {
    labels: Vec<String>,
    vectors: Vec<CVector>,
}

impl NodeBasis {
    pub fn new(labels: Vec<String>, vectors: Vec<CVector>) -> Result<Self> {
        if vectors.len() != 4 || labels.len() != 4 || vectors.iter().any(|v| v.len() != 4) {
            return Err(Error::Dimension { index: 1, reason: "node B basis needs four 4-component vectors".into() });
        }
        let mut worst: f64 = 0.0;
        for (i, u) in vectors.iter().enumerate() {
            for (j, v) in vectors.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((u.dotc(v) - c(target)).norm());
            }
        }
        if worst > ORTHONORMAL_TOL {
            return Err(Error::NotOrthonormal(worst));
        }
        Ok(Self { labels, vectors })
    }

    /// {|0,0⟩, |1,1⟩, (|0,1⟩ ± |1,0⟩)/√2}.
    pub fn bell() -> Self {
        let h = 0.5f64.sqrt();
        let v = |a: [f64; 4]| CVector::from_fn(4, |k, _| c(a[k]));
        Self {
            labels: ["00", "11", "psi+", "psi-"].iter().map(|s| s.to_string()).collect(),
            vectors: vec![v([1.0, 0.0, 0.0, 0.0]), v([0.0, 0.0, 0.0, 1.0]), v([0.0, h, h, 0.0]), v([0.0, h, -h, 0.0])],
        }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NodeOutcome {
    pub label: String,
    pub probability: f64,
    /// Conditional A–C state; `None` when the outcome has probability
    /// below [`MIN_SUCCESS_PROB`].
    pub post_state: Option<DensityMatrix>,
}

/// Projective measurement of the middle factor of a `[2, 4, 2]` state.
pub fn measure_node_b(state: &DensityMatrix, basis: &NodeBasis) -> Result<Vec<NodeOutcome>> {
    if state.space().dims() != [2, 4, 2] {
        return Err(Error::Dimension { index: 0, reason: format!("node measurement needs [2,4,2], got {}", state.space()) });
    }
    let ac = HilbertSpace::new(vec![2, 2])?;
    let mut out = Vec::with_capacity(4);
    for (label, b) in basis.labels.iter().zip(&basis.vectors) {
        // K = I_A ⊗ ⟨b| ⊗ I_C
        let mut k = CMatrix::zeros(4, 16);
        for a in 0..2 {
            for cc in 0..2 {
                for level in 0..4 {
                    k[(a * 2 + cc, a * 8 + level * 2 + cc)] = b[level].conj();
                }
            }
        }
        let m = &k * state.matrix() * k.adjoint();
        let p = m.trace().re.max(0.0);
        let post_state = if p >= MIN_SUCCESS_PROB {
            let m = m.unscale(p);
            Some(DensityMatrix::new(ac.clone(), (&m + m.adjoint()).scale(0.5))?)
        } else {
            None
        };
        out.push(NodeOutcome { label: label.clone(), probability: p, post_state });
    }
    Ok(out)
}
