use crate::error::{Error, Result};

/// Ordered list of factor dimensions of a composite Hilbert space.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HilbertSpace {
    dims: Vec<usize>,
}

impl HilbertSpace {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidSelection("a space needs at least one factor".into()));
        }
        if let Some(index) = dims.iter().position(|&d| d < 2) {
            return Err(Error::Dimension {
                index,
                reason: format!("dimension {} is below 2", dims[index]),
            });
        }
        Ok(Self { dims })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn num_factors(&self) -> usize {
        self.dims.len()
    }

    pub fn total(&self) -> usize {
        self.dims.iter().product()
    }

    /// Row-major strides: flat index = sum(index_k * stride_k).
    pub fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.dims.len()];
        for k in (0..self.dims.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * self.dims[k + 1];
        }
        strides
    }

    /// Space formed by the factors at `keep`, in the given order.
    pub fn subspace(&self, keep: &[usize]) -> Result<Self> {
        Self::new(keep.iter().map(|&k| self.dims[k]).collect())
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        Self { dims }
    }
}

impl std::fmt::Display for HilbertSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.dims.iter().map(|d| d.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strides_follow_factor_order() {
        let s = HilbertSpace::new(vec![2, 3, 4]).unwrap();
        assert_eq!(s.strides(), vec![12, 4, 1]);
        assert_eq!(s.total(), 24);
    }

    #[test]
    fn rejects_small_factors() {
        assert_eq!(
            HilbertSpace::new(vec![2, 1]).unwrap_err(),
            Error::Dimension { index: 1, reason: "dimension 1 is below 2".into() }
        );
        assert!(HilbertSpace::new(vec![]).is_err());
    }
}
