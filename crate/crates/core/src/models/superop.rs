//! Sparse superoperators acting on column-stacked density matrices.
//!
//! For an operator product A ρ B the column-stacking identity
//! vec(AρB) = (Bᵀ ⊗ A) vec(ρ) places A_ij B_kl at row `l·d + i`,
//! column `k·d + j`.

use crate::algebra::{c, CMatrix, C64};

/// Compressed sparse row matrix of complex entries.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix {
    dim: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<C64>,
}

impl SparseMatrix {
    /// Builds from triplets, summing duplicates and dropping exact zeros.
    pub fn from_triplets(dim: usize, mut triplets: Vec<(usize, usize, C64)>) -> Self {
        triplets.sort_unstable_by_key(|&(r, col, _)| (r, col));
        let mut merged: Vec<(usize, usize, C64)> = Vec::with_capacity(triplets.len());
        for (r, col, v) in triplets {
            match merged.last_mut() {
                Some(last) if last.0 == r && last.1 == col => last.2 += v,
                _ => merged.push((r, col, v)),
            }
        }
        merged.retain(|t| t.2 != c(0.0));
        let mut row_ptr = vec![0usize; dim + 1];
        for &(r, _, _) in &merged {
            row_ptr[r + 1] += 1;
        }
        for r in 0..dim {
            row_ptr[r + 1] += row_ptr[r];
        }
        let col_idx = merged.iter().map(|t| t.1).collect();
        let values = merged.iter().map(|t| t.2).collect();
        Self { dim, row_ptr, col_idx, values }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    /// y = A x.
    pub fn mul_vec_into(&self, x: &[C64], y: &mut [C64]) {
        debug_assert_eq!(x.len(), self.dim);
        debug_assert_eq!(y.len(), self.dim);
        for (r, out) in y.iter_mut().enumerate() {
            let (lo, hi) = (self.row_ptr[r], self.row_ptr[r + 1]);
            let mut acc = c(0.0);
            for k in lo..hi {
                acc += self.values[k] * x[self.col_idx[k]];
            }
            *out = acc;
        }
    }

    pub fn to_dense(&self) -> CMatrix {
        let mut m = CMatrix::zeros(self.dim, self.dim);
        for r in 0..self.dim {
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                m[(r, self.col_idx[k])] += self.values[k];
            }
        }
        m
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest absolute row sum, an upper bound on the spectral radius.
    pub fn max_row_sum(&self) -> f64 {
        (0..self.dim)
            .map(|r| (self.row_ptr[r]..self.row_ptr[r + 1]).map(|k| self.values[k].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }
}

impl SparseMatrix {
    /// Smallest index set containing `seeds` that the matrix maps into
    /// itself: span{e_i : i in the set} is an invariant subspace.
    pub fn reachable_from(&self, seeds: impl IntoIterator<Item = usize>) -> Vec<usize> {
        let mut col_ptr = vec![0usize; self.dim + 1];
        for &j in &self.col_idx {
            col_ptr[j + 1] += 1;
        }
        for j in 0..self.dim {
            col_ptr[j + 1] += col_ptr[j];
        }
        let mut fill = col_ptr.clone();
        let mut rows = vec![0usize; self.col_idx.len()];
        for r in 0..self.dim {
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                let j = self.col_idx[k];
                rows[fill[j]] = r;
                fill[j] += 1;
            }
        }
        let mut seen = vec![false; self.dim];
        let mut stack: Vec<usize> = Vec::new();
        for s in seeds {
            if !seen[s] {
                seen[s] = true;
                stack.push(s);
            }
        }
        while let Some(j) = stack.pop() {
            for &r in &rows[col_ptr[j]..col_ptr[j + 1]] {
                if !seen[r] {
                    seen[r] = true;
                    stack.push(r);
                }
            }
        }
        (0..self.dim).filter(|&i| seen[i]).collect()
    }

    /// Submatrix on rows and columns `idx` (strictly increasing).
    pub fn restrict(&self, idx: &[usize]) -> SparseMatrix {
        let mut map = vec![usize::MAX; self.dim];
        for (new, &old) in idx.iter().enumerate() {
            map[old] = new;
        }
        let mut triplets = Vec::new();
        for (new_r, &r) in idx.iter().enumerate() {
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                let j = map[self.col_idx[k]];
                if j != usize::MAX {
                    triplets.push((new_r, j, self.values[k]));
                }
            }
        }
        SparseMatrix::from_triplets(idx.len(), triplets)
    }
}

fn nonzeros(m: &CMatrix) -> Vec<(usize, usize, C64)> {
    let mut out = Vec::new();
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            let v = m[(i, j)];
            if v != c(0.0) {
                out.push((i, j, v));
            }
        }
    }
    out
}

/// Accumulates Lindblad terms as superoperator triplets.
#[derive(Debug)]
pub(crate) struct SuperBuilder {
    d: usize,
    triplets: Vec<(usize, usize, C64)>,
}

impl SuperBuilder {
    pub fn new(d: usize) -> Self {
        Self { d, triplets: Vec::new() }
    }

    /// coeff · A ρ B
    pub fn sandwich(&mut self, a: &CMatrix, b: &CMatrix, coeff: C64) {
        if coeff == c(0.0) {
            return;
        }
        let d = self.d;
        let nz_a = nonzeros(a);
        let nz_b = nonzeros(b);
        self.triplets.reserve(nz_a.len() * nz_b.len());
        for &(k, l, bv) in &nz_b {
            for &(i, j, av) in &nz_a {
                self.triplets.push((l * d + i, k * d + j, coeff * av * bv));
            }
        }
    }

    /// coeff · A ρ
    pub fn left(&mut self, a: &CMatrix, coeff: C64) {
        if coeff == c(0.0) {
            return;
        }
        let d = self.d;
        let nz = nonzeros(a);
        for l in 0..d {
            for &(i, j, av) in &nz {
                self.triplets.push((l * d + i, l * d + j, coeff * av));
            }
        }
    }

    /// coeff · ρ B
    pub fn right(&mut self, b: &CMatrix, coeff: C64) {
        if coeff == c(0.0) {
            return;
        }
        let d = self.d;
        let nz = nonzeros(b);
        for &(k, l, bv) in &nz {
            for i in 0..d {
                self.triplets.push((l * d + i, k * d + i, coeff * bv));
            }
        }
    }

    /// −i[H, ρ]
    pub fn hamiltonian(&mut self, h: &CMatrix) {
        self.left(h, C64::new(0.0, -1.0));
        self.right(h, C64::new(0.0, 1.0));
    }

    /// rate · (L ρ L† − ½{L†L, ρ})
    pub fn dissipator(&mut self, l: &CMatrix, rate: f64) {
        if rate == 0.0 {
            return;
        }
        let ld = l.adjoint();
        let ldl = &ld * l;
        self.sandwich(l, &ld, c(rate));
        self.left(&ldl, c(-0.5 * rate));
        self.right(&ldl, c(-0.5 * rate));
    }

    /// coeff · (X ρ Y† − ½{Y†X, ρ}) + h.c.
    ///
    /// With X = Y and a real coefficient this is a dissipator at rate
    /// 2·coeff; with X ≠ Y it supplies the correlated (off-diagonal)
    /// part of a Kossakowski matrix.
    pub fn cross(&mut self, x: &CMatrix, y: &CMatrix, coeff: C64) {
        if coeff == c(0.0) {
            return;
        }
        let yd = y.adjoint();
        let xd = x.adjoint();
        let ydx = &yd * x;
        let xdy = &xd * y;
        self.sandwich(x, &yd, coeff);
        self.left(&ydx, -coeff * 0.5);
        self.right(&ydx, -coeff * 0.5);
        let cc = coeff.conj();
        self.sandwich(y, &xd, cc);
        self.right(&xdy, -cc * 0.5);
        self.left(&xdy, -cc * 0.5);
    }

    pub fn finish(self) -> SparseMatrix {
        SparseMatrix::from_triplets(self.d * self.d, self.triplets)
    }
}
