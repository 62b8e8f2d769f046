use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::space::FockSpace;
use super::state::StateVector;
use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Sparse complex matrix acting on a [`FockSpace`], stored row-compressed.
///
/// Entries whose magnitude does not exceed the pruning floor are dropped when
/// an operator is assembled. The floor defaults to zero, so only exact zeros
/// disappear and structural cancellations (e.g. in commutators) are kept
/// visible as missing entries.
#[derive(Clone, Debug)]
pub struct LinearOperator {
    space: Arc<FockSpace>,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<Complex64>,
    hermitian_hint: bool,
}

impl LinearOperator {
    pub fn zero(space: &Arc<FockSpace>) -> Self {
        LinearOperator {
            space: Arc::clone(space),
            row_ptr: vec![0; space.dimension() + 1],
            cols: Vec::new(),
            vals: Vec::new(),
            hermitian_hint: true,
        }
    }

    pub fn identity(space: &Arc<FockSpace>) -> Self {
        Self::diagonal(space, |_| ONE)
    }

    /// Diagonal operator whose entry at basis index `i` is `f(i)`.
    pub fn diagonal(space: &Arc<FockSpace>, f: impl Fn(usize) -> Complex64) -> Self {
        let dim = space.dimension();
        let mut row_ptr = Vec::with_capacity(dim + 1);
        let mut cols = Vec::with_capacity(dim);
        let mut vals = Vec::with_capacity(dim);
        row_ptr.push(0);
        let mut all_real = true;
        for i in 0..dim {
            let v = f(i);
            if v != ZERO {
                all_real &= v.im == 0.0;
                cols.push(i);
                vals.push(v);
            }
            row_ptr.push(cols.len());
        }
        LinearOperator { space: Arc::clone(space), row_ptr, cols, vals, hermitian_hint: all_real }
    }

    /// Assembles an operator from `(row, col, value)` triplets, summing
    /// duplicates and dropping entries with `|value| <= floor`.
    pub fn from_triplets(
        space: &Arc<FockSpace>,
        triplets: impl IntoIterator<Item = (usize, usize, Complex64)>,
        floor: f64,
    ) -> Result<Self> {
        let dim = space.dimension();
        let mut t: Vec<(usize, usize, Complex64)> = triplets.into_iter().collect();
        if let Some(&(r, c, _)) = t.iter().find(|&&(r, c, _)| r >= dim || c >= dim) {
            return Err(Error::InvalidArgument(format!("entry ({r}, {c}) outside a space of dimension {dim}")));
        }
        t.sort_unstable_by_key(|&(r, c, _)| (r, c));
        let mut row_ptr = vec![0usize; dim + 1];
        let mut cols = Vec::with_capacity(t.len());
        let mut vals = Vec::with_capacity(t.len());
        let mut rows = Vec::with_capacity(t.len());
        let mut iter = t.into_iter().peekable();
        while let Some((r, c, mut v)) = iter.next() {
            while let Some(&(r2, c2, v2)) = iter.peek() {
                if (r2, c2) != (r, c) {
                    break;
                }
                v += v2;
                iter.next();
            }
            if v.norm() > floor {
                rows.push(r);
                cols.push(c);
                vals.push(v);
            }
        }
        for &r in &rows {
            row_ptr[r + 1] += 1;
        }
        for i in 0..dim {
            row_ptr[i + 1] += row_ptr[i];
        }
        Ok(LinearOperator { space: Arc::clone(space), row_ptr, cols, vals, hermitian_hint: false })
    }

    pub fn space(&self) -> &Arc<FockSpace> {
        &self.space
    }

    pub fn dimension(&self) -> usize {
        self.space.dimension()
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn hermitian_hint(&self) -> bool {
        self.hermitian_hint
    }

    pub fn with_hermitian_hint(mut self, hint: bool) -> Self {
        self.hermitian_hint = hint;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.vals.is_empty()
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        let span = self.row_ptr[row]..self.row_ptr[row + 1];
        match self.cols[span.clone()].binary_search(&col) {
            Ok(k) => self.vals[span.start + k],
            Err(_) => ZERO,
        }
    }

    /// Stored entries as `(row, col, value)`, row-major.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        (0..self.dimension())
            .flat_map(move |r| (self.row_ptr[r]..self.row_ptr[r + 1]).map(move |k| (r, self.cols[k], self.vals[k])))
    }

    pub fn row(&self, row: usize) -> impl Iterator<Item = (usize, Complex64)> + '_ {
        (self.row_ptr[row]..self.row_ptr[row + 1]).map(move |k| (self.cols[k], self.vals[k]))
    }

    fn same_space(&self, other: &LinearOperator) -> Result<()> {
        if Arc::ptr_eq(&self.space, &other.space) || *self.space == *other.space {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let triplets: Vec<_> = self.iter().map(|(r, c, v)| (c, r, v.conj())).collect();
        let mut out = Self::from_triplets(&self.space, triplets, -1.0).expect("indices in range");
        out.hermitian_hint = self.hermitian_hint;
        out
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        if factor == ZERO {
            return Self::zero(&self.space);
        }
        let mut out = self.clone();
        for v in &mut out.vals {
            *v *= factor;
        }
        out.hermitian_hint = self.hermitian_hint && factor.im == 0.0;
        out
    }

    /// `alpha * self + beta * other`, exact zeros pruned.
    pub fn linear_combination(&self, alpha: Complex64, other: &Self, beta: Complex64) -> Result<Self> {
        self.same_space(other)?;
        let dim = self.dimension();
        let mut row_ptr = Vec::with_capacity(dim + 1);
        let mut cols = Vec::with_capacity(self.nnz() + other.nnz());
        let mut vals = Vec::with_capacity(self.nnz() + other.nnz());
        row_ptr.push(0);
        for r in 0..dim {
            let (mut i, end_i) = (self.row_ptr[r], self.row_ptr[r + 1]);
            let (mut j, end_j) = (other.row_ptr[r], other.row_ptr[r + 1]);
            while i < end_i || j < end_j {
                let ci = if i < end_i { self.cols[i] } else { usize::MAX };
                let cj = if j < end_j { other.cols[j] } else { usize::MAX };
                let (c, v) = if ci < cj {
                    i += 1;
                    (ci, alpha * self.vals[i - 1])
                } else if cj < ci {
                    j += 1;
                    (cj, beta * other.vals[j - 1])
                } else {
                    i += 1;
                    j += 1;
                    (ci, alpha * self.vals[i - 1] + beta * other.vals[j - 1])
                };
                if v != ZERO {
                    cols.push(c);
                    vals.push(v);
                }
            }
            row_ptr.push(cols.len());
        }
        let hint = self.hermitian_hint && other.hermitian_hint && alpha.im == 0.0 && beta.im == 0.0;
        Ok(LinearOperator { space: Arc::clone(&self.space), row_ptr, cols, vals, hermitian_hint: hint })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.linear_combination(ONE, other, ONE)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.linear_combination(ONE, other, -ONE)
    }

    /// Matrix product `self * other`.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_space(other)?;
        let dim = self.dimension();
        let mut acc = vec![ZERO; dim];
        let mut touched = vec![false; dim];
        let mut pattern: Vec<usize> = Vec::new();
        let mut row_ptr = Vec::with_capacity(dim + 1);
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        row_ptr.push(0);
        for r in 0..dim {
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                let (mid, a) = (self.cols[k], self.vals[k]);
                for l in other.row_ptr[mid]..other.row_ptr[mid + 1] {
                    let c = other.cols[l];
                    if !touched[c] {
                        touched[c] = true;
                        pattern.push(c);
                    }
                    acc[c] += a * other.vals[l];
                }
            }
            pattern.sort_unstable();
            for &c in &pattern {
                if acc[c] != ZERO {
                    cols.push(c);
                    vals.push(acc[c]);
                }
                acc[c] = ZERO;
                touched[c] = false;
            }
            pattern.clear();
            row_ptr.push(cols.len());
        }
        Ok(LinearOperator { space: Arc::clone(&self.space), row_ptr, cols, vals, hermitian_hint: false })
    }

    /// Matrix–vector product on raw amplitudes.
    pub fn apply_slice(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dimension(), "vector length does not match operator dimension");
        (0..self.dimension())
            .map(|r| (self.row_ptr[r]..self.row_ptr[r + 1]).map(|k| self.vals[k] * v[self.cols[k]]).sum())
            .collect()
    }

    pub fn apply(&self, psi: &StateVector) -> Result<StateVector> {
        if **psi.space() != *self.space {
            return Err(Error::SpaceMismatch);
        }
        StateVector::from_amplitudes(&self.space, self.apply_slice(psi.amplitudes()))
    }

    /// Keeps only entries whose row and column both carry at most
    /// `max_total_photons` photons.
    pub fn restrict(&self, max_total_photons: u32) -> Self {
        let space = &self.space;
        let keep = |i: usize| space.total_photons(i) <= max_total_photons;
        let triplets: Vec<_> = self.iter().filter(|&(r, c, _)| keep(r) && keep(c)).collect();
        let mut out = Self::from_triplets(&self.space, triplets, -1.0).expect("indices in range");
        out.hermitian_hint = self.hermitian_hint;
        out
    }

    /// Drops stored entries with magnitude at or below `floor`.
    pub fn pruned(&self, floor: f64) -> Self {
        let mut out = Self::from_triplets(&self.space, self.iter(), floor).expect("indices in range");
        out.hermitian_hint = self.hermitian_hint;
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.vals.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise deviation `max |self − other|`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        Ok(self.try_sub(other)?.max_abs())
    }

    /// Induced 1-norm (largest column sum of magnitudes).
    pub fn norm_one(&self) -> f64 {
        let mut sums = vec![0.0f64; self.dimension()];
        for (k, &c) in self.cols.iter().enumerate() {
            sums[c] += self.vals[k].norm();
        }
        sums.into_iter().fold(0.0, f64::max)
    }

    /// Largest deviation from `self = self†`.
    pub fn hermiticity_defect(&self) -> f64 {
        self.max_abs_diff(&self.adjoint()).expect("same space")
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let dim = self.dimension();
        let mut m = DMatrix::zeros(dim, dim);
        for (r, c, v) in self.iter() {
            m[(r, c)] = v;
        }
        m
    }

    /// Dense block on the given basis indices (rows and columns).
    pub fn dense_block(&self, indices: &[usize]) -> DMatrix<Complex64> {
        let mut position = vec![usize::MAX; self.dimension()];
        for (p, &i) in indices.iter().enumerate() {
            position[i] = p;
        }
        let mut m = DMatrix::zeros(indices.len(), indices.len());
        for (p, &r) in indices.iter().enumerate() {
            for (c, v) in self.row(r) {
                if position[c] != usize::MAX {
                    m[(p, position[c])] = v;
                }
            }
        }
        m
    }
}

/// `[x, y] = xy − yx`, with exact cancellations removed.
pub fn commutator(x: &LinearOperator, y: &LinearOperator) -> Result<LinearOperator> {
    x.try_mul(y)?.try_sub(&y.try_mul(x)?)
}

/// `{x, y} = xy + yx`.
pub fn anticommutator(x: &LinearOperator, y: &LinearOperator) -> Result<LinearOperator> {
    x.try_mul(y)?.try_add(&y.try_mul(x)?)
}

// Operator sugar for code that builds operators on one known space. These
// panic on a space mismatch; use the `try_*` methods for fallible paths.

impl Add for &LinearOperator {
    type Output = LinearOperator;
    fn add(self, rhs: &LinearOperator) -> LinearOperator {
        self.try_add(rhs).expect("operator spaces differ")
    }
}

impl Sub for &LinearOperator {
    type Output = LinearOperator;
    fn sub(self, rhs: &LinearOperator) -> LinearOperator {
        self.try_sub(rhs).expect("operator spaces differ")
    }
}

impl Mul for &LinearOperator {
    type Output = LinearOperator;
    fn mul(self, rhs: &LinearOperator) -> LinearOperator {
        self.try_mul(rhs).expect("operator spaces differ")
    }
}

impl Mul<Complex64> for &LinearOperator {
    type Output = LinearOperator;
    fn mul(self, rhs: Complex64) -> LinearOperator {
        self.scaled(rhs)
    }
}

impl Mul<f64> for &LinearOperator {
    type Output = LinearOperator;
    fn mul(self, rhs: f64) -> LinearOperator {
        self.scaled(Complex64::new(rhs, 0.0))
    }
}

impl Neg for &LinearOperator {
    type Output = LinearOperator;
    fn neg(self) -> LinearOperator {
        self.scaled(-ONE)
    }
}
