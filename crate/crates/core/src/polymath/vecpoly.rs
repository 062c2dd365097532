use std::ops::{Add, Sub};

use super::poly::{Poly, TRIM_REL};
use crate::error::{Error, Result};
use crate::scalar::{cz, Real, C};

/// Polynomial with coefficients in `C^d`, stored as coefficient rows.
///
/// The same storage represents a row Schur symbol `B(z) = Σ B_k z^k`
/// (rows `B_k ∈ C^{1×d}`) and column-valued functions such as `f⁺`.
#[derive(Clone, Debug, PartialEq)]
pub struct VecPoly<T> {
    dim: usize,
    rows: Vec<Vec<C<T>>>,
}

impl<T: Real> VecPoly<T> {
    pub fn new(dim: usize, rows: Vec<Vec<C<T>>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("dimension must be at least 1".into()));
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: bad.len() });
        }
        let mut v = VecPoly { dim, rows };
        v.trim();
        Ok(v)
    }

    pub(crate) fn from_rows_unchecked(dim: usize, rows: Vec<Vec<C<T>>>) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == dim));
        let mut v = VecPoly { dim, rows };
        v.trim();
        v
    }

    pub fn zero(dim: usize) -> Self {
        VecPoly { dim, rows: Vec::new() }
    }

    /// Assembles from coordinate polynomials `(p_1, …, p_d)`.
    pub fn from_coordinates(coords: &[Poly<T>]) -> Self {
        let dim = coords.len();
        let len = coords.iter().map(|p| p.len()).max().unwrap_or(0);
        let rows = (0..len).map(|k| coords.iter().map(|p| p.coeff(k)).collect()).collect();
        Self::from_rows_unchecked(dim, rows)
    }

    /// Constant vector.
    pub fn constant(v: &[C<T>]) -> Self {
        Self::from_rows_unchecked(v.len(), vec![v.to_vec()])
    }

    fn trim(&mut self) {
        let max = self.max_abs_coeff();
        if max == T::zero() {
            self.rows.clear();
            return;
        }
        let cut = max * T::tol(TRIM_REL);
        while let Some(last) = self.rows.last() {
            if last.iter().all(|c| c.norm() <= cut) {
                self.rows.pop();
            } else {
                break;
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Vec<C<T>>] {
        &self.rows
    }

    /// Coefficient row `k` (zero past the degree).
    pub fn row(&self, k: usize) -> Vec<C<T>> {
        self.rows.get(k).cloned().unwrap_or_else(|| vec![cz(); self.dim])
    }

    pub fn degree(&self) -> Option<usize> {
        self.rows.len().checked_sub(1)
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn max_abs_coeff(&self) -> T {
        self.rows.iter().flatten().fold(T::zero(), |m, c| m.max(c.norm()))
    }

    /// Coordinate polynomial `p_i`.
    pub fn coordinate(&self, i: usize) -> Poly<T> {
        Poly::new(self.rows.iter().map(|r| r[i]).collect())
    }

    pub fn coordinates(&self) -> Vec<Poly<T>> {
        (0..self.dim).map(|i| self.coordinate(i)).collect()
    }

    pub fn eval(&self, z: C<T>) -> Vec<C<T>> {
        let mut acc = vec![cz(); self.dim];
        for row in self.rows.iter().rev() {
            for (a, c) in acc.iter_mut().zip(row) {
                *a = *a * z + *c;
            }
        }
        acc
    }

    /// Entrywise derivative evaluated at `z`.
    pub fn eval_derivative(&self, z: C<T>) -> Vec<C<T>> {
        self.coordinates().iter().map(|p| p.eval_with_derivative(z).1).collect()
    }

    /// Squared `H²(C^d)` norm.
    pub fn norm_sq(&self) -> T {
        self.rows.iter().flatten().map(|c| c.norm_sqr()).sum()
    }

    /// `H²(C^d)` inner product.
    pub fn h2_inner(&self, other: &Self) -> C<T> {
        self.rows
            .iter()
            .zip(&other.rows)
            .flat_map(|(a, b)| a.iter().zip(b))
            .fold(cz(), |acc, (x, y)| acc + *x * y.conj())
    }

    pub fn scale(&self, s: C<T>) -> Self {
        Self::from_rows_unchecked(self.dim, self.rows.iter().map(|r| r.iter().map(|&c| c * s).collect()).collect())
    }

    pub fn mul_z(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut rows = Vec::with_capacity(self.rows.len() + 1);
        rows.push(vec![cz(); self.dim]);
        rows.extend(self.rows.iter().cloned());
        VecPoly { dim: self.dim, rows }
    }

    pub fn backward_shift(&self) -> Self {
        Self::from_rows_unchecked(self.dim, self.rows.iter().skip(1).cloned().collect())
    }

    /// Scalar polynomial `B(z) x* = Σ_k ⟨B_k, x⟩ z^k` for a row symbol `B`.
    pub fn pair_conj(&self, x: &[C<T>]) -> Poly<T> {
        assert_eq!(x.len(), self.dim);
        Poly::new(
            self.rows
                .iter()
                .map(|r| r.iter().zip(x).fold(cz(), |acc, (b, xi)| acc + *b * xi.conj()))
                .collect(),
        )
    }

    /// Scalar polynomial `B(z) h(z) = Σ_i b_i h_i` (row times column).
    pub fn row_times(&self, h: &VecPoly<T>) -> Poly<T> {
        assert_eq!(h.dim, self.dim);
        if self.is_zero() || h.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![cz(); self.rows.len() + h.rows.len() - 1];
        for (i, a) in self.rows.iter().enumerate() {
            for (j, b) in h.rows.iter().enumerate() {
                v[i + j] = v[i + j] + a.iter().zip(b).fold(cz(), |acc, (x, y)| acc + *x * *y);
            }
        }
        Poly::new(v)
    }

    /// Column times scalar polynomial, `h(z) p(z)`.
    pub fn mul_scalar_poly(&self, p: &Poly<T>) -> Self {
        let coords: Vec<Poly<T>> = self.coordinates().iter().map(|c| c * p).collect();
        let mut out = Self::from_coordinates(&coords);
        out.dim = self.dim;
        out
    }
}

impl<T: Real> Add for &VecPoly<T> {
    type Output = VecPoly<T>;
    fn add(self, rhs: &VecPoly<T>) -> VecPoly<T> {
        assert_eq!(self.dim, rhs.dim);
        let n = self.len().max(rhs.len());
        VecPoly::from_rows_unchecked(
            self.dim,
            (0..n).map(|k| self.row(k).iter().zip(rhs.row(k)).map(|(a, b)| *a + b).collect()).collect(),
        )
    }
}

impl<T: Real> Sub for &VecPoly<T> {
    type Output = VecPoly<T>;
    fn sub(self, rhs: &VecPoly<T>) -> VecPoly<T> {
        assert_eq!(self.dim, rhs.dim);
        let n = self.len().max(rhs.len());
        VecPoly::from_rows_unchecked(
            self.dim,
            (0..n).map(|k| self.row(k).iter().zip(rhs.row(k)).map(|(a, b)| *a - b).collect()).collect(),
        )
    }
}
