use super::poly::TRIM_REL;
use super::vecpoly::VecPoly;
use crate::linalg::CMat;
use crate::scalar::{cz, Real, C};

/// Polynomial `A(z) = Σ A_k z^k` with square `d×d` coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct MatPoly<T> {
    dim: usize,
    coeffs: Vec<CMat<T>>,
}

impl<T: Real> MatPoly<T> {
    pub fn new(dim: usize, coeffs: Vec<CMat<T>>) -> Self {
        assert!(coeffs.iter().all(|m| m.rows() == dim && m.cols() == dim), "coefficients must be {dim}x{dim}");
        let mut p = MatPoly { dim, coeffs };
        p.trim();
        p
    }

    pub fn identity(dim: usize) -> Self {
        MatPoly { dim, coeffs: vec![CMat::identity(dim)] }
    }

    /// Scalar polynomial viewed as a `1×1` matrix polynomial.
    pub fn from_scalar(p: &super::Poly<T>) -> Self {
        Self::new(1, p.coeffs().iter().map(|&c| CMat::from_fn(1, 1, |_, _| c)).collect())
    }

    fn trim(&mut self) {
        let max = self.coeffs.iter().fold(T::zero(), |m, c| m.max(c.max_abs()));
        if max == T::zero() {
            self.coeffs.clear();
            return;
        }
        let cut = max * T::tol(TRIM_REL);
        while self.coeffs.last().is_some_and(|c| c.max_abs() <= cut) {
            self.coeffs.pop();
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &[CMat<T>] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> CMat<T> {
        self.coeffs.get(k).cloned().unwrap_or_else(|| CMat::zeros(self.dim, self.dim))
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn eval(&self, z: C<T>) -> CMat<T> {
        let mut acc = CMat::zeros(self.dim, self.dim);
        for c in self.coeffs.iter().rev() {
            acc = &acc.scale(z) + c;
        }
        acc
    }

    /// Left-multiplies every coefficient by `u`.
    pub fn left_mul(&self, u: &CMat<T>) -> Self {
        Self::new(self.dim, self.coeffs.iter().map(|c| u * c).collect())
    }

    /// Column polynomial `A(z) h(z)`.
    pub fn apply(&self, h: &VecPoly<T>) -> VecPoly<T> {
        assert_eq!(h.dim(), self.dim);
        if self.coeffs.is_empty() || h.is_zero() {
            return VecPoly::zero(self.dim);
        }
        let n = self.coeffs.len() + h.len() - 1;
        let mut rows = vec![vec![cz(); self.dim]; n];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, hj) in h.rows().iter().enumerate() {
                for (r, v) in rows[i + j].iter_mut().zip(a.matvec(hj)) {
                    *r = *r + v;
                }
            }
        }
        VecPoly::from_rows_unchecked(self.dim, rows)
    }

    /// Column polynomial `A(z) x` for a constant vector `x`.
    pub fn apply_const(&self, x: &[C<T>]) -> VecPoly<T> {
        self.apply(&VecPoly::constant(x))
    }
}
