use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::{cr, cz, Real, C};

/// Relative threshold below which trailing coefficients are dropped.
pub(crate) const TRIM_REL: f64 = 1e-14;

/// Complex polynomial with ascending coefficients (`coeffs[k]` multiplies `z^k`).
///
/// The canonical form has a nonzero last coefficient; the zero polynomial has
/// no coefficients at all.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<T> {
    coeffs: Vec<C<T>>,
}

impl<T: Real> Poly<T> {
    pub fn new(coeffs: Vec<C<T>>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    /// Polynomial from real coefficients.
    pub fn from_re(coeffs: &[T]) -> Self {
        Self::new(coeffs.iter().map(|&x| cr(x)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(cr(T::one()))
    }

    pub fn constant(c: C<T>) -> Self {
        Self::new(vec![c])
    }

    /// `c z^k`.
    pub fn monomial(k: usize, c: C<T>) -> Self {
        let mut v = vec![cz(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// `lead · Π (z − r)`.
    pub fn from_roots(roots: &[C<T>], lead: C<T>) -> Self {
        let mut v = vec![lead];
        for &r in roots {
            let mut next = vec![cz(); v.len() + 1];
            for (k, &a) in v.iter().enumerate() {
                next[k + 1] = next[k + 1] + a;
                next[k] = next[k] - a * r;
            }
            v = next;
        }
        Self::new(v)
    }

    fn trim(&mut self) {
        let max = self.max_abs_coeff();
        if max == T::zero() {
            self.coeffs.clear();
            return;
        }
        let cut = max * T::tol(TRIM_REL);
        while let Some(last) = self.coeffs.last() {
            if last.norm() <= cut {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }

    pub fn coeffs(&self) -> &[C<T>] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C<T>> {
        self.coeffs
    }

    /// Coefficient of `z^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> C<T> {
        self.coeffs.get(k).copied().unwrap_or_else(cz)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Number of stored coefficients (`degree + 1`, or 0).
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn max_abs_coeff(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |m, c| m.max(c.norm()))
    }

    /// Horner evaluation.
    pub fn eval(&self, z: C<T>) -> C<T> {
        self.coeffs.iter().rev().fold(cz(), |acc, &c| acc * z + c)
    }

    /// Value and first derivative in one Horner pass.
    pub fn eval_with_derivative(&self, z: C<T>) -> (C<T>, C<T>) {
        let mut p = cz();
        let mut dp = cz();
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * T::lit(k as f64))
                .collect(),
        )
    }

    /// Squared `H²` norm, the sum of squared coefficient moduli.
    pub fn norm_sq(&self) -> T {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// `H²` inner product `Σ p_k conj(q_k)`.
    pub fn h2_inner(&self, other: &Self) -> C<T> {
        self.coeffs.iter().zip(&other.coeffs).fold(cz(), |acc, (a, b)| acc + *a * b.conj())
    }

    pub fn scale(&self, s: C<T>) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// Multiplication by `z`.
    pub fn mul_z(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = Vec::with_capacity(self.coeffs.len() + 1);
        v.push(cz());
        v.extend_from_slice(&self.coeffs);
        Poly { coeffs: v }
    }

    /// Backward shift `(p − p(0)) / z`.
    pub fn backward_shift(&self) -> Self {
        Self::new(self.coeffs.iter().skip(1).copied().collect())
    }

    /// Synthetic division by `(z − root)`: returns quotient and remainder.
    pub fn div_linear(&self, root: C<T>) -> (Self, C<T>) {
        let n = self.coeffs.len();
        if n == 0 {
            return (Self::zero(), cz());
        }
        let mut q = vec![cz(); n - 1];
        let mut acc = cz();
        for k in (0..n).rev() {
            acc = acc * root + self.coeffs[k];
            if k > 0 {
                q[k - 1] = acc;
            }
        }
        (Self::new(q), acc)
    }

    /// `Σ_k |c_k| |z|^k`, the natural scale for backward error of an evaluation.
    pub fn abs_eval(&self, r: T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, c| acc * r + c.norm())
    }

    /// Conjugated coefficients: `z ↦ conj(p(conj z))`.
    pub fn conj_coeffs(&self) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|c| c.conj()).collect() }
    }
}

impl<T: Real> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<T: Real> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<T: Real> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![cz(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                v[i + j] = v[i + j] + a * b;
            }
        }
        Poly::new(v)
    }
}

impl<T: Real> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly { coeffs: self.coeffs.iter().map(|c| -*c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: Real> $tr for Poly<T> {
            type Output = Poly<T>;
            fn $m(self, rhs: Poly<T>) -> Poly<T> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
