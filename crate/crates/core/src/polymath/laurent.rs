use super::grid::CircleGrid;
use super::vecpoly::VecPoly;
use crate::error::{Error, Result};
use crate::linalg::CMat;
use crate::scalar::{cr, cz, Real, C};

/// Hermitian Laurent polynomial `Σ_{k=-m}^{m} C_k z^k` with `C_{-k} = C_k*`.
///
/// Scalar data is stored as `1×1` matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentHerm<T> {
    dim: usize,
    half_degree: usize,
    coeffs: Vec<CMat<T>>,
}

impl<T: Real> LaurentHerm<T> {
    /// Builds from the nonnegative-index coefficients `C_0, …, C_m`; negative
    /// ones follow from Hermitian symmetry. `C_0` is replaced by its Hermitian part.
    pub fn from_causal(dim: usize, causal: Vec<CMat<T>>) -> Self {
        assert!(!causal.is_empty(), "need at least C_0");
        assert!(causal.iter().all(|c| c.rows() == dim && c.cols() == dim));
        let mut causal = causal;
        causal[0] = causal[0].hermitian_part();
        let max = causal.iter().fold(T::zero(), |m, c| m.max(c.max_abs()));
        let cut = max * T::tol(super::poly::TRIM_REL);
        while causal.len() > 1 && causal.last().is_some_and(|c| c.max_abs() <= cut) {
            causal.pop();
        }
        let m = causal.len() - 1;
        let mut coeffs: Vec<CMat<T>> = causal[1..].iter().rev().map(|c| c.adjoint()).collect();
        coeffs.extend(causal);
        LaurentHerm { dim, half_degree: m, coeffs }
    }

    /// Scalar Hermitian Laurent polynomial from `c_0, …, c_m`.
    pub fn scalar(causal: &[C<T>]) -> Self {
        Self::from_causal(1, causal.iter().map(|&c| CMat::from_fn(1, 1, |_, _| c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn half_degree(&self) -> usize {
        self.half_degree
    }

    /// Coefficient `C_k` for `-m ≤ k ≤ m` (zero outside).
    pub fn coeff(&self, k: isize) -> CMat<T> {
        let m = self.half_degree as isize;
        if k < -m || k > m {
            CMat::zeros(self.dim, self.dim)
        } else {
            self.coeffs[(k + m) as usize].clone()
        }
    }

    /// Scalar coefficient `c_k` (entry `(0,0)`).
    pub fn scalar_coeff(&self, k: isize) -> C<T> {
        self.coeff(k)[(0, 0)]
    }

    pub fn is_zero(&self, tol: T) -> bool {
        self.coeffs.iter().all(|c| c.max_abs() <= tol)
    }

    pub fn eval(&self, z: C<T>) -> Result<CMat<T>> {
        if z == cz() {
            return Err(Error::DomainError("Laurent polynomial evaluated at z = 0".into()));
        }
        let m = self.half_degree as i32;
        let mut acc = CMat::zeros(self.dim, self.dim);
        for (idx, c) in self.coeffs.iter().enumerate() {
            acc = &acc + &c.scale(z.powi(idx as i32 - m));
        }
        Ok(acc)
    }

    pub fn eval_scalar(&self, z: C<T>) -> Result<C<T>> {
        Ok(self.eval(z)?[(0, 0)])
    }

    /// Smallest eigenvalue over the sampling grid.
    pub fn min_eig_on_grid(&self, grid: &CircleGrid<T>) -> T {
        grid.points()
            .iter()
            .map(|&z| {
                let v = self.eval(z).expect("grid points are unimodular");
                if self.dim == 1 {
                    v[(0, 0)].re
                } else {
                    v.hermitian_eigen().0[0]
                }
            })
            .fold(T::infinity(), T::min)
    }

    /// Ordinary polynomial `z^m L(z)` of degree `2m` (scalar case).
    pub fn shifted_scalar_poly(&self) -> super::Poly<T> {
        super::Poly::new(self.coeffs.iter().map(|c| c[(0, 0)]).collect())
    }
}

/// Defect Laurent data of a row symbol `B`: the scalar `1 − B B*` and the
/// matrix `I − B* B`, with coefficients
/// `c_k = δ_{k0} − Σ_j ⟨B_{j+k}, B_j⟩` and `C_k = δ_{k0} I − Σ_j B_j* B_{j+k}`.
pub fn defect_laurent<T: Real>(b: &VecPoly<T>) -> (LaurentHerm<T>, LaurentHerm<T>) {
    let d = b.dim();
    let q = b.len().saturating_sub(1);
    let mut scalar = Vec::with_capacity(q + 1);
    let mut matrix = Vec::with_capacity(q + 1);
    for k in 0..=q {
        let mut s = if k == 0 { cr(T::one()) } else { cz() };
        let mut m = if k == 0 { CMat::identity(d) } else { CMat::zeros(d, d) };
        for j in 0..b.len().saturating_sub(k) {
            let bj = b.row(j);
            let bjk = b.row(j + k);
            s = s - bjk.iter().zip(&bj).fold(cz(), |acc, (x, y)| acc + *x * y.conj());
            m = &m - &CMat::outer(&conj_vec(&bj), &conj_vec(&bjk));
        }
        scalar.push(s);
        matrix.push(m);
    }
    (LaurentHerm::scalar(&scalar), LaurentHerm::from_causal(d, matrix))
}

fn conj_vec<T: Real>(v: &[C<T>]) -> Vec<C<T>> {
    v.iter().map(|c| c.conj()).collect()
}
