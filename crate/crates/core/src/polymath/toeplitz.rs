//! Conjugate-analytic Toeplitz action `T_{φ̄} g = P_+(φ̄ g)`, coefficientwise
//! `r_k = Σ_{j≥0} φ_j* g_{k+j}`.

use super::{MatPoly, Poly, VecPoly};
use crate::scalar::{cz, Real, C};

pub trait ConjToeplitz<G> {
    type Output;
    fn toeplitz_conj(&self, g: &G) -> Self::Output;
}

/// Free-function form of [`ConjToeplitz::toeplitz_conj`].
pub fn toeplitz_conj<P: ConjToeplitz<G>, G>(phi: &P, g: &G) -> P::Output {
    phi.toeplitz_conj(g)
}

impl<T: Real> ConjToeplitz<Poly<T>> for Poly<T> {
    type Output = Poly<T>;
    fn toeplitz_conj(&self, g: &Poly<T>) -> Poly<T> {
        Poly::new(
            (0..g.len())
                .map(|k| {
                    self.coeffs()
                        .iter()
                        .enumerate()
                        .take_while(|(j, _)| k + j < g.len())
                        .fold(cz(), |acc, (j, p)| acc + p.conj() * g.coeff(k + j))
                })
                .collect(),
        )
    }
}

/// Scalar symbol acting on each coordinate.
impl<T: Real> ConjToeplitz<VecPoly<T>> for Poly<T> {
    type Output = VecPoly<T>;
    fn toeplitz_conj(&self, g: &VecPoly<T>) -> VecPoly<T> {
        let coords: Vec<Poly<T>> = g.coordinates().iter().map(|c| self.toeplitz_conj(c)).collect();
        with_dim(VecPoly::from_coordinates(&coords), g.dim())
    }
}

impl<T: Real> ConjToeplitz<VecPoly<T>> for MatPoly<T> {
    type Output = VecPoly<T>;
    fn toeplitz_conj(&self, g: &VecPoly<T>) -> VecPoly<T> {
        let d = self.dim();
        assert_eq!(g.dim(), d);
        let rows = (0..g.len())
            .map(|k| {
                let mut acc = vec![cz(); d];
                for (j, a) in self.coeffs().iter().enumerate() {
                    if k + j >= g.len() {
                        break;
                    }
                    for (x, y) in acc.iter_mut().zip(a.adjoint_matvec(&g.rows()[k + j])) {
                        *x = *x + y;
                    }
                }
                acc
            })
            .collect();
        VecPoly::from_rows_unchecked(d, rows)
    }
}

/// Row symbol `B` against a scalar `f`: `P_+(B* f)`, a column in `C^d`.
pub struct RowSymbol<'a, T>(pub &'a VecPoly<T>);

impl<T: Real> ConjToeplitz<Poly<T>> for RowSymbol<'_, T> {
    type Output = VecPoly<T>;
    fn toeplitz_conj(&self, f: &Poly<T>) -> VecPoly<T> {
        let b = self.0;
        let d = b.dim();
        let rows = (0..f.len())
            .map(|k| {
                let mut acc = vec![cz(); d];
                for (j, bj) in b.rows().iter().enumerate() {
                    if k + j >= f.len() {
                        break;
                    }
                    let fk: C<T> = f.coeff(k + j);
                    for (x, bji) in acc.iter_mut().zip(bj) {
                        *x = *x + bji.conj() * fk;
                    }
                }
                acc
            })
            .collect();
        VecPoly::from_rows_unchecked(d, rows)
    }
}

fn with_dim<T: Real>(v: VecPoly<T>, d: usize) -> VecPoly<T> {
    if v.is_zero() {
        VecPoly::zero(d)
    } else {
        v
    }
}
