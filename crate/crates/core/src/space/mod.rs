//! The space `H(B)`: context construction, the embedding `f ↦ (f, f⁺)`,
//! kernels, shifts and Gram-based projections.

mod element;
mod gram;
mod kernel;

pub use element::{backward_shift, embed, hb_inner, multiply_z, toeplitz_conj_hb, HBElement};
pub use gram::{density_residual, gram, gram_projection, point_eval_residual, rank_one_identity_defect, Projection};
pub use kernel::{kernel, kernel_diagonal, KernelElement};

use crate::error::{Error, Result};
use crate::factor::{mate, wilson_factor, FactorReport, WilsonConfig};
use crate::linalg::CMat;
use crate::polymath::{defect_laurent, poly_roots, CircleGrid, LaurentHerm, MatPoly, Poly, VecPoly};
use crate::scalar::{Real, C};
use crate::tolerances::Tolerances;

/// A polynomial row Schur function `B = (b_1, …, b_d)` with its defect data.
#[derive(Clone, Debug, PartialEq)]
pub struct RowSchur<T> {
    symbol: VecPoly<T>,
    scalar_defect: LaurentHerm<T>,
    matrix_defect: LaurentHerm<T>,
}

impl<T: Real> RowSchur<T> {
    /// Validates `sup_{|z|=1} |B(z)| ≤ 1 + tol_psd` on a circle grid.
    pub fn new(symbol: VecPoly<T>, tol_psd: T) -> Result<Self> {
        let deg = symbol.degree().unwrap_or(0);
        let grid = CircleGrid::<T>::for_degree(deg, 8, false);
        let grid = if grid.len() < 512 { CircleGrid::new(9, false) } else { grid };
        let sup = grid
            .points()
            .iter()
            .map(|&z| symbol.eval(z).iter().map(|c| c.norm_sqr()).sum::<T>().sqrt())
            .fold(T::zero(), T::max);
        if sup > T::one() + tol_psd {
            return Err(Error::InvalidInput(format!("not a Schur function: sup |B| = {sup} on the circle")));
        }
        let (scalar_defect, matrix_defect) = defect_laurent(&symbol);
        Ok(RowSchur { symbol, scalar_defect, matrix_defect })
    }

    /// From coefficient rows `B_0, …, B_q`, each of length `d`.
    pub fn from_rows(dim: usize, rows: Vec<Vec<C<T>>>) -> Result<Self> {
        Self::new(VecPoly::new(dim, rows)?, Tolerances::<T>::default().tol_psd)
    }

    pub fn dim(&self) -> usize {
        self.symbol.dim()
    }

    pub fn degree(&self) -> usize {
        self.symbol.degree().unwrap_or(0)
    }

    pub fn symbol(&self) -> &VecPoly<T> {
        &self.symbol
    }

    /// Coordinate function `b_i` (zero-based).
    pub fn component(&self, i: usize) -> Poly<T> {
        self.symbol.coordinate(i)
    }

    pub fn eval(&self, z: C<T>) -> Vec<C<T>> {
        self.symbol.eval(z)
    }

    /// `b_ξ(z) = B(z) ξ*`.
    pub fn pair(&self, xi: &[C<T>]) -> Poly<T> {
        self.symbol.pair_conj(xi)
    }

    /// `1 − B B*`.
    pub fn scalar_defect(&self) -> &LaurentHerm<T> {
        &self.scalar_defect
    }

    /// `I − B* B`.
    pub fn matrix_defect(&self) -> &LaurentHerm<T> {
        &self.matrix_defect
    }
}

/// A unimodular zero of the mate with its multiplicity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundaryPoint<T> {
    pub point: C<T>,
    pub multiplicity: usize,
}

/// Fully constructed space `H(B)`: symbol, mate, outer factor and boundary spectrum.
#[derive(Clone, Debug)]
pub struct SpaceContext<T: Real> {
    b: RowSchur<T>,
    mate: FactorReport<Poly<T>, T>,
    outer: FactorReport<MatPoly<T>, T>,
    lambda: Vec<BoundaryPoint<T>>,
    cond_a0: T,
    tol: Tolerances<T>,
}

/// Builds the space and verifies its structural invariants.
pub fn make_context<T: Real>(b: RowSchur<T>, tol: Tolerances<T>) -> Result<SpaceContext<T>> {
    let mate_report = mate(b.symbol(), &tol)?;
    if mate_report.residual_sup > tol.tol_factor_degenerate {
        return Err(Error::FactorizationDiverged { trace: vec![mate_report.residual_sup.as_f64()] });
    }
    let a = &mate_report.factor;

    let mut lambda: Vec<BoundaryPoint<T>> = Vec::new();
    if a.degree().unwrap_or(0) > 0 {
        for r in poly_roots(a, &tol.root_options())? {
            if (r.value.norm() - T::one()).abs() <= tol.tol_unimodular {
                let point = r.value / r.value.norm();
                match lambda.iter_mut().find(|p| (p.point - point).norm() <= tol.tol_pair) {
                    Some(p) => p.multiplicity += r.multiplicity,
                    None => lambda.push(BoundaryPoint { point, multiplicity: r.multiplicity }),
                }
            }
        }
    }

    let mut hints = Vec::with_capacity(lambda.len());
    for p in &lambda {
        let bl = b.eval(p.point);
        let norm = bl.iter().map(|c| c.norm_sqr()).sum::<T>().sqrt();
        if (norm - T::one()).abs() > T::tol(1e-8) {
            return Err(Error::BoundaryNotRegular { re: p.point.re.as_f64(), im: p.point.im.as_f64() });
        }
        hints.push((p.point, bl.iter().map(|c| c.conj() / norm).collect::<Vec<_>>()));
    }
    let mut cfg = WilsonConfig::from_tolerances(&tol);
    cfg.boundary = Some(hints.clone());
    let outer = wilson_factor(b.matrix_defect(), &cfg)?;

    let a0 = outer.factor.coeff(0);
    let cond_a0 = a0.cond();
    if !(cond_a0 <= tol.max_cond_a0) {
        return Err(Error::IllConditionedConstant { cond: cond_a0.as_f64() });
    }
    for (lam, v) in &hints {
        let defect = outer.factor.eval(*lam).matvec(v).iter().map(|c| c.norm()).fold(T::zero(), T::max);
        if defect > T::tol(1e-7) {
            return Err(Error::BoundaryNotRegular { re: lam.re.as_f64(), im: lam.im.as_f64() });
        }
    }
    Ok(SpaceContext { b, mate: mate_report, outer, lambda, cond_a0, tol })
}

impl<T: Real> SpaceContext<T> {
    pub fn symbol(&self) -> &RowSchur<T> {
        &self.b
    }

    pub fn dim(&self) -> usize {
        self.b.dim()
    }

    /// The mate `a`.
    pub fn mate(&self) -> &Poly<T> {
        &self.mate.factor
    }

    /// The outer factor `A`.
    pub fn outer_factor(&self) -> &MatPoly<T> {
        &self.outer.factor
    }

    pub fn mate_report(&self) -> &FactorReport<Poly<T>, T> {
        &self.mate
    }

    pub fn factor_report(&self) -> &FactorReport<MatPoly<T>, T> {
        &self.outer
    }

    /// Boundary spectrum `Λ`.
    pub fn boundary(&self) -> &[BoundaryPoint<T>] {
        &self.lambda
    }

    /// The member of `Λ` within `tol_unimodular` of `w`, if any.
    pub fn boundary_point(&self, w: C<T>) -> Option<BoundaryPoint<T>> {
        self.lambda.iter().copied().find(|p| (p.point - w).norm() <= self.tol.tol_unimodular.max(T::tol(1e-10)))
    }

    pub fn cond_a0(&self) -> T {
        self.cond_a0
    }

    pub fn tolerances(&self) -> &Tolerances<T> {
        &self.tol
    }

    /// `1 − |B(w)|²`.
    pub fn defect_at(&self, w: C<T>) -> T {
        T::one() - self.b.eval(w).iter().map(|c| c.norm_sqr()).sum::<T>()
    }

    /// `(A(0)*)^{-1}`.
    pub fn a0_adjoint_inverse(&self) -> CMat<T> {
        self.outer.factor.coeff(0).adjoint().inverse().expect("A(0) is invertible in a valid context")
    }
}
