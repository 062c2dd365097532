use super::SpaceContext;
use crate::error::{Error, Result};
use crate::polymath::{toeplitz_conj, Poly, RowSymbol, VecPoly};
use crate::scalar::{cz, Real, C};

/// An element of `H(B)` in embedded coordinates `(f, f⁺) ∈ H² ⊕ H²(C^d)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HBElement<T> {
    pub f: Poly<T>,
    pub f_plus: VecPoly<T>,
    /// `‖f‖²_{H(B)} = ‖f‖²_{H²} + ‖f⁺‖²_{H²}`.
    pub norm_sq: T,
}

impl<T: Real> HBElement<T> {
    pub fn new(f: Poly<T>, f_plus: VecPoly<T>) -> Self {
        let norm_sq = f.norm_sq() + f_plus.norm_sq();
        HBElement { f, f_plus, norm_sq }
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(Poly::zero(), VecPoly::zero(dim))
    }

    pub fn norm(&self) -> T {
        self.norm_sq.sqrt()
    }

    pub fn scale(&self, s: C<T>) -> Self {
        Self::new(self.f.scale(s), self.f_plus.scale(s))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(&self.f + &other.f, &self.f_plus + &other.f_plus)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(&self.f - &other.f, &self.f_plus - &other.f_plus)
    }

    /// Coefficients of the analytic part of `B* f + A* f⁺`, which must vanish.
    pub fn membership_residual(&self, ctx: &SpaceContext<T>) -> VecPoly<T> {
        let r = toeplitz_conj(&RowSymbol(ctx.symbol().symbol()), &self.f);
        let s = toeplitz_conj(ctx.outer_factor(), &self.f_plus);
        &r + &s
    }
}

fn check_membership<T: Real>(ctx: &SpaceContext<T>, el: &HBElement<T>) -> Result<()> {
    let scale = T::one().max(el.f.max_abs_coeff()).max(el.f_plus.max_abs_coeff());
    let residual = el.membership_residual(ctx).max_abs_coeff() / scale;
    let tol = ctx.tolerances().tol_eval;
    if residual > tol {
        return Err(Error::EmbeddingResidual { residual: residual.as_f64(), tolerance: tol.as_f64() });
    }
    Ok(())
}

/// Largest admissible `cond(A(0))` for the back-substitution (six digits).
const EMBED_MAX_COND: f64 = 1e6;

/// `f ↦ (f, f⁺)`, where `f⁺` is the polynomial of degree `≤ deg f` with
/// `P_+(B* f + A* f⁺) = 0`.
///
/// The condition is banded block-triangular: row `k` reads
/// `A_0* g_k = −r_k − Σ_{j≥1} A_j* g_{k+j}` with `r = P_+(B* f)`, so the rows are
/// solved from `k = deg f` down to `0`; rows beyond `deg f` hold with `g = 0`.
pub fn embed<T: Real>(ctx: &SpaceContext<T>, f: &Poly<T>) -> Result<HBElement<T>> {
    let d = ctx.dim();
    if f.is_zero() {
        return Ok(HBElement::zero(d));
    }
    if ctx.cond_a0() > T::lit(EMBED_MAX_COND) {
        return Err(Error::IllConditionedConstant { cond: ctx.cond_a0().as_f64() });
    }
    let a = ctx.outer_factor();
    let r = toeplitz_conj(&RowSymbol(ctx.symbol().symbol()), f);
    let n = f.len();
    let lu = a.coeff(0).adjoint().lu();
    let adj: Vec<_> = a.coeffs().iter().map(|c| c.adjoint()).collect();
    let mut g: Vec<Vec<C<T>>> = vec![vec![cz(); d]; n];
    for k in (0..n).rev() {
        let mut rhs: Vec<C<T>> = r.row(k).iter().map(|x| -*x).collect();
        for (j, aj) in adj.iter().enumerate().skip(1) {
            if k + j >= n {
                break;
            }
            for (x, y) in rhs.iter_mut().zip(aj.matvec(&g[k + j])) {
                *x = *x - y;
            }
        }
        g[k] = lu.solve_vec(&rhs);
    }
    let el = HBElement::new(f.clone(), VecPoly::new(d, g)?);
    check_membership(ctx, &el)?;
    Ok(el)
}

/// `⟨F, G⟩_{H(B)} = ⟨f, g⟩_{H²} + ⟨f⁺, g⁺⟩_{H²(C^d)}`.
pub fn hb_inner<T: Real>(x: &HBElement<T>, y: &HBElement<T>) -> C<T> {
    x.f.h2_inner(&y.f) + x.f_plus.h2_inner(&y.f_plus)
}

/// `L(f, f⁺) = (Lf, Lf⁺)`.
pub fn backward_shift<T: Real>(el: &HBElement<T>) -> HBElement<T> {
    HBElement::new(el.f.backward_shift(), el.f_plus.backward_shift())
}

/// `embed(z f)`.
pub fn multiply_z<T: Real>(ctx: &SpaceContext<T>, el: &HBElement<T>) -> Result<HBElement<T>> {
    embed(ctx, &el.f.mul_z())
}

/// `T_{φ̄}` on `H(B)`: `(T_{φ̄} f, T_{φ̄} f⁺)`, re-verified as a member of `H(B)`.
pub fn toeplitz_conj_hb<T: Real>(ctx: &SpaceContext<T>, phi: &Poly<T>, el: &HBElement<T>) -> Result<HBElement<T>> {
    let out = HBElement::new(toeplitz_conj(phi, &el.f), toeplitz_conj(phi, &el.f_plus));
    check_membership(ctx, &out)?;
    Ok(out)
}
