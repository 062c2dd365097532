use super::{backward_shift, embed, hb_inner, kernel_diagonal, HBElement, SpaceContext};
use crate::error::{Error, Result};
use crate::linalg::CMat;
use crate::polymath::Poly;
use crate::scalar::{cr, cz, Real, C};

/// Squared distance from a target to a finite span, with the jitter that was
/// needed to factor the Gram matrix (zero when none).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Projection<T> {
    pub residual: T,
    pub jitter: T,
}

/// Relative diagonal jitter added when the Gram Cholesky fails.
const JITTER: f64 = 1e-12;
/// Negative residuals below this are reported rather than clamped.
const NEGATIVE_SLACK: f64 = 1e-9;

/// Monomial Gram matrix `G_{jk} = ⟨z^j, z^k⟩_{H(B)}`, `0 ≤ j, k ≤ n`.
pub fn gram<T: Real>(ctx: &SpaceContext<T>, n: usize) -> Result<CMat<T>> {
    let basis = monomials(ctx, n)?;
    Ok(gram_of(&basis))
}

fn monomials<T: Real>(ctx: &SpaceContext<T>, n: usize) -> Result<Vec<HBElement<T>>> {
    (0..=n).map(|k| embed(ctx, &Poly::monomial(k, cr(T::one())))).collect()
}

fn gram_of<T: Real>(basis: &[HBElement<T>]) -> CMat<T> {
    let n = basis.len();
    let mut g = CMat::zeros(n, n);
    for j in 0..n {
        for k in j..n {
            let v = hb_inner(&basis[j], &basis[k]);
            g[(j, k)] = v;
            g[(k, j)] = v.conj();
        }
    }
    g
}

/// `‖t‖² − β* M^{-1} β` with `M_{jk} = ⟨u_k, u_j⟩` and `β_j = ⟨t, u_j⟩`: the
/// squared distance from `t` to `span{u_j}` by a Cholesky solve of the normal
/// equations.
pub fn gram_projection<T: Real>(target_norm_sq: T, m: &CMat<T>, beta: &[C<T>]) -> Result<Projection<T>> {
    let n = beta.len();
    if n == 0 {
        return Ok(Projection { residual: target_norm_sq, jitter: T::zero() });
    }
    let mut jitter = T::zero();
    let l = match m.cholesky() {
        Some(l) => l,
        None => {
            let diag = (0..n).map(|i| m[(i, i)].re).fold(T::zero(), T::max);
            jitter = diag * T::tol(JITTER);
            let shifted = m + &CMat::identity(n).scale_re(jitter);
            shifted.cholesky().ok_or(Error::ConditioningWarning { value: f64::NAN })?
        }
    };
    // β* M^{-1} β = ‖L^{-1} β‖²
    let mut y = vec![cz(); n];
    for i in 0..n {
        let mut s = beta[i];
        for k in 0..i {
            s = s - l[(i, k)] * y[k];
        }
        y[i] = s / l[(i, i)];
    }
    let captured: T = y.iter().map(|c| c.norm_sqr()).sum();
    let residual = target_norm_sq - captured;
    if residual < -T::tol(NEGATIVE_SLACK) * target_norm_sq.max(T::one()) {
        return Err(Error::ConditioningWarning { value: residual.as_f64() });
    }
    Ok(Projection { residual: residual.max(T::zero()), jitter })
}

/// `‖K_w − P_N K_w‖²`, the distance from the kernel at `w` to polynomials of
/// degree `≤ n`, using `⟨K_w, z^j⟩ = w̄^j`.
pub fn density_residual<T: Real>(ctx: &SpaceContext<T>, w: C<T>, n: usize) -> Result<Projection<T>> {
    if w.norm() >= T::one() {
        return Err(Error::DomainError(format!("density residual needs |w| < 1, got {}", w.norm())));
    }
    let g = gram(ctx, n)?;
    // normal matrix M_{jk} = ⟨z^k, z^j⟩ = G_{kj}
    let m = CMat::from_fn(n + 1, n + 1, |j, k| g[(k, j)]);
    let beta: Vec<C<T>> = (0..=n).map(|j| w.conj().powi(j as i32)).collect();
    gram_projection(kernel_diagonal(ctx, w), &m, &beta)
}

/// Squared distance from `1` to `span{(z − λ) z^k : k < n}`.
pub fn point_eval_residual<T: Real>(ctx: &SpaceContext<T>, lambda: C<T>, n: usize) -> Result<Projection<T>> {
    let mono = monomials(ctx, n)?;
    let one = &mono[0];
    let basis: Vec<HBElement<T>> = (0..n).map(|k| mono[k + 1].sub(&mono[k].scale(lambda))).collect();
    let m = CMat::from_fn(n, n, |j, k| hb_inner(&basis[k], &basis[j]));
    let beta: Vec<C<T>> = basis.iter().map(|u| hb_inner(one, u)).collect();
    gram_projection(one.norm_sq, &m, &beta)
}

/// `|⟨Lf, g⟩ − ⟨f, zg⟩ + Σ_i ⟨f, b_i⟩⟨Lb_i, g⟩|`, all inner products in `H(B)`.
pub fn rank_one_identity_defect<T: Real>(ctx: &SpaceContext<T>, f: &Poly<T>, g: &Poly<T>) -> Result<T> {
    let ef = embed(ctx, f)?;
    let eg = embed(ctx, g)?;
    let ezg = embed(ctx, &g.mul_z())?;
    let mut total = hb_inner(&backward_shift(&ef), &eg) - hb_inner(&ef, &ezg);
    for i in 0..ctx.dim() {
        let bi = embed(ctx, &ctx.symbol().component(i))?;
        total = total + hb_inner(&ef, &bi) * hb_inner(&backward_shift(&bi), &eg);
    }
    Ok(total.norm())
}
