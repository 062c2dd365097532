//! Cyclicity of polynomials in `H(B)`: a polynomial is cyclic exactly when it is
//! outer and does not vanish on the boundary spectrum.

use crate::error::{Error, Result};
use crate::polymath::{poly_roots, Poly, RootOptions};
use crate::scalar::{cr, Real, C};
use crate::space::{embed, point_eval_residual, BoundaryPoint, SpaceContext};

/// Relative threshold for `f(λ) ≠ 0`, scaled by the largest coefficient of `f`.
pub const BOUNDARY_ZERO_REL: f64 = 1e-8;
/// Smallest member/control residual ratio regarded as a clear separation.
pub const GAP_RATIO_MIN: f64 = 10.0;

#[derive(Clone, Debug, PartialEq)]
pub struct OuterTest<T> {
    pub is_outer: bool,
    /// Roots with `|root| < 1 − tol`.
    pub interior_roots: Vec<C<T>>,
    /// Roots with `||root| − 1| ≤ tol`; these do not obstruct outerness.
    pub boundary_roots: Vec<C<T>>,
}

/// A polynomial is outer iff it has no zeros in the open disk.
pub fn is_outer<T: Real>(f: &Poly<T>, tol: T, opts: &RootOptions<T>) -> Result<OuterTest<T>> {
    if f.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let mut out = OuterTest { is_outer: true, interior_roots: Vec::new(), boundary_roots: Vec::new() };
    if f.degree() == Some(0) {
        return Ok(out);
    }
    for r in poly_roots(f, opts)? {
        let m = r.value.norm();
        let bucket = if m < T::one() - tol {
            &mut out.interior_roots
        } else if m <= T::one() + tol {
            &mut out.boundary_roots
        } else {
            continue;
        };
        bucket.extend(std::iter::repeat_n(r.value, r.multiplicity));
    }
    out.is_outer = out.interior_roots.is_empty();
    Ok(out)
}

/// The boundary spectrum `Λ`: unimodular zeros of the mate with multiplicities.
pub fn boundary_spectrum<T: Real>(ctx: &SpaceContext<T>) -> Vec<BoundaryPoint<T>> {
    ctx.boundary().to_vec()
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryCheck<T> {
    pub lambda: C<T>,
    pub value: C<T>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CyclicityCertificate<T> {
    pub is_outer: bool,
    pub interior_roots: Vec<C<T>>,
    pub boundary_checks: Vec<BoundaryCheck<T>>,
    pub verdict: bool,
    /// Smallest `|f(λ_j)|` over the boundary spectrum.
    pub min_boundary_value: Option<T>,
    /// Largest `|f(root)|` over interior roots (how well they are resolved).
    pub max_interior_residual: Option<T>,
    /// Smallest modulus among all roots of `f`.
    pub min_root_modulus: Option<T>,
}

pub fn cyclicity<T: Real>(ctx: &SpaceContext<T>, f: &Poly<T>) -> Result<CyclicityCertificate<T>> {
    let tol = ctx.tolerances();
    let outer = is_outer(f, tol.tol_unimodular, &tol.root_options())?;
    let threshold = T::lit(BOUNDARY_ZERO_REL) * f.max_abs_coeff();
    let boundary_checks: Vec<BoundaryCheck<T>> = ctx
        .boundary()
        .iter()
        .map(|p| {
            let value = f.eval(p.point);
            BoundaryCheck { lambda: p.point, value, pass: value.norm() > threshold }
        })
        .collect();
    let verdict = outer.is_outer && boundary_checks.iter().all(|c| c.pass);
    let min_boundary_value = boundary_checks.iter().map(|c| c.value.norm()).reduce(T::min);
    let max_interior_residual = outer.interior_roots.iter().map(|r| f.eval(*r).norm()).reduce(T::max);
    let min_root_modulus = if f.degree().unwrap_or(0) == 0 {
        None
    } else {
        poly_roots(f, &tol.root_options())?.iter().map(|r| r.value.norm()).reduce(T::min)
    };
    Ok(CyclicityCertificate {
        is_outer: outer.is_outer,
        interior_roots: outer.interior_roots,
        boundary_checks,
        verdict,
        min_boundary_value,
        max_interior_residual,
        min_root_modulus,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CrosscheckEntry<T> {
    pub lambda: C<T>,
    /// Whether `λ` belongs to the boundary spectrum.
    pub member: bool,
    /// Squared distance from `1` to `(z − λ)·P_{N−1}`.
    pub residual: T,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Crosscheck<T> {
    pub n: usize,
    pub entries: Vec<CrosscheckEntry<T>>,
    /// Smallest member residual (or `‖1‖²` when `Λ = ∅`) over the largest control residual.
    pub gap_ratio: T,
    /// `gap_ratio < 10`: members and controls are not clearly separated at this `N`.
    pub inconclusive: bool,
}

/// Sweeps `Λ` and control points through [`point_eval_residual`]. Members carry
/// a bounded point evaluation, so their residual stays bounded below; controls
/// (`−λ` and `iλ` for each member, or `{1, −1, i}` when `Λ` is empty) decay.
pub fn spectrum_crosscheck<T: Real>(ctx: &SpaceContext<T>, n: usize) -> Result<Crosscheck<T>> {
    let min_n = 2 * ctx.mate().degree().unwrap_or(0) + 4;
    if n < min_n {
        return Err(Error::DomainError(format!("crosscheck needs N ≥ {min_n}, got {n}")));
    }
    let members: Vec<C<T>> = ctx.boundary().iter().map(|p| p.point).collect();
    let i = C::new(T::zero(), T::one());
    let mut controls: Vec<C<T>> = Vec::new();
    let candidates: Vec<C<T>> = if members.is_empty() {
        vec![cr(T::one()), cr(-T::one()), i]
    } else {
        members.iter().flat_map(|&l| [-l, i * l]).collect()
    };
    let near = |a: C<T>, b: C<T>| (a - b).norm() <= T::tol(1e-9);
    for c in candidates {
        if !members.iter().any(|&m| near(m, c)) && !controls.iter().any(|&m| near(m, c)) {
            controls.push(c);
        }
    }

    let mut entries = Vec::with_capacity(members.len() + controls.len());
    for &lambda in &members {
        entries.push(CrosscheckEntry { lambda, member: true, residual: point_eval_residual(ctx, lambda, n)?.residual });
    }
    for &lambda in &controls {
        entries.push(CrosscheckEntry { lambda, member: false, residual: point_eval_residual(ctx, lambda, n)?.residual });
    }
    let reference = if members.is_empty() {
        embed(ctx, &Poly::one())?.norm_sq
    } else {
        entries.iter().filter(|e| e.member).map(|e| e.residual).fold(T::infinity(), T::min)
    };
    let control_max = entries.iter().filter(|e| !e.member).map(|e| e.residual).fold(T::zero(), T::max);
    let gap_ratio = if control_max > T::zero() { reference / control_max } else { T::infinity() };
    Ok(Crosscheck { n, entries, gap_ratio, inconclusive: !(gap_ratio >= T::lit(GAP_RATIO_MIN)) })
}
