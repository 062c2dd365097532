//! Boundary behaviour of `H(B)`: the Carathéodory condition, Clark measures,
//! convergence of kernels to boundary kernels, and the closed-form
//! infinite-rank example.

mod clark;

pub use clark::{clark, ClarkMeasure, DEFAULT_CLARK_GRID};

use crate::error::{Error, Result};
use crate::scalar::{cr, Real, C};
use crate::space::{kernel, kernel_diagonal, SpaceContext};

/// Radii `r = 1 − 2^{−k}` used for radial limits.
pub const RADIAL_LEVELS: std::ops::RangeInclusive<i32> = 4..=20;
/// Number of Richardson columns (the extrapolated error is `O(h^RICHARDSON_DEPTH)`).
const RICHARDSON_DEPTH: usize = 4;

/// Outcome of testing the Carathéodory condition at a unimodular point.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryReport<T> {
    pub lambda: C<T>,
    pub satisfies_caratheodory: bool,
    /// `B(λ)`.
    pub boundary_vector: Vec<C<T>>,
    /// `‖K_λ‖²` from the exact boundary kernel.
    pub k_norm_sq_exact: Option<T>,
    /// `λ·g′(λ)` with `g(z) = B(z)B(λ)*`.
    pub k_norm_sq_lhopital: Option<T>,
    /// Richardson limit of `(1 − |B(rλ)|²)/(1 − r²)`.
    pub k_norm_sq_radial: Option<T>,
    /// Point mass of the Clark measure for `ξ = B(λ)` at `λ`.
    pub clark_mass: Option<T>,
}

/// Tests the Carathéodory condition at `λ`. It holds exactly at the boundary
/// spectrum; there the kernel norm is computed three independent ways and the
/// Clark mass is read off the measure for `ξ = B(λ)`.
pub fn caratheodory<T: Real>(ctx: &SpaceContext<T>, lambda: C<T>) -> Result<BoundaryReport<T>> {
    let r = lambda.norm();
    if (r - T::one()).abs() > T::tol(1e-10) {
        return Err(Error::DomainError(format!("caratheodory needs |λ| = 1, got {r}")));
    }
    let lambda = lambda / r;
    let Some(point) = ctx.boundary_point(lambda) else {
        let bv = ctx.symbol().eval(lambda);
        let norm = bv.iter().map(|c| c.norm_sqr()).sum::<T>().sqrt();
        if (norm - T::one()).abs() <= T::tol(1e-8) {
            return Err(Error::BoundaryNotRegular { re: lambda.re.as_f64(), im: lambda.im.as_f64() });
        }
        return Ok(BoundaryReport {
            lambda,
            satisfies_caratheodory: false,
            boundary_vector: bv,
            k_norm_sq_exact: None,
            k_norm_sq_lhopital: None,
            k_norm_sq_radial: None,
            clark_mass: None,
        });
    };
    let lambda = point.point;
    let bv = ctx.symbol().eval(lambda);

    let exact = kernel(ctx, lambda, None)?.element.norm_sq;
    let g = ctx.symbol().pair(&bv);
    let lhopital = (lambda * g.derivative().eval(lambda)).re;
    let samples: Vec<T> = RADIAL_LEVELS.map(|k| kernel_diagonal(ctx, lambda * cr(radius(k)))).collect();
    let radial = richardson(&samples);
    let clark_mass = clark(ctx, &bv, DEFAULT_CLARK_GRID)?.mass_at(lambda, ctx.tolerances().tol_unimodular);

    Ok(BoundaryReport {
        lambda,
        satisfies_caratheodory: true,
        boundary_vector: bv,
        k_norm_sq_exact: Some(exact),
        k_norm_sq_lhopital: Some(lhopital),
        k_norm_sq_radial: Some(radial),
        clark_mass,
    })
}

/// `‖K_{rλ} − K_λ‖² = K_{rλ}(rλ) − 2 Re K_λ(rλ) + ‖K_λ‖²` for each radius,
/// using only reproducing-kernel evaluations.
pub fn kernel_convergence<T: Real>(ctx: &SpaceContext<T>, lambda: C<T>, radii: &[T]) -> Result<Vec<T>> {
    let Some(point) = ctx.boundary_point(lambda) else {
        return Err(Error::BoundaryNotRegular { re: lambda.re.as_f64(), im: lambda.im.as_f64() });
    };
    let k = kernel(ctx, point.point, None)?.element;
    radii
        .iter()
        .map(|&r| {
            if !(r >= T::zero() && r < T::one()) {
                return Err(Error::DomainError(format!("radius {r} outside [0, 1)")));
            }
            let z = point.point * cr(r);
            Ok(kernel_diagonal(ctx, z) - T::lit(2.0) * k.f.eval(z).re + k.norm_sq)
        })
        .collect()
}

/// `1 − 2^{−k}`.
pub fn radius<T: Real>(k: i32) -> T {
    T::one() - T::lit(2f64.powi(-k))
}

/// Limit at `h → 0` of samples taken at `h, h/2, h/4, …`, assuming an expansion
/// in integer powers of `h`.
pub fn richardson<T: Real>(samples: &[T]) -> T {
    let n = samples.len();
    if n == 0 {
        return T::nan();
    }
    let depth = RICHARDSON_DEPTH.min(n);
    let mut col: Vec<T> = samples[n - depth..].to_vec();
    for j in 1..depth {
        let f = T::lit(2f64.powi(j as i32) - 1.0);
        col = col.windows(2).map(|w| w[1] + (w[1] - w[0]) / f).collect();
    }
    col[0]
}

/// The infinite-rank example `g(z) = (1 + z)/4 + z²/(4 − 2z)` on the closed disk.
pub fn infinite_symbol_eval<T: Real>(z: C<T>) -> Result<C<T>> {
    if z.norm() > T::one() + T::tol(1e-12) {
        return Err(Error::DomainError(format!("|z| = {} outside the closed disk", z.norm())));
    }
    let one = cr(T::one());
    let four = cr(T::lit(4.0));
    Ok((one + z) / four + z * z / (four - z * cr(T::lit(2.0))))
}

/// Angular derivative `g′(1) = 1/4 + (8z − 2z²)/(4 − 2z)²` at `z = 1`.
pub fn infinite_symbol_slope<T: Real>() -> T {
    let z = T::one();
    let den = T::lit(4.0) - T::lit(2.0) * z;
    T::lit(0.25) + (T::lit(8.0) * z - T::lit(2.0) * z * z) / (den * den)
}

/// Richardson limit of `(1 − g(r))/(1 − r)` along the radius to `1`.
pub fn infinite_symbol_radial_slope<T: Real>() -> Result<T> {
    let samples = RADIAL_LEVELS
        .map(|k| {
            let r: T = radius(k);
            Ok(((cr(T::one()) - infinite_symbol_eval(cr(r))?) / cr(T::one() - r)).re)
        })
        .collect::<Result<Vec<T>>>()?;
    Ok(richardson(&samples))
}
