use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::polymath::{poly_roots, CircleGrid, Poly};
use crate::scalar::{cr, cz, Real, C};
use crate::space::SpaceContext;

pub const DEFAULT_CLARK_GRID: usize = 1 << 14;
/// Interior points used for the Herglotz reconstruction check.
const HERGLOTZ_POINTS: usize = 8;
/// Largest modulus of a reconstruction point.
const HERGLOTZ_RADIUS: f64 = 0.9;

/// Clark measure `μ_ξ` of `b_ξ = B ξ*`: point masses where `b_ξ = 1` on the
/// circle plus an absolutely continuous part with density
/// `(1 − |b_ξ|²)/|1 − b_ξ|²` against normalized arclength.
#[derive(Clone, Debug, PartialEq)]
pub struct ClarkMeasure<T> {
    pub xi: Vec<C<T>>,
    /// `b_ξ`, kept for closed-form density evaluation.
    pub b_xi: Poly<T>,
    pub point_masses: Vec<(C<T>, T)>,
    /// Density on the unshifted grid `e^{2πij/n}`.
    pub density: Vec<T>,
    /// Trapezoid integral of the density.
    pub ac_mass: T,
    pub total_mass: T,
    /// `H_ξ(0) = (1 + b_ξ(0))/(1 − b_ξ(0))`; its real part is the exact total mass.
    pub h0: C<T>,
    pub imag_const: T,
    pub min_density: T,
    /// Largest deviation in `(1 − b_ξ)^{-1} = ∫ dμ/(1 − z ζ̄) + (1 − conj H_ξ(0))/2`
    /// over the sampled interior points.
    pub herglotz_residual: T,
}

impl<T: Real> ClarkMeasure<T> {
    /// Mass at the atom within `tol` of `lambda`, if any.
    pub fn mass_at(&self, lambda: C<T>, tol: T) -> Option<T> {
        let tol = tol.max(T::tol(1e-10));
        self.point_masses.iter().find(|(p, _)| (*p - lambda).norm() <= tol).map(|(_, m)| *m)
    }

    /// `|total_mass − Re H_ξ(0)|`.
    pub fn balance_residual(&self) -> T {
        (self.total_mass - self.h0.re).abs()
    }

    /// Closed-form density at a unimodular `z`, with the removable value at atoms.
    pub fn density_at(&self, z: C<T>) -> T {
        density_value(&self.b_xi, &self.point_masses, z)
    }

    /// `∫ dμ_ξ(ζ)/(1 − z ζ̄)` by the trapezoid rule on the stored grid.
    pub fn cauchy_transform(&self, z: C<T>) -> C<T> {
        let n = self.density.len();
        let grid = CircleGrid::<T>::new(n.trailing_zeros(), false);
        let one = cr(T::one());
        let mut acc = cz();
        for (zeta, &d) in grid.points().iter().zip(&self.density) {
            acc = acc + cr(d) / (one - z * zeta.conj());
        }
        acc = acc / cr(T::lit(n as f64));
        for &(lam, m) in &self.point_masses {
            acc = acc + cr(m) / (one - z * lam.conj());
        }
        acc
    }
}

/// Distance to an atom below which the factored form of the density is used.
const NEAR_ATOM: f64 = 0.1;

fn density_value<T: Real>(b: &Poly<T>, atoms: &[(C<T>, T)], z: C<T>) -> T {
    let nearest = atoms.iter().map(|&(l, _)| (l, (l - z).norm())).min_by(|x, y| x.1.partial_cmp(&y.1).unwrap());
    if let Some((lam, dist)) = nearest {
        if dist < T::tol(1e-7) {
            // both numerator and denominator vanish to second order along the circle
            let d1 = b.derivative();
            let b1 = d1.eval(lam);
            let b2 = d1.derivative().eval(lam);
            let a2 = b1.norm_sqr();
            return ((lam * lam * b2 + lam * b1).re - a2) / a2;
        }
        if dist < T::lit(NEAR_ATOM) {
            // With 1 − b = (z − λ)q and z = λe^{iθ}: z − λ = 2i·sin(θ/2)·λe^{iθ/2}, so
            // (1 − |b|²)/|1 − b|² = −Im(λe^{iθ/2}q)/(sin(θ/2)|q|²) − 1 without cancellation.
            let (q, _) = (&Poly::one() - b).div_linear(lam);
            let w = z / lam;
            let h = (w / w.norm()).sqrt();
            let qz = q.eval(z);
            return -(lam * h * qz).im / (h.im * qz.norm_sqr()) - T::one();
        }
    }
    let bz = b.eval(z);
    (T::one() - bz.norm_sqr()) / (cr(T::one()) - bz).norm_sqr()
}

/// Clark measure for `ξ` with the density tabulated on `grid_size` points
/// (rounded up to a power of two).
pub fn clark<T: Real>(ctx: &SpaceContext<T>, xi: &[C<T>], grid_size: usize) -> Result<ClarkMeasure<T>> {
    let d = ctx.dim();
    if xi.len() != d {
        return Err(Error::DimensionMismatch { expected: d, found: xi.len() });
    }
    let xi_norm = xi.iter().map(|c| c.norm_sqr()).sum::<T>().sqrt();
    if xi_norm > T::one() + T::tol(1e-12) {
        return Err(Error::DomainError(format!("|ξ| = {xi_norm} exceeds 1")));
    }
    let b = ctx.symbol().pair(xi);
    let p = &Poly::one() - &b;
    if p.is_zero() {
        return Err(Error::DegenerateSymbol);
    }

    let tol = ctx.tolerances();
    let mut atoms = Vec::new();
    if p.degree().unwrap_or(0) > 0 {
        let d1 = b.derivative();
        for r in poly_roots(&p, &tol.root_options())? {
            if (r.value.norm() - T::one()).abs() > tol.tol_unimodular {
                continue;
            }
            let lam = r.value / r.value.norm();
            if r.multiplicity > 1 {
                return Err(Error::HigherOrderBoundaryZero {
                    re: lam.re.as_f64(),
                    im: lam.im.as_f64(),
                    multiplicity: r.multiplicity,
                });
            }
            let mass = lam.conj() / d1.eval(lam);
            if !(mass.re > T::zero()) || mass.im.abs() > T::tol(1e-9) {
                return Err(Error::NonpositiveMass {
                    re: lam.re.as_f64(),
                    im: lam.im.as_f64(),
                    mass_re: mass.re.as_f64(),
                    mass_im: mass.im.as_f64(),
                });
            }
            atoms.push((lam, mass.re));
        }
    }

    let n = grid_size.max(2).next_power_of_two();
    let grid = CircleGrid::<T>::new(n.trailing_zeros(), false);
    let density: Vec<T> = grid.points().iter().map(|&z| density_value(&b, &atoms, z)).collect();
    let ac_mass = grid.mean(&density);
    let total_mass = ac_mass + atoms.iter().map(|(_, m)| *m).sum::<T>();
    let min_density = density.iter().copied().fold(T::infinity(), T::min);

    let one = cr(T::one());
    let b0 = b.coeff(0);
    let h0 = (one + b0) / (one - b0);
    let mut measure = ClarkMeasure {
        xi: xi.to_vec(),
        b_xi: b,
        point_masses: atoms,
        density,
        ac_mass,
        total_mass,
        h0,
        imag_const: h0.im,
        min_density,
        herglotz_residual: T::zero(),
    };

    let mut rng = ChaCha8Rng::seed_from_u64(tol.seed);
    let constant = (one - h0.conj()) / cr(T::lit(2.0));
    let mut worst = T::zero();
    for _ in 0..HERGLOTZ_POINTS {
        let rad = HERGLOTZ_RADIUS * rng.gen::<f64>().sqrt();
        let ang = std::f64::consts::TAU * rng.gen::<f64>();
        let z = C::from_polar(T::lit(rad), T::lit(ang));
        let lhs = one / (one - measure.b_xi.eval(z));
        let rhs = measure.cauchy_transform(z) + constant;
        worst = worst.max((lhs - rhs).norm());
    }
    measure.herglotz_residual = worst;
    Ok(measure)
}
