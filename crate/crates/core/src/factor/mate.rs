use super::{outer_check, FactorReport};
use crate::error::{Error, Result};
use crate::polymath::{defect_laurent, poly_roots, pow2_log2, CircleGrid, LaurentHerm, Poly, VecPoly};
use crate::scalar::{cr, Real, C};
use crate::tolerances::Tolerances;

/// The mate `a` of a row symbol: outer, `a(0) > 0`, `|a|² = 1 − BB*` on the circle.
pub fn mate<T: Real>(b: &VecPoly<T>, tol: &Tolerances<T>) -> Result<FactorReport<Poly<T>, T>> {
    let (scalar, _) = defect_laurent(b);
    fejer_riesz(&scalar, tol).map_err(|e| match e {
        Error::DegenerateSymbol => Error::MateUndefined,
        e => e,
    })
}

/// Outer factor of a nonnegative scalar Laurent polynomial `L`.
///
/// The roots of `z^m L(z)` come in pairs `(w, 1/conj w)`; the factor keeps the
/// roots outside the disk and half of every unimodular cluster, then fixes
/// modulus by least squares on the grid and phase by `a(0) > 0`.
/// Identically zero input is reported as [`Error::DegenerateSymbol`].
pub fn fejer_riesz<T: Real>(l: &LaurentHerm<T>, tol: &Tolerances<T>) -> Result<FactorReport<Poly<T>, T>> {
    assert_eq!(l.dim(), 1, "scalar Laurent data expected");
    if l.is_zero(tol.tol_psd) {
        return Err(Error::DegenerateSymbol);
    }
    let m = l.half_degree();
    let grid = CircleGrid::<T>::new(pow2_log2(m, 8, 9), false);
    let samples: Vec<T> = grid.points().iter().map(|&z| l.eval_scalar(z).map(|v| v.re)).collect::<Result<_>>()?;
    let min = samples.iter().copied().fold(T::infinity(), T::min);
    if min < -tol.tol_psd {
        return Err(Error::NotPositive { min: min.as_f64() });
    }

    let kept = if m == 0 { Vec::new() } else { outer_roots(&l.shifted_scalar_poly(), tol)? };
    let shape = Poly::from_roots(&kept, cr(T::one()));
    // least-squares modulus: minimize Σ (κ² |shape|² − L)²
    let (mut num, mut den) = (T::zero(), T::zero());
    for (&z, &lv) in grid.points().iter().zip(&samples) {
        let g = shape.eval(z).norm_sqr();
        num = num + g * lv;
        den = den + g * g;
    }
    let kappa = (num / den).max(T::zero()).sqrt();
    let at0 = shape.coeff(0);
    let phase = if at0.norm() > T::zero() { at0.conj() / at0.norm() } else { cr(T::one()) };
    let a = shape.scale(phase * kappa);

    let residual_sup = grid
        .points()
        .iter()
        .zip(&samples)
        .map(|(&z, &lv)| (a.eval(z).norm_sqr() - lv).abs())
        .fold(T::zero(), T::max);
    let outer_gap = outer_check(&a, &tol.root_options())?;
    Ok(FactorReport { factor: a, residual_sup, outer_gap, iterations: 0, trace: vec![residual_sup] })
}

/// Roots of `z^m L(z)` belonging to the outer factor.
fn outer_roots<T: Real>(p: &Poly<T>, tol: &Tolerances<T>) -> Result<Vec<C<T>>> {
    let roots = poly_roots(p, &tol.root_options())?;
    let mut kept = Vec::new();
    // unimodular candidates as (point, multiplicity); reflected pairs that the
    // root finder did not merge are joined by the pairing test below
    let mut boundary: Vec<(C<T>, usize)> = Vec::new();
    for r in &roots {
        let modulus = r.value.norm();
        if (modulus - T::one()).abs() < tol.tol_pair {
            match boundary.iter_mut().find(|(w, _)| (*w * r.value.conj() - cr(T::one())).norm() < tol.tol_pair) {
                Some(entry) => entry.1 += r.multiplicity,
                None => boundary.push((r.value, r.multiplicity)),
            }
        } else if modulus > T::one() {
            kept.extend(std::iter::repeat_n(r.value, r.multiplicity));
        }
    }
    for (w, mult) in boundary {
        if mult % 2 == 1 {
            return Err(Error::OddBoundaryMultiplicity { root_re: w.re.as_f64(), root_im: w.im.as_f64(), multiplicity: mult });
        }
        let on_circle = w / w.norm();
        kept.extend(std::iter::repeat_n(on_circle, mult / 2));
    }
    Ok(kept)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;

    fn tol() -> Tolerances<f64> {
        Tolerances::default()
    }

    #[test]
    fn zero_symbol_has_unit_mate() {
        let b = VecPoly::<f64>::new(1, vec![vec![c(0.0, 0.0)]]).unwrap();
        let r = mate(&b, &tol()).unwrap();
        assert_eq!(r.factor, Poly::one());
    }

    #[test]
    fn sarason_mate() {
        let b = VecPoly::<f64>::new(1, vec![vec![c(0.5, 0.0)], vec![c(0.5, 0.0)]]).unwrap();
        let r = mate(&b, &tol()).unwrap();
        assert!((&r.factor - &Poly::from_re(&[0.5, -0.5])).max_abs_coeff() < 1e-12);
        assert!(r.residual_sup < 1e-12);
        assert!(r.outer_gap < 1e-10);
    }

    #[test]
    fn flat_symbol_has_no_mate() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let b = VecPoly::<f64>::new(2, vec![vec![c(0.0, 0.0), c(s, 0.0)], vec![c(s, 0.0), c(0.0, 0.0)]]).unwrap();
        assert_eq!(mate(&b, &tol()).unwrap_err(), Error::MateUndefined);
    }

    #[test]
    fn negative_density_rejected() {
        let l = LaurentHerm::<f64>::scalar(&[c(0.1, 0.0), c(0.5, 0.0)]);
        assert!(matches!(fejer_riesz(&l, &tol()), Err(Error::NotPositive { .. })));
    }

    #[test]
    fn squared_boundary_zero() {
        // |1 − z|⁴ / 16 = |(1 − z)²/4|²
        let target = Poly::<f64>::from_re(&[0.25, -0.5, 0.25]);
        let l = LaurentHerm::scalar(&[c(6.0 / 16.0, 0.0), c(-4.0 / 16.0, 0.0), c(1.0 / 16.0, 0.0)]);
        let r = fejer_riesz(&l, &tol()).unwrap();
        assert!((&r.factor - &target).max_abs_coeff() < 1e-9, "{:?}", r.factor);
    }
}
