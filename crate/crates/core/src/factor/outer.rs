use crate::error::{Error, Result};
use crate::polymath::{poly_roots, CircleGrid, MatPoly, Poly, RootOptions};
use crate::scalar::{Real, C};

/// Anything with a determinant polynomial.
pub trait OuterCheck<T: Real> {
    fn det_polynomial(&self) -> Poly<T>;
}

impl<T: Real> OuterCheck<T> for Poly<T> {
    fn det_polynomial(&self) -> Poly<T> {
        self.clone()
    }
}

impl<T: Real> OuterCheck<T> for MatPoly<T> {
    fn det_polynomial(&self) -> Poly<T> {
        det_poly(self)
    }
}

/// `det A(z)` as a polynomial of degree at most `d·deg A`, recovered from
/// circle samples by FFT interpolation. The true degree is often far lower, so
/// trailing coefficients at the interpolation noise level are dropped.
pub fn det_poly<T: Real>(a: &MatPoly<T>) -> Poly<T> {
    let Some(m) = a.degree() else { return Poly::zero() };
    let deg = a.dim() * m;
    if deg == 0 {
        return Poly::constant(a.coeff(0).det());
    }
    let grid = CircleGrid::for_degree(deg, 2, false);
    let vals: Vec<C<T>> = grid.points().iter().map(|&z| a.eval(z).det()).collect();
    let mut coeffs = grid.interpolate(&vals, deg);
    let max = coeffs.iter().map(|c| c.norm()).fold(T::zero(), T::max);
    while coeffs.last().is_some_and(|c| c.norm() <= T::tol(1e-12) * max) {
        coeffs.pop();
    }
    Poly::new(coeffs)
}

/// Outerness gap `|log|det A(0)| − ∫ log|det A| dm|`.
///
/// The circle mean of `log|p|` is evaluated exactly by Jensen's formula,
/// `log|lead| + Σ log max(1, |r|)` over the roots `r`, which stays accurate
/// when `det A` vanishes on the circle (a grid average converges only like
/// `log n / n` there). Grid points with `|det| < 1e−13` are still counted and
/// more than 10% of them signal a degenerate determinant.
pub fn outer_check<T: Real, F: OuterCheck<T>>(a: &F, opts: &RootOptions<T>) -> Result<T> {
    let p = a.det_polynomial();
    let grid = CircleGrid::<T>::new(9, false);
    let tiny = T::tol(1e-13);
    let excluded = grid.points().iter().filter(|&&z| p.eval(z).norm() < tiny).count();
    if p.is_zero() || excluded * 10 > grid.len() {
        return Err(Error::DegenerateDeterminant { excluded: if p.is_zero() { grid.len() } else { excluded }, total: grid.len() });
    }
    let at0 = p.coeff(0).norm();
    if at0 <= tiny * p.max_abs_coeff() {
        return Ok(T::infinity());
    }
    let deg = p.degree().unwrap_or(0);
    let mut mean = p.coeff(deg).norm().ln();
    if deg > 0 {
        for r in poly_roots(&p, opts)? {
            mean = mean + T::lit(r.multiplicity as f64) * r.value.norm().max(T::one()).ln();
        }
    }
    Ok((at0.ln() - mean).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::CMat;
    use crate::scalar::c;

    #[test]
    fn boundary_zero_is_outer() {
        let a = Poly::<f64>::from_re(&[0.5, -0.5]);
        assert!(outer_check(&a, &RootOptions::default()).unwrap() < 1e-12);
    }

    #[test]
    fn inner_factor_is_flagged() {
        let a = Poly::<f64>::monomial(1, c(1.0, 0.0));
        let gap = outer_check(&a, &RootOptions::default()).unwrap();
        assert!(gap.is_infinite());
        let b = Poly::<f64>::from_re(&[-0.5, 1.0]);
        assert!((outer_check(&b, &RootOptions::default()).unwrap() - 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn identity_matrix_is_outer() {
        let a = MatPoly::<f64>::identity(3);
        assert_eq!(outer_check(&a, &RootOptions::default()).unwrap(), 0.0);
    }

    #[test]
    fn zero_determinant_is_degenerate() {
        let a = MatPoly::<f64>::new(2, vec![CMat::from_fn(2, 2, |i, _| if i == 0 { c(1.0, 0.0) } else { c(0.0, 0.0) })]);
        assert!(matches!(outer_check(&a, &RootOptions::default()), Err(Error::DegenerateDeterminant { .. })));
    }

    #[test]
    fn det_poly_matches_pointwise() {
        let a = MatPoly::<f64>::new(
            2,
            vec![
                CMat::from_fn(2, 2, |i, j| c((i + 2 * j) as f64, 0.5)),
                CMat::from_fn(2, 2, |i, j| c(0.0, (i * j) as f64 - 0.3)),
            ],
        );
        let p = det_poly(&a);
        for t in [0.1, 0.7, 2.0] {
            let z = c(0.4 * t, -0.2);
            assert!((p.eval(z) - a.eval(z).det()).norm() < 1e-12);
        }
    }
}
