use super::{outer_check, FactorReport};
use crate::error::{Error, Result};
use crate::linalg::{real_lstsq, CMat};
use crate::polymath::{poly_roots, pow2_log2, CircleGrid, LaurentHerm, MatPoly, Poly, RootOptions};
use crate::scalar::{cr, cz, Real, C};
use crate::tolerances::Tolerances;

/// Boundary point `λ` with a vector `v` that the factor must annihilate, `A(λ)v = 0`.
pub type NullPair<T> = (C<T>, Vec<C<T>>);

#[derive(Clone, Debug)]
pub struct WilsonConfig<T> {
    /// Residual at which the iteration stops early.
    pub tol_factor: T,
    /// Residual above which the result is rejected.
    pub tol_accept: T,
    pub max_iter: usize,
    pub grid_log2: Option<u32>,
    /// Known boundary null pairs; `None` detects them from `det Φ`.
    pub boundary: Option<Vec<NullPair<T>>>,
    pub root_options: RootOptions<T>,
    pub tol_pair: T,
}

impl<T: Real> WilsonConfig<T> {
    pub fn from_tolerances(tol: &Tolerances<T>) -> Self {
        WilsonConfig {
            tol_factor: tol.tol_factor,
            tol_accept: tol.tol_factor_degenerate.max(tol.tol_factor),
            max_iter: tol.max_iter,
            grid_log2: tol.grid_log2,
            boundary: None,
            root_options: tol.root_options(),
            tol_pair: tol.tol_pair,
        }
    }
}

impl<T: Real> Default for WilsonConfig<T> {
    fn default() -> Self {
        Self::from_tolerances(&Tolerances::default())
    }
}

/// Iterations without a new best residual after which the run is abandoned.
const STALL_WINDOW: usize = 25;
/// Consecutive steps with contraction worse than 1/2 that mark the sublinear regime.
const SLOW_STEPS: usize = 3;
/// Largest Newton system (real unknowns) attempted by the polishing stage.
const MAX_NEWTON_UNKNOWNS: usize = 1500;
/// Grid points per unit of `1/δ`, `δ` the distance of the nearest zero of `det Φ` to the circle.
const ALIAS_RESOLUTION: f64 = 10.0;
/// Largest grid used when sizing by that distance.
const MAX_WILSON_LOG2: u32 = 14;

/// Outer factor `A` with `A*A = Φ` on the circle and `A(0) ≻ 0`.
///
/// Wilson's iteration `A ← [A^{-*} Φ A^{-1} + I]_+ A` runs on a half-step
/// rotated FFT grid (`[·]_+` keeps nonnegative frequencies with the constant
/// term halved). It converges quadratically for strictly positive `Φ` but only
/// sublinearly when `det Φ` vanishes on the circle, so once the rate degrades
/// the iterate is handed to a coefficient-space Newton solve that additionally
/// imposes `A(λ)v = 0` at the boundary zeros, restoring fast convergence.
pub fn wilson_factor<T: Real>(phi: &LaurentHerm<T>, cfg: &WilsonConfig<T>) -> Result<FactorReport<MatPoly<T>, T>> {
    let d = phi.dim();
    let m = phi.half_degree();
    let unknowns = 2 * (m + 1) * d * d;
    let newton_available = m > 0 && unknowns <= MAX_NEWTON_UNKNOWNS;
    let base = pow2_log2(m, 8, 6);
    // Without the Newton stage Wilson alone must reach full accuracy, and its
    // intermediate symbols have poles at the zeros of det A: once the coarse
    // grid stops contracting, continue on a grid resolving their distance δ to
    // the circle.
    let levels = match cfg.grid_log2 {
        Some(k) => vec![k],
        None if newton_available => vec![base],
        None => {
            let margin = det_root_margin(phi, &cfg.root_options, cfg.tol_pair)?;
            let need = margin.map_or(0.0, |delta| (ALIAS_RESOLUTION / delta.as_f64()).ceil());
            let fine = pow2_log2(need.min((1usize << MAX_WILSON_LOG2) as f64) as usize, 1, 6);
            if fine > base { vec![base, fine] } else { vec![base] }
        }
    };
    let c0 = phi.coeff(0);
    let Some(l) = c0.cholesky() else {
        return Err(Error::NotPositive { min: c0.hermitian_eigen().0[0].as_f64() });
    };
    let mut a = MatPoly::new(d, vec![l.adjoint()]);
    let target = cfg.tol_factor * T::lit(1e-2);
    let mut trace = Vec::new();
    let mut iterations = 0;
    let mut res = T::infinity();
    let mut grid = CircleGrid::<T>::new(levels[0], true);
    let mut phi_vals = Vec::new();

    for (level, &log2) in levels.iter().enumerate() {
        let last = level + 1 == levels.len();
        grid = CircleGrid::<T>::new(log2, true);
        phi_vals = grid.points().iter().map(|&z| phi.eval(z)).collect::<Result<Vec<_>>>()?;
        let mut a_vals = grid_values(&a, &grid);
        res = residual_on(&a_vals, &phi_vals);
        if trace.is_empty() {
            trace.push(res);
        }
        let mut best = res;
        let mut since_best = 0;
        let mut slow = 0;
        while res > target && iterations < cfg.max_iter {
            let next = wilson_step(&a_vals, &grid, &phi_vals, m)?;
            a_vals = grid_values(&next, &grid);
            iterations += 1;
            let prev = res;
            a = next;
            res = residual_on(&a_vals, &phi_vals);
            trace.push(res);
            if res < best {
                best = res;
                since_best = 0;
            } else {
                since_best += 1;
                if since_best >= STALL_WINDOW {
                    return Err(Error::FactorizationDiverged { trace: trace.iter().map(|x| x.as_f64()).collect() });
                }
            }
            slow = if res > prev * T::lit(0.5) { slow + 1 } else { 0 };
            if (newton_available || !last) && slow >= SLOW_STEPS {
                break;
            }
        }
    }
    a = normalize(&a)?;

    if res > target && newton_available {
        let pairs = match &cfg.boundary {
            Some(p) => p.clone(),
            None => boundary_null_vectors(phi, &cfg.root_options, cfg.tol_pair)?,
        };
        while res > target && iterations < cfg.max_iter {
            let delta = newton_direction(phi, &a, &pairs);
            let mut t = T::one();
            let mut accepted = false;
            for _ in 0..12 {
                let trial = add_scaled(&a, &delta, t);
                let r = grid_residual(&trial, &grid, &phi_vals);
                if r < res {
                    a = trial;
                    res = r;
                    accepted = true;
                    break;
                }
                t = t * T::lit(0.5);
            }
            if !accepted {
                break;
            }
            iterations += 1;
            trace.push(res);
        }
        a = normalize(&a)?;
    }

    let check = CircleGrid::<T>::new(9, false);
    let check_vals: Vec<CMat<T>> = check.points().iter().map(|&z| phi.eval(z)).collect::<Result<_>>()?;
    let residual_sup = grid_residual(&a, &grid, &phi_vals).max(grid_residual(&a, &check, &check_vals));
    if residual_sup > cfg.tol_accept {
        trace.push(residual_sup);
        return Err(Error::FactorizationDiverged { trace: trace.iter().map(|x| x.as_f64()).collect() });
    }
    let outer_gap = outer_check(&a, &cfg.root_options)?;
    Ok(FactorReport { factor: a, residual_sup, outer_gap, iterations, trace })
}

/// `max_j max_{rs} |(A(z_j)* A(z_j) − Φ(z_j))_{rs}|`.
fn grid_residual<T: Real>(a: &MatPoly<T>, grid: &CircleGrid<T>, phi_vals: &[CMat<T>]) -> T {
    residual_on(&grid_values(a, grid), phi_vals)
}

fn residual_on<T: Real>(a_vals: &[CMat<T>], phi_vals: &[CMat<T>]) -> T {
    a_vals.iter().zip(phi_vals).map(|(az, p)| (&(&az.adjoint() * az) - p).max_abs()).fold(T::zero(), T::max)
}

/// `A(z_j)` at every grid point, entrywise by FFT.
fn grid_values<T: Real>(a: &MatPoly<T>, grid: &CircleGrid<T>) -> Vec<CMat<T>> {
    let d = a.dim();
    let mut out = vec![CMat::zeros(d, d); grid.len()];
    for r in 0..d {
        for s in 0..d {
            let coeffs: Vec<C<T>> = a.coeffs().iter().map(|c| c[(r, s)]).collect();
            for (o, v) in out.iter_mut().zip(grid.eval_poly(&coeffs)) {
                o[(r, s)] = v;
            }
        }
    }
    out
}

fn wilson_step<T: Real>(a_vals: &[CMat<T>], grid: &CircleGrid<T>, phi_vals: &[CMat<T>], m: usize) -> Result<MatPoly<T>> {
    let d = a_vals.first().map_or(0, |x| x.rows());
    let n = grid.len();
    let mut x_vals = Vec::with_capacity(n);
    for (j, (az, p)) in a_vals.iter().zip(phi_vals).enumerate() {
        let lu = az.adjoint().lu();
        if lu.is_singular() {
            return Err(Error::SingularIterate { index: j });
        }
        // A^{-*} Φ A^{-1} = (A^{-*} (A^{-*} Φ)*)*
        let y = lu.solve(p);
        let x = lu.solve(&y.adjoint()).adjoint();
        x_vals.push(&x + &CMat::identity(d));
    }
    let plus = map_entries(d, n, &x_vals, |vals| {
        let mut c = grid.coefficients(vals);
        for v in c.iter_mut().skip(n / 2) {
            *v = cz();
        }
        c[0] = c[0] * T::lit(0.5);
        grid.synthesize(&c)
    });
    let prod: Vec<CMat<T>> = plus.iter().zip(a_vals).map(|(p, av)| p * av).collect();
    let mut coeffs = vec![CMat::zeros(d, d); m + 1];
    for r in 0..d {
        for s in 0..d {
            let vals: Vec<C<T>> = prod.iter().map(|x| x[(r, s)]).collect();
            for (k, v) in grid.interpolate(&vals, m).into_iter().enumerate() {
                coeffs[k][(r, s)] = v;
            }
        }
    }
    Ok(MatPoly::new(d, coeffs))
}

/// Applies `f` to the grid samples of every matrix entry.
fn map_entries<T: Real>(d: usize, n: usize, vals: &[CMat<T>], f: impl Fn(&[C<T>]) -> Vec<C<T>>) -> Vec<CMat<T>> {
    let mut out = vec![CMat::zeros(d, d); n];
    for r in 0..d {
        for s in 0..d {
            let col: Vec<C<T>> = vals.iter().map(|x| x[(r, s)]).collect();
            for (o, v) in out.iter_mut().zip(f(&col)) {
                o[(r, s)] = v;
            }
        }
    }
    out
}

/// Left unitary rotation making `A(0)` Hermitian positive definite.
fn normalize<T: Real>(a: &MatPoly<T>) -> Result<MatPoly<T>> {
    let a0 = a.coeff(0);
    let p = (&a0.adjoint() * &a0).hermitian_sqrt();
    let Some(p_inv) = p.inverse() else {
        return Err(Error::SingularIterate { index: 0 });
    };
    let u = &a0 * &p_inv;
    let mut out = a.left_mul(&u.adjoint());
    // remove rounding-level skew from the constant term
    let mut coeffs = out.coeffs().to_vec();
    if let Some(c0) = coeffs.first_mut() {
        *c0 = c0.hermitian_part();
    }
    out = MatPoly::new(a.dim(), coeffs);
    Ok(out)
}

fn add_scaled<T: Real>(a: &MatPoly<T>, delta: &[CMat<T>], t: T) -> MatPoly<T> {
    let coeffs = (0..delta.len()).map(|k| &a.coeff(k) + &delta[k].scale_re(t)).collect();
    MatPoly::new(a.dim(), coeffs)
}

/// Least-squares Newton correction `Δ` for `A*A = Φ` with `A(0)` kept
/// Hermitian and `A(λ)v = 0` imposed at the boundary pairs.
fn newton_direction<T: Real>(phi: &LaurentHerm<T>, a: &MatPoly<T>, pairs: &[NullPair<T>]) -> Vec<CMat<T>> {
    let d = a.dim();
    let m = phi.half_degree();
    let ak: Vec<CMat<T>> = (0..=m).map(|k| a.coeff(k)).collect();
    let lin = |delta: &[CMat<T>]| -> Vec<T> {
        let mut out = Vec::new();
        for k in 0..=m {
            let mut e = CMat::zeros(d, d);
            for j in 0..=m - k {
                e = &e + &(&ak[j].adjoint() * &delta[j + k]);
                e = &e + &(&delta[j].adjoint() * &ak[j + k]);
            }
            push_mat(&mut out, &e);
        }
        push_mat(&mut out, &(&delta[0] - &delta[0].adjoint()));
        for (lam, v) in pairs {
            let mut acc = CMat::zeros(d, d);
            for dk in delta.iter().rev() {
                acc = &acc.scale(*lam) + dk;
            }
            for x in acc.matvec(v) {
                out.push(x.re);
                out.push(x.im);
            }
        }
        out
    };
    let mut rhs = Vec::new();
    for k in 0..=m {
        let mut r = phi.coeff(k as isize);
        for j in 0..=m - k {
            r = &r - &(&ak[j].adjoint() * &ak[j + k]);
        }
        push_mat(&mut rhs, &r);
    }
    push_mat(&mut rhs, &(&ak[0].adjoint() - &ak[0]));
    for (lam, v) in pairs {
        for x in a.eval(*lam).matvec(v) {
            rhs.push(-x.re);
            rhs.push(-x.im);
        }
    }

    let unknowns = 2 * (m + 1) * d * d;
    let rows = rhs.len();
    let mut jac = Vec::with_capacity(rows * unknowns);
    let mut unit = vec![CMat::zeros(d, d); m + 1];
    for k in 0..=m {
        for r in 0..d {
            for s in 0..d {
                for part in [cr(T::one()), C::new(T::zero(), T::one())] {
                    unit[k][(r, s)] = part;
                    jac.extend(lin(&unit));
                    unit[k][(r, s)] = cz();
                }
            }
        }
    }
    let x = real_lstsq(&jac, rows, unknowns, &rhs);
    let mut delta = vec![CMat::zeros(d, d); m + 1];
    let mut idx = 0;
    for dk in delta.iter_mut() {
        for r in 0..d {
            for s in 0..d {
                dk[(r, s)] = C::new(x[idx], x[idx + 1]);
                idx += 2;
            }
        }
    }
    delta
}

fn push_mat<T: Real>(out: &mut Vec<T>, m: &CMat<T>) {
    for x in m.as_slice() {
        out.push(x.re);
        out.push(x.im);
    }
}

/// Polynomial `z^h det Φ(z)` with `h` the effective half-degree of `det Φ`,
/// or `None` when `det Φ` is (numerically) constant.
fn det_laurent_poly<T: Real>(phi: &LaurentHerm<T>) -> Result<Option<Poly<T>>> {
    let half = phi.dim() * phi.half_degree();
    if half == 0 {
        return Ok(None);
    }
    let grid = CircleGrid::<T>::for_degree(2 * half, 2, false);
    let n = grid.len();
    let vals: Vec<C<T>> = grid.points().iter().map(|&z| phi.eval(z).map(|p| p.det())).collect::<Result<_>>()?;
    let c = grid.coefficients(&vals);
    let laurent = |k: isize| if k >= 0 { c[k as usize] } else { c[(n as isize + k) as usize] };
    // the true Laurent degree is often below d·m; rounding noise in the
    // missing orders would otherwise surface as spurious roots near 0 and ∞
    let max = (0..=half as isize).map(|k| laurent(k).norm()).fold(T::zero(), T::max);
    if max <= T::tol(1e-13) {
        return Ok(None);
    }
    let h = (0..=half as isize).rev().find(|&k| laurent(k).norm() > T::tol(1e-12) * max).unwrap_or(0);
    if h == 0 {
        return Ok(None);
    }
    Ok(Some(Poly::new((-h..=h).map(laurent).collect())))
}

/// Smallest `|log|w||` over the zeros of `det Φ` off the circle.
fn det_root_margin<T: Real>(phi: &LaurentHerm<T>, opts: &RootOptions<T>, tol_pair: T) -> Result<Option<T>> {
    let Some(p) = det_laurent_poly(phi)? else {
        return Ok(None);
    };
    Ok(poly_roots(&p, opts)?
        .iter()
        .map(|r| r.value.norm().ln().abs())
        .filter(|&g| g >= tol_pair)
        .reduce(T::min))
}

/// Unimodular zeros of `det Φ` with an orthonormal basis of `ker Φ(λ)`.
pub fn boundary_null_vectors<T: Real>(phi: &LaurentHerm<T>, opts: &RootOptions<T>, tol_pair: T) -> Result<Vec<NullPair<T>>> {
    let Some(p) = det_laurent_poly(phi)? else {
        return Ok(Vec::new());
    };
    let mut points: Vec<C<T>> = Vec::new();
    for r in poly_roots(&p, opts)? {
        if (r.value.norm() - T::one()).abs() < tol_pair
            && !points.iter().any(|w| (*w * r.value.conj() - cr(T::one())).norm() < tol_pair)
        {
            points.push(r.value / r.value.norm());
        }
    }
    let mut out = Vec::new();
    for lam in points {
        let (vals, vecs) = phi.eval(lam)?.hermitian_eigen();
        let scale = vals.iter().copied().fold(T::one(), |m, v| m.max(v.abs()));
        for (i, &ev) in vals.iter().enumerate() {
            if ev <= T::tol(1e-6) * scale {
                out.push((lam, vecs.col_vec(i)));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polymath::{defect_laurent, VecPoly};
    use crate::scalar::c;

    #[test]
    fn identity_density_gives_identity() {
        let phi = LaurentHerm::<f64>::from_causal(2, vec![CMat::identity(2)]);
        let r = wilson_factor(&phi, &WilsonConfig::default()).unwrap();
        assert_eq!(r.factor.degree(), Some(0));
        assert!((&r.factor.coeff(0) - &CMat::identity(2)).max_abs() < 1e-15);
    }

    #[test]
    fn scalar_boundary_degenerate_density() {
        let b = VecPoly::<f64>::new(1, vec![vec![c(0.5, 0.0)], vec![c(0.5, 0.0)]]).unwrap();
        let (_, phi) = defect_laurent(&b);
        let r = wilson_factor(&phi, &WilsonConfig::default()).unwrap();
        assert!((r.factor.coeff(0)[(0, 0)] - c(0.5, 0.0)).norm() < 1e-9, "{:?}", r.factor);
        assert!((r.factor.coeff(1)[(0, 0)] - c(-0.5, 0.0)).norm() < 1e-9);
        assert!(r.residual_sup < 1e-10);
    }

    #[test]
    fn strictly_positive_density_converges_fast() {
        // |2 − z|² = 5 − 2(z + 1/z)
        let phi = LaurentHerm::<f64>::scalar(&[c(5.0, 0.0), c(-2.0, 0.0)]);
        let r = wilson_factor(&phi, &WilsonConfig::default()).unwrap();
        assert!((r.factor.coeff(0)[(0, 0)] - c(2.0, 0.0)).norm() < 1e-12);
        assert!((r.factor.coeff(1)[(0, 0)] - c(-1.0, 0.0)).norm() < 1e-12);
        assert!(r.iterations < 12, "{}", r.iterations);
    }
}
