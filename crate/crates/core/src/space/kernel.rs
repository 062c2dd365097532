use super::{HBElement, SpaceContext};
use crate::error::{Error, Result};
use crate::polymath::{Poly, VecPoly};
use crate::scalar::{cr, cz, Real, C};

/// Reproducing kernel `K_w` in embedded coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelElement<T> {
    pub w: C<T>,
    pub element: HBElement<T>,
    /// `true` for boundary kernels and for `w = 0`, which are polynomials.
    pub exact: bool,
    /// Bound on the `H(B)` norm of the discarded tail.
    pub tail_bound: T,
    /// Index of the last retained coefficient.
    pub terms: usize,
}

/// `K_w(w) = (1 − |B(w)|²)/(1 − |w|²)` for `|w| < 1`.
pub fn kernel_diagonal<T: Real>(ctx: &SpaceContext<T>, w: C<T>) -> T {
    ctx.defect_at(w) / (T::one() - w.norm_sqr())
}

/// `K_w = (1 − B(z)B(w)*)/(1 − z w̄)` with plus part `−A(z)B(w)*/(1 − z w̄)`.
///
/// Inside the disk the series is truncated after `n_terms` coefficients
/// (default `⌈log tol / log|w|⌉ + deg`) with a geometric tail bound. At a point
/// of the boundary spectrum both numerators vanish and the kernel is the exact
/// polynomial quotient.
pub fn kernel<T: Real>(ctx: &SpaceContext<T>, w: C<T>, n_terms: Option<usize>) -> Result<KernelElement<T>> {
    let r = w.norm();
    let on_circle = (r - T::one()).abs() <= T::tol(1e-10);
    if r > T::one() && !on_circle {
        return Err(Error::DomainError(format!("kernel point outside the closed disk (|w| = {r})")));
    }
    let (w, bw) = if on_circle {
        let Some(p) = ctx.boundary_point(w) else {
            return Err(Error::BoundaryNotRegular { re: w.re.as_f64(), im: w.im.as_f64() });
        };
        (p.point, ctx.symbol().eval(p.point))
    } else {
        (w, ctx.symbol().eval(w))
    };
    let d = ctx.dim();
    let bw_conj: Vec<C<T>> = bw.iter().map(|c| c.conj()).collect();
    let p = &Poly::one() - &ctx.symbol().pair(&bw);
    let plus = ctx.outer_factor().apply_const(&bw_conj).scale(-cr(T::one()));

    if on_circle {
        let (k, rk) = divide_by_kernel_factor(&p, w);
        let mut coords = Vec::with_capacity(d);
        let mut rem = rk.norm();
        for c in plus.coordinates() {
            let (q, rq) = divide_by_kernel_factor(&c, w);
            rem = rem.max(rq.norm());
            coords.push(q);
        }
        let scale = T::one().max(p.max_abs_coeff()).max(plus.max_abs_coeff());
        if rem > T::tol(1e-8) * scale {
            return Err(Error::BoundaryNotRegular { re: w.re.as_f64(), im: w.im.as_f64() });
        }
        let f_plus = vecpoly_with_dim(&coords, d);
        let terms = k.len().max(f_plus.len()).saturating_sub(1);
        return Ok(KernelElement { w, element: HBElement::new(k, f_plus), exact: true, tail_bound: T::zero(), terms });
    }

    let q = p.len().max(plus.len()).saturating_sub(1);
    let exact = w == cz();
    let n = match n_terms {
        Some(n) => n,
        None if exact => q,
        None => {
            let tol = ctx.tolerances().tol_eval;
            (tol.ln() / r.ln()).ceil().to_usize().unwrap_or(0) + ctx.symbol().degree()
        }
    };
    let series = |c: &Poly<T>| -> Poly<T> {
        let wc = w.conj();
        let mut out = Vec::with_capacity(n + 1);
        let mut acc = cz();
        for k in 0..=n {
            // k_n = w̄ k_{n−1} + p_n
            acc = acc * wc + c.coeff(k);
            out.push(acc);
        }
        Poly::new(out)
    };
    let f = series(&p);
    let coords: Vec<Poly<T>> = plus.coordinates().iter().map(series).collect();
    let f_plus = vecpoly_with_dim(&coords, d);
    let tail_bound = if exact || n < q {
        if exact { T::zero() } else { T::infinity() }
    } else {
        let l1 = |c: &Poly<T>| c.coeffs().iter().map(|x| x.norm()).sum::<T>();
        let mass = l1(&p) + plus.coordinates().iter().map(l1).sum::<T>();
        mass * r.powi((n + 1 - q) as i32) / (T::one() - r * r).sqrt()
    };
    Ok(KernelElement { w, element: HBElement::new(f, f_plus), exact, tail_bound, terms: n })
}

/// Quotient and remainder of `c(z) / (1 − λ̄ z)`.
fn divide_by_kernel_factor<T: Real>(c: &Poly<T>, lambda: C<T>) -> (Poly<T>, C<T>) {
    // 1 − λ̄z = −λ̄(z − λ)
    let (q, rem) = c.div_linear(lambda);
    (q.scale(-lambda), rem)
}

fn vecpoly_with_dim<T: Real>(coords: &[Poly<T>], d: usize) -> VecPoly<T> {
    let v = VecPoly::from_coordinates(coords);
    if v.is_zero() {
        VecPoly::zero(d)
    } else {
        v
    }
}
