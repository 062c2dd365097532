use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::Poly;
use crate::error::{Error, Result};
use crate::scalar::{cr, cz, Real, C};

/// A root together with its (cluster) multiplicity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Root<T> {
    pub value: C<T>,
    pub multiplicity: usize,
}

#[derive(Clone, Copy, Debug)]
pub struct RootOptions<T> {
    pub tol_root: T,
    pub tol_cluster: T,
    pub max_iter: usize,
    pub seed: u64,
}

impl<T: Real> Default for RootOptions<T> {
    fn default() -> Self {
        RootOptions { tol_root: T::tol(1e-13), tol_cluster: T::tol(1e-8), max_iter: 200, seed: 0x5eed }
    }
}

/// All roots of `p` by Aberth–Ehrlich simultaneous iteration, with nearby
/// approximations merged into clusters.
pub fn poly_roots<T: Real>(p: &Poly<T>, opts: &RootOptions<T>) -> Result<Vec<Root<T>>> {
    let Some(deg) = p.degree() else {
        return Err(Error::InvalidInput("roots of the zero polynomial".into()));
    };
    let coeffs = p.coeffs();
    let zeros = coeffs.iter().take_while(|c| **c == cz()).count();
    let mut out = Vec::new();
    if zeros > 0 {
        out.push(Root { value: cz(), multiplicity: zeros });
    }
    let q = Poly::new(coeffs[zeros..].to_vec());
    let n = deg - zeros;
    if n == 0 {
        return Ok(out);
    }
    let z = aberth(&q, opts)?;
    out.extend(cluster(&q, z, opts.tol_cluster, opts.tol_root));
    Ok(out)
}

/// Flattens a root list into values repeated by multiplicity.
pub fn expand_roots<T: Real>(roots: &[Root<T>]) -> Vec<C<T>> {
    roots.iter().flat_map(|r| std::iter::repeat_n(r.value, r.multiplicity)).collect()
}

fn aberth<T: Real>(p: &Poly<T>, opts: &RootOptions<T>) -> Result<Vec<C<T>>> {
    let n = p.degree().expect("nonzero");
    let lead = p.coeff(n);
    if n == 1 {
        return Ok(vec![-p.coeff(0) / lead]);
    }
    let dp = p.derivative();
    let ratio = (0..n).map(|k| (p.coeff(k) / lead).norm()).fold(T::zero(), T::max);
    let radius = T::one() + ratio;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let phase: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let mut z: Vec<C<T>> = (0..n)
        .map(|k| {
            let jitter: f64 = rng.gen_range(-0.25..0.25);
            let theta = phase + (k as f64 + jitter) * std::f64::consts::TAU / n as f64;
            C::from_polar(radius, T::lit(theta))
        })
        .collect();
    let mut done = vec![false; n];
    let eps = T::epsilon();
    let backward = |p: &Poly<T>, w: C<T>| -> T {
        let scale = p.abs_eval(w.norm());
        if scale == T::zero() {
            T::zero()
        } else {
            p.eval(w).norm() / scale
        }
    };
    for _ in 0..opts.max_iter {
        let mut all_done = true;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let zi = z[i];
            let pv = p.eval(zi);
            let dv = dp.eval(zi);
            let small = pv.norm() <= T::lit(4.0) * eps * p.abs_eval(zi.norm());
            let mut step = cz();
            if !small {
                let r = if dv == cz() { cr(eps) } else { pv / dv };
                let s = (0..n).filter(|&j| j != i).fold(cz(), |acc, j| {
                    let diff = zi - z[j];
                    if diff == cz() {
                        acc
                    } else {
                        acc + C::new(T::one(), T::zero()) / diff
                    }
                });
                let denom = C::new(T::one(), T::zero()) - r * s;
                step = if denom.norm() < eps { r } else { r / denom };
                z[i] = zi - step;
            }
            if small || step.norm() <= T::lit(4.0) * eps * z[i].norm().max(T::one()) {
                done[i] = true;
            } else {
                all_done = false;
            }
        }
        if all_done {
            break;
        }
    }
    let best = z.iter().map(|&w| backward(p, w)).fold(T::zero(), T::max);
    if !done.iter().all(|&d| d) && best > opts.tol_root {
        return Err(Error::RootFindingFailed { iterations: opts.max_iter, best_residual: best.as_f64() });
    }
    Ok(z)
}

/// Groups approximations into roots with multiplicity and replaces each
/// group by its mean.
///
/// A `k`-fold root under a relative backward perturbation `δ` splits into `k`
/// approximations at radius about `(δ·S/|t_k|)^{1/k}` (`S` the absolute
/// evaluation scale, `t_k` the `k`-th Taylor coefficient at the mean), so a
/// fixed distance threshold cannot merge them once `k ≥ 2`. Pairs are merged
/// greedily by increasing distance while the merged group is either within
/// `tol_cluster` or within that perturbation radius.
fn cluster<T: Real>(p: &Poly<T>, z: Vec<C<T>>, tol_cluster: T, tol_backward: T) -> Vec<Root<T>> {
    let n = z.len();
    let mut group: Vec<usize> = (0..n).collect();
    let mut pairs: Vec<(T, usize, usize)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            pairs.push(((z[i] - z[j]).norm(), i, j));
        }
    }
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal));
    for (_, i, j) in pairs {
        let (gi, gj) = (group[i], group[j]);
        if gi == gj {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|&k| group[k] == gi || group[k] == gj).collect();
        if accept_group(p, &z, &members, tol_cluster, tol_backward) {
            for k in members {
                group[k] = gi;
            }
        }
    }
    let mut out: Vec<(usize, C<T>, usize)> = Vec::new();
    for i in 0..n {
        match out.iter_mut().find(|g| g.0 == group[i]) {
            Some(g) => {
                g.1 = g.1 + z[i];
                g.2 += 1;
            }
            None => out.push((group[i], z[i], 1)),
        }
    }
    out.into_iter()
        .map(|(_, sum, m)| {
            let mean = sum / T::lit(m as f64);
            Root { value: polish(p, mean, m), multiplicity: m }
        })
        .collect()
}

/// Newton on `p^{(k-1)}`, for which a `k`-fold root of `p` is simple; kept only
/// if the relative size of `p^{(k-1)}` does not grow (the backward error of `p`
/// itself is already at rounding level anywhere inside the cluster).
fn polish<T: Real>(p: &Poly<T>, start: C<T>, k: usize) -> C<T> {
    let mut d = p.clone();
    for _ in 1..k {
        d = d.derivative();
    }
    let dd = d.derivative();
    let backward = |w: C<T>| d.eval(w).norm() / d.abs_eval(w.norm()).max(T::min_positive_value());
    let mut best = start;
    let mut best_err = backward(start);
    let mut w = start;
    for _ in 0..8 {
        let (v, dv) = (d.eval(w), dd.eval(w));
        if dv == cz() {
            break;
        }
        let step = v / dv;
        w = w - step;
        let err = backward(w);
        if err <= best_err {
            best = w;
            best_err = err;
        }
        if step.norm() <= T::epsilon() * w.norm().max(T::one()) {
            break;
        }
    }
    if (best - start).norm() > T::lit(1e-3) * start.norm().max(T::one()) {
        start
    } else {
        best
    }
}

fn accept_group<T: Real>(p: &Poly<T>, z: &[C<T>], members: &[usize], tol_cluster: T, tol_backward: T) -> bool {
    let k = members.len();
    let mean = members.iter().fold(cz(), |acc, &i| acc + z[i]) / T::lit(k as f64);
    let radius = members.iter().map(|&i| (z[i] - mean).norm()).fold(T::zero(), T::max);
    let scale = mean.norm().max(T::one());
    if radius <= tol_cluster * scale {
        return true;
    }
    // k-th Taylor coefficient at the mean by repeated synthetic division
    let mut q = p.clone();
    for _ in 0..k {
        q = q.div_linear(mean).0;
    }
    let tk = q.eval(mean).norm();
    if tk == T::zero() {
        return false;
    }
    let spread = (tol_backward * p.abs_eval(mean.norm()) / tk).powf(T::one() / T::lit(k as f64));
    radius <= T::lit(4.0) * spread
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;

    fn sorted(mut r: Vec<Root<f64>>) -> Vec<Root<f64>> {
        r.sort_by(|a, b| a.value.re.partial_cmp(&b.value.re).unwrap());
        r
    }

    #[test]
    fn simple_real_roots() {
        let p = Poly::<f64>::from_re(&[3.0, -1.0, -2.0]);
        let r = sorted(poly_roots(&p, &RootOptions::default()).unwrap());
        assert_eq!(r.len(), 2);
        assert!((r[0].value - c(-1.5, 0.0)).norm() < 1e-13);
        assert!((r[1].value - c(1.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn double_root_is_merged() {
        let p = Poly::<f64>::from_re(&[1.0, -2.0, 1.0]);
        let r = poly_roots(&p, &RootOptions::default()).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].multiplicity, 2);
        assert!((r[0].value - c(1.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn monomial_root_at_origin() {
        let p = Poly::<f64>::from_re(&[0.0, 1.0]);
        let r = poly_roots(&p, &RootOptions::default()).unwrap();
        assert_eq!(r, vec![Root { value: c(0.0, 0.0), multiplicity: 1 }]);
    }

    #[test]
    fn zero_polynomial_rejected() {
        assert!(poly_roots(&Poly::<f64>::zero(), &RootOptions::default()).is_err());
    }
}
