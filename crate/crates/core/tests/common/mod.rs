//! Shared helpers and independent oracles for the integration suites.
#![allow(dead_code)]

use dbr_core::fixtures::fixture;
use dbr_core::polymath::Poly;
use dbr_core::space::{make_context, HBElement, SpaceContext};
use dbr_core::Tolerances;
use num_complex::Complex64 as Cx;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Fixtures with a mate (FLAT excluded).
pub const FIXTURES: [&str; 5] = ["ZERO", "SARASON", "ROW2", "TRUNC(3)", "TRUNC(8)"];

pub fn cx(re: f64, im: f64) -> Cx {
    Cx::new(re, im)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ctx(name: &str) -> SpaceContext<f64> {
    make_context(fixture::<f64>(name).unwrap().symbol, Tolerances::default()).unwrap()
}

pub fn poly(re: &[f64]) -> Poly<f64> {
    Poly::from_re(re)
}

/// Polynomial of exact degree `deg` with coefficients uniform in the unit box.
pub fn random_poly(rng: &mut ChaCha8Rng, deg: usize) -> Poly<f64> {
    let mut c: Vec<Cx> = (0..=deg).map(|_| random_box(rng)).collect();
    if c[deg].norm() < 1e-3 {
        c[deg] = cx(1.0, 0.0);
    }
    Poly::new(c)
}

pub fn random_box(rng: &mut ChaCha8Rng) -> Cx {
    cx(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Uniform point of the disk of radius `r`.
pub fn random_disk(rng: &mut ChaCha8Rng, r: f64) -> Cx {
    Cx::from_polar(r * rng.gen::<f64>().sqrt(), std::f64::consts::TAU * rng.gen::<f64>())
}

/// Uniform point of the closed unit ball of `C^d`, scaled by `r`.
pub fn random_ball(rng: &mut ChaCha8Rng, d: usize, r: f64) -> Vec<Cx> {
    loop {
        let v: Vec<Cx> = (0..d).map(|_| random_box(rng)).collect();
        let n = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if n <= 1.0 && n > 1e-3 {
            let s = r * rng.gen::<f64>().powf(1.0 / (2.0 * d as f64));
            return v.iter().map(|c| c / n * s).collect();
        }
    }
}

/// Coefficients `0..len` of the analytic part of a function sampled on the
/// circle, by a naive DFT on `n` points (independent of the crate's FFT code).
pub fn analytic_part_oracle(f: impl Fn(Cx) -> Cx, len: usize, n: usize) -> Vec<Cx> {
    let pts: Vec<Cx> = (0..n).map(|j| Cx::from_polar(1.0, std::f64::consts::TAU * j as f64 / n as f64)).collect();
    let vals: Vec<Cx> = pts.iter().map(|&z| f(z)).collect();
    (0..len)
        .map(|k| pts.iter().zip(&vals).map(|(z, v)| v * z.powi(-(k as i32))).sum::<Cx>() / n as f64)
        .collect()
}

/// Embedded coordinates `(f_0, …, f_{L−1}, f⁺_0, …)` padded to `len` rows.
pub fn coords(el: &HBElement<f64>, len: usize) -> Vec<Cx> {
    let mut out: Vec<Cx> = (0..len).map(|k| el.f.coeff(k)).collect();
    let d = el.f_plus.dim();
    for k in 0..len {
        for i in 0..d {
            out.push(el.f_plus.rows().get(k).map_or(cx(0.0, 0.0), |r| r[i]));
        }
    }
    out
}

/// Squared Euclidean distance from `target` to the span of `basis`, by
/// modified Gram–Schmidt with one reorthogonalization pass.
pub fn mgs_distance_sq(target: &[Cx], basis: &[Vec<Cx>]) -> f64 {
    let mut q: Vec<Vec<Cx>> = Vec::new();
    for b in basis {
        let mut v = b.clone();
        for _ in 0..2 {
            for u in &q {
                let p: Cx = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (x, y) in v.iter_mut().zip(u) {
                    *x -= p * y;
                }
            }
        }
        let n = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if n > 1e-13 {
            q.push(v.iter().map(|c| c / n).collect());
        }
    }
    let mut r = target.to_vec();
    for _ in 0..2 {
        for u in &q {
            let p: Cx = u.iter().zip(&r).map(|(a, b)| a.conj() * b).sum();
            for (x, y) in r.iter_mut().zip(u) {
                *x -= p * y;
            }
        }
    }
    r.iter().map(|c| c.norm_sqr()).sum()
}

/// Random polynomial with degree uniform in `0..=max_deg`.
pub fn random_poly_upto(rng: &mut ChaCha8Rng, max_deg: usize) -> Poly<f64> {
    let deg = rng.gen_range(0..=max_deg);
    random_poly(rng, deg)
}
