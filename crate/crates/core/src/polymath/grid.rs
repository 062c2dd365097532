use std::sync::Arc;

use rustfft::{Fft, FftPlanner};

use crate::scalar::{Real, C};

/// Smallest power-of-two exponent `k` with `2^k ≥ factor·degree + 1`, but at least `min_log2`.
pub fn pow2_log2(degree: usize, factor: usize, min_log2: u32) -> u32 {
    let need = factor * degree + 1;
    let mut k = min_log2;
    while (1usize << k) < need {
        k += 1;
    }
    k
}

/// Equispaced points on the unit circle, optionally rotated by half a step.
///
/// The rotated grid `z_j = e^{iπ(2j+1)/n}` never contains `z = 1`, which is
/// where the boundary zeros of most interesting symbols live.
#[derive(Clone)]
pub struct CircleGrid<T: Real> {
    points: Vec<C<T>>,
    shifted: bool,
    /// `e^{iπk/n}` for signed frequency `k`, only on rotated grids.
    twiddle: Vec<C<T>>,
    fwd: Arc<dyn Fft<T>>,
    inv: Arc<dyn Fft<T>>,
}

impl<T: Real> std::fmt::Debug for CircleGrid<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CircleGrid").field("n", &self.points.len()).field("shifted", &self.shifted).finish()
    }
}

impl<T: Real> CircleGrid<T> {
    pub fn new(log2: u32, shifted: bool) -> Self {
        let n = 1usize << log2;
        let step = T::TAU() / T::lit(n as f64);
        let off = if shifted { step / T::lit(2.0) } else { T::zero() };
        let points = (0..n).map(|j| C::from_polar(T::one(), off + step * T::lit(j as f64))).collect();
        let twiddle = if shifted {
            (0..n)
                .map(|k| {
                    let kk = if k <= n / 2 { k as f64 } else { k as f64 - n as f64 };
                    C::from_polar(T::one(), T::PI() * T::lit(kk / n as f64))
                })
                .collect()
        } else {
            Vec::new()
        };
        let mut planner = FftPlanner::new();
        let fwd = planner.plan_fft_forward(n);
        let inv = planner.plan_fft_inverse(n);
        CircleGrid { points, shifted, twiddle, fwd, inv }
    }

    /// Grid large enough for exact interpolation of degree-`degree` trigonometric data.
    pub fn for_degree(degree: usize, factor: usize, shifted: bool) -> Self {
        Self::new(pow2_log2(degree, factor, 4), shifted)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[C<T>] {
        &self.points
    }

    pub fn is_shifted(&self) -> bool {
        self.shifted
    }

    /// Fourier coefficients `c_k`, `k = 0..n` (indices past `n/2` are negative
    /// frequencies), of a function sampled on the grid.
    pub fn coefficients(&self, values: &[C<T>]) -> Vec<C<T>> {
        let n = self.len();
        assert_eq!(values.len(), n);
        let mut buf = values.to_vec();
        self.fwd.process(&mut buf);
        let scale = T::one() / T::lit(n as f64);
        if self.shifted {
            // undo the half-step rotation, which multiplies c_k by e^{iπk/n}
            for (v, t) in buf.iter_mut().zip(&self.twiddle) {
                *v = *v * t.conj() * scale;
            }
        } else {
            for v in buf.iter_mut() {
                *v = *v * scale;
            }
        }
        buf
    }

    /// Samples of `Σ_k c_k z^k` (same index convention as [`coefficients`](Self::coefficients)).
    pub fn synthesize(&self, coeffs: &[C<T>]) -> Vec<C<T>> {
        let n = self.len();
        assert_eq!(coeffs.len(), n);
        let mut buf = coeffs.to_vec();
        if self.shifted {
            for (v, t) in buf.iter_mut().zip(&self.twiddle) {
                *v = *v * *t;
            }
        }
        self.inv.process(&mut buf);
        buf
    }

    /// Values of the polynomial with the given ascending coefficients at the grid points.
    pub fn eval_poly(&self, coeffs: &[C<T>]) -> Vec<C<T>> {
        let n = self.len();
        if coeffs.len() > n {
            return self.points.iter().map(|&z| coeffs.iter().rev().fold(C::new(T::zero(), T::zero()), |acc, &c| acc * z + c)).collect();
        }
        let mut padded = coeffs.to_vec();
        padded.resize(n, C::new(T::zero(), T::zero()));
        self.synthesize(&padded)
    }

    /// Coefficients `0..=degree` of a polynomial of known degree from its samples.
    pub fn interpolate(&self, values: &[C<T>], degree: usize) -> Vec<C<T>> {
        assert!(degree < self.len());
        let c = self.coefficients(values);
        c[..=degree].to_vec()
    }

    /// Trapezoid mean over the grid.
    pub fn mean(&self, values: &[T]) -> T {
        values.iter().copied().sum::<T>() / T::lit(values.len() as f64)
    }
}
