use crate::scalar::Real;

/// Numerical thresholds shared by every stage of the pipeline.
///
/// Values are stated for double precision; [`Real::tol`] floors them at a small
/// multiple of machine epsilon so the same defaults remain usable in `f32`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances<T> {
    /// Allowed negativity of a defect density on the sampling grid.
    pub tol_psd: T,
    /// Target sup-grid residual of a spectral factorization.
    pub tol_factor: T,
    /// Acceptance bound for factorizations of boundary-degenerate densities.
    pub tol_factor_degenerate: T,
    /// Outerness gap threshold.
    pub tol_outer: T,
    /// Coefficientwise residual of embeddings and evaluation checks.
    pub tol_eval: T,
    /// Relative backward error of computed polynomial roots.
    pub tol_root: T,
    /// Distance below which root approximations are merged unconditionally.
    pub tol_cluster: T,
    /// `||root| − 1|` below which a mate root joins the boundary spectrum.
    pub tol_unimodular: T,
    /// Circle-reflection pairing test `|w·conj(w′) − 1|` for Fejér–Riesz.
    pub tol_pair: T,
    /// Largest admissible condition number of `A(0)`.
    pub max_cond_a0: T,
    pub max_iter: usize,
    /// Override for the factorization grid, `2^grid_log2` points.
    pub grid_log2: Option<u32>,
    /// Seed for randomized start points and sampled checks.
    pub seed: u64,
}

impl<T: Real> Default for Tolerances<T> {
    fn default() -> Self {
        Tolerances {
            tol_psd: T::tol(1e-10),
            tol_factor: T::tol(1e-10),
            tol_factor_degenerate: T::tol(1e-8),
            tol_outer: T::tol(1e-6),
            tol_eval: T::tol(1e-10),
            tol_root: T::tol(1e-13),
            tol_cluster: T::tol(1e-8),
            tol_unimodular: T::tol(1e-8),
            tol_pair: T::tol(1e-6),
            max_cond_a0: T::lit(1e8),
            max_iter: 500,
            grid_log2: None,
            seed: 0x5eed,
        }
    }
}

impl<T: Real> Tolerances<T> {
    pub fn root_options(&self) -> crate::polymath::RootOptions<T> {
        crate::polymath::RootOptions {
            tol_root: self.tol_root,
            tol_cluster: self.tol_cluster,
            max_iter: 200,
            seed: self.seed,
        }
    }
}
