//! Spectral factorization: the scalar mate by Fejér–Riesz and the matrix outer
//! factor by Wilson's iteration, with an outerness check.

mod mate;
mod outer;
mod wilson;

pub use mate::{fejer_riesz, mate};
pub use outer::{det_poly, outer_check, OuterCheck};
pub use wilson::{boundary_null_vectors, wilson_factor, WilsonConfig};

/// Result of a factorization together with its certificates.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorReport<F, T> {
    pub factor: F,
    /// Sup over the sampling grids of `|F*F − Φ|`.
    pub residual_sup: T,
    pub outer_gap: T,
    pub iterations: usize,
    /// Per-iteration sup-grid residuals.
    pub trace: Vec<T>,
}
