//! Numerical toolkit for de Branges–Rovnyak spaces `H(B)` with a polynomial
//! row symbol `B = (b_1, …, b_d)`.
//!
//! Pipeline: the defect `1 − BB*` is factored into the scalar mate `a`
//! (Fejér–Riesz), `I − B*B` into the outer matrix polynomial `A` (Wilson
//! iteration with a Newton polish), and every polynomial is then embedded as
//! `(f, f⁺)` in `H² ⊕ H²(C^d)`, where the `H(B)` inner product is Euclidean.
//!
//! Everything is generic over [`Real`] (`f32`, `f64`); the aliases below fix
//! the precision.

pub mod boundary;
pub mod cyclic;
pub mod error;
pub mod factor;
pub mod fixtures;
pub mod linalg;
pub mod polymath;
pub mod scalar;
pub mod space;
pub mod tolerances;

pub use error::{Error, Result};
pub use scalar::{Real, C};
pub use tolerances::Tolerances;

pub type Complex64 = C<f64>;
pub type CPoly = polymath::Poly<f64>;
pub type CVecPoly = polymath::VecPoly<f64>;
pub type CMatPoly = polymath::MatPoly<f64>;
pub type Laurent = polymath::LaurentHerm<f64>;
pub type Schur = space::RowSchur<f64>;
pub type Context = space::SpaceContext<f64>;
pub type Element = space::HBElement<f64>;

pub type Complex32 = C<f32>;
pub type CPoly32 = polymath::Poly<f32>;
pub type CVecPoly32 = polymath::VecPoly<f32>;
pub type CMatPoly32 = polymath::MatPoly<f32>;
pub type Laurent32 = polymath::LaurentHerm<f32>;
pub type Schur32 = space::RowSchur<f32>;
pub type Context32 = space::SpaceContext<f32>;
pub type Element32 = space::HBElement<f32>;
