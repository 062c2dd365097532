//! Polynomial, Laurent and matrix-polynomial arithmetic, root finding and
//! conjugate-analytic Toeplitz action.

mod grid;
mod laurent;
mod matpoly;
mod poly;
mod roots;
mod toeplitz;
mod vecpoly;

pub use grid::{pow2_log2, CircleGrid};
pub use laurent::{defect_laurent, LaurentHerm};
pub use matpoly::MatPoly;
pub use poly::Poly;
pub use roots::{expand_roots, poly_roots, Root, RootOptions};
pub use toeplitz::{toeplitz_conj, ConjToeplitz, RowSymbol};
pub use vecpoly::VecPoly;
