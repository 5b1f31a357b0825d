//! Weil algebras: finite-dimensional local algebras with exact arithmetic,
//! their maximal-ideal filtration, and matrix inversion over them.

mod algebra;
mod element;
pub mod linalg;
mod matrix;

pub use algebra::{same_algebra, Algebra, LocalCertificate, Presentation, WeilAlgebra};
pub use element::AElement;
pub use matrix::{augmentation_matrix, identity, mat_mul, nil_matrix_invert, AMatrix};
