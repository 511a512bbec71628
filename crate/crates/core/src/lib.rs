//! Exact exterior algebra and calculus on flat `(k,n)` space-times.
//!
//! Layers, bottom up:
//!
//! * [`index`]: ordered index lists and permutation signatures.
//! * [`blade`]: metric, homogeneous multivectors, `∧`, `⌋`, `⌊`, `·`, Hodge.
//! * [`matrix`]: the `w_{I,J}` matrix space.
//! * [`poly`], [`field`]: polynomial coefficients and the derivatives
//!   `∂∧`, `∂⌋`, `∂⊗`.
//! * [`variational`]: quadratic Lagrangian densities and both forms of the
//!   Euler–Lagrange equations.
//! * [`em`]: generalized Maxwell, Proca/R_ξ and dual theories.

pub mod blade;
pub mod em;
pub mod error;
pub mod field;
pub mod index;
pub mod matrix;
pub mod poly;
pub mod properties;
pub mod random;
pub mod scalar;
pub mod variational;

pub use blade::{Metric, Multivector};
pub use error::{Error, Result};
pub use field::{MvField, MvMatrixField};
pub use index::{IndexList, Sign};
pub use matrix::MvMatrix;
pub use poly::PolyScalar;
pub use scalar::{Coeff, Rational};
