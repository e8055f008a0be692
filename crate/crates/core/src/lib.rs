//! Exact lattice toolkit for classifying non-symplectic involutions of
//! K3^[n]-type lattices and their wall and chamber structure.

pub mod checks;
pub mod classify;
pub mod embeddings;
pub mod error;
pub mod expr;
pub mod finite_form;
pub mod gauss;
pub mod involutions;
pub mod lattice;
pub mod linalg;
pub mod mukai;
pub mod sublattice;
pub mod walls;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use error::{Error, Result};
pub use finite_form::{Elem, FiniteQuadraticForm, Subgroup, Q64};
pub use lattice::{Lattice, Signature};

/// Arbitrary-precision integer scalar.
pub type Int = BigInt;
/// Arbitrary-precision rational scalar.
pub type Rational = BigRational;
/// Integer matrix.
pub type IntMatrix = linalg::Matrix<Int>;

pub fn int(x: i64) -> Int {
    BigInt::from(x)
}
