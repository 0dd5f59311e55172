//! Symmetric integer matrices attached to the Mertens function.
//!
//! For a fixed `n`, the relation `i ~ j  <=>  floor(n/i) == floor(n/j)` is a
//! congruence on the positive integers under multiplication. Its bounded
//! classes are integer intervals, each identified by its largest member; the
//! set of those representatives has about `2 sqrt(n)` elements. Sending the
//! unbounded class to zero gives a commutative algebra whose regular
//! representation, multiplied on the left by the anti-triangular matrix `T`,
//! produces two symmetric matrices:
//!
//! * `U[i][j] = floor(n / (i j))`
//! * `M[i][j] = Mertens(floor(n / (i j)))`
//!
//! with `M[1][1] = Mertens(n)`, so `|Mertens(n)| <= ||M||`.
//!
//! The crate is organised bottom-up:
//!
//! * [`classes`]: the representative set and floor-division utilities,
//! * [`sieve`]: Möbius values and Mertens prefix sums,
//! * [`algebra`]: the quotient semigroup, projection, convolution and the
//!   regular representation,
//! * [`builders`]: `T`, `U`, `M` by two independent routes,
//! * [`spectral`]: power iteration and a cyclic Jacobi oracle,
//! * [`harness`]: sweeps over `n` with CSV output.
//!
//! Matrix and vector types are generic over the integer scalar (any checked
//! primitive integer) and the spectral code over the float type. The aliases
//! below fix the scalars used by the command line tool.

pub mod algebra;
pub mod builders;
pub mod classes;
mod error;
pub mod harness;
pub mod matrix;
pub mod scalar;
pub mod sieve;
pub mod spectral;

pub use algebra::{ClassVector, Product, QuotientAlgebra};
pub use builders::{InverseCheck, SymmetricMatrixPair};
pub use classes::{ClassLabel, ClassStructure};
pub use error::{Error, Result};
pub use harness::{RestrictedForm, SweepConfig, SweepRecord};
pub use matrix::Matrix;
pub use scalar::{Integer, Real};
pub use sieve::MertensTable;
pub use spectral::{Method, SpectralEstimate};

/// Dense square matrix of 64-bit integers indexed by the representative set.
pub type IntegerMatrix = Matrix<i64>;

/// 128-bit variant, for products that may leave the 64-bit range.
pub type WideMatrix = Matrix<i128>;

/// Element of the quotient algebra with 64-bit coordinates.
pub type QuotientVector = ClassVector<i64>;

/// Spectral norm estimate in double precision.
pub type SpectralResult = SpectralEstimate<f64>;

/// Single-precision spectral estimate.
pub type SpectralResult32 = SpectralEstimate<f32>;
