//! Exact computation kernel for cluster algebras.

#![allow(clippy::needless_range_loop)]

pub mod arith;
pub mod cc;
pub mod models;
pub mod potentials;
pub mod quiver;
pub mod roots;
pub mod seeds;
pub mod ysystem;

pub use arith::laurent::Laurent;
pub use arith::linalg::Matrix;
pub use arith::ratfunc::RationalFunc;
pub use arith::scalar::{ExactDiv, Field, Fp, Ring};
pub use arith::ArithError;
pub use quiver::{DynkinType, IceQuiver};
pub use roots::RootSystem;
pub use seeds::{Seed, YSeed};

/// Laurent polynomials with arbitrary-precision integer coefficients.
pub type LaurentPoly = Laurent<num_bigint::BigInt>;
/// Exact rationals.
pub type Rational = num_rational::BigRational;
/// Matrices over the rationals.
pub type QMatrix = Matrix<Rational>;
