//! Exact tropical matrix arithmetic, matrix marginal sets, and key-exchange
//! protocols built on them.

pub mod error;
pub mod families;
pub mod marginal;
pub mod matrix;
pub mod poly;
pub mod protocols;
pub mod rational;
pub mod selftest;
pub mod semiring;
mod serde_impls;
pub mod solver;
pub mod wire;

pub use error::{Error, Result};
pub use matrix::Matrix;
pub use poly::TropPolynomial;
pub use rational::Rational;
pub use semiring::{Scalar, SemiringKind};
