//! Left-symmetric algebras of derivations of free m-ary algebras.
//!
//! All arithmetic is exact over the rationals. The crate is organized as:
//!
//! - [`freealg`]: canonical words and elements of the free algebra
//! - [`varieties`]: T-ideal quotients at bounded degree (relatively free algebras)
//! - [`deriv`]: the left-symmetric product on derivations, powers, nilpotency probes
//! - [`envfox`]: universal derivation, Fox derivatives, Jacobian matrices
//! - [`structconst`]: graded algebras given by structure constants
//! - [`genpos`]: generation certificates for the positive part

pub mod deriv;
pub mod envfox;
mod error;
pub mod freealg;
pub mod genpos;
pub mod linalg;
mod probe;
pub mod structconst;
pub mod varieties;

pub use error::{Error, Result};

pub use deriv::{Derivation, DerivationAlgebra};
pub use envfox::{EnvElement, EnvGenerator, JacobianMatrix};
pub use freealg::{bracket, Element, RawWord, Signature, Word};
pub use probe::Probe;
pub use varieties::{Ambient, Identity, QuotientSpace, VarietyPresentation};

/// Exact rational coefficients.
pub type Q = num_rational::BigRational;

/// Integer as a rational.
pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

/// The fraction `num/den`.
pub fn frac(num: i64, den: i64) -> Q {
    Q::new(num.into(), den.into())
}
