//! Exact arithmetic: reduced rationals, sparse Laurent polynomials in one
//! formal generator `t`, and elementary symmetric polynomials of integer
//! sequences.
//!
//! Nothing here uses floating point. Every identity the rest of the crate
//! checks is an exact equality over `Q`.

mod laurent;
mod rational;
mod symmetric;

pub use laurent::LaurentPoly;
pub use rational::{format_rational, rational_arith, RationalOp};
pub use symmetric::{elementary_symmetric, elementary_symmetric_all};

/// Arbitrary-precision rational, always stored reduced with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// Arbitrary-precision integer.
pub type Integer = num_bigint::BigInt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KernelError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("elementary symmetric index {index} out of range for {len} variables")]
    IndexOutOfRange { index: usize, len: usize },
}
