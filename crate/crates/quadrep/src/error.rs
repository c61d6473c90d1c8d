//! Error types shared across the crate.

use num_bigint::BigInt;
use thiserror::Error;

/// The first defect found while validating a claimed factorization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorizationDefect {
    /// The product of the listed prime powers does not equal `m`.
    ProductMismatch { expected: BigInt, actual: BigInt },
    /// A listed factor failed the primality test.
    NotPrime(BigInt),
    /// The same prime is listed more than once.
    RepeatedPrime(BigInt),
    /// A factor was listed with exponent zero.
    ZeroExponent(BigInt),
    /// A factor smaller than 2 was listed.
    TooSmall(BigInt),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid discriminant {0}: want D < 0 and D congruent to 0 or 1 mod 4")]
    InvalidDiscriminant(BigInt),

    #[error("invalid form ({a},{b},{c}): {reason}")]
    InvalidForm {
        a: BigInt,
        b: BigInt,
        c: BigInt,
        reason: &'static str,
    },

    #[error("invalid factorization: {0:?}")]
    InvalidFactorization(FactorizationDefect),

    #[error("discriminant mismatch: {left} vs {right}")]
    DiscriminantMismatch { left: BigInt, right: BigInt },

    #[error("forms are not properly equivalent")]
    NotEquivalent,

    #[error("{value} is not coprime to the conductor {conductor}")]
    ConductorNotCoprime { value: BigInt, conductor: BigInt },

    #[error("ideal is not invertible: its norm shares a factor with the conductor")]
    NotInvertible,

    #[error("ideal class does not match the form class")]
    ClassMismatch,

    #[error("class does not belong to this group structure")]
    UnknownClass,

    #[error("class number for discriminant {d} exceeds the configured bound {bound}")]
    DeskScaleExceeded { d: BigInt, bound: u64 },

    #[error("m is not square-free: {p} appears with exponent {e}")]
    NotSquareFree { p: BigInt, e: u32 },

    #[error("instance size {n} exceeds the hard cap {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
