//! Solve f(x, y) = m for positive definite primitive binary quadratic
//! forms, given the factorization of m.
//!
//! The classical route is Cornacchia's root-descent, which degrades to
//! 2^omega(m) root trials when m is highly composite. This crate also
//! implements two solvers that reduce the problem to a signed subset-sum
//! instance over the ideal class group of the order of discriminant
//! disc(f): a Bellman-style layered dynamic program (strong when the class
//! number is small) and a meet-in-the-middle search over signed products
//! of prime form classes (strong for generic discriminants). Both certify
//! non-existence, unlike probabilistic subset-sum methods.
//!
//! Module map:
//! - [`arith`]: Kronecker symbol, modular square roots, primality,
//!   validated factorizations.
//! - [`forms`]: binary quadratic forms, reduction with transform tracking,
//!   Dirichlet composition.
//! - [`quadorder`]: imaginary quadratic orders, prime ideals, the
//!   ideal-to-form dictionary, and representation extraction.
//! - [`classgroup`]: class group enumeration, invariant factors, discrete
//!   log table.
//! - [`cornacchia`]: the baseline descent solvers, instrumented with root
//!   counters.
//! - [`solver_dp`], [`solver_mitm`]: the subset-sum solvers, instrumented
//!   with state and composition counters.
//! - [`oracle`]: independent brute-force ground truth for testing.

pub mod arith;
pub mod classgroup;
pub mod cornacchia;
pub mod error;
pub mod forms;
pub mod oracle;
pub mod quadorder;
pub mod solve;
pub mod solver_dp;
pub mod solver_mitm;

pub use arith::Factorization;
pub use classgroup::{ClassGroupStructure, GroupVector, DEFAULT_MAX_H};
pub use error::Error;
pub use forms::{Form, FormClass, UnimodularTransform};
pub use quadorder::{OIdeal, QuadOrderCtx, SplitType};
pub use solve::SolveOutcome;
