//! Quantum measure theory on finite spaces and on the unit interval.
//!
//! A q-measure is a nonnegative set function that is grade-2 additive:
//! `mu(A+B+C) = mu(A+B) + mu(A+C) + mu(B+C) - mu(A) - mu(B) - mu(C)` for
//! mutually disjoint sets. The crate provides
//!
//! - [`finite_space`]: exact tables over a finite universe, their
//!   constructors and exhaustive axiom checks;
//! - [`quantum_forms`]: symmetric bilinear and quadratic forms, and the
//!   quantum form of a pair-measure matrix;
//! - [`q_integral`]: the layer-cake q-integral of simple functions;
//! - [`real_line`]: interval unions on `[0, 1]`, the q-Lebesgue and
//!   destructive-shift measures, and numerical q-integration;
//! - [`induced`]: set functions `A -> integral over A of f`.

pub mod error;
pub mod finite_space;
pub mod induced;
pub mod io;
pub mod q_integral;
pub mod quantum_forms;
pub mod real_line;
pub mod report;
pub mod scalar;
pub mod subset;

pub use error::{Error, Result};
pub use report::{Report, Witness};
pub use scalar::{Rational, Scalar};
pub use subset::{SubsetMask, Universe};
