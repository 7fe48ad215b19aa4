//! Exact Newton polytope machinery for deciding whether the real zero set of a
//! multivariate polynomial is compact, and whether it stays compact under small
//! perturbations of the coefficients that keep the Newton polytope.
//!
//! The crate is `no_std` and only needs `alloc`. Every certificate and witness is
//! produced and rechecked in exact rational arithmetic; floating point appears only
//! in search heuristics (sampling, numeric probes) and never decides a verdict on
//! its own.
//!
//! Layout:
//!
//! - [`polynomial`]: sparse exact polynomials, the text grammar, restrictions,
//!   derivatives, monomial curves and the semialgebraic aggregation.
//! - [`newton`]: convex hull of the support, face lattice, supporting faces, the
//!   boundary at infinity and lattice points.
//! - [`signcheck`]: sign behaviour on `(R \ {0})^n` with recheckable certificates.
//! - [`criteria`]: the compactness and stable compactness tests, sandwich
//!   estimates, perturbation experiments and numeric probes.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;
mod linalg;
mod rng;

pub mod criteria;
pub mod newton;
pub mod polynomial;
pub mod signcheck;
pub mod univariate;

pub use error::{Error, Result};
pub use num_bigint::BigInt;
pub use num_rational::BigRational as Rational;
