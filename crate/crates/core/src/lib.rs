//! Growth bounds of Szász type for stable polynomials.
//!
//! A polynomial in `n` complex variables is *stable* when it has no zeros
//! with every coordinate in the open upper half-plane. Stable polynomials
//! normalized by `p(0) = 1` obey explicit exponential growth bounds in
//! terms of their first few Taylor coefficients. This crate provides:
//!
//! * [`poly`]: sparse multivariate complex polynomials and the shape queries
//!   the bounds need (gradient and Hessian at zero, homogeneous parts,
//!   restriction to planes, Cayley substitution).
//! * [`stability`]: one-variable root-based stability tests, generators of
//!   certified stable polynomials, and sampled refutation.
//! * [`detrep`]: determinantal representations `c·det(A + Σ z_j B_j)`, the
//!   bidisk-to-half-plane conversion and trace identities.
//! * [`bounds`]: one evaluator per inequality, all returning an [`ExpBound`].
//! * [`verify`]: seeded Monte Carlo checks of bounds and lemmas.
//! * [`cli`]: the batch front end behind the `szasz` binary.

// `!(x > y)` comparisons are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod cli;
pub mod detrep;
pub mod error;
pub mod linalg;
pub mod poly;
pub mod stability;
pub mod verify;

pub use num_complex::Complex64 as C64;

pub use bounds::{BoundDomain, ExpBound, NormKind, Theorem};
pub use detrep::{BidiskRep, DetRep};
pub use error::{Error, Result};
pub use poly::{HomogeneousExpansion, MultiPoly};
pub use stability::{StabilityStatus, StabilityVerdict};
pub use verify::{Region, VerifyReport};
