//! Exact arithmetic over cyclotomic fields and exact linear algebra.
//!
//! Elements of `Q(zeta_N)` are stored in the power basis
//! `1, zeta, ..., zeta^(phi(N)-1)` with arbitrary-precision rational
//! coefficients, reduced modulo the N-th cyclotomic polynomial.  Since all
//! group elements and character values occurring in this crate have finite
//! order, these fields are enough to realize "an algebraically closed field
//! of characteristic 0" for every computation in scope, and equality is
//! decidable.

mod cyclotomic;
mod linalg;

pub use cyclotomic::{euler_phi, parse_rational, Cyclotomic, ExactError};
pub use linalg::{ExactMatrix, LinSolver, RankKernelImage};
