//! Exact computation of Weyl groupoids and generalized root systems for
//! tuples of irreducible Yetter-Drinfeld modules over finite groups.
//!
//! The crate is organised in layers:
//!
//! - [`exactfield`]: arithmetic in cyclotomic fields `Q(zeta_N)` and exact
//!   linear algebra (rank, kernel, image) over them.  Every operator
//!   computation in the crate runs on this layer; there is no floating
//!   point anywhere.
//! - [`finitegroup`]: finite permutation groups with conjugacy classes,
//!   centralizers, double cosets and the group-theoretic predicates used
//!   by the finite-dimensionality screens.
//! - [`ydmodule`]: Yetter-Drinfeld modules over a finite group: induction
//!   from centralizer representations, braiding, duals, graded characters
//!   and irreducibility tests.
//! - [`cartan`] and [`weylgroupoid`]: abstract Cartan schemes, their Weyl
//!   groupoids, real-root enumeration, root-system axioms and finiteness
//!   certificates.
//! - [`engine`]: quantum shuffle and symmetrizer operators, braided
//!   adjoint powers, graded dimensions of Nichols algebras, Cartan-matrix
//!   inference, tuple reflections, scheme construction and the
//!   obstruction screens.
//! - [`io`]: the JSON input formats understood by the command line tool.
//!
//! All values are immutable after construction and safe to share between
//! threads.

pub mod cartan;
pub mod engine;
pub mod exactfield;
pub mod finitegroup;
pub mod io;
pub mod weylgroupoid;
pub mod ydmodule;

pub use exactfield::{Cyclotomic, ExactMatrix};
