//! Dimension-free matrix algebra.
//!
//! Classical linear algebra insists that dimensions match. This crate
//! implements a family of operators that drop that requirement: products and
//! additions of matrices/vectors of *arbitrary* dimensions, obtained by
//! Kronecker-inflating each operand to the least common multiple of the
//! dimensions involved. On top of those primitives it builds
//!
//! * equivalence/reduction machinery identifying a vector with its stretched
//!   copies (the quotient geometry of R^infinity),
//! * cross-order permutation products and embeddings,
//! * squaring/symmetrizing maps and an s-spectral theory for non-square
//!   matrices,
//! * an inner-product geometry with cross-dimensional projections,
//! * Lie-algebra/Lie-group structure on non-square matrices (generalized
//!   Cayley-Hamilton, closed-form inversion, exp/log), and
//! * simulators for linear systems whose state dimension varies over time.

pub mod error;
pub mod lattice;
pub mod mat;
pub mod stp;

pub mod equivalence;
pub mod geometry;
pub mod lie;
pub mod maps;
pub mod perm;
pub mod systems;

pub use error::{Error, Result};
pub use lattice::Shape;
pub use mat::{HVec, Mat};
