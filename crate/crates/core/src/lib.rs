//! Symplectic and orthogonal matroids over the signed ground set
//! `[n] ∪ [n]*`, Lagrangian pairs of orthogonal matroids, and the related
//! constructions on ordinary matroids and isotropic subspaces.
//!
//! Everything is exact: set systems are bitmasks, polytope questions are
//! settled by rational linear programming, and linear algebra runs over
//! `ℚ` or a prime field.

pub mod axioms;
pub mod error;
pub mod ground;
mod lp;
pub mod ordering;
pub mod ordinary;
pub mod pairs;
pub mod perm;
pub mod polytope;
pub mod quotients;
pub mod repr;

pub use axioms::{
    is_lagrangian, is_orthogonal_matroid, is_symplectic_matroid, max_member, BasisCollection,
};
pub use error::{Error, Result};
pub use ground::{AdmissibleSet, Parity, SignedElement};
pub use ordering::{enumerate_orderings, AdmissibleOrdering, Flavor};
pub use perm::SignedPermutation;
