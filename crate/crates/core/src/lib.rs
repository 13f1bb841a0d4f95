//! Exact computer algebra for finite-dimensional algebras over GF(2).
//!
//! The crate builds structure-constant tables for divided powers, Zassenhaus
//! and current algebras and their derivation extensions, computes
//! Chevalley–Eilenberg cohomology with trivial and adjoint coefficients,
//! low-degree cyclic and Harrison invariants of commutative algebras,
//! filtered deformations with their Massey obstructions, and structural
//! invariants (derivations, centroid, 2-envelope, tori, simplicity).
//!
//! Everything is exact linear algebra over the two-element field; see
//! [`gf2`] for the substrate.

pub mod algebra;
pub mod comm;
pub mod cohomology;
pub mod constructions;
pub mod deform;
pub mod error;
pub mod gf2;
pub mod invariants;
pub mod oracle;
pub mod schema;

pub use algebra::{AlgebraKind, AlgebraTable, LinearMap, TableBuilder, ValidationReport};
pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVector, Subspace};
