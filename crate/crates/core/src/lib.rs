//! Bondarenko-style block-matrix categories over `Y × Z` with involution,
//! their homotopy-type quotient, and the embedding of bounded complexes of
//! projectives over gentle algebras.
//!
//! Module map:
//!
//! - [`scalar`]: exact fields, dense matrices, affine solver
//! - [`poset`]: base posets with involution and graded elements
//! - [`category`]: objects, morphisms, shift, direct sums
//! - [`cones`]: cones, standard triangles, rotation, fill-in, octahedron
//! - [`equiv`]: K- and κ-witnesses, quotient isomorphisms
//! - [`gentle`]: quivers with relations, paths, algebra posets
//! - [`complexes`]: complexes of projectives, chain maps, homotopies
//! - [`functor`]: complexes to block matrices
//! - [`random`], [`verify`], [`oracle`]: instance generation and checking

pub mod category;
pub mod complexes;
pub mod cones;
pub mod equiv;
pub mod error;
pub mod fixtures;
pub mod functor;
pub mod gentle;
pub mod oracle;
pub mod poset;
pub mod random;
pub mod report;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
