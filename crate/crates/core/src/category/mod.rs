//! Objects and morphisms of the block-matrix category over `Y × Z`.
//!
//! Objects are square-zero block matrices with σ-compatible band sizes;
//! morphisms are block upper-triangular intertwiners with σ-tied diagonal.
//! Everything is stored sparsely and compared after normalization.

mod block;
mod morphism;
mod object;

pub use block::{BlockKey, BlockMatrix, DimensionVector};
pub use morphism::BondMorphism;
pub use object::{same_object, BondObject};
