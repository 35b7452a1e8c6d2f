//! Finite-dimensional algebras over finite fields: radicals, Wedderburn
//! structure, blocks, basic algebras, quivers and modules.

pub mod algebra;
pub mod basic;
pub mod category;
pub mod idempotents;
pub mod iso;
pub mod module;
pub mod radical;

pub use algebra::{Algebra, MatrixRep, ModIdeal, Quotient, Ring, MAX_TABLE_DIM};
pub use basic::{
    basic_presentation, quiver_of, socle, socle_quotient, BasicPresentation, Composite, QuiverData, Side, Vertex,
};
pub use category::algebra_from_category;
pub use idempotents::{
    basic_idempotents, commutative_idempotents, defect_zero_idempotent, lift_blocks, lift_idempotent,
    semisimple_structure, split_commutative, wedderburn, Block, SemisimpleStructure, WedderburnFactor,
};
pub use iso::{is_homomorphism, iso_search, IsoWitness, MAX_ISO_DIM};
pub use module::{AlgebraModule, CompositionFactor};
pub use radical::radical;

#[cfg(test)]
mod tests;
