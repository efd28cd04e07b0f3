//! Structure-constant algebras, their ideals and quotients, and towers of
//! truncations.

mod family;
mod generators;
mod ideal;
pub mod standard;
mod table;

pub use family::{truncate, TowerRule, TruncationFamily};
pub(crate) use generators::algebra_from_operators;
pub use generators::{construct_from_generators, GeneratedAlgebra};
pub(crate) use ideal::common_preimage;
pub use ideal::{
    annihilators, ideal_closure, is_square_zero, is_surjective_hom, largest_ideal_in, quotient, IdealBasis, IdealSide,
    Quotient,
};
pub use table::{multiply, validate, StructureAlgebra, StructureConstant, ValidationReport, Violation};

#[cfg(test)]
mod tests;
