//! Modules given by action matrices, intertwiners, commutants and trace
//! ideals.

mod classify;
mod endo;
mod module;
mod solver;

pub use classify::{
    classify, density_check, hom_to_regular, ideal_times_module, is_faithful, trace_ideal,
    trace_is_left_ideal_in_bicommutant, ModuleFlags,
};
pub use endo::{
    bicommutant, bicommutant_span, commutant, commutant_composition, commutant_span, hom_space, image_of_algebra,
    Bicommutant, Comparison, Composition, EndoAlgebra, HomBasis,
};
pub use module::{regular_module, validate_module, ModuleSide, RModule};
pub use solver::intertwiners;
