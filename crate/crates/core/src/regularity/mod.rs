//! Deciding Arens regularity of truncation families: sampled rank
//! profiles, square-zero-ideal extraction and its certificates, and the
//! builtin family registry.

mod decide;
mod extract;
mod families;
mod sampler;
mod subalgebra;

pub use decide::{decide_regularity, Budget, RegularityReport, RegularityVerdict, DEFAULT_SAMPLES, WITNESS_RULE};
pub use extract::{
    certificate_flags, certificate_from_json, certificate_to_json, enlarge, extract_square_zero_ideal, normalize_form,
    verify_certificate, witness_basis_change, CertificateFlags, Extraction, ExtractionTrace, SquareZeroCertificate,
    StageDims,
};
pub use families::{builtin_family, explicit_tower, family_spec, family_to_json, projections_from_json, REGISTRY};
pub use sampler::{level_seed, rank_profile, sampled_ranks, sampler, LevelProfile, RankMapProfile};
pub use subalgebra::{subalgebra_check, GenRule, SubalgebraLevel, SubalgebraReport};
