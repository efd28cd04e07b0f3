use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{StructureAlgebra, TruncationFamily};
use crate::arens::{rank_map, translate_dim, Functional};
use crate::error::Result;
use crate::exactmath::{format_vector, FieldSpec, Scalar};

/// Coordinate functionals, then the all-ones functional, then `samples`
/// random ones drawn from `seed`: entries in `0..=4` over ℚ, uniform
/// residues over F_p.
pub fn sampler(a: &StructureAlgebra, seed: u64, samples: usize) -> Vec<Functional> {
    let field = a.field();
    let n = a.dim();
    let mut out: Vec<Functional> = (0..n).map(|k| Functional::coordinate(a, k)).collect();
    out.push(Functional(vec![field.one(); n]));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        out.push(Functional((0..n).map(|_| random_entry(field, &mut rng)).collect()));
    }
    out
}

fn random_entry(field: FieldSpec, rng: &mut ChaCha8Rng) -> Scalar {
    match field {
        FieldSpec::Rational => field.from_i64(rng.gen_range(0..=4)),
        FieldSpec::Prime { p } => field.from_i64(rng.gen_range(0..p) as i64),
    }
}

/// The per-level sampler stream.
pub fn level_seed(seed: u64, level: usize) -> u64 {
    seed ^ level as u64
}

pub(crate) fn lex_cmp(x: &[Scalar], y: &[Scalar]) -> Ordering {
    x.iter()
        .zip(y)
        .map(|(a, b)| a.canonical_cmp(b))
        .find(|o| o.is_ne())
        .unwrap_or_else(|| x.len().cmp(&y.len()))
}

/// Ranks of every sampled functional, and the index of the maximizing one
/// (lexicographically smallest on ties).
pub fn sampled_ranks(a: &StructureAlgebra, functionals: &[Functional]) -> (Vec<usize>, usize) {
    let ranks: Vec<usize> = functionals
        .par_iter()
        .map(|rho| rank_map(a, rho).expect("sampler matches dimension").rank())
        .collect();
    let best = (0..functionals.len())
        .max_by(|&i, &j| {
            ranks[i]
                .cmp(&ranks[j])
                .then_with(|| lex_cmp(&functionals[j].0, &functionals[i].0))
        })
        .unwrap_or(0);
    (ranks, best)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelProfile {
    pub level: usize,
    pub dim: usize,
    pub max_rank_found: usize,
    pub witness: Functional,
    /// `dim R·ω` from the span of translates, independent of the rank map.
    pub translate_dim: usize,
    pub sampler_seed: u64,
    pub sampler_count: usize,
}

impl Serialize for LevelProfile {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("LevelProfile", 7)?;
        st.serialize_field("level", &self.level)?;
        st.serialize_field("dim", &self.dim)?;
        st.serialize_field("max_rank_found", &self.max_rank_found)?;
        st.serialize_field("witness", &format_vector(&self.witness.0))?;
        st.serialize_field("translate_dim", &self.translate_dim)?;
        st.serialize_field("sampler_seed", &self.sampler_seed)?;
        st.serialize_field("sampler_count", &self.sampler_count)?;
        st.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankMapProfile {
    pub family: String,
    pub records: Vec<LevelProfile>,
}

impl RankMapProfile {
    pub fn ranks(&self) -> Vec<usize> {
        self.records.iter().map(|r| r.max_rank_found).collect()
    }
}

/// One level's algebra, sampled functionals and their ranks.
#[derive(Clone, Debug)]
pub(crate) struct LevelData {
    pub algebra: StructureAlgebra,
    pub functionals: Vec<Functional>,
    pub ranks: Vec<usize>,
    pub profile: LevelProfile,
}

pub(crate) fn analyze_level(f: &TruncationFamily, level: usize, seed: u64, samples: usize) -> Result<LevelData> {
    let algebra = crate::algebra::truncate(f, level)?;
    let stream = level_seed(seed, level);
    let functionals = sampler(&algebra, stream, samples);
    let (ranks, best) = sampled_ranks(&algebra, &functionals);
    let witness = functionals[best].clone();
    let profile = LevelProfile {
        level,
        dim: algebra.dim(),
        max_rank_found: ranks[best],
        translate_dim: translate_dim(&algebra, &witness)?,
        witness,
        sampler_seed: stream,
        sampler_count: functionals.len(),
    };
    Ok(LevelData {
        algebra,
        functionals,
        ranks,
        profile,
    })
}

pub(crate) fn sorted_levels(levels: &[usize]) -> Vec<usize> {
    let mut v = levels.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

/// Maximal sampled rank of the multiplication forms at each level.
pub fn rank_profile(f: &TruncationFamily, levels: &[usize], seed: u64, samples: usize) -> Result<RankMapProfile> {
    let levels = sorted_levels(levels);
    let records = levels
        .par_iter()
        .map(|&n| analyze_level(f, n, seed, samples).map(|d| d.profile))
        .collect::<Result<Vec<_>>>()?;
    Ok(RankMapProfile {
        family: f.name().to_string(),
        records,
    })
}
