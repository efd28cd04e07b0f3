use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::decide::Budget;
use super::sampler::{analyze_level, level_seed, sampled_ranks, sampler, sorted_levels};
use crate::algebra::{construct_from_generators, StructureAlgebra, TruncationFamily};
use crate::error::{Error, Result};
use crate::exactmath::{random_scalar, Matrix, Scalar};

/// Picks generators inside each level algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenRule {
    /// Integer combinations `Σ c·a_i` given as `(i, c)` pairs.
    Fixed(Vec<Vec<(usize, i64)>>),
    /// `count` random elements from the stream `seed ⊕ level`.
    Seeded {
        seed: u64,
        count: usize,
    },
    Unit,
}

impl GenRule {
    pub fn describe(&self) -> String {
        match self {
            GenRule::Fixed(g) => format!("fixed {g:?}"),
            GenRule::Seeded { seed, count } => format!("seeded {count} from {seed}"),
            GenRule::Unit => "unit".into(),
        }
    }

    pub fn generators(&self, a: &StructureAlgebra, level: usize) -> Result<Vec<Vec<Scalar>>> {
        let field = a.field();
        match self {
            GenRule::Fixed(gens) => gens
                .iter()
                .map(|terms| {
                    let mut v = a.zero_vector();
                    for &(i, c) in terms {
                        if i >= a.dim() {
                            return Err(Error::BadParams(format!("generator index {i} at level {level}")));
                        }
                        v[i] = &v[i] + &field.from_i64(c);
                    }
                    Ok(v)
                })
                .collect(),
            GenRule::Seeded { seed, count } => {
                let mut rng = ChaCha8Rng::seed_from_u64(level_seed(*seed, level));
                Ok((0..*count)
                    .map(|_| (0..a.dim()).map(|_| random_scalar(field, &mut rng, 2)).collect())
                    .collect())
            }
            GenRule::Unit => Ok(vec![a.unit().to_vec()]),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubalgebraLevel {
    pub level: usize,
    pub parent_dim: usize,
    pub sub_dim: usize,
    pub parent_max_rank: usize,
    pub sub_max_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubalgebraReport {
    pub family: String,
    pub rule: String,
    pub records: Vec<SubalgebraLevel>,
    /// The subalgebra's sampled rank never exceeds the parent's.
    pub bounded_by_parent: bool,
}

impl SubalgebraReport {
    pub fn sub_ranks(&self) -> Vec<usize> {
        self.records.iter().map(|r| r.sub_max_rank).collect()
    }
}

/// Compares rank profiles of the generated unital subalgebras with those
/// of the parent levels.
pub fn subalgebra_check(f: &TruncationFamily, rule: &GenRule, budget: &Budget) -> Result<SubalgebraReport> {
    let records = sorted_levels(&budget.levels)
        .par_iter()
        .map(|&level| {
            let parent = analyze_level(f, level, budget.seed, budget.samples)?;
            let a = &parent.algebra;
            let ops: Vec<Matrix> = rule
                .generators(a, level)?
                .iter()
                .map(|g| a.left_mult_matrix(g))
                .collect();
            let b = construct_from_generators(a.field(), a.dim(), &ops)?.algebra;
            let functionals = sampler(&b, level_seed(budget.seed, level), budget.samples);
            let (ranks, best) = sampled_ranks(&b, &functionals);
            Ok(SubalgebraLevel {
                level,
                parent_dim: a.dim(),
                sub_dim: b.dim(),
                parent_max_rank: parent.profile.max_rank_found,
                sub_max_rank: ranks[best],
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SubalgebraReport {
        family: f.name().to_string(),
        rule: rule.describe(),
        bounded_by_parent: records.iter().all(|r| r.sub_max_rank <= r.parent_max_rank),
        records,
    })
}
