use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use super::extract::{certificate_flags, enlarge, extract_square_zero_ideal, SquareZeroCertificate};
use super::families::family_to_json;
use super::sampler::{analyze_level, sorted_levels, LevelData, RankMapProfile};
use crate::algebra::{IdealBasis, IdealSide, TruncationFamily};
use crate::error::Result;

pub const DEFAULT_SAMPLES: usize = 8;

pub const WITNESS_RULE: &str =
    "max rank over coordinate functionals, the all-ones functional and seeded random functionals (stream seed xor level)";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Budget {
    pub levels: Vec<usize>,
    pub seed: u64,
    pub samples: usize,
}

impl Budget {
    pub fn new(levels: Vec<usize>, seed: u64) -> Self {
        Budget {
            levels,
            seed,
            samples: DEFAULT_SAMPLES,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum RegularityVerdict {
    Regular {
        certificates: Vec<SquareZeroCertificate>,
        codim: usize,
    },
    NotRegular {
        witness_rule: String,
        ranks: Vec<usize>,
    },
    Inconclusive {
        reason: String,
        ranks: Vec<usize>,
        certificates: Vec<SquareZeroCertificate>,
    },
}

impl RegularityVerdict {
    pub fn kind(&self) -> &'static str {
        match self {
            RegularityVerdict::Regular { .. } => "Regular",
            RegularityVerdict::NotRegular { .. } => "NotRegular",
            RegularityVerdict::Inconclusive { .. } => "Inconclusive",
        }
    }
}

/// The verdict with everything needed to reproduce it. Statements about
/// the limit algebra are graded `EVIDENCE`.
#[derive(Clone, Debug, Serialize)]
pub struct RegularityReport {
    pub family: Value,
    pub levels: Vec<usize>,
    pub seed: u64,
    pub samples: usize,
    pub grade: &'static str,
    pub profile: RankMapProfile,
    pub verdict: RegularityVerdict,
}

/// Smallest-codimension verified certificate reachable from the sampled
/// functionals at one level, trying the witness first.
pub(crate) fn best_certificate(data: &LevelData, level: usize) -> Option<SquareZeroCertificate> {
    let a = &data.algebra;
    let n0 = data.profile.max_rank_found;
    let floor = n0.div_ceil(2);
    let witness = &data.profile.witness;
    let others = data
        .functionals
        .iter()
        .zip(data.ranks.iter().copied())
        .filter(|(f, _)| *f != witness);
    let mut best: Option<SquareZeroCertificate> = None;
    for (rho, rank) in std::iter::once((witness, n0)).chain(others) {
        let Ok(ex) = extract_square_zero_ideal(a, rho, rank, &data.functionals) else {
            continue;
        };
        let ideal = enlarge(a, &ex.certificate.ideal);
        let codim = ideal.codim();
        let verified = certificate_flags(a, &ideal, codim);
        if !verified.all() || best.as_ref().is_some_and(|b| b.codim <= codim) {
            continue;
        }
        best = Some(SquareZeroCertificate {
            level,
            ideal,
            codim,
            verified,
        });
        if codim <= floor {
            break;
        }
    }
    best
}

/// The image of a higher level's certificate under the tower quotient.
/// It replaces `own` whenever it verifies.
fn pushed_down(
    f: &TruncationFamily,
    data: &LevelData,
    level: usize,
    above: &SquareZeroCertificate,
    own: Option<SquareZeroCertificate>,
) -> Option<SquareZeroCertificate> {
    let a = &data.algebra;
    let image = f
        .projection(above.level, level)
        .ok()
        .map(|p| above.ideal.subspace.image(&p))
        .map(|s| IdealBasis {
            subspace: s,
            side: IdealSide::TwoSided,
        });
    let candidate = image.and_then(|ideal| {
        let codim = ideal.codim();
        let verified = certificate_flags(a, &ideal, codim);
        verified.all().then_some(SquareZeroCertificate {
            level,
            ideal,
            codim,
            verified,
        })
    });
    candidate.or(own)
}

/// `J_N` maps onto `J_{N'}` under the tower quotient.
fn certificates_cohere(f: &TruncationFamily, big: &SquareZeroCertificate, small: &SquareZeroCertificate) -> bool {
    let Ok(p) = f.projection(big.level, small.level) else {
        return false;
    };
    let image = big.ideal.subspace.image(&p);
    image.equals(&small.ideal.subspace).unwrap_or(false)
}

pub fn decide_regularity(f: &TruncationFamily, budget: &Budget) -> Result<RegularityReport> {
    let levels = sorted_levels(&budget.levels);
    let data = levels
        .par_iter()
        .map(|&n| analyze_level(f, n, budget.seed, budget.samples))
        .collect::<Result<Vec<_>>>()?;
    let profile = RankMapProfile {
        family: f.name().to_string(),
        records: data.iter().map(|d| d.profile.clone()).collect(),
    };
    let ranks = profile.ranks();
    let inconclusive = |reason: &str, certificates: Vec<SquareZeroCertificate>| RegularityVerdict::Inconclusive {
        reason: reason.to_string(),
        ranks: ranks.clone(),
        certificates,
    };
    let verdict = if levels.len() < 3 {
        inconclusive("at least three levels are needed", Vec::new())
    } else if ranks.windows(2).all(|w| w[0] < w[1]) {
        RegularityVerdict::NotRegular {
            witness_rule: WITNESS_RULE.to_string(),
            ranks: ranks.clone(),
        }
    } else {
        let mut found: Vec<Option<SquareZeroCertificate>> = data
            .par_iter()
            .zip(&levels)
            .map(|(d, &n)| best_certificate(d, n))
            .collect();
        for i in (0..levels.len().saturating_sub(1)).rev() {
            if let Some(above) = found[i + 1].clone() {
                found[i] = pushed_down(f, &data[i], levels[i], &above, found[i].take());
            }
        }
        let certificates: Vec<SquareZeroCertificate> = found.iter().flatten().cloned().collect();
        if certificates.len() < levels.len() {
            inconclusive("no verified certificate at some level", certificates)
        } else if certificates.windows(2).any(|w| w[0].codim != w[1].codim) {
            inconclusive("certificate codimension varies across levels", certificates)
        } else if certificates.windows(2).any(|w| !certificates_cohere(f, &w[1], &w[0])) {
            inconclusive("certificates are not compatible with the tower quotients", certificates)
        } else {
            RegularityVerdict::Regular {
                codim: certificates[0].codim,
                certificates,
            }
        }
    };
    Ok(RegularityReport {
        family: family_to_json(f),
        levels,
        seed: budget.seed,
        samples: budget.samples,
        grade: "EVIDENCE",
        profile,
        verdict,
    })
}
