//! Dual modules, adjoints, and the comparison of biendomorphism rings of a
//! module and its dual.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{dot, Matrix, Scalar, Subspace};
use crate::modules::{bicommutant_span, classify, hom_space, ModuleFlags, RModule};

/// `U*` in the dual basis of `base`, with the transposed action on the
/// opposite side.
#[derive(Clone, Debug)]
pub struct DualModule {
    pub base: RModule,
    pub module: RModule,
}

pub fn dual_module(u: &RModule) -> DualModule {
    let action = u.action().iter().map(Matrix::transpose).collect();
    let module = RModule::new(u.algebra().clone(), u.side().flip(), u.dim(), action).expect("transpose keeps shapes");
    DualModule {
        base: u.clone(),
        module,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjointMap {
    pub original: Matrix,
    pub adjoint: Matrix,
}

fn intertwines(f: &Matrix, u: &RModule, v: &RModule) -> bool {
    f.rows() == v.dim() && f.cols() == u.dim() && u.action().iter().zip(v.action()).all(|(a, b)| b.mul(f) == f.mul(a))
}

/// The adjoint `f*: V* → U*` of a module map `f: U → V`.
pub fn adjoint(f: &Matrix, u: &RModule, v: &RModule) -> Result<AdjointMap> {
    if u.side() != v.side() {
        return Err(Error::SideMismatch);
    }
    if !u.same_algebra(v) {
        return Err(Error::AlgebraMismatch);
    }
    if !intertwines(f, u, v) {
        return Err(Error::NotAHomomorphism);
    }
    let adjoint = f.transpose();
    debug_assert!(intertwines(&adjoint, &dual_module(v).module, &dual_module(u).module));
    Ok(AdjointMap {
        original: f.clone(),
        adjoint,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum InclusionStatus {
    Holds,
    Fails,
    ExpectedNa,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Th3Report {
    pub hypotheses: ModuleFlags,
    pub inclusion_i: InclusionStatus,
    pub inclusion_ii: InclusionStatus,
    /// Whether `{b* : b ∈ Biend(U)} ⊆ Biend(U*)`, regardless of hypotheses.
    pub inclusion_i_raw: bool,
    /// Whether `Biend(U*)* ⊆ Biend(U)`, regardless of hypotheses.
    pub inclusion_ii_raw: bool,
    pub biend_dims: [usize; 2],
}

fn transposed_span(s: &Subspace, m: usize) -> Subspace {
    let field = s.field();
    let vectors = s
        .basis()
        .iter()
        .map(|v| Matrix::unflatten(field, m, m, v).transpose().flatten().to_vec())
        .collect();
    Subspace::span(field, m * m, vectors).expect("square operators")
}

fn status(hypothesis: bool, raw: bool) -> InclusionStatus {
    match (hypothesis, raw) {
        (false, _) => InclusionStatus::ExpectedNa,
        (true, true) => InclusionStatus::Holds,
        (true, false) => InclusionStatus::Fails,
    }
}

/// Compares `Biend(U)` with `Biend(U*)` through adjoints.
pub fn check_biend_inclusion(u: &RModule) -> Result<Th3Report> {
    let m = u.dim();
    let flags = classify(u)?;
    let b = bicommutant_span(u);
    let b_dual = bicommutant_span(&dual_module(u).module);
    let inclusion_i_raw = b_dual.contains(&transposed_span(&b, m))?;
    let inclusion_ii_raw = b.contains(&transposed_span(&b_dual, m))?;
    Ok(Th3Report {
        hypotheses: flags,
        inclusion_i: status(
            flags.faithful && flags.torsionless && flags.t_accessible,
            inclusion_i_raw,
        ),
        inclusion_ii: status(flags.faithful && flags.projective, inclusion_ii_raw),
        inclusion_i_raw,
        inclusion_ii_raw,
        biend_dims: [b.dim(), b_dual.dim()],
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjointDensity {
    pub surjective: bool,
    /// A map in `Hom(V*, U*)` that is not an adjoint, when one exists.
    pub witness: Option<Matrix>,
    pub hom_dims: [usize; 2],
}

/// Decides whether every map `V* → U*` is the adjoint of a map `U → V`.
pub fn adjoint_density_check(u: &RModule, v: &RModule) -> Result<AdjointDensity> {
    let h = hom_space(u, v)?;
    let h_dual = hom_space(&dual_module(v).module, &dual_module(u).module)?;
    let field = u.field();
    let adjoints = Subspace::span(
        field,
        u.dim() * v.dim(),
        h.maps.iter().map(|f| f.transpose().flatten().to_vec()).collect(),
    )?;
    let contained = h_dual.span.contains(&adjoints)?;
    let witness = h_dual
        .maps
        .iter()
        .find(|g| !adjoints.contains_vector(g.flatten()))
        .cloned();
    Ok(AdjointDensity {
        surjective: contained && witness.is_none() && h.dim() == h_dual.dim(),
        witness,
        hom_dims: [h.dim(), h_dual.dim()],
    })
}

/// Finds `r` with `⟨r·x, ρ⟩ = ⟨b(x), ρ⟩` for every pair `(x, ρ)` in `h`,
/// where `b` acts on `U` and `ρ` is a coordinate vector of `U*`.
pub fn weak_density_check(u: &RModule, b: &Matrix, h: &[(Vec<Scalar>, Vec<Scalar>)]) -> Result<Option<Vec<Scalar>>> {
    let field = u.field();
    let m = u.dim();
    let n = u.algebra().dim();
    if b.rows() != m || b.cols() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: b.rows(),
        });
    }
    if let Some((x, rho)) = h.iter().find(|(x, rho)| x.len() != m || rho.len() != m) {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: if x.len() != m { x.len() } else { rho.len() },
        });
    }
    if h.is_empty() {
        return Ok(Some(vec![field.zero(); n]));
    }
    let rows: Vec<Vec<Scalar>> = h
        .iter()
        .map(|(x, rho)| u.action().iter().map(|a| dot(field, rho, &a.mul_vec(x))).collect())
        .collect();
    let rhs: Vec<Scalar> = h.iter().map(|(x, rho)| dot(field, rho, &b.mul_vec(x))).collect();
    Matrix::from_rows(field, rows)?.solve(&rhs)
}
