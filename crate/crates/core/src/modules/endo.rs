use serde::{Deserialize, Serialize};

use super::module::{ModuleSide, RModule};
use super::solver::intertwiners;
use crate::algebra::{algebra_from_operators, StructureAlgebra};
use crate::error::{Error, Result};
use crate::exactmath::{Matrix, Subspace};

/// A basis of `Hom_R(U, V)`, each map an `m_V × m_U` matrix.
#[derive(Clone, Debug)]
pub struct HomBasis {
    pub source: RModule,
    pub target: RModule,
    pub maps: Vec<Matrix>,
    /// The span of the flattened maps.
    pub span: Subspace,
}

impl HomBasis {
    pub fn dim(&self) -> usize {
        self.maps.len()
    }

    pub fn contains(&self, f: &Matrix) -> bool {
        f.rows() == self.target.dim() && f.cols() == self.source.dim() && self.span.contains_vector(f.flatten())
    }
}

pub fn hom_space(u: &RModule, v: &RModule) -> Result<HomBasis> {
    if u.side() != v.side() {
        return Err(Error::SideMismatch);
    }
    if !u.same_algebra(v) {
        return Err(Error::AlgebraMismatch);
    }
    let pairs: Vec<(Matrix, Matrix)> = u.action().iter().cloned().zip(v.action().iter().cloned()).collect();
    let span = intertwiners(u.field(), v.dim(), u.dim(), &pairs);
    Ok(HomBasis {
        maps: span
            .basis()
            .iter()
            .map(|f| Matrix::unflatten(u.field(), v.dim(), u.dim(), f))
            .collect(),
        source: u.clone(),
        target: v.clone(),
        span,
    })
}

/// How the carrier multiplies two operators `x`, `y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Composition {
    /// `x·y` is the matrix product `X·Y`.
    Direct,
    /// `x·y` is `Y·X`, maps written on the right of their arguments.
    Reverse,
}

impl Composition {
    pub fn compose(self, x: &Matrix, y: &Matrix) -> Matrix {
        match self {
            Composition::Direct => x.mul(y),
            Composition::Reverse => y.mul(x),
        }
    }
}

/// A ring of operators on a module, with structure constants.
#[derive(Clone, Debug)]
pub struct EndoAlgebra {
    pub carrier: StructureAlgebra,
    /// Operator realizing each carrier basis element.
    pub inclusion: Vec<Matrix>,
    pub composition: Composition,
    /// Span of the flattened operators.
    pub span: Subspace,
}

impl EndoAlgebra {
    fn from_span(span: Subspace, m: usize, composition: Composition) -> Result<Self> {
        let field = span.field();
        let inclusion: Vec<Matrix> = span.basis().iter().map(|v| Matrix::unflatten(field, m, m, v)).collect();
        let carrier = algebra_from_operators(field, &inclusion, |x, y| composition.compose(x, y))?;
        Ok(EndoAlgebra {
            carrier,
            inclusion,
            composition,
            span,
        })
    }

    pub fn dim(&self) -> usize {
        self.inclusion.len()
    }

    pub fn contains(&self, op: &Matrix) -> bool {
        self.span.contains_vector(op.flatten())
    }
}

/// Composition used by the commutant of a module on `side`. Endomorphisms of
/// a left module are written on the right.
pub fn commutant_composition(side: ModuleSide) -> Composition {
    match side {
        ModuleSide::Left => Composition::Reverse,
        ModuleSide::Right => Composition::Direct,
    }
}

fn self_pairs(ops: &[Matrix]) -> Vec<(Matrix, Matrix)> {
    ops.iter().map(|a| (a.clone(), a.clone())).collect()
}

/// `End_R(U)` as a subspace of flattened `m×m` matrices.
pub fn commutant_span(u: &RModule) -> Subspace {
    intertwiners(u.field(), u.dim(), u.dim(), &self_pairs(u.action()))
}

pub fn commutant(u: &RModule) -> Result<EndoAlgebra> {
    EndoAlgebra::from_span(commutant_span(u), u.dim(), commutant_composition(u.side()))
}

/// The span of the operators of `R` on `u`.
pub fn image_of_algebra(u: &RModule) -> Subspace {
    Subspace::span(
        u.field(),
        u.dim() * u.dim(),
        u.action().iter().map(|a| a.flatten().to_vec()).collect(),
    )
    .expect("flattened shape")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    /// Bicommutant equals the image of `R`.
    Equal,
    /// Image of `R` is a proper subspace of the bicommutant.
    StrictlyContains,
    /// Image of `R` is not inside the bicommutant.
    Differs,
}

#[derive(Clone, Debug)]
pub struct Bicommutant {
    pub endo: EndoAlgebra,
    pub image_of_r: Subspace,
    pub comparison: Comparison,
}

/// `Biend_R(U)`, the operators commuting with every element of `End_R(U)`.
pub fn bicommutant_span(u: &RModule) -> Subspace {
    let m = u.dim();
    let field = u.field();
    let com: Vec<Matrix> = commutant_span(u)
        .basis()
        .iter()
        .map(|v| Matrix::unflatten(field, m, m, v))
        .collect();
    intertwiners(field, m, m, &self_pairs(&com))
}

pub fn bicommutant(u: &RModule) -> Result<Bicommutant> {
    let span = bicommutant_span(u);
    let image_of_r = image_of_algebra(u);
    let comparison = if !span.contains(&image_of_r)? {
        Comparison::Differs
    } else if span.dim() == image_of_r.dim() {
        Comparison::Equal
    } else {
        Comparison::StrictlyContains
    };
    let endo = EndoAlgebra::from_span(span, u.dim(), commutant_composition(u.side().flip()))?;
    Ok(Bicommutant {
        endo,
        image_of_r,
        comparison,
    })
}
