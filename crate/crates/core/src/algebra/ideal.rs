use serde::{Deserialize, Serialize};

use super::table::StructureAlgebra;
use crate::error::{Error, Result};
use crate::exactmath::{Matrix, Scalar, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IdealSide {
    Left,
    Right,
    TwoSided,
}

impl IdealSide {
    fn left(self) -> bool {
        matches!(self, IdealSide::Left | IdealSide::TwoSided)
    }

    fn right(self) -> bool {
        matches!(self, IdealSide::Right | IdealSide::TwoSided)
    }

    fn name(self) -> &'static str {
        match self {
            IdealSide::Left => "left",
            IdealSide::Right => "right",
            IdealSide::TwoSided => "two-sided",
        }
    }
}

/// A subspace of an algebra together with the multiplications it is
/// claimed to be closed under.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealBasis {
    pub subspace: Subspace,
    pub side: IdealSide,
}

impl IdealBasis {
    /// Checks the claim against every basis element of `a`.
    pub fn verify(&self, a: &StructureAlgebra) -> bool {
        is_closed(a, &self.subspace, self.side)
    }

    pub fn dim(&self) -> usize {
        self.subspace.dim()
    }

    pub fn codim(&self) -> usize {
        self.subspace.codim()
    }
}

pub(crate) fn is_closed(a: &StructureAlgebra, s: &Subspace, side: IdealSide) -> bool {
    if s.ambient_dim() != a.dim() {
        return false;
    }
    s.basis().iter().all(|v| {
        (0..a.dim()).all(|i| {
            let e = a.basis_vector(i);
            (!side.left() || s.contains_vector(&a.mul(&e, v))) && (!side.right() || s.contains_vector(&a.mul(v, &e)))
        })
    })
}

/// The smallest ideal of the requested side containing `seed`.
pub fn ideal_closure(a: &StructureAlgebra, seed: &[Vec<Scalar>], side: IdealSide) -> Result<IdealBasis> {
    let n = a.dim();
    let mut span = Subspace::span(a.field(), n, seed.to_vec())?;
    let mut frontier: Vec<Vec<Scalar>> = span.basis().to_vec();
    while let Some(v) = frontier.pop() {
        for i in 0..n {
            let e = a.basis_vector(i);
            let mut candidates = Vec::with_capacity(2);
            if side.left() {
                candidates.push(a.mul(&e, &v));
            }
            if side.right() {
                candidates.push(a.mul(&v, &e));
            }
            for w in candidates {
                if !span.contains_vector(&w) {
                    span = span.sum(&Subspace::span(a.field(), n, vec![w.clone()])?)?;
                    frontier.push(w);
                }
            }
        }
    }
    Ok(IdealBasis { subspace: span, side })
}

/// `{x : m·x ∈ target for every m in maps}` as a single stacked kernel.
pub(crate) fn common_preimage(target: &Subspace, maps: &[Matrix], ambient: usize) -> Subspace {
    let field = target.field();
    let ann = target.annihilator();
    if ann.is_zero() {
        return Subspace::full(field, ambient);
    }
    let a = ann.basis_matrix();
    let mut stacked = Matrix::zeros(field, 0, ambient);
    for m in maps {
        stacked = stacked.vstack(&a.mul(m));
    }
    stacked.kernel()
}

/// The largest two-sided ideal contained in a subspace: `{x : R x R ⊆ s}`.
pub fn largest_ideal_in(a: &StructureAlgebra, s: &Subspace) -> IdealBasis {
    let n = a.dim();
    let identity = Matrix::identity(a.field(), n);
    let mut lefts = vec![identity.clone()];
    lefts.extend((0..n).map(|i| a.left_mult_matrix(&a.basis_vector(i))));
    // largest left ideal inside s
    let left = common_preimage(s, &lefts, n);
    let mut rights = vec![identity];
    rights.extend((0..n).map(|j| a.right_mult_matrix(&a.basis_vector(j))));
    IdealBasis {
        subspace: common_preimage(&left, &rights, n),
        side: IdealSide::TwoSided,
    }
}

/// `{x : x·s = 0}` and `{x : s·x = 0}`.
pub fn annihilators(a: &StructureAlgebra, s: &Subspace) -> (Subspace, Subspace) {
    let n = a.dim();
    let zero = Subspace::zero(a.field(), n);
    let rights: Vec<Matrix> = s.basis().iter().map(|v| a.right_mult_matrix(v)).collect();
    let lefts: Vec<Matrix> = s.basis().iter().map(|v| a.left_mult_matrix(v)).collect();
    (common_preimage(&zero, &rights, n), common_preimage(&zero, &lefts, n))
}

/// Whether every product of two elements of `s` vanishes.
pub fn is_square_zero(a: &StructureAlgebra, s: &Subspace) -> bool {
    s.basis()
        .iter()
        .all(|x| s.basis().iter().all(|y| a.mul(x, y).iter().all(Scalar::is_zero)))
}

#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: StructureAlgebra,
    /// `dim(quotient) × dim(a)` matrix of the canonical surjection.
    pub projection: Matrix,
}

/// `a / j`, written in the basis of standard vectors complementary to the
/// echelon pivots of `j`.
pub fn quotient(a: &StructureAlgebra, j: &IdealBasis) -> Result<Quotient> {
    if !is_closed(a, &j.subspace, IdealSide::TwoSided) {
        return Err(Error::NotAnIdeal(IdealSide::TwoSided.name().into()));
    }
    if j.subspace.contains_vector(a.unit()) {
        return Err(Error::NotUnital);
    }
    let free = j.subspace.free_indices();
    let m = free.len();
    let project = |v: &[Scalar]| -> Vec<Scalar> {
        let r = j.subspace.reduce(v);
        free.iter().map(|&i| r[i].clone()).collect()
    };
    let projection = Matrix::from_columns(
        a.field(),
        m,
        &(0..a.dim()).map(|i| project(&a.basis_vector(i))).collect::<Vec<_>>(),
    );
    let products: Vec<Vec<Vec<Scalar>>> = free
        .iter()
        .map(|&x| free.iter().map(|&y| project(&a.basis_product_vector(x, y))).collect())
        .collect();
    let labels = free.iter().map(|&i| a.labels()[i].clone()).collect();
    let algebra = StructureAlgebra::from_products(a.field(), Some(labels), &products, Some(project(a.unit())))?;
    Ok(Quotient { algebra, projection })
}

/// Checks that `p` (a `dim(b) × dim(a)` matrix) is a surjective unital
/// algebra homomorphism `a → b`. Its kernel is then a two-sided ideal and
/// `b ≅ a / ker p`.
pub fn is_surjective_hom(a: &StructureAlgebra, b: &StructureAlgebra, p: &Matrix) -> bool {
    if p.rows() != b.dim() || p.cols() != a.dim() || p.rank() != b.dim() {
        return false;
    }
    if p.mul_vec(a.unit()) != b.unit() {
        return false;
    }
    let images: Vec<Vec<Scalar>> = (0..a.dim()).map(|i| p.col(i)).collect();
    (0..a.dim())
        .all(|i| (0..a.dim()).all(|j| p.mul_vec(&a.basis_product_vector(i, j)) == b.mul(&images[i], &images[j])))
}
