use super::table::StructureAlgebra;
use crate::error::{Error, Result};
use crate::exactmath::{Coordinatizer, FieldSpec, Matrix, Scalar, Subspace};

/// A subalgebra of `M_d(F)` with its structure constants and the matrices
/// realizing each basis element.
#[derive(Clone, Debug)]
pub struct GeneratedAlgebra {
    pub algebra: StructureAlgebra,
    pub embedding: Vec<Matrix>,
}

impl GeneratedAlgebra {
    /// The matrix of an algebra element given in coordinates.
    pub fn realize(&self, x: &[Scalar]) -> Matrix {
        let d = self.embedding[0].rows();
        Matrix::linear_combination(self.algebra.field(), d, d, x, &self.embedding)
    }
}

/// Unital subalgebra of `d×d` matrices generated by `gens`.
///
/// The basis is found breadth first: the identity, then words extended on
/// the right by generators, keeping each word that is new to the span.
/// Structure constants are read off in that basis.
pub fn construct_from_generators(field: FieldSpec, d: usize, gens: &[Matrix]) -> Result<GeneratedAlgebra> {
    for g in gens {
        if g.rows() != d || g.cols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: g.rows().max(g.cols()),
            });
        }
        if g.field() != field {
            return Err(Error::FieldMismatch(field.to_string(), g.field().to_string()));
        }
    }
    let mut basis = vec![Matrix::identity(field, d)];
    let mut span = Subspace::span(field, d * d, vec![basis[0].flatten().to_vec()])?;
    let mut next = 0;
    while next < basis.len() {
        let w = basis[next].clone();
        for g in gens {
            let p = w.mul(g);
            if !span.contains_vector(p.flatten()) {
                span = span.sum(&Subspace::span(field, d * d, vec![p.flatten().to_vec()])?)?;
                basis.push(p);
            }
        }
        next += 1;
    }
    let algebra = algebra_from_operators(field, &basis, |x, y| x.mul(y))?;
    Ok(GeneratedAlgebra {
        algebra,
        embedding: basis,
    })
}

/// Structure constants of the span of `ops`, which must be closed under
/// `product` and contain the identity. Basis order is `ops` order.
pub(crate) fn algebra_from_operators(
    field: FieldSpec,
    ops: &[Matrix],
    product: impl Fn(&Matrix, &Matrix) -> Matrix,
) -> Result<StructureAlgebra> {
    let (r, c) = (ops[0].rows(), ops[0].cols());
    let vecs: Vec<Vec<Scalar>> = ops.iter().map(|m| m.flatten().to_vec()).collect();
    let coords = Coordinatizer::new(field, r * c, &vecs)?;
    let not_closed = || Error::InvalidAlgebra("operator span is not closed under products".into());
    let mut products = Vec::with_capacity(ops.len());
    for x in ops {
        let mut row = Vec::with_capacity(ops.len());
        for y in ops {
            row.push(coords.coordinates(product(x, y).flatten()).ok_or_else(not_closed)?);
        }
        products.push(row);
    }
    let unit = coords
        .coordinates(Matrix::identity(field, r).flatten())
        .ok_or_else(|| Error::InvalidAlgebra("operator span does not contain the identity".into()))?;
    let labels = (0..ops.len()).map(|i| format!("g{i}")).collect();
    StructureAlgebra::from_products(field, Some(labels), &products, Some(unit))
}
