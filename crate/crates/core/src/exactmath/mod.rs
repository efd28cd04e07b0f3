//! Exact scalars (ℚ and F_p) and dense linear algebra over them.
//!
//! Every elimination uses the same pivot rule (leftmost column, first
//! nonzero row) so results and recorded transforms are reproducible.

mod matrix;
mod scalar;
mod subspace;

pub(crate) use matrix::dot;
pub use matrix::{mat_kernel, mat_rank, solve_linear, Matrix};
pub use scalar::{format_vector, parse_vector, FieldSpec, Scalar};
pub use subspace::{subspace_ops, unit_vector, BasisChange, Coordinatizer, Subspace, SubspaceOp, SubspaceOpResult};

use rand::Rng;

/// A uniformly drawn element: a residue over F_p, an integer in
/// `[-bound, bound]` over ℚ.
pub fn random_scalar<R: Rng>(field: FieldSpec, rng: &mut R, bound: i64) -> Scalar {
    match field {
        FieldSpec::Rational => field.from_i64(rng.gen_range(-bound..=bound)),
        FieldSpec::Prime { p } => field.from_i64(rng.gen_range(0..p) as i64),
    }
}

/// Random invertible matrix, drawn by rejection.
pub fn random_invertible<R: Rng>(field: FieldSpec, n: usize, rng: &mut R) -> Matrix {
    loop {
        let m = Matrix::from_fn(field, n, n, |_, _| random_scalar(field, rng, 2));
        if m.rank() == n {
            return m;
        }
    }
}
