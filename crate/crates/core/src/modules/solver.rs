//! Linear solver for intertwining conditions `V·F = F·U`.

use crate::exactmath::{FieldSpec, Matrix, Scalar, Subspace};

/// All `rows × cols` matrices `F` with `v_op · F = F · u_op` for every
/// `(u_op, v_op)` in `pairs`, as a subspace of flattened (row-major)
/// matrices.
///
/// One sparse pair is solved on the full matrix space; the others are then
/// imposed on that parametrized kernel one at a time.
pub fn intertwiners(field: FieldSpec, rows: usize, cols: usize, pairs: &[(Matrix, Matrix)]) -> Subspace {
    let n = rows * cols;
    if pairs.is_empty() {
        return Subspace::full(field, n);
    }
    let seed = seed_pair(pairs);
    let mut basis = full_system_kernel(field, rows, cols, &pairs[seed].0, &pairs[seed].1);
    for (u, v) in pairs {
        if basis.is_empty() {
            break;
        }
        basis = restrict(field, rows, cols, &basis, u, v);
    }
    Subspace::span(field, n, basis.iter().map(|m| m.flatten().to_vec()).collect()).expect("flattened shape")
}

/// The pair with the fewest nonzero entries among those not acting as
/// scalars, which keeps the first full-size elimination sparse.
fn seed_pair(pairs: &[(Matrix, Matrix)]) -> usize {
    let weight = |(u, v): &(Matrix, Matrix)| {
        let nz = |m: &Matrix| m.flatten().iter().filter(|x| !x.is_zero()).count();
        (is_scalar(u) && is_scalar(v), nz(u) + nz(v))
    };
    (0..pairs.len()).min_by_key(|&l| weight(&pairs[l])).unwrap_or(0)
}

fn is_scalar(m: &Matrix) -> bool {
    let d = m.get(0, 0);
    (0..m.rows()).all(|r| {
        (0..m.cols()).all(|c| {
            if r == c {
                m.get(r, c) == d
            } else {
                m.get(r, c).is_zero()
            }
        })
    })
}

/// Kernel of `F ↦ V F − F U` on all of `M_{rows×cols}`.
fn full_system_kernel(field: FieldSpec, rows: usize, cols: usize, u: &Matrix, v: &Matrix) -> Vec<Matrix> {
    let n = rows * cols;
    let mut sys = Matrix::zeros(field, n, n);
    // unknown F[s][t] has index s*cols + t; equation (r, c) has index r*cols + c
    for s in 0..rows {
        for t in 0..cols {
            let var = s * cols + t;
            for r in 0..rows {
                let x = v.get(r, s);
                if !x.is_zero() {
                    let eq = r * cols + t;
                    sys.set(eq, var, sys.get(eq, var) + x);
                }
            }
            for c in 0..cols {
                let x = u.get(t, c);
                if !x.is_zero() {
                    let eq = s * cols + c;
                    sys.set(eq, var, sys.get(eq, var) - x);
                }
            }
        }
    }
    sys.kernel()
        .basis()
        .iter()
        .map(|k| Matrix::unflatten(field, rows, cols, k))
        .collect()
}

/// Restricts the span of `basis` to the solutions of `V F = F U`.
fn restrict(field: FieldSpec, rows: usize, cols: usize, basis: &[Matrix], u: &Matrix, v: &Matrix) -> Vec<Matrix> {
    let columns: Vec<Vec<Scalar>> = basis
        .iter()
        .map(|k| v.mul(k).sub(&k.mul(u)).flatten().to_vec())
        .collect();
    if columns.iter().all(|c| c.iter().all(Scalar::is_zero)) {
        return basis.to_vec();
    }
    let sys = Matrix::from_columns(field, rows * cols, &columns);
    sys.kernel()
        .basis()
        .iter()
        .map(|coef| Matrix::linear_combination(field, rows, cols, coef, basis))
        .collect()
}
