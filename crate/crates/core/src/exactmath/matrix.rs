use std::fmt;

use super::scalar::{FieldSpec, Scalar};
use super::subspace::Subspace;
use crate::error::{Error, Result};

/// A dense row-major matrix over a single exact field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_fn(field: FieldSpec, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let x = f(r, c);
                debug_assert_eq!(x.field(), field);
                data.push(x);
            }
        }
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    expected: c,
                    found: row.len(),
                });
            }
            for x in row {
                if x.field() != field {
                    return Err(Error::FieldMismatch(field.to_string(), x.field().to_string()));
                }
                data.push(x);
            }
        }
        Ok(Matrix {
            field,
            rows: r,
            cols: c,
            data,
        })
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let c = rows.first().map_or(0, |r| r.len());
        Self::from_fn(field, rows.len(), c, |i, j| field.from_i64(rows[i][j]))
    }

    /// Column matrix from a vector.
    pub fn column(field: FieldSpec, v: &[Scalar]) -> Self {
        Matrix {
            field,
            rows: v.len(),
            cols: 1,
            data: v.to_vec(),
        }
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(field: FieldSpec, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        Self::from_fn(field, rows, columns.len(), |r, c| columns[c][r].clone())
    }

    /// Inverse of [`Matrix::flatten`].
    pub fn unflatten(field: FieldSpec, rows: usize, cols: usize, v: &[Scalar]) -> Self {
        assert_eq!(v.len(), rows * cols);
        Matrix {
            field,
            rows,
            cols,
            data: v.to_vec(),
        }
    }

    fn assemble(field: FieldSpec, cols: usize, rows: Vec<Vec<Scalar>>) -> Matrix {
        let r = rows.len();
        Matrix {
            field,
            rows: r,
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Scalar) {
        assert_eq!(x.field(), self.field, "mixed fields");
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Row-major entries, the vectorization used for operator subspaces.
    pub fn flatten(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    if r == c {
                        self.get(r, c).is_one()
                    } else {
                        self.get(r, c).is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Matrix {
        Self::from_fn(self.field, self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        assert_eq!(self.field, rhs.field, "mixed fields");
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * rhs.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "matrix sum shape mismatch"
        );
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "matrix difference shape mismatch"
        );
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    /// `Σ coeffs[i] · mats[i]`; all matrices share one shape `rows × cols`.
    pub fn linear_combination(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        coeffs: &[Scalar],
        mats: &[Matrix],
    ) -> Matrix {
        let mut out = Matrix::zeros(field, rows, cols);
        for (c, m) in coeffs.iter().zip(mats) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.data.iter_mut().zip(&m.data) {
                if !x.is_zero() {
                    *o = &*o + &(c * x);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows).map(|r| dot(self.field, self.row(r), v)).collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.rows, v.len(), "vector-matrix shape mismatch");
        let mut out = vec![self.field.zero(); self.cols];
        for (r, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (c, o) in out.iter_mut().enumerate() {
                let a = self.get(r, c);
                if !a.is_zero() {
                    *o = &*o + &(x * a);
                }
            }
        }
        out
    }

    pub fn hstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.rows, rhs.rows);
        Self::from_fn(self.field, self.rows, self.cols + rhs.cols, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                rhs.get(r, c - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&rhs.data);
        Matrix {
            field: self.field,
            rows: self.rows + rhs.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn block_diag(&self, rhs: &Matrix) -> Matrix {
        Self::from_fn(self.field, self.rows + rhs.rows, self.cols + rhs.cols, |r, c| {
            match (r < self.rows, c < self.cols) {
                (true, true) => self.get(r, c).clone(),
                (false, false) => rhs.get(r - self.rows, c - self.cols).clone(),
                _ => self.field.zero(),
            }
        })
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        let (r0, c0) = (rows.start, cols.start);
        Self::from_fn(self.field, rows.len(), cols.len(), |r, c| {
            self.get(r0 + r, c0 + c).clone()
        })
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut rows = self.to_rows();
        let pivots = rref_in_place(&mut rows, self.cols, None);
        (Matrix::assemble(self.field, self.cols, rows), pivots)
    }

    /// Reduced row echelon form `R` together with an invertible `T` such
    /// that `T · self = R`.
    pub fn rref_with_transform(&self) -> (Matrix, Matrix, Vec<usize>) {
        let mut rows = self.to_rows();
        let mut t = Matrix::identity(self.field, self.rows).to_rows();
        let pivots = rref_in_place(&mut rows, self.cols, Some(&mut t));
        (
            Matrix::assemble(self.field, self.cols, rows),
            Matrix::assemble(self.field, self.rows, t),
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.to_rows();
        rref_in_place(&mut rows, self.cols, None).len()
    }

    /// Right null space `{x : self · x = 0}`.
    pub fn kernel(&self) -> Subspace {
        let mut rows = self.to_rows();
        let pivots = rref_in_place(&mut rows, self.cols, None);
        let mut basis = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -&rows[r][free];
            }
            basis.push(v);
        }
        Subspace::span(self.field, self.cols, basis).expect("kernel vectors have ambient length")
    }

    pub fn column_space(&self) -> Subspace {
        let cols: Vec<_> = (0..self.cols).map(|c| self.col(c)).collect();
        Subspace::span(self.field, self.rows, cols).expect("columns have ambient length")
    }

    pub fn row_space(&self) -> Subspace {
        Subspace::span(self.field, self.cols, self.to_rows()).expect("rows have ambient length")
    }

    /// Some `x` with `self · x = b`, or `None`. The returned solution is the
    /// one with every free variable set to zero.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: b.len(),
            });
        }
        let aug = self.hstack(&Matrix::column(self.field, b));
        let mut rows = aug.to_rows();
        let pivots = rref_in_place(&mut rows, self.cols + 1, None);
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = rows[r][self.cols].clone();
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let (r, t, pivots) = self.rref_with_transform();
        if pivots.len() != self.rows {
            return None;
        }
        debug_assert!(r.is_identity());
        Some(t)
    }
}

pub(crate) fn dot(field: FieldSpec, a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = field.zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = &acc + &(x * y);
        }
    }
    acc
}

/// Gauss-Jordan elimination with the fixed pivot rule: columns left to right,
/// first row with a nonzero entry at or below the current row. Row
/// operations are mirrored into `track` when given.
pub(crate) fn rref_in_place(
    rows: &mut [Vec<Scalar>],
    ncols: usize,
    mut track: Option<&mut Vec<Vec<Scalar>>>,
) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        if let Some(t) = track.as_deref_mut() {
            t.swap(r, p);
        }
        let inv = rows[r][c].inv().expect("pivot is nonzero");
        if !inv.is_one() {
            for x in rows[r].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
            if let Some(t) = track.as_deref_mut() {
                for x in t[r].iter_mut() {
                    if !x.is_zero() {
                        *x = &*x * &inv;
                    }
                }
            }
        }
        let pivot_row = rows[r].clone();
        let pivot_track = track.as_deref().map(|t| t[r].clone());
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let factor = rows[i][c].clone();
            for (x, y) in rows[i].iter_mut().zip(&pivot_row).skip(c) {
                if !y.is_zero() {
                    *x = x.sub_mul(&factor, y);
                }
            }
            if let (Some(t), Some(pt)) = (track.as_deref_mut(), pivot_track.as_ref()) {
                for (x, y) in t[i].iter_mut().zip(pt) {
                    if !y.is_zero() {
                        *x = x.sub_mul(&factor, y);
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Exact rank over the matrix's field.
pub fn mat_rank(m: &Matrix) -> usize {
    m.rank()
}

pub fn mat_kernel(m: &Matrix) -> Subspace {
    m.kernel()
}

/// `Some(x)` with `a · x = b`, `None` when `b` is outside the column space.
pub fn solve_linear(a: &Matrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    a.solve(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rational
    }

    #[test]
    fn rank_of_zero_identity_and_antidiagonal() {
        assert_eq!(mat_rank(&Matrix::zeros(q(), 3, 3)), 0);
        assert_eq!(mat_rank(&Matrix::identity(q(), 4)), 4);
        // ones where i + j = 5 with 1-based indices
        let hankel = Matrix::from_fn(q(), 4, 4, |i, j| q().from_i64(((i + 1) + (j + 1) == 5) as i64));
        assert_eq!(mat_rank(&hankel), 4);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(mat_kernel(&Matrix::identity(q(), 3)).dim(), 0);
        assert_eq!(mat_kernel(&Matrix::zeros(q(), 2, 3)).dim(), 3);
        let k = mat_kernel(&Matrix::from_i64(q(), &[&[1, 1], &[0, 0]]));
        let expected = Subspace::span(q(), 2, vec![vec![q().from_i64(1), q().from_i64(-1)]]).unwrap();
        assert_eq!(k, expected);
    }

    #[test]
    fn solve_examples() {
        let b = vec![q().from_i64(3), q().from_i64(-2)];
        assert_eq!(solve_linear(&Matrix::identity(q(), 2), &b).unwrap(), Some(b.clone()));
        assert_eq!(solve_linear(&Matrix::zeros(q(), 2, 2), &b).unwrap(), None);
        let a = Matrix::from_i64(q(), &[&[2, 0], &[0, 3]]);
        let ones = vec![q().one(), q().one()];
        let x = solve_linear(&a, &ones).unwrap().unwrap();
        assert_eq!(x, vec![q().from_fraction(1, 2), q().from_fraction(1, 3)]);
        assert!(matches!(
            solve_linear(&a, &[q().one()]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn inverse_and_transform() {
        let f = FieldSpec::prime(7).unwrap();
        let a = Matrix::from_i64(f, &[&[1, 2, 0], &[3, 4, 1], &[0, 1, 5]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        let singular = Matrix::from_i64(q(), &[&[1, 2], &[2, 4]]);
        assert!(singular.inverse().is_none());
        let (r, t, _) = singular.rref_with_transform();
        assert_eq!(t.mul(&singular), r);
    }
}
