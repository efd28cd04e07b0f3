use super::matrix::{rref_in_place, Matrix};
use super::scalar::{FieldSpec, Scalar};
use crate::error::{Error, Result};

/// A linear subspace of `F^ambient` stored by its reduced row echelon basis.
///
/// The representation is canonical, so derived equality is subspace
/// equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: FieldSpec,
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: FieldSpec, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: FieldSpec, ambient: usize) -> Self {
        let id = Matrix::identity(field, ambient);
        Subspace {
            field,
            ambient,
            basis: id.to_rows(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span(field: FieldSpec, ambient: usize, vectors: Vec<Vec<Scalar>>) -> Result<Self> {
        for v in &vectors {
            if v.len() != ambient {
                return Err(Error::DimensionMismatch {
                    expected: ambient,
                    found: v.len(),
                });
            }
            if let Some(x) = v.iter().find(|x| x.field() != field) {
                return Err(Error::FieldMismatch(field.to_string(), x.field().to_string()));
            }
        }
        let mut rows = vectors;
        let pivots = rref_in_place(&mut rows, ambient, None);
        rows.truncate(pivots.len());
        Ok(Subspace {
            field,
            ambient,
            basis: rows,
            pivots,
        })
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate(field: FieldSpec, ambient: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let vectors = indices.into_iter().map(|i| unit_vector(field, ambient, i)).collect();
        Self::span(field, ambient, vectors).expect("indices within ambient space")
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn codim(&self) -> usize {
        self.ambient - self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates not used as pivots; the corresponding standard basis
    /// vectors span a complement.
    pub fn free_indices(&self) -> Vec<usize> {
        let mut free = Vec::with_capacity(self.codim());
        let mut p = self.pivots.iter().peekable();
        for i in 0..self.ambient {
            if p.peek() == Some(&&i) {
                p.next();
            } else {
                free.push(i);
            }
        }
        free
    }

    /// `v` minus its component along the pivots: zero exactly when `v`
    /// lies in the subspace. The entries at free indices are the
    /// coordinates of `v` in the quotient `F^n / self`.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ambient, "vector length differs from ambient dimension");
        let mut r = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            for (x, y) in r.iter_mut().zip(b).skip(p) {
                if !y.is_zero() {
                    *x = x.sub_mul(&f, y);
                }
            }
        }
        r
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Coordinates with respect to the echelon basis, if `v` is in the span.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains_vector(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Subspace::span(self.field, self.ambient, vs)
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        // (V1 ∩ V2) = (V1^⊥ + V2^⊥)^⊥ under the standard pairing
        let perp = self.annihilator().sum(&other.annihilator())?;
        Ok(perp.annihilator())
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(other.basis.iter().all(|v| self.contains_vector(v)))
    }

    pub fn equals(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self == other)
    }

    /// `{x : <x, v> = 0 for all v in self}` under the standard pairing.
    pub fn annihilator(&self) -> Subspace {
        if self.basis.is_empty() {
            return Subspace::full(self.field, self.ambient);
        }
        Matrix::from_rows(self.field, self.basis.clone())
            .expect("basis rows share a length")
            .kernel()
    }

    /// Image under a linear map given as a matrix acting on column vectors.
    pub fn image(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.cols(), self.ambient);
        let vs = self.basis.iter().map(|v| m.mul_vec(v)).collect();
        Subspace::span(self.field, m.rows(), vs).expect("image vectors have target length")
    }

    /// Preimage `{x : m·x ∈ self}` of a subspace of the target of `m`.
    pub fn preimage(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.rows(), self.ambient);
        // x ↦ m·x lands in self iff every annihilator row kills it
        let ann = self.annihilator();
        if ann.is_zero() {
            return Subspace::full(self.field, m.cols());
        }
        let a = Matrix::from_rows(self.field, ann.basis.clone()).expect("rows share a length");
        a.mul(m).kernel()
    }

    /// Matrix with the basis vectors as rows.
    pub fn basis_matrix(&self) -> Matrix {
        if self.basis.is_empty() {
            return Matrix::zeros(self.field, 0, self.ambient);
        }
        Matrix::from_rows(self.field, self.basis.clone()).expect("rows share a length")
    }
}

/// Coordinates relative to an arbitrary list of linearly independent
/// vectors (not necessarily in echelon form).
#[derive(Clone, Debug)]
pub struct Coordinatizer {
    span: Subspace,
    // maps echelon coordinates to coordinates in the given list
    to_list: Matrix,
}

impl Coordinatizer {
    /// Fails with `Singular` when the vectors are dependent.
    pub fn new(field: FieldSpec, ambient: usize, vectors: &[Vec<Scalar>]) -> Result<Self> {
        let span = Subspace::span(field, ambient, vectors.to_vec())?;
        if span.dim() != vectors.len() {
            return Err(Error::Singular);
        }
        let m = vectors.len();
        // c = Cᵀ x where C[i][r] = vectors[i][pivot_r]
        let ct = Matrix::from_fn(field, m, m, |r, i| vectors[i][span.pivots[r]].clone());
        let to_list = ct.inverse().ok_or(Error::Singular)?;
        Ok(Coordinatizer { span, to_list })
    }

    pub fn span(&self) -> &Subspace {
        &self.span
    }

    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        self.span.coordinates(v).map(|c| self.to_list.mul_vec(&c))
    }
}

pub fn unit_vector(field: FieldSpec, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubspaceOp {
    Sum,
    Intersect,
    Contains,
    Equal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubspaceOpResult {
    Subspace(Subspace),
    Bool(bool),
}

pub fn subspace_ops(op: SubspaceOp, v1: &Subspace, v2: &Subspace) -> Result<SubspaceOpResult> {
    Ok(match op {
        SubspaceOp::Sum => SubspaceOpResult::Subspace(v1.sum(v2)?),
        SubspaceOp::Intersect => SubspaceOpResult::Subspace(v1.intersect(v2)?),
        SubspaceOp::Contains => SubspaceOpResult::Bool(v1.contains(v2)?),
        SubspaceOp::Equal => SubspaceOpResult::Bool(v1.equals(v2)?),
    })
}

/// An invertible change of coordinates. The columns of `forward` are the new
/// basis vectors written in old coordinates, so `old = forward · new` and
/// `new = inverse · old`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisChange {
    forward: Matrix,
    inverse: Matrix,
}

impl BasisChange {
    pub fn new(forward: Matrix) -> Result<Self> {
        let inverse = forward.inverse().ok_or(Error::Singular)?;
        Ok(BasisChange { forward, inverse })
    }

    pub fn from_pair(forward: Matrix, inverse: Matrix) -> Result<Self> {
        if !forward.is_square() || forward.rows() != inverse.cols() || !forward.mul(&inverse).is_identity() {
            return Err(Error::Singular);
        }
        Ok(BasisChange { forward, inverse })
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        BasisChange {
            forward: Matrix::identity(field, n),
            inverse: Matrix::identity(field, n),
        }
    }

    pub fn forward(&self) -> &Matrix {
        &self.forward
    }

    pub fn inverse(&self) -> &Matrix {
        &self.inverse
    }

    pub fn dim(&self) -> usize {
        self.forward.rows()
    }

    /// New coordinates of a vector given in old coordinates.
    pub fn to_new(&self, old: &[Scalar]) -> Vec<Scalar> {
        self.inverse.mul_vec(old)
    }

    pub fn to_old(&self, new: &[Scalar]) -> Vec<Scalar> {
        self.forward.mul_vec(new)
    }

    /// `self` followed by `next`: the basis produced by `next`, expressed
    /// relative to the basis produced by `self`.
    pub fn then(&self, next: &BasisChange) -> BasisChange {
        BasisChange {
            forward: self.forward.mul(&next.forward),
            inverse: next.inverse.mul(&self.inverse),
        }
    }

    pub fn invert(&self) -> BasisChange {
        BasisChange {
            forward: self.inverse.clone(),
            inverse: self.forward.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rational
    }

    fn e(i: usize) -> Vec<Scalar> {
        unit_vector(q(), 3, i)
    }

    #[test]
    fn lattice_examples() {
        let a = Subspace::span(q(), 3, vec![e(0), e(1)]).unwrap();
        let b = Subspace::span(q(), 3, vec![e(1), e(2)]).unwrap();
        assert_eq!(a.intersect(&b).unwrap(), Subspace::span(q(), 3, vec![e(1)]).unwrap());
        let s = Subspace::span(q(), 3, vec![e(0)])
            .unwrap()
            .sum(&Subspace::span(q(), 3, vec![e(1)]).unwrap())
            .unwrap();
        assert_eq!(s, a);
        assert!(Subspace::full(q(), 3).contains(&b).unwrap());
        assert_eq!(
            subspace_ops(SubspaceOp::Equal, &a, &b).unwrap(),
            SubspaceOpResult::Bool(false)
        );
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let a = Subspace::zero(q(), 2);
        let b = Subspace::zero(q(), 3);
        assert_eq!(a.sum(&b), Err(Error::AmbientMismatch(2, 3)));
        assert!(matches!(
            subspace_ops(SubspaceOp::Contains, &a, &b),
            Err(Error::AmbientMismatch(..))
        ));
    }

    #[test]
    fn canonical_form_ignores_spanning_set() {
        let x = vec![q().from_i64(1), q().from_i64(2), q().from_i64(3)];
        let y = vec![q().from_i64(0), q().from_i64(1), q().from_i64(1)];
        let sum: Vec<_> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        let s1 = Subspace::span(q(), 3, vec![x.clone(), y.clone()]).unwrap();
        let s2 = Subspace::span(q(), 3, vec![sum, y.clone(), x]).unwrap();
        assert_eq!(s1, s2);
    }

    #[test]
    fn preimage_and_image() {
        // projection onto the first coordinate
        let p = Matrix::from_i64(q(), &[&[1, 0, 0]]);
        let pre = Subspace::zero(q(), 1).preimage(&p);
        assert_eq!(pre, Subspace::span(q(), 3, vec![e(1), e(2)]).unwrap());
        assert!(Subspace::full(q(), 3).image(&p).is_full());
    }

    #[test]
    fn basis_change_round_trip() {
        let f = Matrix::from_i64(q(), &[&[1, 1], &[0, 2]]);
        let bc = BasisChange::new(f).unwrap();
        let v = vec![q().from_i64(3), q().from_i64(4)];
        assert_eq!(bc.to_old(&bc.to_new(&v)), v);
        assert!(BasisChange::new(Matrix::zeros(q(), 2, 2)).is_err());
        let bad = BasisChange::from_pair(Matrix::identity(q(), 2), Matrix::zeros(q(), 2, 2));
        assert_eq!(bad, Err(Error::Singular));
    }
}
