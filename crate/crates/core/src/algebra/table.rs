use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{unit_vector, BasisChange, FieldSpec, Matrix, Scalar};

/// One nonzero structure constant: `a_i · a_j` has coefficient `value` on `a_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StructureConstant {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: Scalar,
}

/// A finite-dimensional unital associative algebra in a fixed basis
/// `a_0, …, a_{n-1}`, given by `a_i · a_j = Σ_k μ_{i,j,k} a_k`.
///
/// Construction checks indices, fields and duplicates; associativity and
/// the unit laws are reported by [`StructureAlgebra::validate`].
#[derive(Clone, Debug)]
pub struct StructureAlgebra {
    field: FieldSpec,
    dim: usize,
    labels: Vec<String>,
    mu: Vec<StructureConstant>,
    unit: Vec<Scalar>,
    // products of basis pairs, indexed by i * dim + j
    table: Vec<Vec<(usize, Scalar)>>,
}

impl PartialEq for StructureAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.dim == other.dim && self.mu == other.mu && self.unit == other.unit
    }
}

impl Eq for StructureAlgebra {}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// `((a_i a_j) a_k)` and `(a_i (a_j a_k))` differ in coordinate `l`.
    Associativity {
        i: usize,
        j: usize,
        k: usize,
        l: usize,
    },
    LeftUnit {
        j: usize,
    },
    RightUnit {
        j: usize,
    },
    /// `action(a_i)·action(a_j)` differs from the action of `a_i a_j`.
    Representation {
        i: usize,
        j: usize,
    },
    UnitAction,
    Shape {
        detail: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Associativity { i, j, k, l } => {
                write!(f, "associativity fails at (i,j,k,l) = ({i},{j},{k},{l})")
            }
            Violation::LeftUnit { j } => write!(f, "unit·a_{j} != a_{j}"),
            Violation::RightUnit { j } => write!(f, "a_{j}·unit != a_{j}"),
            Violation::Representation { i, j } => {
                write!(f, "action(a_{i}) and action(a_{j}) do not compose like a_{i}·a_{j}")
            }
            Violation::UnitAction => write!(f, "unit does not act as the identity"),
            Violation::Shape { detail } => write!(f, "{detail}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub(crate) fn from_violations(violations: Vec<Violation>) -> Self {
        ValidationReport {
            valid: violations.is_empty(),
            violations,
        }
    }
}

impl StructureAlgebra {
    /// Builds a table from `(i, j, k, μ)` entries. Zero entries are dropped.
    /// When `unit` is `None` it is solved for; `Error::NoUnit` if none exists.
    pub fn new(
        field: FieldSpec,
        dim: usize,
        labels: Option<Vec<String>>,
        entries: Vec<(usize, usize, usize, Scalar)>,
        unit: Option<Vec<Scalar>>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidAlgebra("dimension must be at least 1".into()));
        }
        let labels = match labels {
            Some(l) if l.len() != dim => {
                return Err(Error::InvalidAlgebra(format!("{} labels for dimension {dim}", l.len())))
            }
            Some(l) => l,
            None => default_labels(dim),
        };
        let mut mu = Vec::with_capacity(entries.len());
        for (i, j, k, value) in entries {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::InvalidAlgebra(format!(
                    "index ({i},{j},{k}) out of range for dimension {dim}"
                )));
            }
            if value.field() != field {
                return Err(Error::FieldMismatch(field.to_string(), value.field().to_string()));
            }
            mu.push(StructureConstant { i, j, k, value });
        }
        mu.sort_by_key(|c| (c.i, c.j, c.k));
        if let Some(w) = mu
            .windows(2)
            .find(|w| (w[0].i, w[0].j, w[0].k) == (w[1].i, w[1].j, w[1].k))
        {
            return Err(Error::InvalidAlgebra(format!(
                "duplicate structure constant ({},{},{})",
                w[0].i, w[0].j, w[0].k
            )));
        }
        mu.retain(|c| !c.value.is_zero());
        let mut table = vec![Vec::new(); dim * dim];
        for c in &mu {
            table[c.i * dim + c.j].push((c.k, c.value.clone()));
        }
        let mut alg = StructureAlgebra {
            field,
            dim,
            labels,
            mu,
            unit: vec![field.zero(); dim],
            table,
        };
        alg.unit = match unit {
            Some(u) => {
                if u.len() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        found: u.len(),
                    });
                }
                if u.iter().any(|x| x.field() != field) {
                    return Err(Error::FieldMismatch(field.to_string(), "unit".into()));
                }
                u
            }
            None => alg.solve_unit()?,
        };
        Ok(alg)
    }

    /// Builds the algebra from the full product table `products[i][j] = a_i·a_j`.
    pub fn from_products(
        field: FieldSpec,
        labels: Option<Vec<String>>,
        products: &[Vec<Vec<Scalar>>],
        unit: Option<Vec<Scalar>>,
    ) -> Result<Self> {
        let dim = products.len();
        let mut entries = Vec::new();
        for (i, row) in products.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                for (k, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        entries.push((i, j, k, x.clone()));
                    }
                }
            }
        }
        Self::new(field, dim, labels, entries, unit)
    }

    fn solve_unit(&self) -> Result<Vec<Scalar>> {
        let n = self.dim;
        // unknown u: Σ_i u_i μ_{i,j,k} = δ_{jk} and Σ_i u_i μ_{j,i,k} = δ_{jk}
        let mut a = Matrix::zeros(self.field, 2 * n * n, n);
        let mut b = vec![self.field.zero(); 2 * n * n];
        for c in &self.mu {
            let left_row = c.j * n + c.k;
            a.set(left_row, c.i, a.get(left_row, c.i) + &c.value);
            let right_row = n * n + c.i * n + c.k;
            a.set(right_row, c.j, a.get(right_row, c.j) + &c.value);
        }
        for j in 0..n {
            b[j * n + j] = self.field.one();
            b[n * n + j * n + j] = self.field.one();
        }
        a.solve(&b)?.ok_or(Error::NoUnit)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim {
            return Err(Error::InvalidAlgebra("label count differs from dimension".into()));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn structure_constants(&self) -> &[StructureConstant] {
        &self.mu
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn zero_vector(&self) -> Vec<Scalar> {
        vec![self.field.zero(); self.dim]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        unit_vector(self.field, self.dim, i)
    }

    /// Nonzero terms of `a_i · a_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i * self.dim + j]
    }

    pub fn basis_product_vector(&self, i: usize, j: usize) -> Vec<Scalar> {
        let mut v = self.zero_vector();
        for (k, c) in self.basis_product(i, j) {
            v[*k] = c.clone();
        }
        v
    }

    fn check_len(&self, v: &[Scalar]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        Ok(())
    }

    /// Bilinear extension of the table.
    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.mul(x, y))
    }

    pub(crate) fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.zero_vector();
        for c in &self.mu {
            let (xi, yj) = (&x[c.i], &y[c.j]);
            if xi.is_zero() || yj.is_zero() {
                continue;
            }
            out[c.k] = &out[c.k] + &(&(xi * yj) * &c.value);
        }
        out
    }

    /// Matrix of `y ↦ x·y` on column coordinates.
    pub fn left_mult_matrix(&self, x: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.dim, self.dim);
        for c in &self.mu {
            if x[c.i].is_zero() {
                continue;
            }
            let v = m.get(c.k, c.j) + &(&x[c.i] * &c.value);
            m.set(c.k, c.j, v);
        }
        m
    }

    /// Matrix of `y ↦ y·x` on column coordinates.
    pub fn right_mult_matrix(&self, x: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.dim, self.dim);
        for c in &self.mu {
            if x[c.j].is_zero() {
                continue;
            }
            let v = m.get(c.k, c.i) + &(&x[c.j] * &c.value);
            m.set(c.k, c.i, v);
        }
        m
    }

    /// Lists every failing associativity coordinate and unit law.
    pub fn validate(&self) -> ValidationReport {
        let n = self.dim;
        let mut violations = Vec::new();
        let mut lhs = vec![self.field.zero(); n];
        let mut rhs = vec![self.field.zero(); n];
        for i in 0..n {
            for j in 0..n {
                let ij = self.basis_product(i, j);
                for k in 0..n {
                    lhs.iter_mut().for_each(|x| *x = self.field.zero());
                    rhs.iter_mut().for_each(|x| *x = self.field.zero());
                    // (a_i a_j) a_k
                    for (m, c) in ij {
                        for (l, d) in self.basis_product(*m, k) {
                            lhs[*l] = &lhs[*l] + &(c * d);
                        }
                    }
                    // a_i (a_j a_k)
                    for (m, c) in self.basis_product(j, k) {
                        for (l, d) in self.basis_product(i, *m) {
                            rhs[*l] = &rhs[*l] + &(c * d);
                        }
                    }
                    for l in 0..n {
                        if lhs[l] != rhs[l] {
                            violations.push(Violation::Associativity { i, j, k, l });
                        }
                    }
                }
            }
        }
        for j in 0..n {
            let e = self.basis_vector(j);
            if self.mul(&self.unit, &e) != e {
                violations.push(Violation::LeftUnit { j });
            }
            if self.mul(&e, &self.unit) != e {
                violations.push(Violation::RightUnit { j });
            }
        }
        ValidationReport::from_violations(violations)
    }

    pub fn is_valid(&self) -> bool {
        self.validate().valid
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    /// The opposite algebra: same basis, `μ^op_{i,j,k} = μ_{j,i,k}`.
    pub fn opposite(&self) -> StructureAlgebra {
        let entries = self.mu.iter().map(|c| (c.j, c.i, c.k, c.value.clone())).collect();
        StructureAlgebra::new(
            self.field,
            self.dim,
            Some(self.labels.clone()),
            entries,
            Some(self.unit.clone()),
        )
        .expect("opposite of a well-formed table is well-formed")
    }

    /// The same algebra written in the basis whose vectors are the columns of
    /// `change.forward()`.
    pub fn change_basis(&self, change: &BasisChange) -> Result<StructureAlgebra> {
        let n = self.dim;
        if change.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: change.dim(),
            });
        }
        let new_basis: Vec<Vec<Scalar>> = (0..n).map(|i| change.forward().col(i)).collect();
        let mut products = Vec::with_capacity(n);
        for x in &new_basis {
            let row = new_basis.iter().map(|y| change.to_new(&self.mul(x, y))).collect();
            products.push(row);
        }
        let labels = (0..n).map(|i| format!("b{i}")).collect();
        StructureAlgebra::from_products(self.field, Some(labels), &products, Some(change.to_new(&self.unit)))
    }

    /// Blockwise product algebra `self × other`, basis of `self` first.
    pub fn direct_sum(&self, other: &StructureAlgebra) -> Result<StructureAlgebra> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        let n = self.dim;
        let mut entries: Vec<_> = self.mu.iter().map(|c| (c.i, c.j, c.k, c.value.clone())).collect();
        entries.extend(other.mu.iter().map(|c| (c.i + n, c.j + n, c.k + n, c.value.clone())));
        let mut unit = self.unit.clone();
        unit.extend(other.unit.iter().cloned());
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        StructureAlgebra::new(self.field, n + other.dim, Some(labels), entries, Some(unit))
    }
}

pub(crate) fn default_labels(dim: usize) -> Vec<String> {
    (0..dim).map(|i| format!("a{i}")).collect()
}

/// Free-function form of [`StructureAlgebra::validate`].
pub fn validate(a: &StructureAlgebra) -> ValidationReport {
    a.validate()
}

pub fn multiply(a: &StructureAlgebra, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
    a.multiply(x, y)
}
