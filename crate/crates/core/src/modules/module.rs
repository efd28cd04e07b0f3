use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{StructureAlgebra, ValidationReport, Violation};
use crate::error::{Error, Result};
use crate::exactmath::{FieldSpec, Matrix, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModuleSide {
    Left,
    Right,
}

impl ModuleSide {
    pub fn flip(self) -> Self {
        match self {
            ModuleSide::Left => ModuleSide::Right,
            ModuleSide::Right => ModuleSide::Left,
        }
    }
}

/// A finite-dimensional module given by one `m×m` operator per algebra
/// basis element, acting on column coordinates.
///
/// For a right module the operator of `a_i` is `v ↦ v·a_i`, so the
/// representation law reads `action(a_j)·action(a_i) = action(a_i a_j)`.
#[derive(Clone, Debug)]
pub struct RModule {
    algebra: Arc<StructureAlgebra>,
    side: ModuleSide,
    dim: usize,
    action: Vec<Matrix>,
}

impl RModule {
    pub fn new(algebra: Arc<StructureAlgebra>, side: ModuleSide, dim: usize, action: Vec<Matrix>) -> Result<Self> {
        if action.len() != algebra.dim() {
            return Err(Error::InvalidModule(format!(
                "{} action matrices for an algebra of dimension {}",
                action.len(),
                algebra.dim()
            )));
        }
        for (i, m) in action.iter().enumerate() {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::InvalidModule(format!("action of a_{i} is not {dim}×{dim}")));
            }
            if m.field() != algebra.field() {
                return Err(Error::FieldMismatch(algebra.field().to_string(), m.field().to_string()));
            }
        }
        Ok(RModule {
            algebra,
            side,
            dim,
            action,
        })
    }

    pub fn algebra(&self) -> &Arc<StructureAlgebra> {
        &self.algebra
    }

    pub fn field(&self) -> FieldSpec {
        self.algebra.field()
    }

    pub fn side(&self) -> ModuleSide {
        self.side
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self) -> &[Matrix] {
        &self.action
    }

    /// The operator of an arbitrary algebra element.
    pub fn operator(&self, r: &[Scalar]) -> Matrix {
        Matrix::linear_combination(self.field(), self.dim, self.dim, r, &self.action)
    }

    /// `r·x` for a left module, `x·r` for a right one.
    pub fn act(&self, r: &[Scalar], x: &[Scalar]) -> Vec<Scalar> {
        self.operator(r).mul_vec(x)
    }

    pub fn validate(&self) -> ValidationReport {
        let a = &self.algebra;
        let n = a.dim();
        let mut violations = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let composed = match self.side {
                    ModuleSide::Left => self.action[i].mul(&self.action[j]),
                    ModuleSide::Right => self.action[j].mul(&self.action[i]),
                };
                if composed != self.operator(&a.basis_product_vector(i, j)) {
                    violations.push(Violation::Representation { i, j });
                }
            }
        }
        if !self.operator(a.unit()).is_identity() {
            violations.push(Violation::UnitAction);
        }
        ValidationReport::from_violations(violations)
    }

    pub fn same_algebra(&self, other: &RModule) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra) || *self.algebra == *other.algebra
    }

    pub fn direct_sum(&self, other: &RModule) -> Result<RModule> {
        if !self.same_algebra(other) {
            return Err(Error::AlgebraMismatch);
        }
        if self.side != other.side {
            return Err(Error::SideMismatch);
        }
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| a.block_diag(b))
            .collect();
        RModule::new(self.algebra.clone(), self.side, self.dim + other.dim, action)
    }

    /// `U^k`.
    pub fn power(&self, k: usize) -> Result<RModule> {
        assert!(k >= 1);
        let mut out = self.clone();
        for _ in 1..k {
            out = out.direct_sum(self)?;
        }
        Ok(out)
    }

    /// The same operators viewed over the opposite algebra, side flipped.
    pub fn over_opposite(&self, opposite: Arc<StructureAlgebra>) -> Result<RModule> {
        if opposite.dim() != self.algebra.dim() {
            return Err(Error::AlgebraMismatch);
        }
        RModule::new(opposite, self.side.flip(), self.dim, self.action.clone())
    }
}

/// The algebra acting on itself by left (or right) multiplication.
pub fn regular_module(a: Arc<StructureAlgebra>, side: ModuleSide) -> RModule {
    let n = a.dim();
    let action = (0..n)
        .map(|i| {
            let e = a.basis_vector(i);
            match side {
                ModuleSide::Left => a.left_mult_matrix(&e),
                ModuleSide::Right => a.right_mult_matrix(&e),
            }
        })
        .collect();
    RModule::new(a, side, n, action).expect("regular action has the right shape")
}

pub fn validate_module(u: &RModule) -> ValidationReport {
    u.validate()
}
