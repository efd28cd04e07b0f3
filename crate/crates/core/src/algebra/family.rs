use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::ideal::is_surjective_hom;
use super::table::StructureAlgebra;
use crate::error::{Error, Result};
use crate::exactmath::{FieldSpec, Matrix};

/// The generating rule of a tower `A_{N_1} ← A_{N_2} ← …` of quotients.
pub trait TowerRule: fmt::Debug + Send + Sync {
    fn field(&self) -> FieldSpec;

    fn admissible(&self, level: usize) -> bool;

    /// The level algebra; callers check admissibility first.
    fn build(&self, level: usize) -> Result<StructureAlgebra>;

    /// The canonical surjection from level `from` onto level `to < from`
    /// (built as `big` and `small`), as a `dim(to) × dim(from)` matrix.
    /// Defaults to dropping the tail of the basis.
    fn projection(&self, _from: usize, _to: usize, big: &StructureAlgebra, small: &StructureAlgebra) -> Matrix {
        let (from, to) = (big, small);
        Matrix::from_fn(from.field(), to.dim(), from.dim(), |r, c| {
            if r == c {
                from.field().one()
            } else {
                from.field().zero()
            }
        })
    }
}

/// A named, parameterized tower of finite-dimensional algebras standing in
/// for a countable-dimensional one.
#[derive(Clone, Debug)]
pub struct TruncationFamily {
    name: String,
    params: BTreeMap<String, serde_json::Value>,
    rule: Arc<dyn TowerRule>,
    /// Restrict levels to powers of two.
    pow2_only: bool,
}

impl TruncationFamily {
    pub fn new(name: impl Into<String>, params: BTreeMap<String, serde_json::Value>, rule: Arc<dyn TowerRule>) -> Self {
        TruncationFamily {
            name: name.into(),
            params,
            rule,
            pow2_only: false,
        }
    }

    pub fn restrict_to_powers_of_two(mut self) -> Self {
        self.pow2_only = true;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn params(&self) -> &BTreeMap<String, serde_json::Value> {
        &self.params
    }

    pub fn field(&self) -> FieldSpec {
        self.rule.field()
    }

    pub fn admissible(&self, level: usize) -> bool {
        (!self.pow2_only || level.is_power_of_two()) && self.rule.admissible(level)
    }

    fn bad_level(&self, level: usize) -> Error {
        Error::BadLevel {
            family: self.name.clone(),
            level,
        }
    }

    /// The level algebra without any coherence check.
    pub fn level(&self, level: usize) -> Result<StructureAlgebra> {
        if !self.admissible(level) {
            return Err(self.bad_level(level));
        }
        self.rule.build(level)
    }

    /// Projection from level `from` onto level `to`.
    pub fn projection(&self, from: usize, to: usize) -> Result<Matrix> {
        if to > from {
            return Err(self.bad_level(to));
        }
        let big = self.level(from)?;
        let small = self.level(to)?;
        Ok(self.rule.projection(from, to, &big, &small))
    }

    /// Verifies that level `to` is the quotient of level `from` under the
    /// family's projection.
    pub fn check_coherence(&self, from: usize, to: usize) -> Result<()> {
        let big = self.level(from)?;
        let small = self.level(to)?;
        let p = self.rule.projection(from, to, &big, &small);
        if is_surjective_hom(&big, &small, &p) {
            Ok(())
        } else {
            Err(Error::InvalidAlgebra(format!(
                "family {}: level {to} is not the quotient of level {from}",
                self.name
            )))
        }
    }

    pub(crate) fn previous_level(&self, level: usize) -> Option<usize> {
        (1..level).rev().find(|&l| self.admissible(l))
    }
}

/// The level-`n` algebra, checked against the next lower admissible level.
pub fn truncate(f: &TruncationFamily, n: usize) -> Result<StructureAlgebra> {
    let a = f.level(n)?;
    if let Some(prev) = f.previous_level(n) {
        let small = f.level(prev)?;
        let p = f.rule.projection(n, prev, &a, &small);
        if !is_surjective_hom(&a, &small, &p) {
            return Err(Error::InvalidAlgebra(format!(
                "family {}: level {prev} is not the quotient of level {n}",
                f.name
            )));
        }
    }
    Ok(a)
}
