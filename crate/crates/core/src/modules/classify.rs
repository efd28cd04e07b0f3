use serde::{Deserialize, Serialize};

use super::endo::{bicommutant_span, hom_space, HomBasis};
use super::module::{regular_module, RModule};
use crate::algebra::{IdealBasis, IdealSide};
use crate::error::{Error, Result};
use crate::exactmath::{Matrix, Scalar, Subspace};

/// `Hom_R(U, R)` into the regular module on the same side as `u`.
pub fn hom_to_regular(u: &RModule) -> Result<HomBasis> {
    let r = regular_module(u.algebra().clone(), u.side());
    hom_space(u, &r)
}

fn trace_from_hom(u: &RModule, hom: &HomBasis) -> Result<IdealBasis> {
    let a = u.algebra();
    let values = hom
        .maps
        .iter()
        .flat_map(|f| (0..u.dim()).map(move |c| f.col(c)))
        .collect();
    let ideal = IdealBasis {
        subspace: Subspace::span(a.field(), a.dim(), values)?,
        side: IdealSide::TwoSided,
    };
    if !ideal.verify(a) {
        return Err(Error::NotAnIdeal("trace of a module is not two-sided".into()));
    }
    Ok(ideal)
}

/// The span of all values `f(u)`, `f ∈ Hom_R(U, R)`.
pub fn trace_ideal(u: &RModule) -> Result<IdealBasis> {
    trace_from_hom(u, &hom_to_regular(u)?)
}

/// `T·U` as a subspace of `U`.
pub fn ideal_times_module(u: &RModule, t: &Subspace) -> Subspace {
    let m = u.dim();
    let vectors = t
        .basis()
        .iter()
        .flat_map(|r| {
            let op = u.operator(r);
            (0..m).map(move |c| op.col(c))
        })
        .collect();
    Subspace::span(u.field(), m, vectors).expect("module dimension")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleFlags {
    pub faithful: bool,
    pub torsionless: bool,
    #[serde(rename = "T_accessible")]
    pub t_accessible: bool,
    pub generator: bool,
    pub projective: bool,
}

pub fn is_faithful(u: &RModule) -> bool {
    let columns: Vec<Vec<Scalar>> = u.action().iter().map(|a| a.flatten().to_vec()).collect();
    Matrix::from_columns(u.field(), u.dim() * u.dim(), &columns).rank() == u.algebra().dim()
}

/// Dual-basis test: `U` is projective iff the identity is a sum
/// `Σ_l f_l(·)·u_l` with `f_l ∈ Hom_R(U, R)`, i.e. the evaluation map
/// `R^m → U` splits.
fn is_projective(u: &RModule, hom: &HomBasis) -> bool {
    let field = u.field();
    let m = u.dim();
    let n = u.algebra().dim();
    let mut columns = Vec::with_capacity(hom.dim() * m);
    for f in &hom.maps {
        for l in 0..m {
            // x ↦ A_{f(x)} e_l
            let orbit = Matrix::from_fn(field, m, n, |r, i| u.action()[i].get(r, l).clone());
            columns.push(orbit.mul(f).flatten().to_vec());
        }
    }
    let identity = Matrix::identity(field, m);
    if columns.is_empty() {
        return m == 0;
    }
    let sys = Matrix::from_columns(field, m * m, &columns);
    matches!(sys.solve(identity.flatten()), Ok(Some(_)))
}

pub fn classify(u: &RModule) -> Result<ModuleFlags> {
    let hom = hom_to_regular(u)?;
    let t = trace_from_hom(u, &hom)?;
    let stacked: Vec<Vec<Scalar>> = hom.maps.iter().flat_map(|f| f.to_rows()).collect();
    let torsionless = Matrix::from_rows(u.field(), stacked)
        .map(|s| s.rank() == u.dim())
        .unwrap_or(u.dim() == 0);
    Ok(ModuleFlags {
        faithful: is_faithful(u),
        torsionless,
        t_accessible: ideal_times_module(u, &t.subspace).is_full(),
        generator: t.subspace.is_full(),
        projective: is_projective(u, &hom),
    })
}

/// Finds `r` with `r·x = b(x)` for every `x` in `g`, if any.
pub fn density_check(u: &RModule, b: &Matrix, g: &[Vec<Scalar>]) -> Result<Option<Vec<Scalar>>> {
    let field = u.field();
    let m = u.dim();
    let n = u.algebra().dim();
    if b.rows() != m || b.cols() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: b.rows(),
        });
    }
    if let Some(bad) = g.iter().find(|x| x.len() != m) {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: bad.len(),
        });
    }
    if g.is_empty() {
        return Ok(Some(vec![field.zero(); n]));
    }
    let columns: Vec<Vec<Scalar>> = u
        .action()
        .iter()
        .map(|a| g.iter().flat_map(|x| a.mul_vec(x)).collect())
        .collect();
    let rhs: Vec<Scalar> = g.iter().flat_map(|x| b.mul_vec(x)).collect();
    Matrix::from_columns(field, m * g.len(), &columns).solve(&rhs)
}

/// Checks that the operators of the trace ideal form a left ideal of the
/// bicommutant: `b∘t` stays in their span for every bicommutant basis `b`.
pub fn trace_is_left_ideal_in_bicommutant(u: &RModule) -> Result<bool> {
    let field = u.field();
    let m = u.dim();
    let t = trace_ideal(u)?;
    let t_ops: Vec<Matrix> = t.subspace.basis().iter().map(|r| u.operator(r)).collect();
    let t_span = Subspace::span(field, m * m, t_ops.iter().map(|o| o.flatten().to_vec()).collect())?;
    let bic = bicommutant_span(u);
    Ok(bic.basis().iter().all(|bv| {
        let b = Matrix::unflatten(field, m, m, bv);
        t_ops.iter().all(|op| t_span.contains_vector(b.mul(op).flatten()))
    }))
}
