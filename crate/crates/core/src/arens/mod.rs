//! The bidual of a finite-dimensional algebra: dual actions, the two Arens
//! products, the topological center and rank maps of functionals.

use serde::{Deserialize, Serialize};

use crate::algebra::StructureAlgebra;
use crate::duality::dual_module;
use crate::error::{Error, Result};
use crate::exactmath::{dot, Matrix, Scalar, Subspace};
use crate::modules::{bicommutant_span, commutant_span, regular_module, ModuleSide};

/// `ρ ∈ R*` as its values `(ρ(a_0), …, ρ(a_{n-1}))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functional(pub Vec<Scalar>);

/// `s ∈ R**` in the double-dual basis, which is `R` itself at finite dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BidualElement(pub Vec<Scalar>);

impl Functional {
    pub fn coordinate(a: &StructureAlgebra, k: usize) -> Self {
        Functional(a.basis_vector(k))
    }
}

fn check_len(a: &StructureAlgebra, v: &[Scalar]) -> Result<()> {
    if v.len() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: v.len(),
        });
    }
    Ok(())
}

/// `(ρs, sρ)` with `⟨r, ρs⟩ = ⟨s, rρ⟩` and `⟨r, sρ⟩ = ⟨s, ρr⟩`, where
/// `⟨x, rρ⟩ = ρ(xr)` and `⟨x, ρr⟩ = ρ(rx)`.
pub fn dual_actions(a: &StructureAlgebra, s: &BidualElement, rho: &Functional) -> Result<(Functional, Functional)> {
    check_len(a, &s.0)?;
    check_len(a, &rho.0)?;
    let field = a.field();
    let mut rho_s = vec![field.zero(); a.dim()];
    let mut s_rho = vec![field.zero(); a.dim()];
    for c in a.structure_constants() {
        let w = &c.value * &rho.0[c.k];
        if w.is_zero() {
            continue;
        }
        // ρ(a_i a_j) contributes s_i to (ρs)_j and s_j to (sρ)_i
        rho_s[c.j] = &rho_s[c.j] + &(&s.0[c.i] * &w);
        s_rho[c.i] = &s_rho[c.i] + &(&s.0[c.j] * &w);
    }
    Ok((Functional(rho_s), Functional(s_rho)))
}

fn pair(a: &StructureAlgebra, s: &BidualElement, rho: &Functional) -> Scalar {
    dot(a.field(), &s.0, &rho.0)
}

/// The first and second Arens products `(s·t, s⋄t)`, assembled on the
/// dual basis from `⟨s·t, ρ⟩ = ⟨s, tρ⟩` and `⟨s⋄t, ρ⟩ = ⟨t, ρs⟩`.
pub fn arens_products(
    a: &StructureAlgebra,
    s: &BidualElement,
    t: &BidualElement,
) -> Result<(BidualElement, BidualElement)> {
    check_len(a, &s.0)?;
    check_len(a, &t.0)?;
    let mut first = Vec::with_capacity(a.dim());
    let mut second = Vec::with_capacity(a.dim());
    for k in 0..a.dim() {
        let lambda = Functional::coordinate(a, k);
        let (_, t_lambda) = dual_actions(a, t, &lambda)?;
        let (lambda_s, _) = dual_actions(a, s, &lambda)?;
        first.push(pair(a, s, &t_lambda));
        second.push(pair(a, t, &lambda_s));
    }
    Ok((BidualElement(first), BidualElement(second)))
}

/// `{s : s·t = s⋄t for all t}`, the kernel of `s ↦ (s·e_k − s⋄e_k)_k`.
pub fn topological_center(a: &StructureAlgebra) -> Subspace {
    let n = a.dim();
    let field = a.field();
    let columns: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            let s = BidualElement(a.basis_vector(i));
            (0..n)
                .flat_map(|k| {
                    let (x, y) = arens_products(a, &s, &BidualElement(a.basis_vector(k))).expect("basis vectors");
                    x.0.iter().zip(&y.0).map(|(p, q)| p - q).collect::<Vec<_>>()
                })
                .collect()
        })
        .collect();
    Matrix::from_columns(field, n * n, &columns).kernel()
}

/// The right topological center, via the opposite algebra.
pub fn right_topological_center(a: &StructureAlgebra) -> Subspace {
    topological_center(&a.opposite())
}

/// Matrix of `ρ ↦ ρs` on `R*` in the dual basis.
pub fn right_multiplication_on_dual(a: &StructureAlgebra, s: &BidualElement) -> Matrix {
    let n = a.dim();
    let columns: Vec<Vec<Scalar>> = (0..n)
        .map(|k| {
            dual_actions(a, s, &Functional::coordinate(a, k))
                .expect("basis vectors")
                .0
                 .0
        })
        .collect();
    Matrix::from_columns(a.field(), n, &columns)
}

/// Matrix of `ρ ↦ sρ` on `R*` in the dual basis.
pub fn left_multiplication_on_dual(a: &StructureAlgebra, s: &BidualElement) -> Matrix {
    let n = a.dim();
    let columns: Vec<Vec<Scalar>> = (0..n)
        .map(|k| {
            dual_actions(a, s, &Functional::coordinate(a, k))
                .expect("basis vectors")
                .1
                 .0
        })
        .collect();
    Matrix::from_columns(a.field(), n, &columns)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheckReport {
    pub biend_dim: usize,
    pub center_image_dim: usize,
    /// `Biend_R(R*)` equals the right multiplications by the center.
    pub equal: bool,
    pub lend_dim: usize,
    pub left_mult_dim: usize,
    /// `Lend_R(R*)` equals the left multiplications by `R**`.
    pub lend_matches: bool,
}

fn operator_span(n: usize, ops: &[Matrix], a: &StructureAlgebra) -> Subspace {
    Subspace::span(a.field(), n * n, ops.iter().map(|m| m.flatten().to_vec()).collect()).expect("square operators")
}

/// Compares `Biend_R(R*)` from the commutant solver with the right
/// multiplications by the topological center.
pub fn biend_of_dual(a: &StructureAlgebra) -> Result<CrossCheckReport> {
    let n = a.dim();
    let r_dual = dual_module(&regular_module(std::sync::Arc::new(a.clone()), ModuleSide::Left)).module;
    let biend = bicommutant_span(&r_dual);
    let center = topological_center(a);
    let right: Vec<Matrix> = center
        .basis()
        .iter()
        .map(|s| right_multiplication_on_dual(a, &BidualElement(s.clone())))
        .collect();
    let center_image = operator_span(n, &right, a);
    let lend = commutant_span(&r_dual);
    let left: Vec<Matrix> = (0..n)
        .map(|i| left_multiplication_on_dual(a, &BidualElement(a.basis_vector(i))))
        .collect();
    let left_span = operator_span(n, &left, a);
    Ok(CrossCheckReport {
        biend_dim: biend.dim(),
        center_image_dim: center_image.dim(),
        equal: biend.equals(&center_image)?,
        lend_dim: lend.dim(),
        left_mult_dim: left_span.dim(),
        lend_matches: lend.equals(&left_span)?,
    })
}

/// `M[i][j] = ρ(a_i a_j)`.
pub fn rank_map(a: &StructureAlgebra, rho: &Functional) -> Result<Matrix> {
    check_len(a, &rho.0)?;
    let mut m = Matrix::zeros(a.field(), a.dim(), a.dim());
    for c in a.structure_constants() {
        let w = &c.value * &rho.0[c.k];
        if !w.is_zero() {
            let cur = m.get(c.i, c.j) + &w;
            m.set(c.i, c.j, cur);
        }
    }
    Ok(m)
}

/// `dim R·ρ`, spanned directly by the translates `a_i ρ`.
pub fn translate_dim(a: &StructureAlgebra, rho: &Functional) -> Result<usize> {
    let columns = (0..a.dim())
        .map(|i| Ok(dual_actions(a, &BidualElement(a.basis_vector(i)), rho)?.1 .0))
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_columns(a.field(), a.dim(), &columns).rank())
}

/// A bilinear form `θ(x_i, y_j) = matrix[i][j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearForm {
    pub matrix: Matrix,
}

impl BilinearForm {
    /// `(x, y) ↦ ρ(xy)`.
    pub fn multiplication(a: &StructureAlgebra, rho: &Functional) -> Result<Self> {
        Ok(BilinearForm {
            matrix: rank_map(a, rho)?,
        })
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum ExtensionVerdict {
    Extends { bound: usize, ranks: Vec<usize> },
    DoesNotExtend { ranks: Vec<usize> },
    Inconclusive { ranks: Vec<usize> },
}

/// Bounded rank across levels means the form extends normally.
pub fn normal_extension_check(forms: &[(usize, BilinearForm)]) -> Result<ExtensionVerdict> {
    for w in forms.windows(2) {
        if w[1].0 <= w[0].0 {
            return Err(Error::BadLevel {
                family: "bilinear form".into(),
                level: w[1].0,
            });
        }
    }
    let ranks: Vec<usize> = forms.iter().map(|(_, f)| f.rank()).collect();
    let verdict = match ranks.as_slice() {
        [.., x, y] if x == y => ExtensionVerdict::Extends { bound: *y, ranks },
        [_, _, ..] if ranks.windows(2).all(|w| w[0] < w[1]) => ExtensionVerdict::DoesNotExtend { ranks },
        _ => ExtensionVerdict::Inconclusive { ranks },
    };
    Ok(verdict)
}
