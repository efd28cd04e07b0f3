//! Algebras with hand-known tables.

use super::table::StructureAlgebra;
use crate::exactmath::FieldSpec;

/// `F·1 ⊕ R_0` with `R_0 R_0 = 0`: basis `1, a_2, …, a_n`.
pub fn unitization_square_zero(field: FieldSpec, n: usize) -> StructureAlgebra {
    assert!(n >= 1);
    let one = field.one();
    let mut entries = vec![(0, 0, 0, one.clone())];
    for j in 1..n {
        entries.push((0, j, j, one.clone()));
        entries.push((j, 0, j, one.clone()));
    }
    let labels = std::iter::once("1".to_string())
        .chain((1..n).map(|i| format!("a{}", i + 1)))
        .collect();
    StructureAlgebra::new(field, n, Some(labels), entries, Some(unit(field, n)))
        .expect("square-zero unitization table is well-formed")
}

/// `F[x]/(x^n)` in the monomial basis.
pub fn truncated_polynomial(field: FieldSpec, n: usize) -> StructureAlgebra {
    assert!(n >= 1);
    let mut entries = Vec::new();
    for i in 0..n {
        for j in 0..n - i {
            entries.push((i, j, i + j, field.one()));
        }
    }
    let labels = (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        })
        .collect();
    StructureAlgebra::new(field, n, Some(labels), entries, Some(unit(field, n)))
        .expect("truncated polynomial table is well-formed")
}

/// `M_d(F)` in the matrix-unit basis; `E_{rs}` has index `r·d + s`.
pub fn matrix_algebra(field: FieldSpec, d: usize) -> StructureAlgebra {
    assert!(d >= 1);
    let mut entries = Vec::new();
    for r in 0..d {
        for s in 0..d {
            for t in 0..d {
                entries.push((r * d + s, s * d + t, r * d + t, field.one()));
            }
        }
    }
    let labels = (0..d * d).map(|i| format!("E{}{}", i / d + 1, i % d + 1)).collect();
    let mut u = vec![field.zero(); d * d];
    for r in 0..d {
        u[r * d + r] = field.one();
    }
    StructureAlgebra::new(field, d * d, Some(labels), entries, Some(u)).expect("matrix unit table is well-formed")
}

/// The 1-dimensional algebra `F`.
pub fn ground_field(field: FieldSpec) -> StructureAlgebra {
    truncated_polynomial(field, 1)
}

fn unit(field: FieldSpec, n: usize) -> Vec<crate::exactmath::Scalar> {
    let mut u = vec![field.zero(); n];
    u[0] = field.one();
    u
}
