use super::standard::{matrix_algebra, truncated_polynomial, unitization_square_zero};
use super::*;
use crate::error::Error;
use crate::exactmath::{FieldSpec, Matrix, Scalar, Subspace};

fn q() -> FieldSpec {
    FieldSpec::Rational
}

fn vec_of(field: FieldSpec, xs: &[i64]) -> Vec<Scalar> {
    xs.iter().map(|&x| field.from_i64(x)).collect()
}

#[test]
fn matrix_units_and_polynomials_validate() {
    let f5 = FieldSpec::prime(5).unwrap();
    assert!(matrix_algebra(f5, 2).validate().valid);
    assert!(truncated_polynomial(q(), 4).validate().valid);
    assert!(unitization_square_zero(q(), 6).validate().valid);
}

#[test]
fn broken_table_reports_quadruple() {
    // basis {1, a1, a2}: a1·a1 = a2, a2·a1 = a1
    let one = q().one();
    let mut entries = vec![(0, 0, 0, one.clone())];
    for j in 1..3 {
        entries.push((0, j, j, one.clone()));
        entries.push((j, 0, j, one.clone()));
    }
    entries.push((1, 1, 2, one.clone()));
    entries.push((2, 1, 1, one.clone()));
    let a = StructureAlgebra::new(q(), 3, None, entries, Some(vec_of(q(), &[1, 0, 0]))).unwrap();
    let report = a.validate();
    assert!(!report.valid);
    // (a1 a1) a1 = a2 a1 = a1 but a1 (a1 a1) = a1 a2 = 0
    assert!(report
        .violations
        .contains(&Violation::Associativity { i: 1, j: 1, k: 1, l: 1 }));
}

#[test]
fn construction_rejects_bad_tables() {
    let one = q().one();
    let dup = vec![(0, 0, 0, one.clone()), (0, 0, 0, one.clone())];
    assert!(matches!(
        StructureAlgebra::new(q(), 1, None, dup, None),
        Err(Error::InvalidAlgebra(_))
    ));
    let out_of_range = vec![(0, 0, 3, one.clone())];
    assert!(matches!(
        StructureAlgebra::new(q(), 2, None, out_of_range, None),
        Err(Error::InvalidAlgebra(_))
    ));
    // the zero product has no unit
    assert_eq!(StructureAlgebra::new(q(), 2, None, vec![], None), Err(Error::NoUnit));
}

#[test]
fn unit_is_solved_when_absent() {
    let a = truncated_polynomial(q(), 3);
    let entries = a
        .structure_constants()
        .iter()
        .map(|c| (c.i, c.j, c.k, c.value.clone()))
        .collect();
    let b = StructureAlgebra::new(q(), 3, None, entries, None).unwrap();
    assert_eq!(b.unit(), a.unit());
}

#[test]
fn multiply_examples() {
    let a = unitization_square_zero(q(), 4);
    let x = vec_of(q(), &[1, 1, 0, 0]);
    let y = vec_of(q(), &[1, 0, 1, 0]);
    assert_eq!(a.multiply(&x, &y).unwrap(), vec_of(q(), &[1, 1, 1, 0]));
    assert_eq!(a.multiply(a.unit(), &y).unwrap(), y);
    let p = truncated_polynomial(q(), 4);
    let x2 = p.basis_vector(2);
    let x3 = p.basis_vector(3);
    assert!(p.multiply(&x2, &x3).unwrap().iter().all(Scalar::is_zero));
    assert!(matches!(
        p.multiply(&x2, &x2[..2]),
        Err(Error::DimensionMismatch { .. })
    ));
}

#[test]
fn generated_subalgebras() {
    let f5 = FieldSpec::prime(5).unwrap();
    let g = construct_from_generators(f5, 3, &[]).unwrap();
    assert_eq!(g.algebra.dim(), 1);

    let units: Vec<Matrix> = (0..4)
        .map(|i| Matrix::from_fn(q(), 2, 2, |r, c| q().from_i64((r * 2 + c == i) as i64)))
        .collect();
    let m2 = construct_from_generators(q(), 2, &units).unwrap();
    assert_eq!(m2.algebra.dim(), 4);
    assert!(m2.algebra.validate().valid);
    assert!(!m2.algebra.is_commutative());

    let jordan = Matrix::from_i64(q(), &[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
    let nil = construct_from_generators(q(), 3, std::slice::from_ref(&jordan)).unwrap();
    assert_eq!(nil.algebra.dim(), 3);
    assert!(nil.algebra.is_commutative());
    assert!(nil.algebra.validate().valid);
    // embedding realizes the table
    let n2 = jordan.mul(&jordan);
    assert_eq!(nil.embedding[2], n2);
}

#[test]
fn ideal_closure_examples() {
    let p = truncated_polynomial(q(), 4);
    let full = ideal_closure(&p, &[p.unit().to_vec()], IdealSide::TwoSided).unwrap();
    assert!(full.subspace.is_full());

    let u = unitization_square_zero(q(), 5);
    let j = ideal_closure(&u, &[u.basis_vector(1)], IdealSide::TwoSided).unwrap();
    assert_eq!(j.subspace, Subspace::coordinate(q(), 5, [1]));
    assert!(j.verify(&u));

    let x2 = ideal_closure(&p, &[p.basis_vector(2)], IdealSide::TwoSided).unwrap();
    assert_eq!(x2.subspace, Subspace::coordinate(q(), 4, [2, 3]));
}

#[test]
fn quotient_examples() {
    let p = truncated_polynomial(q(), 4);
    let zero = IdealBasis {
        subspace: Subspace::zero(q(), 4),
        side: IdealSide::TwoSided,
    };
    assert_eq!(quotient(&p, &zero).unwrap().algebra, p);

    let j = IdealBasis {
        subspace: Subspace::coordinate(q(), 4, [2, 3]),
        side: IdealSide::TwoSided,
    };
    let quo = quotient(&p, &j).unwrap();
    assert_eq!(quo.algebra, truncated_polynomial(q(), 2));
    assert!(is_surjective_hom(&p, &quo.algebra, &quo.projection));

    let all = IdealBasis {
        subspace: Subspace::full(q(), 4),
        side: IdealSide::TwoSided,
    };
    assert!(matches!(quotient(&p, &all), Err(Error::NotUnital)));

    let u = unitization_square_zero(q(), 3);
    let not_ideal = IdealBasis {
        subspace: Subspace::span(q(), 3, vec![vec_of(q(), &[1, 1, 0])]).unwrap(),
        side: IdealSide::TwoSided,
    };
    assert!(matches!(quotient(&u, &not_ideal), Err(Error::NotAnIdeal(_))));
}

#[test]
fn largest_ideal_and_annihilators() {
    let p = truncated_polynomial(q(), 5);
    // span{x, x^3, x^4} contains the ideal span{x^3, x^4} and nothing larger
    let s = Subspace::coordinate(q(), 5, [1, 3, 4]);
    assert_eq!(largest_ideal_in(&p, &s).subspace, Subspace::coordinate(q(), 5, [3, 4]));
    let (l, r) = annihilators(&p, &Subspace::coordinate(q(), 5, [3]));
    assert_eq!(l, Subspace::coordinate(q(), 5, [2, 3, 4]));
    assert_eq!(l, r);
    assert!(is_square_zero(&p, &Subspace::coordinate(q(), 5, [3, 4])));
    assert!(!is_square_zero(&p, &Subspace::coordinate(q(), 5, [2, 3, 4])));
}

#[test]
fn opposite_and_basis_change() {
    let m = matrix_algebra(q(), 2);
    let op = m.opposite();
    assert!(op.validate().valid);
    let change = crate::exactmath::BasisChange::new(Matrix::from_i64(
        q(),
        &[&[1, 1, 0, 0], &[0, 1, 0, 2], &[0, 0, 1, 0], &[1, 0, 0, 1]],
    ))
    .unwrap();
    let moved = m.change_basis(&change).unwrap();
    assert!(moved.validate().valid);
    // products transport: new coords of x·y equal product of new coords
    let x = vec_of(q(), &[1, 2, 3, 4]);
    let y = vec_of(q(), &[0, -1, 5, 2]);
    let lhs = change.to_new(&m.mul(&x, &y));
    let rhs = moved.mul(&change.to_new(&x), &change.to_new(&y));
    assert_eq!(lhs, rhs);
}
