mod common;

use common::*;
use proptest::prelude::*;
use symtwist::exterior::{ad_derivation, is_r_matrix, quotient_project, schouten_square};
use symtwist::rational::{int, ratio};
use symtwist::{AlgebraVector, LieAlgebra, Multivector, SubalgebraBasisSet};

fn v(x: &AlgebraVector) -> Multivector {
    Multivector::from_vector(x)
}

#[test]
fn termwise_oracle_satisfies_anchor() {
    let g = LieAlgebra::su(3).unwrap();
    let x = AlgebraVector::from_integers(&[1, 0, -2, 0, 1, 0, 3, 0]);
    let y = AlgebraVector::from_integers(&[0, 2, 0, 1, 0, -1, 0, 1]);
    let t = half_wedge(&x, &y);
    let anchor = v(&x)
        .wedge(&v(&g.bracket(&x, &y).unwrap()))
        .unwrap()
        .wedge(&v(&y))
        .unwrap()
        .scale(&half());
    assert!(!anchor.is_zero());
    assert_eq!(termwise_square(&g, &t), anchor);
}

#[test]
fn su2_half_e1_e2() {
    let g = LieAlgebra::su(2).unwrap();
    let t = Multivector::from_terms(3, 2, [(vec![0, 1], ratio(1, 2))]).unwrap();
    let expected = Multivector::blade(3, &[0, 1, 2]).unwrap().scale(&int(-1));
    assert_eq!(schouten_square(&g, &t).unwrap(), expected);
    assert_eq!(termwise_square(&g, &t), expected);
}

#[test]
fn su2_volume_invariant_under_every_generator() {
    let g = LieAlgebra::su(2).unwrap();
    let vol = Multivector::blade(3, &[0, 1, 2]).unwrap();
    let x = AlgebraVector::from_integers(&[3, -1, 2]);
    assert!(ad_derivation(&g, &x, &vol).unwrap().is_zero());
}

#[test]
fn canonical_twist_is_r_matrix_for_small_n() {
    for n in 2..=4 {
        let g = LieAlgebra::su(n).unwrap();
        let t = symtwist::grassmann::canonical_r_matrix(n).unwrap();
        let r = is_r_matrix(&g, &t).unwrap();
        assert!(r.is_r_matrix, "n = {n}");
        assert!(r.residuals.is_empty());
    }
}

#[test]
fn commuting_pair_in_su3_squares_to_zero() {
    let g = LieAlgebra::su(3).unwrap();
    let y23 = g.index_of("Y23").unwrap();
    let x = AlgebraVector::basis(8, y23);
    let y = AlgebraVector::from_integers(&[0, 0, 0, 0, 0, 0, 2, -1]);
    assert!(g.bracket(&x, &y).unwrap().is_zero());
    assert!(schouten_square(&g, &half_wedge(&x, &y)).unwrap().is_zero());
}

#[test]
fn affine_pair_squares_to_zero() {
    // [e_0, e_1] = e_1 in R ⋉ R
    let g = semidirect(&[vec![1]]);
    let x = AlgebraVector::from_integers(&[1, 0]);
    let y = AlgebraVector::from_integers(&[2, 3]);
    let br = g.bracket(&x, &y).unwrap();
    assert_eq!(br, AlgebraVector::from_integers(&[0, 3]));
    assert!(schouten_square(&g, &half_wedge(&x, &y)).unwrap().is_zero());
}

#[test]
fn quotient_of_su4_canonical_square_vanishes() {
    let g = LieAlgebra::su(4).unwrap();
    let inst = symtwist::grassmann::GrassmannInstance::new(4, 2).unwrap();
    let sq = schouten_square(&g, &inst.t).unwrap();
    assert!(!sq.is_zero());
    assert!(quotient_project(&sq, &inst.h).unwrap().is_zero());
}

#[test]
fn subalgebra_from_labels() {
    let g = LieAlgebra::su(3).unwrap();
    let idx: Vec<usize> = ["X23", "Y23", "Z1", "Z2"]
        .iter()
        .map(|l| g.index_of(l).unwrap())
        .collect();
    let h = SubalgebraBasisSet::new(&g, idx).unwrap();
    assert_eq!(h.complement().len(), 4);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn anchor_identity((g, x, y) in algebra().prop_flat_map(|g| {
        let n = g.dim();
        (Just(g), vector(n), vector(n))
    })) {
        let lhs = schouten_square(&g, &half_wedge(&x, &y)).unwrap();
        let rhs = v(&x)
            .wedge(&v(&g.bracket(&x, &y).unwrap()))
            .unwrap()
            .wedge(&v(&y))
            .unwrap()
            .scale(&half());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn component_formula_matches_termwise_oracle((g, t) in algebra().prop_flat_map(|g| {
        let n = g.dim();
        (Just(g), bivector(n))
    })) {
        prop_assert_eq!(schouten_square(&g, &t).unwrap(), termwise_square(&g, &t));
    }

    #[test]
    fn square_is_quadratic((g, t, a) in algebra().prop_flat_map(|g| {
        let n = g.dim();
        (Just(g), bivector(n), small_rational())
    })) {
        let lhs = schouten_square(&g, &t.scale(&a)).unwrap();
        let rhs = schouten_square(&g, &t).unwrap().scale(&(&a * &a));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn ad_is_a_derivation((g, x, a, b, c) in algebra().prop_flat_map(|g| {
        let n = g.dim();
        (Just(g), vector(n), vector(n), vector(n), bivector(n))
    })) {
        // a ∧ (b ∧ c) with a, b vectors and c a bivector
        let left = v(&a);
        let right = v(&b).wedge(&c).unwrap();
        let lhs = ad_derivation(&g, &x, &left.wedge(&right).unwrap()).unwrap();
        let rhs = ad_derivation(&g, &x, &left).unwrap().wedge(&right).unwrap()
            .add(&left.wedge(&ad_derivation(&g, &x, &right).unwrap()).unwrap())
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn wedge_is_graded_commutative((a, b) in (vector(5), bivector(5))) {
        let a = v(&a);
        prop_assert_eq!(a.wedge(&b).unwrap(), b.wedge(&a).unwrap());
        let a2 = a.clone();
        prop_assert_eq!(a.wedge(&a2).unwrap(), Multivector::zero(5, 2));
    }

    #[test]
    fn quotient_projection_is_idempotent(t in bivector(8), r in 1usize..3) {
        let inst = symtwist::grassmann::GrassmannInstance::new(3, r).unwrap();
        let square = schouten_square(&inst.algebra, &t).unwrap();
        let once = square.drop_meeting(&inst.h);
        prop_assert_eq!(once.drop_meeting(&inst.h), once.clone());
        let projected = quotient_project(&square, &inst.h).unwrap();
        prop_assert_eq!(projected.len(), once.len());
    }

    #[test]
    fn abelian_squares_vanish((n, t) in (1usize..6).prop_flat_map(|n| (Just(n), bivector(n)))) {
        let g = LieAlgebra::abelian(n).unwrap();
        let r = is_r_matrix(&g, &t).unwrap();
        prop_assert!(r.is_r_matrix && r.square_is_zero());
    }
}
