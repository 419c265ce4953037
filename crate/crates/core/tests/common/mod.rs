#![allow(dead_code)]

use proptest::prelude::*;
use symtwist::rational::{self, Rational};
use symtwist::{AlgebraVector, LieAlgebra, Multivector};

/// `R ⋉_D R^k`: `[e_0, e_i] = Σ_j D_ji e_j`, all other brackets zero.
/// Jacobi holds for every `D`.
pub fn semidirect(d: &[Vec<i64>]) -> LieAlgebra {
    let k = d.len();
    let labels = (0..=k).map(|i| format!("e{i}")).collect();
    let mut entries = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if d[j][i] != 0 {
                entries.push(((0, i + 1, j + 1), rational::int(d[j][i])));
                entries.push(((i + 1, 0, j + 1), rational::int(-d[j][i])));
            }
        }
    }
    LieAlgebra::from_constants(labels, entries).unwrap()
}

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| rational::ratio(p, q))
}

pub fn vector(dim: usize) -> impl Strategy<Value = AlgebraVector> {
    proptest::collection::vec(small_rational(), dim).prop_map(AlgebraVector::new)
}

/// su(2), su(3), su(4) or a random three- or four-dimensional semidirect product.
pub fn algebra() -> impl Strategy<Value = LieAlgebra> {
    prop_oneof![
        (2usize..=4).prop_map(|n| LieAlgebra::su(n).unwrap()),
        (2usize..=3)
            .prop_flat_map(|k| proptest::collection::vec(
                proptest::collection::vec(-2i64..=2, k),
                k
            ))
            .prop_map(|d| semidirect(&d)),
    ]
}

pub fn bivector(dim: usize) -> impl Strategy<Value = Multivector> {
    proptest::collection::vec(((0..dim), (0..dim), small_rational()), 0..6).prop_map(move |ts| {
        Multivector::from_terms(dim, 2, ts.into_iter().map(|(a, b, c)| (vec![a, b], c))).unwrap()
    })
}

pub fn half() -> Rational {
    rational::ratio(1, 2)
}

/// `½ X ∧ Y`.
pub fn half_wedge(x: &AlgebraVector, y: &AlgebraVector) -> Multivector {
    Multivector::from_vector(x)
        .wedge(&Multivector::from_vector(y))
        .unwrap()
        .scale(&half())
}

/// Expands `t` into decomposable terms `c · e_a ∧ e_b` and sums the bracket of
/// every pair using
/// `[X∧Y, U∧V] = −([X,U]∧Y∧V − [X,V]∧Y∧U − [Y,U]∧X∧V + [Y,V]∧X∧U)`,
/// whose overall sign is the one making `[½X∧Y, ½X∧Y] = ½ X∧[X,Y]∧Y`.
pub fn termwise_square(g: &LieAlgebra, t: &Multivector) -> Multivector {
    let n = g.dim();
    let e = |i: usize| AlgebraVector::basis(n, i);
    let br =
        |a: &AlgebraVector, b: &AlgebraVector| Multivector::from_vector(&g.bracket(a, b).unwrap());
    let w3 = |a: Multivector, b: &AlgebraVector, c: &AlgebraVector| {
        a.wedge(&Multivector::from_vector(b))
            .unwrap()
            .wedge(&Multivector::from_vector(c))
            .unwrap()
    };
    let mut acc = Multivector::zero(n, 3);
    for (k1, c1) in t.terms() {
        let mut row = Multivector::zero(n, 3);
        for (k2, c2) in t.terms() {
            let (x, y) = (e(k1[0]), e(k1[1]));
            let (u, w) = (e(k2[0]), e(k2[1]));
            let standard = w3(br(&x, &u), &y, &w)
                .sub(&w3(br(&x, &w), &y, &u))
                .unwrap()
                .sub(&w3(br(&y, &u), &x, &w))
                .unwrap()
                .add(&w3(br(&y, &w), &x, &u))
                .unwrap();
            row = row.add(&standard.scale(c2)).unwrap();
        }
        acc = acc.sub(&row.scale(c1)).unwrap();
    }
    acc
}
