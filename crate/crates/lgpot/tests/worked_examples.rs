// SPDX-License-Identifier: MIT
//! Small hand-checkable examples, one group per module.

use lgpot::golden::GridMap;
use lgpot::moves::generate_move_poset;
use lgpot::potential::{quantum_chevalley, quantum_derivation};
use lgpot::root_data::{cartan_matrix, comin_coefficients, weyl_apply};
use lgpot::toric::{expected_minor_monomial, restrict_plucker};
use lgpot::weyl_oracle::levi_longest_image;
use lgpot::{CominusculeDatum, Family, MinusculePoset, Model, OrderIdeal};

fn poset(family: Family, rank: usize, node: usize) -> MinusculePoset {
    MinusculePoset::build(&CominusculeDatum::new(family, rank, node).unwrap()).unwrap()
}

fn staircase(n: usize) -> Vec<String> {
    (1..=n).map(|r| (n - r + 1..=n).map(|l| l.to_string()).collect()).collect()
}

fn shape(p: &MinusculePoset, grid: &[String], s: &str) -> OrderIdeal {
    GridMap::new(p, grid).unwrap().ideal(p, s).unwrap()
}

#[test]
fn highest_root_coefficients() {
    let c = |f, n, k| comin_coefficients(&CominusculeDatum::new(f, n, k).unwrap());
    assert_eq!(c(Family::B, 5, 1), [1, 2, 2, 2, 2]);
    assert_eq!(c(Family::A, 4, 2), [1, 1, 1, 1]);
    assert_eq!(c(Family::C, 5, 5), [2, 2, 2, 2, 1]);
    assert_eq!(c(Family::E7, 7, 7), [2, 2, 3, 4, 3, 2, 1]);
    assert_eq!(c(Family::E6, 6, 1)[3], 3);
}

#[test]
fn weyl_action_on_weights() {
    let a2 = CominusculeDatum::new(Family::A, 2, 1).unwrap();
    assert_eq!(weyl_apply(&cartan_matrix(&a2), &[1], &[1, 0]), [-1, 1]);
    assert_eq!(weyl_apply(&cartan_matrix(&a2), &[], &[3, -2]), [3, -2]);
    assert_eq!(levi_longest_image(&a2, 2).unwrap(), [1, -1]);

    let e6 = CominusculeDatum::new(Family::E6, 6, 6).unwrap();
    assert_eq!(levi_longest_image(&e6, 4).unwrap(), [0, 0, 0, -1, 0, 3]);
    assert_eq!(levi_longest_image(&e6, 6).unwrap(), [0, 0, 0, 0, 0, 1]);
}

#[test]
fn staircase_embeddings() {
    let p = poset(Family::C, 5, 5);
    let grid = staircase(5);
    assert_eq!(p.len(), 15);
    assert_eq!(p.embeddings(&shape(&p, &grid, "#/##/###/##/##")).len(), 3);
    assert_eq!(p.embeddings(&shape(&p, &grid, "#/##/###/###/###")).len(), 1);
    assert_eq!(restrict_plucker(&p, &shape(&p, &grid, "#/##/###/##/##")).len(), 3);
}

#[test]
fn lagrangian_grassmannian_quantum_ideals() {
    let p = poset(Family::C, 4, 4);
    let grid = staircase(4);
    let (double_prime, prime) = p.quantum_ideals().unwrap();
    assert_eq!(double_prime, shape(&p, &grid, "#/#/#/#"));
    assert_eq!(prime, shape(&p, &grid, "#/##/###"));
}

#[test]
fn quadric_quantum_ideal_is_one_box() {
    let p = poset(Family::D, 4, 1);
    let (_, prime) = p.quantum_ideals().unwrap();
    assert_eq!(prime.len(), 1);
    assert_eq!(p.label(prime.ids()[0]), 1);
}

#[test]
fn lg36_quantum_chevalley() {
    let p = poset(Family::C, 3, 3);
    let grid = staircase(3);
    let box1 = shape(&p, &grid, "#");
    assert_eq!(quantum_chevalley(&p, &p.empty_ideal()).unwrap(), [(0, box1.clone())]);
    assert_eq!(quantum_chevalley(&p, &p.full_ideal()).unwrap(), [(1, shape(&p, &grid, "#/##"))]);

    let model = Model::build(*p.datum()).unwrap();
    for t in &model.superpotential.terms {
        assert_eq!(quantum_derivation(&p, &t.denominator).unwrap(), t.numerator, "index {}", t.index);
    }
}

#[test]
fn minor_exponents_count_ideal_memberships() {
    let p = poset(Family::C, 4, 4);
    let seq = p.ideal_sequence(2).unwrap();
    let exps = expected_minor_monomial(&p, 2).unwrap();
    for (b, &e) in exps.iter().enumerate() {
        let depth = seq.iter().take(2).filter(|i| i.contains(b)).count() as i32;
        assert_eq!(e, depth);
    }
    assert!(exps.contains(&2) && exps.contains(&1));

    let e7 = poset(Family::E7, 7, 7);
    let exps = expected_minor_monomial(&e7, 4).unwrap();
    assert_eq!(exps.iter().max(), Some(&4));
    assert!(exps.iter().all(|e| (0..=4).contains(e)));
}

#[test]
fn move_poset_shapes() {
    let lg48 = poset(Family::C, 4, 4);
    let chain = generate_move_poset(&lg48, 2).unwrap();
    assert_eq!(chain.states.len(), 4);
    assert_eq!(chain.depth(), 3);

    let og16 = poset(Family::D, 8, 8);
    let cube = generate_move_poset(&og16, 4).unwrap();
    assert_eq!(cube.states.len(), 8);
    assert_eq!(cube.level(3).count(), 2);
    assert!(cube.is_graded());
}
