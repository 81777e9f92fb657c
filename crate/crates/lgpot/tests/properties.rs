// SPDX-License-Identifier: MIT
use std::collections::BTreeMap;
use std::sync::OnceLock;

use lgpot::potential::apply_derivation;
use lgpot::render::ModelDocument;
use lgpot::root_data::cartan_matrix;
use lgpot::toric::{verify_model, VerifyOptions};
use lgpot::weyl_oracle::{exponents_along, minor_exponents_via_weights, random_linear_extension};
use lgpot::{CominusculeDatum, Model, PluckerPolynomial};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Models small enough to rebuild freely, shared across cases.
fn models() -> &'static [Model] {
    static MODELS: OnceLock<Vec<Model>> = OnceLock::new();
    MODELS.get_or_init(|| {
        CominusculeDatum::all_up_to(6).into_iter().map(|d| Model::build(d).expect("model builds")).collect()
    })
}

fn any_model() -> impl Strategy<Value = usize> {
    0..models().len()
}

fn any_datum() -> impl Strategy<Value = CominusculeDatum> {
    let data = CominusculeDatum::all_up_to(7);
    (0..data.len()).prop_map(move |i| data[i])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn derivations_obey_the_product_rule(m in any_model(), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>(), j in 1usize..8) {
        let poset = &models()[m].poset;
        let j = 1 + (j - 1) % poset.datum().rank;
        let ideals = poset.order_ideals();
        let p = PluckerPolynomial::plucker(a.get(ideals).clone());
        let r = PluckerPolynomial::plucker(b.get(ideals).clone());
        let lhs = apply_derivation(poset, j, &p.mul(&r));
        let rhs = apply_derivation(poset, j, &p).mul(&r).add(&p.mul(&apply_derivation(poset, j, &r)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn simple_reflections_are_involutions(d in any_datum(), i in 1usize..8, weight in prop::collection::vec(-6i64..6, 7)) {
        let cartan = cartan_matrix(&d);
        let i = 1 + (i - 1) % d.rank;
        let original = weight[..d.rank].to_vec();
        let mut w = original.clone();
        cartan.reflect(i, &mut w);
        cartan.reflect(i, &mut w);
        prop_assert_eq!(w, original);
    }

    #[test]
    fn exponents_do_not_depend_on_the_linear_extension(m in any_model(), seed in any::<u64>(), i in 1usize..8) {
        let poset = &models()[m].poset;
        let d = poset.datum();
        let i = 1 + (i - 1) % d.rank;
        prop_assume!(i != d.node);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let order = random_linear_extension(poset, &mut rng);
        prop_assert_eq!(exponents_along(poset, i, &order).unwrap(), minor_exponents_via_weights(poset, i).unwrap());
    }

    #[test]
    fn a_box_fits_exactly_where_the_weight_is_minus_one(m in any_model(), a in any::<prop::sample::Index>()) {
        let poset = &models()[m].poset;
        let ideal = a.get(poset.order_ideals());
        let weight = poset.weight(ideal);
        for j in 1..=poset.datum().rank {
            let grown = poset.add_box(ideal, j);
            prop_assert_eq!(grown.is_some(), weight[j - 1] == -1, "label {} weight {:?}", j, weight);
            if let Some(g) = grown {
                prop_assert_eq!(g.len(), ideal.len() + 1);
            }
        }
    }
}

fn label_multiset(model: &Model, ids: impl Iterator<Item = usize>) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for b in ids {
        *out.entry(model.poset.label(b)).or_default() += 1;
    }
    out
}

#[test]
fn quantum_numerator_matches_the_complement_labels() {
    for model in models() {
        let (double_prime, prime) = &model.quantum;
        let complement = (0..model.poset.len()).filter(|&b| !double_prime.contains(b));
        assert_eq!(
            label_multiset(model, prime.ids().into_iter()),
            label_multiset(model, complement),
            "{}",
            model.datum
        );
        let k_boxes = double_prime.ids().iter().filter(|&&b| model.poset.label(b) == model.datum.node).count();
        assert_eq!(k_boxes, 1, "{}", model.datum);
    }
}

#[test]
fn documents_round_trip_and_are_deterministic() {
    for model in models().iter().filter(|m| m.datum.rank <= 5) {
        let report = verify_model(model, VerifyOptions::default());
        let doc = ModelDocument::new(model, &report).unwrap();
        let json = doc.to_json();
        assert_eq!(ModelDocument::from_json(&json).unwrap(), doc);

        let rebuilt = Model::build(model.datum).unwrap();
        let again = ModelDocument::new(&rebuilt, &verify_model(&rebuilt, VerifyOptions::default())).unwrap();
        assert_eq!(again.to_json(), json, "{}", model.datum);
    }
}
