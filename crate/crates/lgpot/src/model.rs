// SPDX-License-Identifier: MIT
use std::collections::BTreeMap;

use crate::moves::{denominator_from_moves, generate_move_poset, MovePoset};
use crate::poset::{MinusculePoset, OrderIdeal};
use crate::potential::{assemble_with, Superpotential};
use crate::root_data::CominusculeDatum;
use crate::Error;

/// Everything computed for one cominuscule datum.
pub struct Model {
    pub datum: CominusculeDatum,
    pub poset: MinusculePoset,
    /// `P_{i*}` for every `i* ∉ {0, k}`.
    pub move_posets: BTreeMap<usize, MovePoset>,
    pub superpotential: Superpotential,
    /// `(I'', I')`.
    pub quantum: (OrderIdeal, OrderIdeal),
}

impl Model {
    pub fn build(datum: CominusculeDatum) -> Result<Model, Error> {
        let poset = MinusculePoset::build(&datum)?;
        let mut move_posets = BTreeMap::new();
        for istar in (1..=datum.rank).filter(|&i| i != datum.node) {
            move_posets.insert(istar, generate_move_poset(&poset, istar)?);
        }
        let superpotential = assemble_with(&poset, |istar| Ok(denominator_from_moves(&move_posets[&istar])))?;
        let quantum = poset.quantum_ideals()?;
        Ok(Model { datum, poset, move_posets, superpotential, quantum })
    }
}
