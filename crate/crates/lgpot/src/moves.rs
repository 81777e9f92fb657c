// SPDX-License-Identifier: MIT
//! Box moves between tuples of order ideals and the alternating denominator
//! polynomials built from them.

use std::collections::{HashMap, VecDeque};

use fixedbitset::FixedBitSet;

use crate::poset::{MinusculePoset, OrderIdeal};
use crate::potential::{Monomial, PluckerPolynomial};
use crate::root_data::comin_coefficients;
use crate::Error;

/// A tuple `(I_1, ..., I_c)` of ideals.
pub type TupleState = Vec<OrderIdeal>;

/// A filter `removed` of component `source` relocated as `added` onto
/// component `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveEvent {
    pub source: usize,
    pub target: usize,
    pub removed: Vec<usize>,
    pub added: Vec<usize>,
}

impl MoveEvent {
    pub fn size(&self) -> usize {
        self.removed.len()
    }
}

/// A minimal movable filter and where it lands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MovableFilter {
    pub filter: FixedBitSet,
    pub image: FixedBitSet,
    /// `I_src` with the filter removed.
    pub source_after: OrderIdeal,
    /// `I_dst` with the image added.
    pub target_after: OrderIdeal,
}

/// Every inclusion-minimal filter of `src` that can be re-attached to `dst`.
pub fn minimal_movable_filters(poset: &MinusculePoset, src: &OrderIdeal, dst: &OrderIdeal) -> Vec<MovableFilter> {
    let ideals = poset.order_ideals();
    let mut movable: Vec<MovableFilter> = Vec::new();
    for rest in ideals.iter().filter(|j| j.len() < src.len() && j.is_subset(src)) {
        let filter = src.difference(rest);
        let size = src.len() - rest.len();
        let landing = ideals.iter().filter(|j| j.len() == dst.len() + size && dst.is_subset(j)).find_map(|bigger| {
            let image = bigger.difference(dst);
            poset.label_isomorphism(&filter, &image).map(|_| (image, bigger.clone()))
        });
        if let Some((image, target_after)) = landing {
            movable.push(MovableFilter { filter, image, source_after: rest.clone(), target_after });
        }
    }
    let minimal: Vec<bool> = movable
        .iter()
        .map(|m| !movable.iter().any(|o| o.filter != m.filter && o.filter.is_subset(&m.filter)))
        .collect();
    movable.into_iter().zip(minimal).filter_map(|(m, keep)| keep.then_some(m)).collect()
}

/// The move poset `P_{i*}` with its breadth-first levels.
#[derive(Clone, Debug)]
pub struct MovePoset {
    pub istar: usize,
    pub states: Vec<TupleState>,
    pub levels: Vec<usize>,
    /// `(from, to, event)` for every move between discovered states.
    pub edges: Vec<(usize, usize, MoveEvent)>,
}

impl MovePoset {
    /// Whether some move relocates more than one box.
    pub fn has_multi_box_move(&self) -> bool {
        self.edges.iter().any(|(_, _, e)| e.size() > 1)
    }

    /// Whether every move raises the level by exactly one.
    pub fn is_graded(&self) -> bool {
        self.edges.iter().all(|&(a, b, _)| self.levels[b] == self.levels[a] + 1)
    }

    /// Edges that break gradedness.
    pub fn grading_violations(&self) -> Vec<(usize, usize)> {
        self.edges.iter().filter(|&&(a, b, _)| self.levels[b] != self.levels[a] + 1).map(|&(a, b, _)| (a, b)).collect()
    }

    pub fn depth(&self) -> usize {
        self.levels.iter().copied().max().unwrap_or(0)
    }

    /// States at level `d`.
    pub fn level(&self, d: usize) -> impl Iterator<Item = &TupleState> + '_ {
        self.states.iter().zip(&self.levels).filter(move |(_, &l)| l == d).map(|(s, _)| s)
    }
}

/// Breadth-first closure of the initial tuple `(I_{i_1}, ..., I_{i_c})`
/// under moves from component `l` to component `m` for all `l < m`.
pub fn generate_move_poset(poset: &MinusculePoset, istar: usize) -> Result<MovePoset, Error> {
    let datum = poset.datum();
    let c = comin_coefficients(datum)[istar - 1] as usize;
    let mut sequence = poset.ideal_sequence(istar)?;
    sequence.truncate(c);
    let mut states = vec![sequence.clone()];
    let mut levels = vec![0];
    let mut index: HashMap<TupleState, usize> = HashMap::from([(sequence, 0)]);
    let mut edges = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(s) = queue.pop_front() {
        let state = states[s].clone();
        for l in 0..c {
            for m in l + 1..c {
                for mv in minimal_movable_filters(poset, &state[l], &state[m]) {
                    let mut next = state.clone();
                    next[l] = mv.source_after.clone();
                    next[m] = mv.target_after.clone();
                    let t = match index.get(&next) {
                        Some(&t) => t,
                        None => {
                            let t = states.len();
                            index.insert(next.clone(), t);
                            states.push(next);
                            levels.push(levels[s] + 1);
                            queue.push_back(t);
                            t
                        }
                    };
                    let event = MoveEvent {
                        source: l,
                        target: m,
                        removed: mv.filter.ones().collect(),
                        added: mv.image.ones().collect(),
                    };
                    edges.push((s, t, event));
                }
            }
        }
    }
    Ok(MovePoset { istar, states, levels, edges })
}

/// `D_{i*} = sum_d (-1)^d sum_{L_d} p_{I_1} ... p_{I_c}`.
pub fn denominator_from_moves(moves: &MovePoset) -> PluckerPolynomial {
    let mut poly = PluckerPolynomial::zero();
    for (state, &d) in moves.states.iter().zip(&moves.levels) {
        let sign = if d % 2 == 0 { 1 } else { -1 };
        poly.add_monomial(Monomial::new(0, state.clone()), sign.into());
    }
    poly
}

/// `D_{i*}` for `i*` in `0..=n`, with `D_0 = p_∅` and `D_k = p_Λ`.
pub fn denominator_polynomial(poset: &MinusculePoset, istar: usize) -> Result<PluckerPolynomial, Error> {
    let datum = poset.datum();
    if istar > datum.rank {
        return Err(Error::InvalidIndex { index: istar, datum: *datum });
    }
    if istar == 0 {
        return Ok(PluckerPolynomial::plucker(poset.empty_ideal()));
    }
    if istar == datum.node {
        return Ok(PluckerPolynomial::plucker(poset.full_ideal()));
    }
    Ok(denominator_from_moves(&generate_move_poset(poset, istar)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_data::{CominusculeDatum, Family};

    fn poset(f: Family, n: usize, k: usize) -> MinusculePoset {
        MinusculePoset::build(&CominusculeDatum::new(f, n, k).unwrap()).unwrap()
    }

    #[test]
    fn nothing_moves_into_the_full_poset() {
        let p = poset(Family::C, 4, 4);
        for i in p.order_ideals() {
            assert!(minimal_movable_filters(&p, i, &p.full_ideal()).is_empty());
            assert!(minimal_movable_filters(&p, &p.empty_ideal(), i).is_empty());
        }
    }

    #[test]
    fn lg48_chain() {
        let p = poset(Family::C, 4, 4);
        let mp = generate_move_poset(&p, 2).unwrap();
        assert_eq!(mp.states.len(), 4);
        assert!(mp.is_graded());
        assert!(!mp.has_multi_box_move());
    }

    #[test]
    fn coefficient_one_gives_single_state() {
        let p = poset(Family::E6, 6, 6);
        let mp = generate_move_poset(&p, 1).unwrap();
        assert_eq!(mp.states.len(), 1);
        assert!(mp.edges.is_empty());
    }
}
