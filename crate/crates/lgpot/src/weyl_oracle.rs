// SPDX-License-Identifier: MIT
//! Torus exponents of the denominators recomputed from the weight lattice.
//!
//! Nothing here looks at moves, Plücker polynomials or embeddings. The only
//! inputs are the Cartan matrix and the labels of the poset elements.

use std::collections::{HashSet, VecDeque};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::poset::MinusculePoset;
use crate::root_data::{cartan_matrix, fundamental_weight, opposition_involution, CominusculeDatum};
use crate::Error;

/// `w_{0,P}(ω_{i*})`, reached by lowering with the reflections `s_j`, `j != k`.
pub fn levi_longest_image(datum: &CominusculeDatum, istar: usize) -> Result<Vec<i64>, Error> {
    let n = datum.rank;
    if istar == 0 || istar > n {
        return Err(Error::InvalidIndex { index: istar, datum: *datum });
    }
    let cartan = cartan_matrix(datum);
    let mut lambda = fundamental_weight(n, istar);
    let guard = 4 * datum.dimension().max(1) * n;
    for _ in 0..guard {
        match (1..=n).find(|&j| j != datum.node && lambda[j - 1] > 0) {
            Some(j) => cartan.reflect(j, &mut lambda),
            None => return Ok(lambda),
        }
    }
    Err(Error::Internal(format!("{datum}: Levi lowering of omega_{istar} did not terminate")))
}

/// Walks `order` (a linear extension of the poset), recording at each element
/// the pairing `d_b` of the running weight with the simple coroot of its label
/// and subtracting `d_b` times that simple root. Returns the exponents and
/// the height `h = sum d_b`.
pub fn exponents_along(poset: &MinusculePoset, istar: usize, order: &[usize]) -> Result<(Vec<i64>, i64), Error> {
    let datum = poset.datum();
    let cartan = poset.cartan();
    let mut mu = levi_longest_image(datum, istar)?;
    let mut exps = vec![0i64; poset.len()];
    for &b in order {
        let j = poset.label(b);
        let d = mu[j - 1];
        if d < 0 {
            return Err(Error::Internal(format!("{datum}, i*={istar}: negative pairing {d} at element {b}")));
        }
        exps[b] = d;
        let root = cartan.root(j);
        for (m, r) in mu.iter_mut().zip(&root) {
            *m -= d * r;
        }
    }
    let opp = opposition_involution(datum)[istar];
    let target: Vec<i64> = fundamental_weight(datum.rank, opp).iter().map(|x| -x).collect();
    if mu != target {
        return Err(Error::Internal(format!("{datum}, i*={istar}: final weight {mu:?} differs from -omega_{opp}")));
    }
    let h = exps.iter().sum();
    Ok((exps, h))
}

/// Exponents and height along the canonical linear extension (element ids).
pub fn minor_exponents_via_weights(poset: &MinusculePoset, istar: usize) -> Result<(Vec<i64>, i64), Error> {
    let order: Vec<usize> = (0..poset.len()).collect();
    exponents_along(poset, istar, &order)
}

/// Uniformly chosen minimal element at each step.
pub fn random_linear_extension<R: Rng>(poset: &MinusculePoset, rng: &mut R) -> Vec<usize> {
    let size = poset.len();
    let mut placed = vec![false; size];
    let mut order = Vec::with_capacity(size);
    while order.len() < size {
        let ready: Vec<usize> =
            (0..size).filter(|&b| !placed[b] && poset.lower_covers(b).iter().all(|&c| placed[c])).collect();
        let &b = ready.choose(rng).expect("a finite poset has a minimal element");
        placed[b] = true;
        order.push(b);
    }
    order
}

/// Size of the Weyl orbit of `-ω_k`.
pub fn weyl_orbit_size(datum: &CominusculeDatum) -> usize {
    let cartan = cartan_matrix(datum);
    let start: Vec<i64> = fundamental_weight(datum.rank, datum.node).iter().map(|x| -x).collect();
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(w) = queue.pop_front() {
        for i in 1..=datum.rank {
            if w[i - 1] != 0 {
                let mut next = w.clone();
                cartan.reflect(i, &mut next);
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    seen.len()
}
