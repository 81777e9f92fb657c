// SPDX-License-Identifier: MIT
//! The minuscule poset of a cominuscule datum and its order ideals.
//!
//! The poset is the heap of the greedy reduced word for `w_P`: one element per
//! letter, ordered by the transitive closure of "earlier letter that does not
//! commute with a later one". Element ids follow the word, so id order is a
//! linear extension, and elements sharing a label form a chain.

use std::cmp::Ordering;
use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;

use crate::root_data::{cartan_matrix, fundamental_weight, CartanMatrix, CominusculeDatum};
use crate::Error;

/// A downward-closed subset of a [`MinusculePoset`].
///
/// Ordered by size first and then lexicographically on sorted element ids,
/// which is the canonical order used for every listing and serialization.
#[derive(Clone)]
pub struct OrderIdeal {
    bits: FixedBitSet,
    len: usize,
}

impl OrderIdeal {
    pub(crate) fn from_bits(bits: FixedBitSet) -> Self {
        let len = bits.count_ones(..);
        OrderIdeal { bits, len }
    }

    pub fn empty(size: usize) -> Self {
        OrderIdeal { bits: FixedBitSet::with_capacity(size), len: 0 }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, b: usize) -> bool {
        self.bits.contains(b)
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.bits
    }

    /// Element ids in increasing order.
    pub fn ids(&self) -> Vec<usize> {
        self.bits.ones().collect()
    }

    pub fn is_subset(&self, other: &OrderIdeal) -> bool {
        self.bits.is_subset(&other.bits)
    }

    /// Elements of `self` not in `other`.
    pub fn difference(&self, other: &OrderIdeal) -> FixedBitSet {
        let mut d = self.bits.clone();
        d.difference_with(&other.bits);
        d
    }

    pub(crate) fn with(&self, b: usize) -> OrderIdeal {
        let mut bits = self.bits.clone();
        bits.insert(b);
        OrderIdeal { bits, len: self.len + 1 }
    }
}

impl PartialEq for OrderIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.len == other.len && self.bits.ones().eq(other.bits.ones())
    }
}

impl Eq for OrderIdeal {}

impl Hash for OrderIdeal {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.len.hash(state);
        for b in self.bits.ones() {
            b.hash(state);
        }
    }
}

impl Ord for OrderIdeal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len.cmp(&other.len).then_with(|| self.bits.ones().cmp(other.bits.ones()))
    }
}

impl PartialOrd for OrderIdeal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for OrderIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.bits.ones()).finish()
    }
}

/// Injective, label- and order-preserving map from an ideal into the poset.
/// `images[p]` is the image of the `p`-th smallest element id of the ideal.
pub type Embedding = Vec<usize>;

/// The labeled poset `Lambda_{w_P}`.
pub struct MinusculePoset {
    datum: CominusculeDatum,
    cartan: CartanMatrix,
    labels: Vec<usize>,
    lower_covers: Vec<Vec<usize>>,
    upper_covers: Vec<Vec<usize>>,
    strictly_below: Vec<FixedBitSet>,
    ideals: OnceLock<Vec<OrderIdeal>>,
}

/// Greedy raising word for `w_P`: starting at `-omega_k`, repeatedly apply the
/// smallest `s_i` with a negative coordinate.
pub fn reduced_word_wp(datum: &CominusculeDatum) -> Vec<usize> {
    let cartan = cartan_matrix(datum);
    let n = datum.rank;
    let mut mu: Vec<i64> = fundamental_weight(n, datum.node).iter().map(|x| -x).collect();
    let mut word = Vec::new();
    while let Some(i) = (1..=n).find(|&i| mu[i - 1] < 0) {
        cartan.reflect(i, &mut mu);
        word.push(i);
    }
    word
}

impl MinusculePoset {
    /// Heap of [`reduced_word_wp`]. Fails only if the heap violates the
    /// structural properties every minuscule poset has.
    pub fn build(datum: &CominusculeDatum) -> Result<Self, Error> {
        let cartan = cartan_matrix(datum);
        let labels = reduced_word_wp(datum);
        let size = labels.len();
        let mut strictly_below = vec![FixedBitSet::with_capacity(size); size];
        for j in 0..size {
            for i in (0..j).rev() {
                let li = labels[i];
                let lj = labels[j];
                if li == lj || cartan.adjacent(li, lj) {
                    let below_i = strictly_below[i].clone();
                    strictly_below[j].union_with(&below_i);
                    strictly_below[j].insert(i);
                }
            }
        }
        let mut lower_covers = vec![Vec::new(); size];
        let mut upper_covers = vec![Vec::new(); size];
        for j in 0..size {
            for i in strictly_below[j].ones() {
                let covered = !strictly_below[j].ones().any(|m| m != i && strictly_below[m].contains(i));
                if covered {
                    lower_covers[j].push(i);
                    upper_covers[i].push(j);
                }
            }
        }
        let poset = MinusculePoset {
            datum: *datum,
            cartan,
            labels,
            lower_covers,
            upper_covers,
            strictly_below,
            ideals: OnceLock::new(),
        };
        poset.check_structure()?;
        Ok(poset)
    }

    fn check_structure(&self) -> Result<(), Error> {
        let size = self.len();
        let fail = |msg: String| Err(Error::Internal(format!("{}: {msg}", self.datum)));
        if size != self.datum.dimension() {
            return fail(format!("poset has {size} elements, expected {}", self.datum.dimension()));
        }
        if size > 0 && (0..size).any(|b| b != 0 && !self.strictly_below[b].contains(0)) {
            return fail("minimal element is not unique".into());
        }
        for b in 0..size {
            if self.lower_covers[b].len() > 2 || self.upper_covers[b].len() > 2 {
                return fail(format!("element {b} has more than two covers"));
            }
            for c in b + 1..size {
                if self.labels[b] == self.labels[c] && !self.less(b, c) {
                    return fail(format!("equal labels at {b} and {c} are incomparable"));
                }
            }
        }
        Ok(())
    }

    pub fn datum(&self) -> &CominusculeDatum {
        &self.datum
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Node index of every element, by element id.
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn label(&self, b: usize) -> usize {
        self.labels[b]
    }

    pub fn lower_covers(&self, b: usize) -> &[usize] {
        &self.lower_covers[b]
    }

    pub fn upper_covers(&self, b: usize) -> &[usize] {
        &self.upper_covers[b]
    }

    /// Strict order `a < b`.
    pub fn less(&self, a: usize, b: usize) -> bool {
        self.strictly_below[b].contains(a)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        a == b || self.less(a, b)
    }

    pub fn empty_ideal(&self) -> OrderIdeal {
        OrderIdeal::empty(self.len())
    }

    pub fn full_ideal(&self) -> OrderIdeal {
        let mut bits = FixedBitSet::with_capacity(self.len());
        bits.insert_range(..);
        OrderIdeal::from_bits(bits)
    }

    /// Validates `ids` as an ideal.
    pub fn ideal_from_ids(&self, ids: &[usize]) -> Result<OrderIdeal, Error> {
        let mut bits = FixedBitSet::with_capacity(self.len());
        for &b in ids {
            if b >= self.len() {
                return Err(Error::Internal(format!("element id {b} out of range")));
            }
            bits.insert(b);
        }
        if !self.is_down_closed(&bits) {
            return Err(Error::Internal(format!("{ids:?} is not an order ideal")));
        }
        Ok(OrderIdeal::from_bits(bits))
    }

    pub fn is_down_closed(&self, set: &FixedBitSet) -> bool {
        set.ones().all(|b| self.lower_covers[b].iter().all(|&c| set.contains(c)))
    }

    pub fn is_up_closed_in(&self, set: &FixedBitSet, within: &FixedBitSet) -> bool {
        set.ones().all(|b| self.upper_covers[b].iter().all(|&c| !within.contains(c) || set.contains(c)))
    }

    /// Elements that can be added to `ideal` keeping it an ideal.
    pub fn addable(&self, ideal: &OrderIdeal) -> impl Iterator<Item = usize> + '_ {
        let bits = ideal.bits.clone();
        (0..self.len()).filter(move |&b| !bits.contains(b) && self.lower_covers[b].iter().all(|&c| bits.contains(c)))
    }

    /// `I ⊔ {b}` for the minimal `b` outside `I` labeled `j`, when that is
    /// an ideal.
    pub fn add_box(&self, ideal: &OrderIdeal, j: usize) -> Option<OrderIdeal> {
        let b = (0..self.len()).find(|&b| self.labels[b] == j && !ideal.contains(b))?;
        if self.lower_covers[b].iter().all(|&c| ideal.contains(c)) {
            Some(ideal.with(b))
        } else {
            None
        }
    }

    /// `Pi(I)(-omega_k)`: the reflections of the labels of `I`, applied in id
    /// order to `-omega_k`.
    pub fn weight(&self, ideal: &OrderIdeal) -> Vec<i64> {
        let mut mu: Vec<i64> = fundamental_weight(self.datum.rank, self.datum.node).iter().map(|x| -x).collect();
        for b in ideal.bits.ones() {
            self.cartan.reflect(self.labels[b], &mut mu);
        }
        mu
    }

    /// Every order ideal, sorted canonically. Computed once and cached.
    pub fn order_ideals(&self) -> &[OrderIdeal] {
        self.ideals.get_or_init(|| {
            let mut seen: HashSet<OrderIdeal> = HashSet::new();
            let mut queue = VecDeque::new();
            let start = self.empty_ideal();
            seen.insert(start.clone());
            queue.push_back(start);
            while let Some(ideal) = queue.pop_front() {
                let next: Vec<usize> = self.addable(&ideal).collect();
                for b in next {
                    let bigger = ideal.with(b);
                    if seen.insert(bigger.clone()) {
                        queue.push_back(bigger);
                    }
                }
            }
            let mut all: Vec<OrderIdeal> = seen.into_iter().collect();
            all.sort();
            all
        })
    }

    /// Largest ideal reachable from `start` by adding elements whose label is
    /// not `avoid`.
    pub fn saturate_avoiding(&self, start: &OrderIdeal, avoid: usize) -> OrderIdeal {
        let mut ideal = start.clone();
        loop {
            let next = self.addable(&ideal).find(|&b| self.labels[b] != avoid);
            match next {
                Some(b) => ideal = ideal.with(b),
                None => return ideal,
            }
        }
    }

    /// `(I_{i_1}, ..., I_{i_{c+1}})` for `i* != k`.
    pub fn ideal_sequence(&self, istar: usize) -> Result<Vec<OrderIdeal>, Error> {
        let seq = crate::root_data::index_sequence(&self.datum, istar)?;
        let mut out = Vec::with_capacity(seq.len());
        let mut current = self.empty_ideal();
        for &i in &seq {
            current = self.saturate_avoiding(&current, i);
            out.push(current.clone());
        }
        if out.last() != Some(&self.full_ideal()) {
            return Err(Error::Internal(format!(
                "{}: ideal sequence for {istar} does not end at the full poset",
                self.datum
            )));
        }
        Ok(out)
    }

    /// `(I'', I')`: the largest ideal with exactly one element labeled `k`,
    /// and the ideal isomorphic to its complement.
    pub fn quantum_ideals(&self) -> Result<(OrderIdeal, OrderIdeal), Error> {
        let k = self.datum.node;
        let first = self.empty_ideal().with(0);
        let double_prime = self.saturate_avoiding(&first, k);
        let complement = self.full_ideal().difference(&double_prime);
        let prime = self.isomorphic_ideal(&complement).ok_or_else(|| {
            Error::Internal(format!("{}: no ideal is isomorphic to the complement of I''", self.datum))
        })?;
        Ok((double_prime, prime))
    }

    /// The ideal that is isomorphic to `set` as a labeled poset, if any.
    pub fn isomorphic_ideal(&self, set: &FixedBitSet) -> Option<OrderIdeal> {
        let size = set.count_ones(..);
        self.order_ideals()
            .iter()
            .filter(|i| i.len() == size)
            .find(|i| self.label_isomorphism(set, &i.bits).is_some())
            .cloned()
    }

    /// Label-preserving order isomorphism between two subsets with their
    /// induced orders, as `(source, target)` pairs. Equal labels form chains,
    /// so the only candidate matches the `r`-th occurrence of each label.
    pub fn label_isomorphism(&self, source: &FixedBitSet, target: &FixedBitSet) -> Option<Vec<(usize, usize)>> {
        let src: Vec<usize> = source.ones().collect();
        let mut tgt: Vec<usize> = target.ones().collect();
        if src.len() != tgt.len() {
            return None;
        }
        let mut pairs = Vec::with_capacity(src.len());
        for &a in &src {
            let pos = tgt.iter().position(|&t| self.labels[t] == self.labels[a])?;
            pairs.push((a, tgt.remove(pos)));
        }
        for &(a, x) in &pairs {
            for &(b, y) in &pairs {
                if self.less(a, b) != self.less(x, y) {
                    return None;
                }
            }
        }
        Some(pairs)
    }

    /// All injective label- and order-preserving maps `I -> Lambda`.
    pub fn embeddings(&self, ideal: &OrderIdeal) -> Vec<Embedding> {
        let elems = ideal.ids();
        let position: Vec<Option<usize>> = {
            let mut pos = vec![None; self.len()];
            for (p, &b) in elems.iter().enumerate() {
                pos[b] = Some(p);
            }
            pos
        };
        let lower: Vec<Vec<usize>> =
            elems.iter().map(|&b| self.lower_covers[b].iter().filter_map(|&c| position[c]).collect()).collect();
        let mut out = Vec::new();
        let mut images = Vec::with_capacity(elems.len());
        let mut used = FixedBitSet::with_capacity(self.len());
        self.extend_embedding(&elems, &lower, &mut images, &mut used, &mut out);
        out
    }

    fn extend_embedding(
        &self,
        elems: &[usize],
        lower: &[Vec<usize>],
        images: &mut Vec<usize>,
        used: &mut FixedBitSet,
        out: &mut Vec<Embedding>,
    ) {
        let p = images.len();
        if p == elems.len() {
            out.push(images.clone());
            return;
        }
        let label = self.labels[elems[p]];
        for t in 0..self.len() {
            if self.labels[t] != label || used.contains(t) {
                continue;
            }
            if lower[p].iter().all(|&q| self.less(images[q], t)) {
                used.insert(t);
                images.push(t);
                self.extend_embedding(elems, lower, images, used, out);
                images.pop();
                used.set(t, false);
            }
        }
    }

    /// Grid coordinates `(row, column)` such that every cover goes one step
    /// right or one step down and the grid order equals the poset order.
    pub fn grid_layout(&self) -> Option<Vec<(usize, usize)>> {
        let mut cells: Vec<(usize, usize)> = Vec::with_capacity(self.len());
        if self.is_empty() {
            return Some(cells);
        }
        cells.push((0, 0));
        if self.place(&mut cells) && self.layout_matches(&cells) {
            Some(cells)
        } else {
            None
        }
    }

    fn place(&self, cells: &mut Vec<(usize, usize)>) -> bool {
        let b = cells.len();
        if b == self.len() {
            return true;
        }
        let covers = &self.lower_covers[b];
        let mut options: Vec<(usize, usize)> = Vec::new();
        match covers.as_slice() {
            [c] => {
                let (r, col) = cells[*c];
                options.push((r, col + 1));
                options.push((r + 1, col));
            }
            [c, d] => {
                let (r1, c1) = cells[*c];
                let (r2, c2) = cells[*d];
                if (r1, c1 + 1) == (r2 + 1, c2) {
                    options.push((r1, c1 + 1));
                }
                if (r2, c2 + 1) == (r1 + 1, c1) {
                    options.push((r2, c2 + 1));
                }
            }
            _ => return false,
        }
        for cell in options {
            if cells.contains(&cell) {
                continue;
            }
            let (r, c) = cell;
            let left = c.checked_sub(1).and_then(|c| cells.iter().position(|&x| x == (r, c)));
            let up = r.checked_sub(1).and_then(|r| cells.iter().position(|&x| x == (r, c)));
            let mut neighbours: Vec<usize> = left.into_iter().chain(up).collect();
            neighbours.sort_unstable();
            let mut wanted = covers.clone();
            wanted.sort_unstable();
            if neighbours != wanted {
                continue;
            }
            cells.push(cell);
            if self.place(cells) {
                return true;
            }
            cells.pop();
        }
        false
    }

    fn layout_matches(&self, cells: &[(usize, usize)]) -> bool {
        let order = grid_order(cells);
        (0..self.len()).all(|a| (0..self.len()).all(|b| order[b].contains(a) == self.less(a, b)))
    }
}

/// Strict order generated by "left neighbour" and "upper neighbour" on a set
/// of grid cells. `result[b]` holds every cell index strictly below `b`.
pub fn grid_order(cells: &[(usize, usize)]) -> Vec<FixedBitSet> {
    let n = cells.len();
    let find = |r: usize, c: usize| cells.iter().position(|&x| x == (r, c));
    let mut direct: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (b, &(r, c)) in cells.iter().enumerate() {
        if let Some(l) = c.checked_sub(1).and_then(|c| find(r, c)) {
            direct[b].push(l);
        }
        if let Some(u) = r.checked_sub(1).and_then(|r| find(r, c)) {
            direct[b].push(u);
        }
    }
    let mut below: Vec<Option<FixedBitSet>> = vec![None; n];
    fn visit(b: usize, direct: &[Vec<usize>], below: &mut Vec<Option<FixedBitSet>>, n: usize) {
        if below[b].is_some() {
            return;
        }
        let mut set = FixedBitSet::with_capacity(n);
        for &d in &direct[b] {
            visit(d, direct, below, n);
            set.insert(d);
            set.union_with(below[d].as_ref().expect("visited"));
        }
        below[b] = Some(set);
    }
    for b in 0..n {
        visit(b, &direct, &mut below, n);
    }
    below.into_iter().map(|s| s.expect("visited")).collect()
}
