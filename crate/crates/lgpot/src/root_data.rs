// SPDX-License-Identifier: MIT
//! Root-system constants for the cominuscule families and Weyl group
//! combinatorics on integer weight vectors.
//!
//! Weights are stored in the fundamental-weight basis. The simple root
//! `alpha_i` is column `i` of [`CartanMatrix`], so the simple reflection acts
//! by `s_i(l) = l - l_i * alpha_i`. With the matrix orientation used here this
//! action is the one of the Langlands dual group, which is the group whose
//! minuscule representation indexes the Plücker coordinates.
//!
//! Nodes are numbered from 1 in Bourbaki order everywhere in the public API.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::Error;

/// Dynkin family of a cominuscule datum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E6,
    E7,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::E6 => "E6",
            Family::E7 => "E7",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E6" | "E" => Ok(Family::E6),
            "E7" => Ok(Family::E7),
            other => Err(Error::InvalidDatum(format!("unknown family `{other}`"))),
        }
    }
}

/// A Dynkin family, a rank and a cominuscule node `k`.
///
/// Construct through [`CominusculeDatum::new`], which rejects pairs that are
/// not cominuscule and ranks outside the family's range.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CominusculeDatum {
    pub family: Family,
    pub rank: usize,
    pub node: usize,
}

impl CominusculeDatum {
    pub fn new(family: Family, rank: usize, node: usize) -> Result<Self, Error> {
        let bad = |msg: String| Err(Error::InvalidDatum(msg));
        let min_rank = match family {
            Family::A => 1,
            Family::B | Family::C => 2,
            Family::D => 4,
            Family::E6 => 6,
            Family::E7 => 7,
        };
        if rank < min_rank {
            return bad(format!("{family} needs rank at least {min_rank}, got {rank}"));
        }
        if matches!(family, Family::E6 | Family::E7) && rank != min_rank {
            return bad(format!("{family} has rank exactly {min_rank}, got {rank}"));
        }
        if node == 0 || node > rank {
            return bad(format!("node {node} outside 1..={rank}"));
        }
        let cominuscule = match family {
            Family::A => true,
            Family::B => node == 1,
            Family::C => node == rank,
            Family::D => node == 1 || node + 1 >= rank,
            Family::E6 => node == 1 || node == 6,
            Family::E7 => node == 7,
        };
        if !cominuscule {
            return bad(format!("node {node} is not cominuscule in {family}{rank}"));
        }
        Ok(CominusculeDatum { family, rank, node })
    }

    /// Every valid datum whose rank is at most `max_rank`, in a fixed order.
    pub fn all_up_to(max_rank: usize) -> Vec<CominusculeDatum> {
        let mut out = Vec::new();
        for n in 1..=max_rank {
            for k in 1..=n {
                out.push(CominusculeDatum { family: Family::A, rank: n, node: k });
            }
        }
        for n in 2..=max_rank {
            out.push(CominusculeDatum { family: Family::B, rank: n, node: 1 });
        }
        for n in 2..=max_rank {
            out.push(CominusculeDatum { family: Family::C, rank: n, node: n });
        }
        for n in 4..=max_rank {
            for k in [1, n - 1, n] {
                out.push(CominusculeDatum { family: Family::D, rank: n, node: k });
            }
        }
        if max_rank >= 6 {
            out.push(CominusculeDatum { family: Family::E6, rank: 6, node: 1 });
            out.push(CominusculeDatum { family: Family::E6, rank: 6, node: 6 });
        }
        if max_rank >= 7 {
            out.push(CominusculeDatum { family: Family::E7, rank: 7, node: 7 });
        }
        out
    }

    /// Number of elements of the minuscule poset, i.e. the dimension of `G/P`.
    pub fn dimension(&self) -> usize {
        let (n, k) = (self.rank, self.node);
        match self.family {
            Family::A => k * (n + 1 - k),
            Family::B => 2 * n - 1,
            Family::C => n * (n + 1) / 2,
            Family::D if k == 1 => 2 * n - 2,
            Family::D => n * (n - 1) / 2,
            Family::E6 => 16,
            Family::E7 => 27,
        }
    }
}

impl fmt::Display for CominusculeDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::E6 | Family::E7 => write!(f, "{}/P{}", self.family, self.node),
            _ => write!(f, "{}{}/P{}", self.family, self.rank, self.node),
        }
    }
}

/// Square integer matrix with 2 on the diagonal. Entry `(i, j)` (0-based in
/// storage) is the `i`-th fundamental-weight coordinate of `alpha_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanMatrix {
    entries: Vec<Vec<i64>>,
}

impl CartanMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// Entry with 1-based node indices.
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i - 1][j - 1]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.entries
    }

    /// Simple root `alpha_j` as a weight vector.
    pub fn root(&self, j: usize) -> Vec<i64> {
        self.entries.iter().map(|row| row[j - 1]).collect()
    }

    /// Distinct nodes joined by an edge of the Dynkin diagram.
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.get(i, j) != 0
    }

    /// Simple reflections `s_i`, `s_j` commute.
    pub fn commute(&self, i: usize, j: usize) -> bool {
        i != j && self.get(i, j) == 0
    }

    /// `s_i(l) = l - l_i * alpha_i`, in place.
    pub fn reflect(&self, i: usize, weight: &mut [i64]) {
        let c = weight[i - 1];
        if c != 0 {
            for (w, row) in weight.iter_mut().zip(&self.entries) {
                *w -= c * row[i - 1];
            }
        }
    }

    fn neighbours(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (1..=self.size()).filter(move |&j| self.adjacent(i, j))
    }
}

/// Cartan matrix of the datum's family in Bourbaki numbering.
pub fn cartan_matrix(datum: &CominusculeDatum) -> CartanMatrix {
    let n = datum.rank;
    let mut m = vec![vec![0i64; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut edge = |i: usize, j: usize| {
        m[i - 1][j - 1] = -1;
        m[j - 1][i - 1] = -1;
    };
    match datum.family {
        Family::A | Family::B | Family::C => {
            for i in 1..n {
                edge(i, i + 1);
            }
        }
        Family::D => {
            for i in 1..n - 1 {
                edge(i, i + 1);
            }
            edge(n - 2, n);
        }
        Family::E6 | Family::E7 => {
            edge(1, 3);
            edge(2, 4);
            for i in 3..n {
                edge(i, i + 1);
            }
        }
    }
    match datum.family {
        Family::B => m[n - 2][n - 1] = -2,
        Family::C => m[n - 1][n - 2] = -2,
        _ => {}
    }
    CartanMatrix { entries: m }
}

/// Coefficients of the highest root in the simple-root basis.
pub fn highest_root(datum: &CominusculeDatum) -> Vec<i64> {
    let n = datum.rank;
    match datum.family {
        Family::A => vec![1; n],
        Family::B => (1..=n).map(|i| if i == 1 { 1 } else { 2 }).collect(),
        Family::C => (1..=n).map(|i| if i == n { 1 } else { 2 }).collect(),
        Family::D => (1..=n).map(|i| if i == 1 || i + 1 >= n { 1 } else { 2 }).collect(),
        Family::E6 => vec![1, 2, 2, 3, 2, 1],
        Family::E7 => vec![2, 2, 3, 4, 3, 2, 1],
    }
}

/// `c_i`, the coefficient of `alpha_i` in the highest root, obtained by
/// enumerating the positive roots through root strings.
pub fn comin_coefficients(datum: &CominusculeDatum) -> Vec<i64> {
    let cartan = cartan_matrix(datum);
    let n = datum.rank;
    // <beta, alpha_i^vee> for beta in the simple-root basis.
    let pairing = |beta: &[i64], i: usize| -> i64 { (1..=n).map(|j| beta[j - 1] * cartan.get(j, i)).sum() };
    let mut roots: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut queue = VecDeque::new();
    for i in 1..=n {
        let mut e = vec![0; n];
        e[i - 1] = 1;
        roots.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(beta) = queue.pop_front() {
        for i in 1..=n {
            let mut p = 0;
            let mut down = beta.clone();
            loop {
                down[i - 1] -= 1;
                if roots.contains(&down) {
                    p += 1;
                } else {
                    break;
                }
            }
            if p - pairing(&beta, i) > 0 {
                let mut up = beta.clone();
                up[i - 1] += 1;
                if roots.insert(up.clone()) {
                    queue.push_back(up);
                }
            }
        }
    }
    roots.into_iter().max_by_key(|r| r.iter().sum::<i64>()).expect("root system is nonempty")
}

/// Degree of the anticanonical divisor, tabulated per family.
pub fn anticanonical_index(datum: &CominusculeDatum) -> i64 {
    let n = datum.rank as i64;
    match datum.family {
        Family::A => n + 1,
        Family::B | Family::C => 2 * n,
        Family::D => 2 * n - 2,
        Family::E6 => 12,
        Family::E7 => 18,
    }
}

/// Opposition involution `-w_0` of one connected subdiagram, as a list of
/// `(node, image)` pairs. Detects the component type from its shape.
fn component_involution(cartan: &CartanMatrix, nodes: &[usize]) -> Vec<(usize, usize)> {
    let inside = |j: &usize| nodes.contains(j);
    let degree = |i: usize| cartan.neighbours(i).filter(inside).count();
    let identity = || nodes.iter().map(|&i| (i, i)).collect::<Vec<_>>();
    let multiple_bond = nodes
        .iter()
        .any(|&i| cartan.neighbours(i).filter(inside).any(|j| cartan.get(i, j) < -1 || cartan.get(j, i) < -1));
    if multiple_bond || nodes.len() == 1 {
        return identity();
    }
    // Walks from `start` away from `from`, collecting the arm in order.
    let arm = |from: usize, start: usize| {
        let mut path = vec![start];
        let (mut prev, mut cur) = (from, start);
        loop {
            let next: Vec<usize> = cartan.neighbours(cur).filter(inside).filter(|&j| j != prev).collect();
            match next.as_slice() {
                [j] => {
                    path.push(*j);
                    prev = cur;
                    cur = *j;
                }
                _ => return path,
            }
        }
    };
    match nodes.iter().copied().find(|&i| degree(i) == 3) {
        None => {
            let end = nodes.iter().copied().find(|&i| degree(i) <= 1).expect("path has an end");
            let path = arm(0, end);
            let len = path.len();
            (0..len).map(|p| (path[p], path[len - 1 - p])).collect()
        }
        Some(centre) => {
            let mut arms: Vec<Vec<usize>> = cartan.neighbours(centre).filter(inside).map(|j| arm(centre, j)).collect();
            arms.sort_by_key(|a| (a.len(), a[0]));
            let lens: Vec<usize> = arms.iter().map(Vec::len).collect();
            let mut out = identity();
            let mut swap = |a: &[usize], b: &[usize]| {
                for (x, y) in a.iter().zip(b) {
                    for pair in out.iter_mut() {
                        if pair.0 == *x {
                            pair.1 = *y;
                        } else if pair.0 == *y {
                            pair.1 = *x;
                        }
                    }
                }
            };
            if lens[0] == 1 && lens[1] == 1 {
                // D_m with m = nodes.len(): fork swap iff m is odd.
                if nodes.len() % 2 == 1 {
                    swap(&arms[0], &arms[1]);
                }
            } else if lens == [1, 2, 2] {
                swap(&arms[1], &arms[2]);
            }
            out
        }
    }
}

fn involution_on(cartan: &CartanMatrix, removed: Option<usize>) -> Vec<usize> {
    let n = cartan.size();
    let mut image: Vec<usize> = (0..=n).collect();
    let mut seen = vec![false; n + 1];
    if let Some(j) = removed {
        seen[j] = true;
    }
    for start in 1..=n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut idx = 0;
        while idx < comp.len() {
            let cur = comp[idx];
            idx += 1;
            for j in cartan.neighbours(cur) {
                if !seen[j] {
                    seen[j] = true;
                    comp.push(j);
                }
            }
        }
        comp.sort_unstable();
        for (a, b) in component_involution(cartan, &comp) {
            image[a] = b;
        }
    }
    image
}

/// `sigma_j`: fixes `j` and acts as `-w_0` on every component of the diagram
/// with `j` removed. Returned as a lookup table indexed by node (entry 0
/// unused).
pub fn dynkin_involution(datum: &CominusculeDatum, removed: usize) -> Vec<usize> {
    involution_on(&cartan_matrix(datum), Some(removed))
}

/// `-w_0` of the whole diagram, indexed by node (entry 0 unused).
pub fn opposition_involution(datum: &CominusculeDatum) -> Vec<usize> {
    involution_on(&cartan_matrix(datum), None)
}

/// `(i_1, ..., i_{c+1})` for `i* != k`, with `c = c_{i*}`.
pub fn index_sequence(datum: &CominusculeDatum, istar: usize) -> Result<Vec<usize>, Error> {
    let k = datum.node;
    if istar == k || istar == 0 || istar > datum.rank {
        return Err(Error::InvalidIndex { index: istar, datum: *datum });
    }
    let cartan = cartan_matrix(datum);
    let c = comin_coefficients(datum)[istar - 1] as usize;
    let sigma = |j: usize, i: usize| involution_on(&cartan, Some(j))[i];
    let mut seq = Vec::with_capacity(c + 1);
    let (mut before, mut last) = (istar, k);
    for _ in 0..=c {
        let next = sigma(last, before);
        seq.push(next);
        before = last;
        last = next;
    }
    Ok(seq)
}

/// Applies the simple reflections of `word` to `weight`, first letter first.
pub fn weyl_apply(cartan: &CartanMatrix, word: &[usize], weight: &[i64]) -> Vec<i64> {
    let mut w = weight.to_vec();
    for &i in word {
        cartan.reflect(i, &mut w);
    }
    w
}

/// Fundamental weight `omega_i` as a coordinate vector.
pub fn fundamental_weight(n: usize, i: usize) -> Vec<i64> {
    let mut w = vec![0; n];
    w[i - 1] = 1;
    w
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(f: Family, n: usize, k: usize) -> CominusculeDatum {
        CominusculeDatum::new(f, n, k).unwrap()
    }

    #[test]
    fn small_cartan_matrices() {
        assert_eq!(cartan_matrix(&d(Family::A, 2, 1)).rows(), &[vec![2, -1], vec![-1, 2]]);
        assert_eq!(cartan_matrix(&d(Family::C, 2, 2)).rows(), &[vec![2, -1], vec![-2, 2]]);
        let e6 = cartan_matrix(&d(Family::E6, 6, 6));
        assert_eq!(e6.get(2, 4), -1);
        assert_eq!(e6.get(2, 3), 0);
    }

    #[test]
    fn highest_roots_match_root_enumeration() {
        for datum in CominusculeDatum::all_up_to(8) {
            assert_eq!(highest_root(&datum), comin_coefficients(&datum), "{datum}");
        }
        assert_eq!(highest_root(&d(Family::B, 5, 1)), vec![1, 2, 2, 2, 2]);
        assert_eq!(highest_root(&d(Family::A, 4, 2)), vec![1, 1, 1, 1]);
        assert_eq!(highest_root(&d(Family::E7, 7, 7)), vec![2, 2, 3, 4, 3, 2, 1]);
        assert_eq!(comin_coefficients(&d(Family::C, 5, 5)), vec![2, 2, 2, 2, 1]);
    }

    #[test]
    fn involutions() {
        let e6 = d(Family::E6, 6, 6);
        let s = dynkin_involution(&e6, 6);
        assert_eq!((s[2], s[5], s[3], s[4], s[1], s[6]), (5, 2, 3, 4, 1, 6));
        let e7 = d(Family::E7, 7, 7);
        let s = dynkin_involution(&e7, 7);
        assert_eq!((s[3], s[5]), (5, 3));
        // D_5 with node 1 removed is D_4: no swap. Removing nothing from D_5 swaps.
        let d5 = d(Family::D, 5, 1);
        assert_eq!(dynkin_involution(&d5, 1)[4], 4);
        assert_eq!(opposition_involution(&d5)[4], 5);
    }

    #[test]
    fn index_sequences() {
        let e7 = d(Family::E7, 7, 7);
        assert_eq!(index_sequence(&e7, 4).unwrap(), vec![4, 5, 3, 5, 4]);
        let e6 = d(Family::E6, 6, 6);
        assert_eq!(index_sequence(&e6, 1).unwrap(), vec![1, 6]);
        for n in 3..8 {
            let c = d(Family::C, n, n);
            for i in 1..n {
                assert_eq!(index_sequence(&c, i).unwrap(), vec![n - i, n, i]);
            }
        }
        assert!(index_sequence(&e7, 7).is_err());
    }

    #[test]
    fn reflections() {
        let a2 = cartan_matrix(&d(Family::A, 2, 1));
        assert_eq!(weyl_apply(&a2, &[1], &[1, 0]), vec![-1, 1]);
        assert_eq!(weyl_apply(&a2, &[], &[3, -2]), vec![3, -2]);
    }

    #[test]
    fn rejects_invalid_data() {
        assert!(CominusculeDatum::new(Family::B, 4, 2).is_err());
        assert!(CominusculeDatum::new(Family::D, 3, 1).is_err());
        assert!(CominusculeDatum::new(Family::E7, 7, 1).is_err());
        assert!(CominusculeDatum::new(Family::A, 3, 0).is_err());
    }
}
