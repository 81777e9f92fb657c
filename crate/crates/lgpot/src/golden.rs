// SPDX-License-Identifier: MIT
//! Transcribed reference formulas and a structural comparison against
//! computed models.
//!
//! A case file fixes a datum and draws the poset as a grid of labels, one
//! string per row with `.` for offset cells. Each ideal is then written in
//! the same grid as a shape string: rows separated by `/`, `.` for an offset
//! cell and `#` for a box, with `""` for the empty ideal. Comparison maps the
//! shapes onto element ids and compares coefficient maps of Plücker
//! monomials, so neither term order nor layout of the source matters.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::poset::{grid_order, MinusculePoset, OrderIdeal};
use crate::potential::{Monomial, PluckerPolynomial};
use crate::root_data::{CominusculeDatum, Family};
use crate::{Error, Model};

/// Environment variable naming a directory of `*.json` case files that
/// replaces the bundled corpus.
pub const CORPUS_ENV: &str = "LGPOT_GOLDEN_DIR";

const BUNDLED: &[(&str, &str)] = &[
    ("e6_d4", include_str!("../data/golden/e6_d4.json")),
    ("e7", include_str!("../data/golden/e7.json")),
    ("lg36", include_str!("../data/golden/lg36.json")),
    ("lg48", include_str!("../data/golden/lg48.json")),
    ("og16", include_str!("../data/golden/og16.json")),
    ("q8", include_str!("../data/golden/q8.json")),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EntryKind {
    Denominator,
    Numerator,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenTerm {
    pub coeff: i64,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub q: u32,
    pub factors: Vec<String>,
}

fn is_zero(q: &u32) -> bool {
    *q == 0
}

/// A printed product replaced in `terms` by its correction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Erratum {
    pub printed: GoldenTerm,
    pub corrected: GoldenTerm,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenEntry {
    pub what: EntryKind,
    pub index: usize,
    pub terms: Vec<GoldenTerm>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub errata: Vec<Erratum>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenCase {
    pub case: String,
    #[serde(default)]
    pub source: String,
    pub family: String,
    pub rank: usize,
    pub node: usize,
    pub grid: Vec<String>,
    pub entries: Vec<GoldenEntry>,
}

impl GoldenCase {
    pub fn parse(text: &str) -> Result<Self, Error> {
        serde_json::from_str(text).map_err(|e| Error::Golden(e.to_string()))
    }

    pub fn datum(&self) -> Result<CominusculeDatum, Error> {
        let family: Family = self.family.parse()?;
        CominusculeDatum::new(family, self.rank, self.node)
    }
}

/// The corpus compiled into the crate.
pub fn bundled_corpus() -> Result<Vec<GoldenCase>, Error> {
    BUNDLED
        .iter()
        .map(|(name, text)| GoldenCase::parse(text).map_err(|e| Error::Golden(format!("{name}: {e}"))))
        .collect()
}

/// Every `*.json` file in `dir`, sorted by file name.
pub fn corpus_from_dir(dir: &Path) -> Result<Vec<GoldenCase>, Error> {
    let io = |e: std::io::Error| Error::Golden(format!("{}: {e}", dir.display()));
    let mut paths: Vec<_> = std::fs::read_dir(dir)
        .map_err(io)?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths
        .iter()
        .map(|p| {
            let text = std::fs::read_to_string(p).map_err(io)?;
            GoldenCase::parse(&text).map_err(|e| Error::Golden(format!("{}: {e}", p.display())))
        })
        .collect()
}

/// The directory named by [`CORPUS_ENV`] if set, otherwise the bundled corpus.
pub fn load_corpus() -> Result<Vec<GoldenCase>, Error> {
    match std::env::var_os(CORPUS_ENV) {
        Some(dir) => corpus_from_dir(Path::new(&dir)),
        None => bundled_corpus(),
    }
}

/// Correspondence between grid cells of a case and poset element ids.
pub struct GridMap {
    cells: HashMap<(usize, usize), usize>,
    size: usize,
}

impl GridMap {
    pub fn new(poset: &MinusculePoset, grid: &[String]) -> Result<Self, Error> {
        let mut cells = Vec::new();
        let mut labels = Vec::new();
        for (r, row) in grid.iter().enumerate() {
            for (c, ch) in row.chars().enumerate() {
                if ch == '.' {
                    continue;
                }
                let label = ch
                    .to_digit(10)
                    .filter(|&d| d >= 1)
                    .ok_or_else(|| Error::Golden(format!("grid cell {ch:?} at ({r},{c}) is not a node label")))?;
                cells.push((r, c));
                labels.push(label as usize);
            }
        }
        if cells.len() != poset.len() {
            return Err(Error::Golden(format!("grid has {} cells, poset has {}", cells.len(), poset.len())));
        }
        let below = grid_order(&cells);
        let mut by_label: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (cell, &label) in labels.iter().enumerate() {
            by_label.entry(label).or_default().push(cell);
        }
        let mut to_id = vec![usize::MAX; cells.len()];
        for (label, mut chain) in by_label {
            chain.sort_by_key(|&cell| below[cell].count_ones(..));
            let ids: Vec<usize> = (0..poset.len()).filter(|&b| poset.label(b) == label).collect();
            if ids.len() != chain.len() {
                return Err(Error::Golden(format!("label {label} occurs {} times in the grid", chain.len())));
            }
            for (cell, id) in chain.into_iter().zip(ids) {
                to_id[cell] = id;
            }
        }
        for a in 0..cells.len() {
            for b in 0..cells.len() {
                if below[b].contains(a) != poset.less(to_id[a], to_id[b]) {
                    return Err(Error::Golden(format!(
                        "grid order disagrees with the poset at cells {:?} and {:?}",
                        cells[a], cells[b]
                    )));
                }
            }
        }
        let cells = cells.into_iter().zip(to_id).collect();
        Ok(GridMap { cells, size: poset.len() })
    }

    /// The ideal drawn by `shape`.
    pub fn ideal(&self, poset: &MinusculePoset, shape: &str) -> Result<OrderIdeal, Error> {
        let mut ids = Vec::new();
        if !shape.is_empty() {
            for (r, row) in shape.split('/').enumerate() {
                for (c, ch) in row.chars().enumerate() {
                    match ch {
                        '.' => {}
                        '#' => ids.push(*self.cells.get(&(r, c)).ok_or_else(|| {
                            Error::Golden(format!("shape {shape:?} has a box outside the grid at ({r},{c})"))
                        })?),
                        other => return Err(Error::Golden(format!("unexpected {other:?} in shape {shape:?}"))),
                    }
                }
            }
        }
        debug_assert!(ids.iter().all(|&b| b < self.size));
        poset.ideal_from_ids(&ids).map_err(|_| Error::Golden(format!("shape {shape:?} is not an order ideal")))
    }

    /// Inverse of [`GridMap::ideal`].
    pub fn shape(&self, ideal: &OrderIdeal) -> String {
        let mut rows: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
        for &(r, c) in self.cells.keys() {
            let row = rows.entry(r).or_insert((usize::MAX, 0));
            row.0 = row.0.min(c);
        }
        for (&(r, _), &id) in &self.cells {
            if ideal.contains(id) {
                rows.get_mut(&r).expect("row exists").1 += 1;
            }
        }
        let drawn: Vec<String> = rows
            .values()
            .take_while(|&&(_, count)| count > 0)
            .map(|&(offset, count)| ".".repeat(offset) + &"#".repeat(count))
            .collect();
        drawn.join("/")
    }

    pub fn polynomial(&self, poset: &MinusculePoset, terms: &[GoldenTerm]) -> Result<PluckerPolynomial, Error> {
        let mut poly = PluckerPolynomial::zero();
        for t in terms {
            let factors = t.factors.iter().map(|s| self.ideal(poset, s)).collect::<Result<Vec<_>, _>>()?;
            poly.add_monomial(Monomial::new(t.q, factors), BigInt::from(t.coeff));
        }
        Ok(poly)
    }
}

/// A monomial whose coefficient differs between the reference and the model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub q: u32,
    pub factors: Vec<Vec<usize>>,
    pub expected: BigInt,
    pub computed: BigInt,
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryReport {
    pub what: EntryKind,
    pub index: usize,
    pub expected_monomials: usize,
    pub computed_monomials: usize,
    pub mismatches: Vec<Mismatch>,
}

impl EntryReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub case: String,
    pub datum: String,
    pub entries: Vec<EntryReport>,
}

impl CaseReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(EntryReport::passed)
    }
}

/// Coefficient-wise difference of two polynomials.
pub fn diff(expected: &PluckerPolynomial, computed: &PluckerPolynomial) -> Vec<Mismatch> {
    let mut all: BTreeMap<&Monomial, (BigInt, BigInt)> = BTreeMap::new();
    for (m, c) in expected.terms() {
        all.entry(m).or_default().0 = c.clone();
    }
    for (m, c) in computed.terms() {
        all.entry(m).or_default().1 = c.clone();
    }
    all.into_iter()
        .filter(|(_, (e, c))| e != c)
        .map(|(m, (expected, computed))| Mismatch {
            q: m.q,
            factors: m.factors.iter().map(OrderIdeal::ids).collect(),
            expected,
            computed,
        })
        .collect()
}

/// Compares a case against an already built model of the same datum.
pub fn compare_with_model(case: &GoldenCase, model: &Model) -> Result<CaseReport, Error> {
    let datum = case.datum()?;
    if datum != model.datum {
        return Err(Error::Golden(format!("case {} is for {datum}, model is {}", case.case, model.datum)));
    }
    let map = GridMap::new(&model.poset, &case.grid)?;
    let mut entries = Vec::new();
    for entry in &case.entries {
        let term = model.superpotential.term(entry.index).ok_or(Error::InvalidIndex { index: entry.index, datum })?;
        let computed = match entry.what {
            EntryKind::Denominator => &term.denominator,
            EntryKind::Numerator => &term.numerator,
        };
        let expected = map.polynomial(&model.poset, &entry.terms)?;
        entries.push(EntryReport {
            what: entry.what,
            index: entry.index,
            expected_monomials: expected.len(),
            computed_monomials: computed.len(),
            mismatches: diff(&expected, computed),
        });
    }
    Ok(CaseReport { case: case.case.clone(), datum: datum.to_string(), entries })
}

pub fn compare_case(case: &GoldenCase) -> Result<CaseReport, Error> {
    compare_with_model(case, &Model::build(case.datum()?)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_corpus_parses_and_maps() {
        for case in bundled_corpus().unwrap() {
            let poset = MinusculePoset::build(&case.datum().unwrap()).unwrap();
            let map = GridMap::new(&poset, &case.grid).unwrap();
            for entry in &case.entries {
                map.polynomial(&poset, &entry.terms).unwrap();
            }
        }
    }

    #[test]
    fn errata_are_applied() {
        for case in bundled_corpus().unwrap() {
            for entry in &case.entries {
                for e in &entry.errata {
                    assert!(entry.terms.contains(&e.corrected));
                    assert!(!entry.terms.contains(&e.printed));
                }
            }
        }
    }

    #[test]
    fn shapes_round_trip() {
        for case in bundled_corpus().unwrap() {
            let poset = MinusculePoset::build(&case.datum().unwrap()).unwrap();
            let map = GridMap::new(&poset, &case.grid).unwrap();
            for ideal in poset.order_ideals() {
                assert_eq!(&map.ideal(&poset, &map.shape(ideal)).unwrap(), ideal);
            }
        }
    }

    #[test]
    fn rejects_a_non_ideal() {
        let case = bundled_corpus().unwrap().into_iter().find(|c| c.case == "lg36").unwrap();
        let poset = MinusculePoset::build(&case.datum().unwrap()).unwrap();
        let map = GridMap::new(&poset, &case.grid).unwrap();
        assert!(map.ideal(&poset, "/#").is_err());
        assert_eq!(map.ideal(&poset, "#/##").unwrap().len(), 3);
    }
}
