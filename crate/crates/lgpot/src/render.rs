// SPDX-License-Identifier: MIT
//! Serialized and human-readable forms of models, posets and move posets.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::moves::MovePoset;
use crate::poset::{MinusculePoset, OrderIdeal};
use crate::potential::PluckerPolynomial;
use crate::toric::{CheckResult, VerificationReport};
use crate::{CominusculeDatum, Error, Model};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementRecord {
    pub id: usize,
    pub label: usize,
    /// Ids of the elements this one covers.
    pub covers: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialRecord {
    pub coeff: i64,
    /// One sorted id list per Plücker factor.
    pub factors: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub index: usize,
    /// The numerator carries one power of `q`.
    pub quantum: bool,
    pub numerator: Vec<MonomialRecord>,
    pub denominator: Vec<MonomialRecord>,
}

/// The JSON document emitted for a model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelDocument {
    pub datum: CominusculeDatum,
    pub poset: Vec<ElementRecord>,
    pub terms: Vec<TermRecord>,
    pub checks: Vec<CheckResult>,
}

pub fn element_records(poset: &MinusculePoset) -> Vec<ElementRecord> {
    (0..poset.len())
        .map(|b| {
            let mut covers = poset.lower_covers(b).to_vec();
            covers.sort_unstable();
            ElementRecord { id: b, label: poset.label(b), covers }
        })
        .collect()
}

fn monomial_records(poly: &PluckerPolynomial, quantum: bool) -> Result<Vec<MonomialRecord>, Error> {
    poly.terms()
        .map(|(m, c)| {
            let expected_q = u32::from(quantum);
            if m.q != expected_q {
                return Err(Error::Internal(format!("monomial with q^{} in a term with quantum = {quantum}", m.q)));
            }
            let coeff = c.to_i64().ok_or_else(|| Error::Internal(format!("coefficient {c} exceeds i64")))?;
            Ok(MonomialRecord { coeff, factors: m.factors.iter().map(OrderIdeal::ids).collect() })
        })
        .collect()
}

impl ModelDocument {
    pub fn new(model: &Model, report: &VerificationReport) -> Result<Self, Error> {
        let terms = model
            .superpotential
            .terms
            .iter()
            .map(|t| {
                Ok(TermRecord {
                    index: t.index,
                    quantum: t.quantum,
                    numerator: monomial_records(&t.numerator, t.quantum)?,
                    denominator: monomial_records(&t.denominator, false)?,
                })
            })
            .collect::<Result<_, Error>>()?;
        Ok(ModelDocument {
            datum: model.datum,
            poset: element_records(&model.poset),
            terms,
            checks: report.checks.clone(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, Error> {
        serde_json::from_str(text).map_err(|e| Error::InvalidDatum(format!("model document: {e}")))
    }
}

/// Names ideals by their shape in the grid drawing of the poset, falling
/// back to id lists when the poset has no such drawing.
pub struct ShapeNamer {
    cells: Option<Vec<(usize, usize)>>,
    row_start: BTreeMap<usize, usize>,
}

impl ShapeNamer {
    pub fn new(poset: &MinusculePoset) -> Self {
        let cells = poset.grid_layout();
        let mut row_start = BTreeMap::new();
        for &(r, c) in cells.iter().flatten() {
            let start = row_start.entry(r).or_insert(c);
            *start = (*start).min(c);
        }
        ShapeNamer { cells, row_start }
    }

    /// Boxes per row, with the row offsets of the full poset.
    fn rows(&self, ideal: &OrderIdeal) -> Option<Vec<(usize, usize)>> {
        let cells = self.cells.as_ref()?;
        let mut counts: BTreeMap<usize, usize> = self.row_start.keys().map(|&r| (r, 0)).collect();
        for b in ideal.ids() {
            *counts.get_mut(&cells[b].0).expect("known row") += 1;
        }
        Some(counts.into_iter().take_while(|&(_, n)| n > 0).map(|(r, n)| (self.row_start[&r], n)).collect())
    }

    /// `#/##/.#`-style shape string.
    pub fn shape(&self, ideal: &OrderIdeal) -> String {
        match self.rows(ideal) {
            Some(rows) => rows.iter().map(|&(o, n)| ".".repeat(o) + &"#".repeat(n)).collect::<Vec<_>>().join("/"),
            None => format!("{:?}", ideal.ids()),
        }
    }

    /// `\young(~~,:~)` for use with the `youngtab` package.
    pub fn latex(&self, ideal: &OrderIdeal) -> String {
        if ideal.is_empty() {
            return r"\varnothing".to_string();
        }
        match self.rows(ideal) {
            Some(rows) => {
                let body: Vec<String> = rows.iter().map(|&(o, n)| ":".repeat(o) + &"~".repeat(n)).collect();
                format!(r"\young({})", body.join(","))
            }
            None => format!(r"\{{{}\}}", ideal.ids().iter().map(usize::to_string).collect::<Vec<_>>().join(",")),
        }
    }
}

fn write_polynomial<F>(out: &mut String, poly: &PluckerPolynomial, mut factor: F, times: &str, q: &str)
where
    F: FnMut(&OrderIdeal) -> String,
{
    if poly.is_zero() {
        out.push('0');
        return;
    }
    for (n, (m, c)) in poly.terms().enumerate() {
        let negative = c.sign() == num_bigint::Sign::Minus;
        let magnitude = c.magnitude();
        match (n, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let mut parts = Vec::new();
        if *magnitude != 1u32.into() {
            parts.push(magnitude.to_string());
        }
        if m.q > 0 {
            parts.push(if m.q == 1 { q.to_string() } else { format!("{q}^{}", m.q) });
        }
        parts.extend(m.factors.iter().map(&mut factor));
        out.push_str(&parts.join(times));
    }
}

/// Plain-text rendering of a polynomial with shape-named factors.
pub fn polynomial_text(namer: &ShapeNamer, poly: &PluckerPolynomial) -> String {
    let mut out = String::new();
    write_polynomial(&mut out, poly, |i| format!("p[{}]", namer.shape(i)), "*", "q");
    out
}

fn polynomial_latex(namer: &ShapeNamer, poly: &PluckerPolynomial) -> String {
    let mut out = String::new();
    write_polynomial(&mut out, poly, |i| format!("p_{{{}}}", namer.latex(i)), " ", "q");
    out
}

pub fn model_text(model: &Model, report: Option<&VerificationReport>) -> String {
    let namer = ShapeNamer::new(&model.poset);
    let mut out = String::new();
    let datum = &model.datum;
    let _ = writeln!(out, "{datum}: {} boxes, {} terms", model.poset.len(), model.superpotential.terms.len());
    let _ = writeln!(out, "I'' = p[{}]   I' = p[{}]", namer.shape(&model.quantum.0), namer.shape(&model.quantum.1));
    for t in &model.superpotential.terms {
        let _ = writeln!(out, "W_{}:", t.index);
        let _ = writeln!(out, "  numerator:   {}", polynomial_text(&namer, &t.numerator));
        let _ = writeln!(out, "  denominator: {}", polynomial_text(&namer, &t.denominator));
    }
    if let Some(report) = report {
        out.push_str(&checks_text(report));
    }
    out
}

/// One line per check.
pub fn checks_text(report: &VerificationReport) -> String {
    let mut out = String::new();
    for c in &report.checks {
        let index = c.index.map(|i| format!("[{i}]")).unwrap_or_default();
        let status = if c.passed { "ok" } else { "FAIL" };
        let _ = write!(out, "{status:<4} {}{index}", c.name);
        if !c.detail.is_empty() {
            let _ = write!(out, "  {}", c.detail);
        }
        out.push('\n');
    }
    out
}

pub fn model_latex(model: &Model) -> String {
    let namer = ShapeNamer::new(&model.poset);
    let mut out = String::from("% requires \\usepackage{youngtab} and \\usepackage{amsmath}\n\\begin{align*}\n");
    for (n, t) in model.superpotential.terms.iter().enumerate() {
        let lead = if n == 0 { "W &= " } else { "&\\quad + " };
        let _ = write!(
            out,
            "{lead}\\frac{{{}}}{{{}}}",
            polynomial_latex(&namer, &t.numerator),
            polynomial_latex(&namer, &t.denominator)
        );
        out.push_str(if n + 1 < model.superpotential.terms.len() { " \\\\\n" } else { "\n" });
    }
    out.push_str("\\end{align*}\n");
    out
}

pub fn poset_text(poset: &MinusculePoset) -> String {
    let namer = ShapeNamer::new(poset);
    let mut out = format!("{}: {} elements\n", poset.datum(), poset.len());
    if namer.cells.is_some() {
        let _ = writeln!(out, "shape {}", namer.shape(&poset.full_ideal()));
    }
    for e in element_records(poset) {
        let _ = writeln!(out, "{:>3}  label {:>2}  covers {:?}", e.id, e.label, e.covers);
    }
    out
}

pub fn poset_dot(poset: &MinusculePoset) -> String {
    let mut out = format!("digraph \"{}\" {{\n  rankdir=BT;\n  node [shape=box];\n", poset.datum());
    for b in 0..poset.len() {
        let _ = writeln!(out, "  e{b} [label=\"{b}: s{}\"];", poset.label(b));
    }
    for b in 0..poset.len() {
        for &c in poset.lower_covers(b) {
            let _ = writeln!(out, "  e{c} -> e{b};");
        }
    }
    out.push_str("}\n");
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetDocument {
    pub datum: CominusculeDatum,
    pub poset: Vec<ElementRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateRecord {
    pub level: usize,
    pub ideals: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub from: usize,
    pub to: usize,
    pub source: usize,
    pub target: usize,
    pub removed: Vec<usize>,
    pub added: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MovePosetDocument {
    pub datum: CominusculeDatum,
    pub istar: usize,
    pub graded: bool,
    pub states: Vec<StateRecord>,
    pub edges: Vec<EdgeRecord>,
}

impl MovePosetDocument {
    pub fn new(datum: CominusculeDatum, moves: &MovePoset) -> Self {
        MovePosetDocument {
            datum,
            istar: moves.istar,
            graded: moves.is_graded(),
            states: moves
                .states
                .iter()
                .zip(&moves.levels)
                .map(|(s, &level)| StateRecord { level, ideals: s.iter().map(OrderIdeal::ids).collect() })
                .collect(),
            edges: moves
                .edges
                .iter()
                .map(|(from, to, e)| EdgeRecord {
                    from: *from,
                    to: *to,
                    source: e.source,
                    target: e.target,
                    removed: e.removed.clone(),
                    added: e.added.clone(),
                })
                .collect(),
        }
    }
}

fn state_name(namer: &ShapeNamer, state: &[OrderIdeal]) -> String {
    let parts: Vec<String> = state.iter().map(|i| format!("[{}]", namer.shape(i))).collect();
    parts.join(" ")
}

pub fn move_poset_text(poset: &MinusculePoset, moves: &MovePoset) -> String {
    let namer = ShapeNamer::new(poset);
    let mut out = format!(
        "{} i*={}: {} states, depth {}, graded {}\n",
        poset.datum(),
        moves.istar,
        moves.states.len(),
        moves.depth(),
        moves.is_graded()
    );
    for d in 0..=moves.depth() {
        let sign = if d % 2 == 0 { '+' } else { '-' };
        for state in moves.level(d) {
            let _ = writeln!(out, "L{d} {sign} {}", state_name(&namer, state));
        }
    }
    out
}

pub fn move_poset_dot(poset: &MinusculePoset, moves: &MovePoset) -> String {
    let namer = ShapeNamer::new(poset);
    let mut out = format!("digraph \"{} i*={}\" {{\n  node [shape=box];\n", poset.datum(), moves.istar);
    for (n, (state, level)) in moves.states.iter().zip(&moves.levels).enumerate() {
        let _ = writeln!(out, "  s{n} [label=\"L{level}: {}\"];", state_name(&namer, state));
    }
    for (from, to, e) in &moves.edges {
        let _ = writeln!(out, "  s{from} -> s{to} [label=\"{}->{} ({})\"];", e.source + 1, e.target + 1, e.size());
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_data::Family;
    use crate::toric::{verify_model, VerifyOptions};

    #[test]
    fn projective_line_text() {
        let model = Model::build(CominusculeDatum::new(Family::A, 1, 1).unwrap()).unwrap();
        let text = model_text(&model, None);
        assert!(text.contains("numerator:   p[#]"), "{text}");
        assert!(text.contains("numerator:   q*p[]"), "{text}");
    }

    #[test]
    fn document_round_trip() {
        let model = Model::build(CominusculeDatum::new(Family::D, 5, 1).unwrap()).unwrap();
        let report = verify_model(&model, VerifyOptions::default());
        let doc = ModelDocument::new(&model, &report).unwrap();
        let json = doc.to_json();
        assert_eq!(ModelDocument::from_json(&json).unwrap(), doc);
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        let keys: Vec<&str> = value.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys, ["checks", "datum", "poset", "terms"]);
    }

    #[test]
    fn latex_uses_young_diagrams() {
        let model = Model::build(CominusculeDatum::new(Family::C, 3, 3).unwrap()).unwrap();
        let tex = model_latex(&model);
        assert!(tex.contains(r"p_{\varnothing}"));
        assert!(tex.contains(r"\young(~)"));
    }
}
