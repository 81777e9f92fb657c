// SPDX-License-Identifier: MIT
//! Exact Laurent polynomials in the torus coordinates `a_b` and the
//! verification of the superpotential identities on the torus.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::model::Model;
use crate::poset::{MinusculePoset, OrderIdeal};
use crate::potential::{quantum_derivation, PluckerPolynomial, Term};
use crate::root_data::{anticanonical_index, comin_coefficients, dynkin_involution};
use crate::weyl_oracle;

/// Sparse exponent vector together with a power of `q`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LaurentMonomial {
    pub q: u32,
    /// `(element id, exponent)` pairs, sorted by id, exponents nonzero.
    pub exponents: Vec<(usize, i32)>,
}

impl LaurentMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    /// `a_S = prod_{b in S} a_b`.
    pub fn of_set(ids: impl IntoIterator<Item = usize>) -> Self {
        let mut exponents: Vec<(usize, i32)> = ids.into_iter().map(|b| (b, 1)).collect();
        exponents.sort_unstable();
        LaurentMonomial { q: 0, exponents }
    }

    pub fn from_dense(q: u32, dense: &[i32]) -> Self {
        let exponents = dense.iter().enumerate().filter(|(_, &e)| e != 0).map(|(b, &e)| (b, e)).collect();
        LaurentMonomial { q, exponents }
    }

    pub fn to_dense(&self, size: usize) -> Vec<i32> {
        let mut v = vec![0; size];
        for &(b, e) in &self.exponents {
            v[b] = e;
        }
        v
    }

    pub fn degree(&self) -> i64 {
        self.exponents.iter().map(|&(_, e)| e as i64).sum()
    }

    pub fn times(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.exponents.len() + other.exponents.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.exponents, &other.exponents);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push(b[j]);
                j += 1;
            } else {
                let e = a[i].1 + b[j].1;
                if e != 0 {
                    out.push((a[i].0, e));
                }
                i += 1;
                j += 1;
            }
        }
        LaurentMonomial { q: self.q + other.q, exponents: out }
    }
}

impl fmt::Display for LaurentMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.q > 0 {
            parts.push(if self.q == 1 { "q".to_string() } else { format!("q^{}", self.q) });
        }
        for &(b, e) in &self.exponents {
            parts.push(if e == 1 { format!("a{b}") } else { format!("a{b}^{e}") });
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// Integer combination of [`LaurentMonomial`]s in canonical form.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentPolynomial {
    terms: BTreeMap<LaurentMonomial, BigInt>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_monomial(LaurentMonomial::one())
    }

    pub fn from_monomial(m: LaurentMonomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m, BigInt::one());
        p
    }

    pub fn add_term(&mut self, m: LaurentMonomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LaurentMonomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The monomial, if this is `1 · monomial`.
    pub fn as_monomial(&self) -> Option<&LaurentMonomial> {
        match self.terms.iter().next() {
            Some((m, c)) if self.terms.len() == 1 && c.is_one() => Some(m),
            _ => None,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.times(b), x * y);
            }
        }
        out
    }

    pub fn scale(&self, m: &LaurentMonomial, c: &BigInt) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            out.add_term(a.times(m), x * c);
        }
        out
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms.iter().map(|(m, c)| if c.is_one() { m.to_string() } else { format!("({c})*{m}") }).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Sum over embeddings `ι` of `a_{ι(I)}`.
pub fn restrict_plucker(poset: &MinusculePoset, ideal: &OrderIdeal) -> LaurentPolynomial {
    let mut out = LaurentPolynomial::zero();
    for emb in poset.embeddings(ideal) {
        out.add_term(LaurentMonomial::of_set(emb), BigInt::one());
    }
    out
}

/// Restriction of Plücker polynomials with per-ideal caching.
pub struct Restrictor<'a> {
    poset: &'a MinusculePoset,
    cache: HashMap<OrderIdeal, LaurentPolynomial>,
}

impl<'a> Restrictor<'a> {
    pub fn new(poset: &'a MinusculePoset) -> Self {
        Restrictor { poset, cache: HashMap::new() }
    }

    pub fn plucker(&mut self, ideal: &OrderIdeal) -> &LaurentPolynomial {
        let poset = self.poset;
        self.cache.entry(ideal.clone()).or_insert_with(|| restrict_plucker(poset, ideal))
    }

    pub fn polynomial(&mut self, poly: &PluckerPolynomial) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero();
        for (m, c) in poly.terms() {
            let mut product = LaurentPolynomial::from_monomial(LaurentMonomial { q: m.q, exponents: vec![] });
            for factor in &m.factors {
                product = product.mul(self.plucker(factor));
            }
            for (pm, pc) in product.terms {
                out.add_term(pm, pc * c);
            }
        }
        out
    }
}

const PRIME: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(PRIME)) as u64
}

/// Values of Plücker polynomials at one pseudo-random point of the torus,
/// reduced modulo the prime `2^61 - 1`. A nonzero value proves that a
/// polynomial does not vanish on the torus.
pub struct PointEvaluator<'a> {
    poset: &'a MinusculePoset,
    point: Vec<u64>,
    q: u64,
    cache: HashMap<OrderIdeal, u64>,
}

impl<'a> PointEvaluator<'a> {
    pub fn new(poset: &'a MinusculePoset, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let point = (0..poset.len()).map(|_| rng.gen_range(1..PRIME)).collect();
        let q = rng.gen_range(1..PRIME);
        PointEvaluator { poset, point, q, cache: HashMap::new() }
    }

    pub fn plucker(&mut self, ideal: &OrderIdeal) -> u64 {
        let (poset, point) = (self.poset, &self.point);
        *self.cache.entry(ideal.clone()).or_insert_with(|| {
            poset
                .embeddings(ideal)
                .iter()
                .map(|emb| emb.iter().fold(1, |acc, &b| mul_mod(acc, point[b])))
                .fold(0, |acc, v| (acc + v) % PRIME)
        })
    }

    pub fn polynomial(&mut self, poly: &PluckerPolynomial) -> u64 {
        let modulus = BigInt::from(PRIME);
        let mut total = 0;
        for (m, c) in poly.terms() {
            let reduced = ((c % &modulus) + &modulus) % &modulus;
            let mut value = reduced.to_u64().expect("reduced below the modulus");
            for _ in 0..m.q {
                value = mul_mod(value, self.q);
            }
            for factor in &m.factors {
                value = mul_mod(value, self.plucker(factor));
            }
            total = (total + value) % PRIME;
        }
        total
    }
}

pub fn restrict_polynomial(poset: &MinusculePoset, poly: &PluckerPolynomial) -> LaurentPolynomial {
    Restrictor::new(poset).polynomial(poly)
}

/// `prod_{j=1}^{c} a_{I_{i_j}}` as a dense exponent vector.
pub fn expected_minor_monomial(poset: &MinusculePoset, istar: usize) -> Result<Vec<i32>, crate::Error> {
    let c = comin_coefficients(poset.datum())[istar - 1] as usize;
    let seq = poset.ideal_sequence(istar)?;
    let mut exps = vec![0i32; poset.len()];
    for ideal in seq.iter().take(c) {
        for b in ideal.bits().ones() {
            exps[b] += 1;
        }
    }
    Ok(exps)
}

/// `sum_{ind(b) = j} a_b`.
pub fn label_sum(poset: &MinusculePoset, j: usize) -> LaurentPolynomial {
    let mut out = LaurentPolynomial::zero();
    for b in (0..poset.len()).filter(|&b| poset.label(b) == j) {
        out.add_term(LaurentMonomial::of_set([b]), BigInt::one());
    }
    out
}

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl CheckResult {
    fn new(name: &str, index: Option<usize>, passed: bool, detail: impl Into<String>) -> Self {
        let detail = if passed { String::new() } else { detail.into() };
        CheckResult { name: name.to_string(), index, passed, detail }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| !c.passed)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOptions {
    pub with_oracle: bool,
    /// Adds the conjectural `Δ(D_i) = δ(D_i)` comparison for every term.
    pub with_quantum_derivation: bool,
}

/// First monomial on which two Laurent polynomials differ.
fn counterexample(lhs: &LaurentPolynomial, rhs: &LaurentPolynomial) -> String {
    let diff = lhs.sub(rhs);
    let first = diff.terms().next().map(|(m, c)| format!("lhs - rhs has coefficient {c} on {m}"));
    first.unwrap_or_default()
}

/// Torus identities for every term of the model, sorted by index.
pub fn verify_model(model: &Model, options: VerifyOptions) -> VerificationReport {
    let poset = &model.poset;
    let datum = poset.datum();
    let n = datum.rank;
    let k = datum.node;
    let size = poset.len();
    let sigma = dynkin_involution(datum, k);
    let coeffs = comin_coefficients(datum);
    let mut restrictor = Restrictor::new(poset);
    let mut checks = Vec::new();

    let mut linear_total = LaurentPolynomial::zero();
    for term in &model.superpotential.terms {
        let i = term.index;
        if term.quantum {
            continue;
        }
        let den = restrictor.polynomial(&term.denominator);
        let num = restrictor.polynomial(&term.numerator);
        let form = if i == 0 { label_sum(poset, k) } else { label_sum(poset, sigma[i]) };
        if i != 0 {
            let expected = expected_minor_monomial(poset, i).map(|e| LaurentMonomial::from_dense(0, &e));
            let (ok, detail) = match &expected {
                Ok(m) => {
                    let rhs = LaurentPolynomial::from_monomial(m.clone());
                    (den == rhs, counterexample(&den, &rhs))
                }
                Err(e) => (false, e.to_string()),
            };
            checks.push(CheckResult::new("denominator_monomial", Some(i), ok, detail));
            let rhs = den.mul(&form);
            checks.push(CheckResult::new("numerator_identity", Some(i), num == rhs, counterexample(&num, &rhs)));

            let c = coeffs[i - 1] as usize;
            if let Ok(seq) = poset.ideal_sequence(i) {
                let last = restrictor.plucker(&seq[c - 1]);
                let ok = last.as_monomial().is_some();
                checks.push(CheckResult::new("last_ideal_monomial", Some(i), ok, format!("{} terms", last.len())));
            }
            if let Some(moves) = model.move_posets.get(&i) {
                let graded = moves.is_graded();
                checks.push(CheckResult::new(
                    "move_poset_graded",
                    Some(i),
                    graded,
                    format!("edges across levels: {:?}", moves.grading_violations()),
                ));
                if c == 2 {
                    let single = !moves.has_multi_box_move();
                    checks.push(CheckResult::new("single_box_moves", Some(i), single, "a move carries several boxes"));
                }
            }
            if options.with_oracle {
                checks.push(oracle_check(poset, i));
            }
        } else {
            let rhs = den.mul(&form);
            checks.push(CheckResult::new("numerator_identity", Some(0), num == rhs, counterexample(&num, &rhs)));
        }
        linear_total = linear_total.add(&form);
    }

    let mut all_boxes = LaurentPolynomial::zero();
    for b in 0..size {
        all_boxes.add_term(LaurentMonomial::of_set([b]), BigInt::one());
    }
    checks.push(CheckResult::new(
        "linear_forms_sum",
        None,
        linear_total == all_boxes,
        counterexample(&linear_total, &all_boxes),
    ));

    let prime = &model.quantum.1;
    match model.superpotential.term(k) {
        Some(term) => {
            let expected_num =
                restrictor.plucker(prime).scale(&LaurentMonomial { q: 1, exponents: vec![] }, &BigInt::one());
            let num = restrictor.polynomial(&term.numerator);
            let den = restrictor.polynomial(&term.denominator);
            let a_lambda = LaurentPolynomial::from_monomial(LaurentMonomial::of_set(0..size));
            let ok = num == expected_num && den == a_lambda && term.quantum;
            checks.push(CheckResult::new("quantum_term", Some(k), ok, counterexample(&num, &expected_num)));
        }
        None => checks.push(CheckResult::new("quantum_term", Some(k), false, "no term at index k")),
    }

    let degree = 1 + coeffs.iter().sum::<i64>();
    let index = anticanonical_index(datum);
    checks.push(CheckResult::new(
        "anticanonical_index",
        None,
        degree == index,
        format!("1 + sum c_i = {degree}, expected {index}"),
    ));

    let ideals = poset.order_ideals().len();
    let orbit = weyl_oracle::weyl_orbit_size(datum);
    checks.push(CheckResult::new(
        "ideal_count",
        None,
        ideals == orbit,
        format!("{ideals} ideals, orbit of size {orbit}"),
    ));

    let terms = model.superpotential.terms.len();
    checks.push(CheckResult::new("term_count", None, terms == n + 1, format!("{terms} terms")));

    if options.with_quantum_derivation {
        for term in &model.superpotential.terms {
            checks.push(quantum_derivation_check(model, term, &mut restrictor));
        }
    }

    checks.sort_by_key(|c| (c.index.unwrap_or(usize::MAX), c.name.clone()));
    VerificationReport { checks }
}

/// `Δ(D_i)` against the numerator of term `i`. Passing means equality on the
/// torus; the detail records whether the two also agree term by term.
fn quantum_derivation_check(model: &Model, term: &Term, restrictor: &mut Restrictor<'_>) -> CheckResult {
    let name = "quantum_derivation";
    let lhs = match quantum_derivation(&model.poset, &term.denominator) {
        Ok(p) => p,
        Err(e) => return CheckResult::new(name, Some(term.index), false, e.to_string()),
    };
    if lhs == term.numerator {
        return CheckResult::new(name, Some(term.index), true, "");
    }
    let difference = lhs.sub(&term.numerator);
    let sampled = PointEvaluator::new(&model.poset, term.index as u64).polynomial(&difference);
    if sampled != 0 {
        let detail = format!("lhs - rhs is {sampled} mod 2^61-1 at a sampled torus point");
        return CheckResult::new(name, Some(term.index), false, detail);
    }
    let restricted = restrictor.polynomial(&difference);
    if restricted.is_zero() {
        let detail =
            format!("equal on the torus only; the Plücker polynomials differ in {} monomials", difference.len());
        return CheckResult::new(name, Some(term.index), true, detail);
    }
    CheckResult::new(name, Some(term.index), false, counterexample(&restricted, &LaurentPolynomial::zero()))
}

fn oracle_check(poset: &MinusculePoset, istar: usize) -> CheckResult {
    let outcome = weyl_oracle::minor_exponents_via_weights(poset, istar).and_then(|(exps, h)| {
        let expected = expected_minor_monomial(poset, istar)?;
        let seq = poset.ideal_sequence(istar)?;
        let c = comin_coefficients(poset.datum())[istar - 1] as usize;
        let height: usize = seq.iter().take(c).map(OrderIdeal::len).sum();
        let exps: Vec<i32> = exps.iter().map(|&e| e as i32).collect();
        if exps != expected {
            return Ok(format!("oracle exponents {exps:?}, expected {expected:?}"));
        }
        if h as usize != height {
            return Ok(format!("oracle height {h}, expected {height}"));
        }
        Ok(String::new())
    });
    match outcome {
        Ok(detail) => CheckResult::new("oracle_exponents", Some(istar), detail.is_empty(), detail),
        Err(e) => CheckResult::new("oracle_exponents", Some(istar), false, e.to_string()),
    }
}
