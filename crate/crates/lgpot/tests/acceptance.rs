// SPDX-License-Identifier: MIT
//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Every identity is compared exactly, so the coefficient tolerance is zero.
//! A criterion that fails only on entries of `KNOWN_FAILURES` is printed as
//! `FAIL (known)` and does not change the exit status; any other failure
//! exits with status 1.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use lgpot::golden::{self, EntryKind};
use lgpot::moves::generate_move_poset;
use lgpot::potential::quantum_derivation;
use lgpot::root_data::{anticanonical_index, comin_coefficients};
use lgpot::toric::{verify_model, LaurentMonomial, Restrictor, VerificationReport, VerifyOptions};
use lgpot::weyl_oracle::{exponents_along, minor_exponents_via_weights, random_linear_extension, weyl_orbit_size};
use lgpot::{CominusculeDatum, Family, LaurentPolynomial, MinusculePoset, Model};
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Largest allowed absolute coefficient difference in any identity.
const COEFFICIENT_TOLERANCE: u64 = 0;
/// Linear extensions sampled per datum and index.
const EXTENSIONS_PER_CASE: usize = 3;
const EXTENSION_SEED: u64 = 0x5eed;
/// Unoptimized builds get this multiple of each runtime budget.
const DEBUG_BUDGET_FACTOR: u32 = 12;

/// (criterion, subject) pairs that fail for reasons recorded outside the code.
const KNOWN_FAILURES: &[(u8, &str)] = &[
    (1, "e7 denominator 4"),
    (1, "e7 numerator 4"),
    (1, "E7/P7 D_4 has 40 monomials"),
    (2, "E7/P7 denominator_monomial[4]"),
    (2, "E7/P7 numerator_identity[4]"),
    (5, "E7/P7 move_poset_graded[4]"),
    (6, "E7/P7 cleared potential"),
];

struct Outcome {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { failures: Vec::new(), notes: Vec::new() }
    }

    fn require(&mut self, ok: bool, subject: impl Into<String>) {
        if !ok {
            self.failures.push(subject.into());
        }
    }
}

fn budget(seconds: u64) -> Duration {
    let base = Duration::from_secs(seconds);
    if cfg!(debug_assertions) {
        base * DEBUG_BUDGET_FACTOR
    } else {
        base
    }
}

/// The data covered by the toric suite.
fn suite() -> Vec<CominusculeDatum> {
    CominusculeDatum::all_up_to(7)
        .into_iter()
        .filter(|d| !matches!(d.family, Family::B | Family::C) || d.rank <= 6)
        .collect()
}

fn datum(family: Family, rank: usize, node: usize) -> CominusculeDatum {
    CominusculeDatum::new(family, rank, node).expect("valid datum")
}

fn check_passed(report: &VerificationReport, name: &str, index: Option<usize>) -> Option<bool> {
    report.checks.iter().find(|c| c.name == name && c.index == index).map(|c| c.passed)
}

fn golden_formulas() -> Outcome {
    let mut out = Outcome::new();
    let corpus = golden::bundled_corpus().expect("bundled corpus parses");
    let mut models = BTreeMap::new();
    for case in &corpus {
        let d = case.datum().expect("corpus datum");
        let model = models.entry(d).or_insert_with(|| Model::build(d).expect("model builds"));
        let report = golden::compare_with_model(case, model).expect("corpus maps onto the poset");
        for e in &report.entries {
            let what = match e.what {
                EntryKind::Denominator => "denominator",
                EntryKind::Numerator => "numerator",
            };
            let worst =
                e.mismatches.iter().map(|m| (&m.expected - &m.computed).magnitude().clone()).max().unwrap_or_default();
            out.require(worst <= COEFFICIENT_TOLERANCE.into(), format!("{} {what} {}", case.case, e.index));
        }
    }

    let count = |d: CominusculeDatum, i: usize| models[&d].superpotential.term(i).map(|t| t.denominator.len());
    let numerator = |d: CominusculeDatum, i: usize| models[&d].superpotential.term(i).map(|t| t.numerator.len());
    let e6 = datum(Family::E6, 6, 6);
    let e7 = datum(Family::E7, 7, 7);
    let og16 = datum(Family::D, 8, 8);
    out.require(count(e6, 4) == Some(9), "E6/P6 D_4 has 9 monomials");
    out.require(numerator(e6, 4) == Some(5), "E6/P6 delta_4 D_4 has 5 monomials");
    out.require(count(e7, 3) == Some(12), "E7/P7 D_3 has 12 monomials");
    out.require(count(e7, 5) == Some(12), "E7/P7 D_5 has 12 monomials");
    out.require(count(e7, 4) == Some(40), "E7/P7 D_4 has 40 monomials");
    out.require(count(og16, 4) == Some(8), "D8/P8 D_4 has 8 monomials");

    let poset = &models[&og16].poset;
    let moves = generate_move_poset(poset, 4).expect("move poset");
    let sizes: Vec<usize> = (0..=moves.depth()).map(|d| moves.level(d).count()).collect();
    out.require(sizes == [1, 1, 1, 2, 1, 1, 1], format!("D8/P8 move poset level sizes {sizes:?}"));
    out.notes.push(format!("{} golden cases", corpus.len()));
    out
}

fn toric_suite(reports: &[(CominusculeDatum, VerificationReport)]) -> Outcome {
    let mut out = Outcome::new();
    let mut identities = 0;
    for (d, report) in reports {
        for c in &report.checks {
            if c.name == "denominator_monomial" || c.name == "numerator_identity" {
                identities += 1;
                out.require(c.passed, format!("{d} {}[{}]", c.name, c.index.unwrap_or(0)));
            }
        }
    }
    out.notes.push(format!("{} data, {identities} identities", reports.len()));
    out
}

fn oracle_equivalence(models: &[Model], reports: &[(CominusculeDatum, VerificationReport)]) -> Outcome {
    let mut out = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(EXTENSION_SEED);
    let mut cases = 0;
    for (model, (d, report)) in models.iter().zip(reports) {
        let poset: &MinusculePoset = &model.poset;
        for i in (1..=d.rank).filter(|&i| i != d.node) {
            cases += 1;
            out.require(check_passed(report, "oracle_exponents", Some(i)) == Some(true), format!("{d} oracle[{i}]"));
            let base = minor_exponents_via_weights(poset, i).ok();
            for _ in 0..EXTENSIONS_PER_CASE {
                let order = random_linear_extension(poset, &mut rng);
                let other = exponents_along(poset, i, &order).ok();
                out.require(base.is_some() && other == base, format!("{d} extension independence[{i}]"));
            }
        }
    }
    out.notes.push(format!("{cases} cases, {EXTENSIONS_PER_CASE} extensions each"));
    out
}

fn degree_and_index(models: &[Model]) -> Outcome {
    let mut out = Outcome::new();
    for m in models {
        let d = m.datum;
        let n = d.rank as i64;
        let expected = match d.family {
            Family::A => n + 1,
            Family::B | Family::C => 2 * n,
            Family::D => 2 * n - 2,
            Family::E6 => 12,
            Family::E7 => 18,
        };
        let degree = 1 + comin_coefficients(&d).iter().sum::<i64>();
        out.require(degree == expected && anticanonical_index(&d) == expected, format!("{d} index {degree}"));
        out.require(m.superpotential.terms.len() == d.rank + 1, format!("{d} term count"));
    }
    out
}

fn structure_counts(models: &[Model], reports: &[(CominusculeDatum, VerificationReport)]) -> Outcome {
    let mut out = Outcome::new();
    for (expected, (f, n, k)) in [(56, (Family::E7, 7, 7)), (27, (Family::E6, 6, 6)), (6, (Family::A, 3, 2))] {
        let size = weyl_orbit_size(&datum(f, n, k));
        out.require(size == expected, format!("{f}{n}/P{k} orbit size {size}"));
    }
    for (model, (d, report)) in models.iter().zip(reports) {
        out.require(model.poset.order_ideals().len() == weyl_orbit_size(d), format!("{d} ideal count"));
        let coeffs = comin_coefficients(d);
        for i in (1..=d.rank).filter(|&i| i != d.node) {
            let mut names = vec!["last_ideal_monomial", "move_poset_graded"];
            if coeffs[i - 1] == 2 {
                names.push("single_box_moves");
            }
            for name in names {
                out.require(check_passed(report, name, Some(i)) == Some(true), format!("{d} {name}[{i}]"));
            }
        }
    }
    out
}

/// `sum_i N_i / D_i` on the torus, provided every denominator restricts to
/// a single monomial.
fn cleared_potential(model: &Model) -> Option<LaurentPolynomial> {
    let mut restrictor = Restrictor::new(&model.poset);
    let mut total = LaurentPolynomial::zero();
    for t in &model.superpotential.terms {
        let den = restrictor.polynomial(&t.denominator);
        let m = den.as_monomial()?;
        let (_, c) = den.terms().next()?;
        if c.magnitude() != &1u32.into() {
            return None;
        }
        let inverse = LaurentMonomial { q: 0, exponents: m.exponents.iter().map(|&(b, e)| (b, -e)).collect() };
        let num = restrictor.polynomial(&t.numerator);
        total = total.add(&num.scale(&inverse, c));
    }
    Some(total)
}

fn quantum_term(models: &[Model], reports: &[(CominusculeDatum, VerificationReport)]) -> Outcome {
    let mut out = Outcome::new();
    for (model, (d, report)) in models.iter().zip(reports) {
        out.require(check_passed(report, "quantum_term", Some(d.node)) == Some(true), format!("{d} quantum term"));
        let size = model.poset.len();
        let mut expected = LaurentPolynomial::zero();
        for b in 0..size {
            expected.add_term(LaurentMonomial::of_set([b]), BigInt::from(1));
        }
        let mut restrictor = Restrictor::new(&model.poset);
        let prime = restrictor.plucker(&model.quantum.1).clone();
        let inverse_all = LaurentMonomial { q: 1, exponents: (0..size).map(|b| (b, -1)).collect() };
        expected = expected.add(&prime.scale(&inverse_all, &BigInt::from(1)));
        out.require(cleared_potential(model).as_ref() == Some(&expected), format!("{d} cleared potential"));
        if d.family == Family::A && (d.node == 1 || d.node == d.rank) {
            out.require(model.quantum.1.is_empty(), format!("{d} I' is empty"));
        }
    }
    out
}

fn quantum_derivation_scope(models: &[Model]) -> Outcome {
    let mut out = Outcome::new();
    let options = VerifyOptions { with_oracle: false, with_quantum_derivation: true };
    let lg36 = models.iter().find(|m| m.datum == datum(Family::C, 3, 3)).expect("C3/P3 is in the suite");
    for t in &lg36.superpotential.terms {
        let lhs = quantum_derivation(&lg36.poset, &t.denominator).ok();
        out.require(lhs.as_ref() == Some(&t.numerator), format!("C3/P3 formal equality[{}]", t.index));
    }
    let mut formal_only = Vec::new();
    let mut findings = Vec::new();
    for m in models {
        let d = m.datum;
        let in_scope = matches!(d.family, Family::A | Family::C) && d.rank <= 5;
        let report = verify_model(m, options);
        for c in report.checks.iter().filter(|c| c.name == "quantum_derivation") {
            let subject = format!("{d}[{}]", c.index.unwrap_or(0));
            if in_scope {
                out.require(c.passed, format!("{subject} quantum derivation"));
            } else if !c.passed {
                findings.push(subject);
            } else if !c.detail.is_empty() {
                formal_only.push(subject);
            }
        }
    }
    if !formal_only.is_empty() {
        out.notes.push(format!("equal on the torus only: {}", formal_only.join(" ")));
    }
    if !findings.is_empty() {
        out.notes.push(format!("findings outside scope: {}", findings.join(" ")));
    }
    out
}

fn main() -> ExitCode {
    let mut unexpected = false;
    let mut report_line = |id: u8, title: &str, limit: Duration, elapsed: Duration, outcome: Outcome| {
        let over_budget = elapsed > limit;
        let unknown: Vec<&String> =
            outcome.failures.iter().filter(|f| !KNOWN_FAILURES.contains(&(id, f.as_str()))).collect();
        let status = if outcome.failures.is_empty() && !over_budget {
            "PASS"
        } else if unknown.is_empty() && !over_budget {
            "FAIL (known)"
        } else {
            unexpected = true;
            "FAIL"
        };
        println!("{status:<12} criterion {id}: {title} [{:.2}s of {}s]", elapsed.as_secs_f64(), limit.as_secs());
        for f in &outcome.failures {
            let tag = if unknown.contains(&f) { "unexpected" } else { "known" };
            println!("             {tag}: {f}");
        }
        for &(k, subject) in KNOWN_FAILURES.iter().filter(|(k, _)| *k == id) {
            if !outcome.failures.iter().any(|f| f == subject) {
                println!("             known failure no longer fails: {subject} (criterion {k})");
            }
        }
        for n in &outcome.notes {
            println!("             {n}");
        }
    };

    let start = Instant::now();
    let golden = golden_formulas();
    report_line(1, "golden formulas", budget(10), start.elapsed(), golden);

    let start = Instant::now();
    let data = suite();
    let models: Vec<Model> = data.iter().map(|&d| Model::build(d).expect("model builds")).collect();
    let options = VerifyOptions { with_oracle: true, with_quantum_derivation: false };
    let reports: Vec<(CominusculeDatum, VerificationReport)> =
        models.iter().map(|m| (m.datum, verify_model(m, options))).collect();
    let toric = toric_suite(&reports);
    report_line(2, "toric identities", budget(60), start.elapsed(), toric);

    let start = Instant::now();
    let oracle = oracle_equivalence(&models, &reports);
    report_line(3, "weight-lattice oracle", budget(10), start.elapsed(), oracle);

    let start = Instant::now();
    let degree = degree_and_index(&models);
    report_line(4, "degree and index", budget(1), start.elapsed(), degree);

    let start = Instant::now();
    let counts = structure_counts(&models, &reports);
    report_line(5, "structure counts", budget(20), start.elapsed(), counts);

    let start = Instant::now();
    let quantum = quantum_term(&models, &reports);
    report_line(6, "quantum term", budget(10), start.elapsed(), quantum);

    let start = Instant::now();
    let derivation = quantum_derivation_scope(&models);
    report_line(7, "quantum derivation", budget(10), start.elapsed(), derivation);

    if unexpected {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
