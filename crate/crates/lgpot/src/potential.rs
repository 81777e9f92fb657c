// SPDX-License-Identifier: MIT
//! Plücker polynomials, the box-adding derivations and the superpotential.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::moves::denominator_polynomial;
use crate::poset::{MinusculePoset, OrderIdeal};
use crate::root_data::dynkin_involution;
use crate::Error;

/// `q^q · p_{I_1} ⋯ p_{I_r}` with the factors kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub q: u32,
    pub factors: Vec<OrderIdeal>,
}

impl Monomial {
    pub fn new(q: u32, mut factors: Vec<OrderIdeal>) -> Self {
        factors.sort();
        Monomial { q, factors }
    }

    pub fn degree(&self) -> usize {
        self.factors.len()
    }

    fn times(&self, other: &Monomial) -> Monomial {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        Monomial::new(self.q + other.q, factors)
    }
}

/// Integer combination of Plücker monomials in canonical form.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PluckerPolynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl PluckerPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn plucker(ideal: OrderIdeal) -> Self {
        Self::monomial(Monomial::new(0, vec![ideal]), BigInt::one())
    }

    pub fn monomial(m: Monomial, coeff: BigInt) -> Self {
        let mut p = Self::zero();
        p.add_monomial(m, coeff);
        p
    }

    pub fn add_monomial(&mut self, m: Monomial, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Common number of factors, if all monomials agree.
    pub fn degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_monomial(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_monomial(m.clone(), -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_monomial(a.times(b), x * y);
            }
        }
        out
    }

    /// Applies a linear map on single factors, extended by the product rule.
    fn derive_with<F>(&self, mut on_factor: F) -> Self
    where
        F: FnMut(&OrderIdeal) -> Vec<(u32, OrderIdeal)>,
    {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            for pos in 0..m.factors.len() {
                for (dq, replaced) in on_factor(&m.factors[pos]) {
                    let mut factors = m.factors.clone();
                    factors[pos] = replaced;
                    out.add_monomial(Monomial::new(m.q + dq, factors), c.clone());
                }
            }
        }
        out
    }
}

impl fmt::Display for PluckerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            let neg = c < &BigInt::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            if m.q > 0 {
                write!(f, "q")?;
                if m.q > 1 {
                    write!(f, "^{}", m.q)?;
                }
                write!(f, "*")?;
            }
            let factors: Vec<String> = m.factors.iter().map(|i| format!("p{:?}", i.ids())).collect();
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// `δ_j`: add a box labeled `j` to each factor in turn, dropping factors where
/// that is impossible.
pub fn apply_derivation(poset: &MinusculePoset, j: usize, poly: &PluckerPolynomial) -> PluckerPolynomial {
    poly.derive_with(|ideal| poset.add_box(ideal, j).map(|i| (0, i)).into_iter().collect())
}

/// `δ_{σ_k(i*)}(D_{i*})`.
pub fn numerator_polynomial(poset: &MinusculePoset, istar: usize) -> Result<PluckerPolynomial, Error> {
    let datum = poset.datum();
    if istar == 0 || istar == datum.node || istar > datum.rank {
        return Err(Error::InvalidIndex { index: istar, datum: *datum });
    }
    let j = dynkin_involution(datum, datum.node)[istar];
    Ok(apply_derivation(poset, j, &denominator_polynomial(poset, istar)?))
}

/// One summand `numerator / denominator` of the superpotential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub index: usize,
    pub quantum: bool,
    pub numerator: PluckerPolynomial,
    pub denominator: PluckerPolynomial,
}

/// The `n + 1` terms, ordered by index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Superpotential {
    pub terms: Vec<Term>,
}

impl Superpotential {
    pub fn term(&self, index: usize) -> Option<&Term> {
        self.terms.iter().find(|t| t.index == index)
    }
}

/// Assembles every term from the denominators supplied by `denominator`
/// (which is called for each `i* ∉ {0, k}`).
#[allow(clippy::needless_range_loop)]
pub fn assemble_with<F>(poset: &MinusculePoset, mut denominator: F) -> Result<Superpotential, Error>
where
    F: FnMut(usize) -> Result<PluckerPolynomial, Error>,
{
    let datum = poset.datum();
    let k = datum.node;
    let sigma = dynkin_involution(datum, k);
    let (_, prime) = poset.quantum_ideals()?;
    let box_one = poset.add_box(&poset.empty_ideal(), k).expect("the minimal element is labeled k");
    let mut terms = vec![Term {
        index: 0,
        quantum: false,
        numerator: PluckerPolynomial::plucker(box_one),
        denominator: PluckerPolynomial::plucker(poset.empty_ideal()),
    }];
    for istar in 1..=datum.rank {
        if istar == k {
            terms.push(Term {
                index: k,
                quantum: true,
                numerator: PluckerPolynomial::monomial(Monomial::new(1, vec![prime.clone()]), BigInt::one()),
                denominator: PluckerPolynomial::plucker(poset.full_ideal()),
            });
        } else {
            let den = denominator(istar)?;
            let num = apply_derivation(poset, sigma[istar], &den);
            terms.push(Term { index: istar, quantum: false, numerator: num, denominator: den });
        }
    }
    Ok(Superpotential { terms })
}

pub fn assemble_superpotential(poset: &MinusculePoset) -> Result<Superpotential, Error> {
    assemble_with(poset, |istar| denominator_polynomial(poset, istar))
}

/// Conjectural quantum Chevalley rule for the hyperplane class: all single
/// box additions, plus `q · p_{I∖I''}` when `I'' ⊆ I` and the difference is
/// isomorphic to an ideal.
pub fn quantum_chevalley(poset: &MinusculePoset, ideal: &OrderIdeal) -> Result<Vec<(u32, OrderIdeal)>, Error> {
    let (double_prime, _) = poset.quantum_ideals()?;
    Ok(chevalley_terms(poset, &double_prime, ideal))
}

fn chevalley_terms(poset: &MinusculePoset, double_prime: &OrderIdeal, ideal: &OrderIdeal) -> Vec<(u32, OrderIdeal)> {
    let mut out: Vec<(u32, OrderIdeal)> = poset.addable(ideal).map(|b| (0, ideal.with(b))).collect();
    if double_prime.is_subset(ideal) {
        if let Some(rest) = poset.isomorphic_ideal(&ideal.difference(double_prime)) {
            out.push((1, rest));
        }
    }
    out
}

/// `Δ`: [`quantum_chevalley`] on each factor, extended by the product rule.
pub fn quantum_derivation(poset: &MinusculePoset, poly: &PluckerPolynomial) -> Result<PluckerPolynomial, Error> {
    let (double_prime, _) = poset.quantum_ideals()?;
    Ok(poly.derive_with(|ideal| chevalley_terms(poset, &double_prime, ideal)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_data::{CominusculeDatum, Family};

    fn lg36() -> MinusculePoset {
        MinusculePoset::build(&CominusculeDatum::new(Family::C, 3, 3).unwrap()).unwrap()
    }

    #[test]
    fn derivation_of_empty_and_full() {
        let p = lg36();
        let d = apply_derivation(&p, 3, &PluckerPolynomial::plucker(p.empty_ideal()));
        assert_eq!(d, PluckerPolynomial::plucker(p.empty_ideal().with(0)));
        for j in 1..=3 {
            assert!(apply_derivation(&p, j, &PluckerPolynomial::plucker(p.full_ideal())).is_zero());
        }
    }

    #[test]
    fn cancellation_drops_terms() {
        let p = lg36();
        let a = PluckerPolynomial::plucker(p.full_ideal());
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn term_count() {
        let p = lg36();
        let w = assemble_superpotential(&p).unwrap();
        assert_eq!(w.terms.len(), 4);
        assert!(w.terms[3].quantum);
    }
}
