//! Pairs `(a, γ)` of definition, their minimality certificates, the invariant
//! `j(a, K, γ)`, and the value-transcendental lift `Γ = (γ, -1)`.

use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::algext::{cross_distances, AlgebraicElement};
use crate::basefield::ValuedField;
use crate::error::{Error, Result};
use crate::exactpoly::Poly;
use crate::ordvals::OrderedValue;

/// Why a pair is accepted as minimal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum MinimalityCertificate {
    /// `γ > kras(a, K)`, or `a ∈ K`.
    KrasnerSufficient,
    /// `a` is totally ramified (`e = n`) and `γ > v(a)`: any `b` with
    /// `v(a - b) >= γ` has `v(b) = v(a)`, hence ramification index `>= n`.
    RamificationBound,
    /// Every declared candidate `b` with `deg b < deg a` has `v(a - b) < γ`.
    BruteForceChecked { candidates: usize },
    /// Not checked; verdicts built on it are flagged.
    UserAsserted,
}

impl MinimalityCertificate {
    pub fn is_asserted(&self) -> bool {
        matches!(self, MinimalityCertificate::UserAsserted)
    }
}

/// Outcome of [`check_minimality`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinimalityCheck {
    Certified(MinimalityCertificate),
    Refuted { witness: String, distance: OrderedValue },
    Unknown,
}

/// A closer approximant to test against: an element of `K`, or an algebraic
/// element given by its minimal polynomial.
#[derive(Clone, Debug)]
pub enum Candidate<K: ValuedField> {
    Element(K::Elem),
    MinPoly(Poly<K>),
}

impl<K: ValuedField> Candidate<K> {
    fn degree(&self) -> usize {
        match self {
            Candidate::Element(_) => 1,
            Candidate::MinPoly(q) => q.degree().unwrap_or(0),
        }
    }

    fn describe(&self, k: &K) -> String {
        match self {
            Candidate::Element(b) => k.format(b),
            Candidate::MinPoly(q) => format!("root of {q}"),
        }
    }
}

/// Residue- or value-transcendental, decided by the rank of `γ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TranscendenceType {
    ResidueTranscendental,
    ValueTranscendental,
}

fn gamma_rank(gamma: &OrderedValue) -> Result<usize> {
    match gamma {
        OrderedValue::Finite(c) if c.len() == 1 => Ok(1),
        OrderedValue::Finite(c) if c.len() == 2 && c[1] != BigRational::from_integer(0.into()) => Ok(2),
        OrderedValue::Finite(_) => Err(Error::Precondition(format!(
            "rank-2 γ needs a nonzero second coordinate, got {gamma}"
        ))),
        OrderedValue::Infinity => Err(Error::InfiniteValue),
    }
}

fn at_least(x: &OrderedValue, gamma: &OrderedValue) -> Result<bool> {
    let rank = gamma.rank().ok_or(Error::InfiniteValue)?;
    Ok(x.embed(rank)?.compare(gamma)?.is_ge())
}

/// `v(a - b)` for a candidate; for an algebraic candidate the largest value
/// over conjugates.
fn candidate_distance<K: ValuedField>(a: &AlgebraicElement<K>, b: &Candidate<K>) -> Result<OrderedValue> {
    match b {
        Candidate::Element(b) => {
            let x = Poly::linear(a.base().clone(), b);
            a.valuation_of(&x)
        }
        Candidate::MinPoly(qb) => {
            let d = cross_distances(a.min_poly(), qb)?;
            Ok(d.entries.first().map(|e| e.value.clone()).unwrap_or(OrderedValue::Infinity))
        }
    }
}

/// Tri-valued minimality check. Candidates of degree `>= deg a` are skipped
/// with a warning.
pub fn check_minimality<K: ValuedField>(
    a: &AlgebraicElement<K>,
    gamma: &OrderedValue,
    candidates: &[Candidate<K>],
) -> Result<(MinimalityCheck, Vec<String>)> {
    gamma_rank(gamma)?;
    let n = a.degree();
    let mut warnings = Vec::new();
    if n == 1 {
        return Ok((MinimalityCheck::Certified(MinimalityCertificate::KrasnerSufficient), warnings));
    }
    if let Some(k) = a.kras() {
        if !at_least(k, gamma)? {
            return Ok((MinimalityCheck::Certified(MinimalityCertificate::KrasnerSufficient), warnings));
        }
    }
    let usable: Vec<&Candidate<K>> = candidates
        .iter()
        .filter(|b| {
            let ok = b.degree() < n;
            if !ok {
                warnings.push(format!(
                    "candidate {} has degree {} >= {n}; skipped",
                    b.describe(a.base()),
                    b.degree()
                ));
            }
            ok
        })
        .collect();
    if !usable.is_empty() {
        for b in &usable {
            let d = candidate_distance(a, b)?;
            if at_least(&d, gamma)? {
                let witness = b.describe(a.base());
                return Ok((MinimalityCheck::Refuted { witness, distance: d }, warnings));
            }
        }
        let cert = MinimalityCertificate::BruteForceChecked { candidates: usable.len() };
        return Ok((MinimalityCheck::Certified(cert), warnings));
    }
    let v_a = OrderedValue::rational(a.value().clone());
    if a.e() as usize == n && !at_least(&v_a, gamma)? {
        return Ok((MinimalityCheck::Certified(MinimalityCertificate::RamificationBound), warnings));
    }
    Ok((MinimalityCheck::Unknown, warnings))
}

/// A pair `(a, γ)` together with the reason it is taken to be minimal.
#[derive(Clone, Debug)]
pub struct MinimalPair<K: ValuedField> {
    a: Arc<AlgebraicElement<K>>,
    gamma: OrderedValue,
    certificate: MinimalityCertificate,
}

impl<K: ValuedField> MinimalPair<K> {
    /// Runs [`check_minimality`] and fails unless the pair is certified.
    pub fn certify(a: Arc<AlgebraicElement<K>>, gamma: OrderedValue, candidates: &[Candidate<K>]) -> Result<(Self, Vec<String>)> {
        let (check, warnings) = check_minimality(&a, &gamma, candidates)?;
        match check {
            MinimalityCheck::Certified(certificate) => Ok((MinimalPair { a, gamma, certificate }, warnings)),
            MinimalityCheck::Refuted { witness, distance } => {
                Err(Error::NotMinimal(format!("v(a - {witness}) = {distance} >= γ = {gamma}")))
            }
            MinimalityCheck::Unknown => Err(Error::NotMinimal(format!(
                "γ = {gamma} is not above kras = {} and no candidate set settles it",
                a.kras().map_or("none".to_string(), |k| k.to_string())
            ))),
        }
    }

    /// Accepts the pair without checking (MP2).
    pub fn asserted(a: Arc<AlgebraicElement<K>>, gamma: OrderedValue) -> Result<Self> {
        gamma_rank(&gamma)?;
        Ok(MinimalPair {
            a,
            gamma,
            certificate: MinimalityCertificate::UserAsserted,
        })
    }

    pub fn element(&self) -> &AlgebraicElement<K> {
        &self.a
    }

    pub fn element_arc(&self) -> &Arc<AlgebraicElement<K>> {
        &self.a
    }

    pub fn gamma(&self) -> &OrderedValue {
        &self.gamma
    }

    pub fn certificate(&self) -> &MinimalityCertificate {
        &self.certificate
    }

    pub fn transcendence_type(&self) -> TranscendenceType {
        if self.rank() == 1 {
            TranscendenceType::ResidueTranscendental
        } else {
            TranscendenceType::ValueTranscendental
        }
    }

    pub fn rank(&self) -> usize {
        self.gamma.rank().expect("finite γ")
    }

    /// Number of conjugates (with multiplicity, including `a`) at distance
    /// `>= γ` from `a`.
    pub fn compute_j(&self) -> Result<usize> {
        self.a.conjugate_distances().count_at_least(&self.gamma)
    }

    /// `(a, (γ, -1))`, minimal with the same certificate.
    pub fn lift(&self) -> Result<Self> {
        match self.gamma.coords() {
            Some([g]) => Ok(MinimalPair {
                a: self.a.clone(),
                gamma: OrderedValue::pair(g.clone(), BigRational::from_integer((-1).into())),
                certificate: self.certificate.clone(),
            }),
            _ => Err(Error::Precondition(format!("only rank-1 γ can be lifted, got {}", self.gamma))),
        }
    }
}

impl<K: ValuedField> fmt::Display for MinimalPair<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, γ = {})", self.a.describe(), self.gamma)
    }
}

/// Result of [`pairs_equivalent`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Equivalence {
    pub equivalent: bool,
    /// `max v(a_i - a'_k)` over all conjugate pairs.
    pub max_distance: OrderedValue,
    /// Some but not all conjugate pairs are within `γ`: the answer holds for
    /// a suitable choice of conjugate of `a'`.
    pub conjugate_choice_sensitive: bool,
}

/// Whether `v(a - a') >= γ` for a suitable conjugate `a'`.
pub fn pairs_equivalent<K: ValuedField>(p1: &MinimalPair<K>, p2: &MinimalPair<K>) -> Result<Equivalence> {
    if p1.element().base().descriptor() != p2.element().base().descriptor() {
        return Err(Error::DomainMismatch(format!(
            "{} vs {}",
            p1.element().base().descriptor(),
            p2.element().base().descriptor()
        )));
    }
    if p1.gamma != p2.gamma {
        return Err(Error::Precondition(format!("different γ: {} vs {}", p1.gamma, p2.gamma)));
    }
    let d = cross_distances(p1.element().min_poly(), p2.element().min_poly())?;
    let max_distance = d.entries.first().map(|e| e.value.clone()).unwrap_or(OrderedValue::Infinity);
    let equivalent = at_least(&max_distance, &p1.gamma)?;
    let close = d.count_at_least(&p1.gamma)?;
    Ok(Equivalence {
        equivalent,
        max_distance,
        conjugate_choice_sensitive: equivalent && close < d.total(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basefield::{PAdicRationals, TAdicFunctionField};
    use crate::exactpoly::Field;

    fn elem(p: u64, c: &[i64]) -> Arc<AlgebraicElement<PAdicRationals>> {
        let k = PAdicRationals::new(p);
        Arc::new(AlgebraicElement::certify(k, Poly::from_ints(k, c)).unwrap())
    }

    fn g(s: &str) -> OrderedValue {
        s.parse().unwrap()
    }

    fn sqrt2_candidates() -> Vec<Candidate<PAdicRationals>> {
        let k = PAdicRationals::new(2);
        let mut c = vec![Candidate::Element(k.zero())];
        for u in [1, 3, 5, 7] {
            for e in -3..=3 {
                c.push(Candidate::Element(k.mul(&k.from_int(u), &k.uniformizer_pow(e))));
            }
        }
        c
    }

    /// `v(√2 - b) = min(1/2, v(b))` for `b ∈ Q`.
    fn hand_distance(b: &num_rational::BigRational) -> OrderedValue {
        let k = PAdicRationals::new(2);
        let vb = k.valuation(b);
        if vb > OrderedValue::from_ratio(1, 2) {
            OrderedValue::from_ratio(1, 2)
        } else {
            vb
        }
    }

    #[test]
    fn minimality_examples() {
        let a = elem(2, &[-2, 0, 1]);
        let (c, _) = check_minimality(&a, &g("2"), &[]).unwrap();
        assert_eq!(c, MinimalityCheck::Certified(MinimalityCertificate::KrasnerSufficient));

        let k = PAdicRationals::new(2);
        let (c, _) = check_minimality(&a, &g("1/2"), &[Candidate::Element(k.zero())]).unwrap();
        assert!(matches!(c, MinimalityCheck::Refuted { ref witness, .. } if witness == "0"), "{c:?}");

        let cands = sqrt2_candidates();
        for b in &cands {
            let Candidate::Element(b) = b else { unreachable!() };
            assert_eq!(candidate_distance(&a, &Candidate::Element(b.clone())).unwrap(), hand_distance(b));
        }
        let (c, _) = check_minimality(&a, &g("1"), &cands).unwrap();
        assert_eq!(
            c,
            MinimalityCheck::Certified(MinimalityCertificate::BruteForceChecked { candidates: 29 })
        );
    }

    #[test]
    fn unknown_without_candidates() {
        // unramified, γ = 0 <= kras = 0, no candidates
        let w = elem(2, &[1, 1, 1]);
        assert_eq!(check_minimality(&w, &g("0"), &[]).unwrap().0, MinimalityCheck::Unknown);
    }

    #[test]
    fn oversized_candidates_are_skipped() {
        let a = elem(2, &[-2, 0, 1]);
        let big = Candidate::MinPoly(Poly::from_ints(PAdicRationals::new(2), &[1, 1, 1]));
        let (c, w) = check_minimality(&a, &g("1"), &[big]).unwrap();
        assert_eq!(w.len(), 1);
        // falls through to the ramification bound: 1 > v(√2) = 1/2
        assert_eq!(c, MinimalityCheck::Certified(MinimalityCertificate::RamificationBound));
    }

    #[test]
    fn compute_j_examples() {
        let a = elem(2, &[-2, 0, 1]);
        let p1 = MinimalPair::certify(a.clone(), g("1"), &sqrt2_candidates()).unwrap().0;
        assert_eq!(p1.compute_j().unwrap(), 2);
        let p2 = MinimalPair::certify(a, g("2"), &[]).unwrap().0;
        assert_eq!(p2.compute_j().unwrap(), 1);

        let k = TAdicFunctionField::new(2);
        let q = Poly::new(k.clone(), vec![k.t(), k.zero(), k.one()]);
        let s = Arc::new(AlgebraicElement::certify(k, q).unwrap());
        let p = MinimalPair::certify(s, g("5"), &[]).unwrap().0;
        assert_eq!(p.compute_j().unwrap(), 2);
        assert_eq!(p.certificate(), &MinimalityCertificate::RamificationBound);
    }

    #[test]
    fn lift_examples() {
        let a = elem(2, &[-2, 0, 1]);
        let p = MinimalPair::certify(a, g("1"), &sqrt2_candidates()).unwrap().0;
        let l = p.lift().unwrap();
        assert_eq!(l.gamma(), &g("(1,-1)"));
        assert_eq!(l.compute_j().unwrap(), p.compute_j().unwrap());
        assert_eq!(l.transcendence_type(), TranscendenceType::ValueTranscendental);
        assert!(l.lift().is_err());

        let w = elem(2, &[1, 1, 1]);
        let p = MinimalPair::certify(w, g("1/2"), &[]).unwrap().0;
        assert_eq!(p.lift().unwrap().gamma(), &g("(1/2,-1)"));
    }

    #[test]
    fn equivalence_examples() {
        let a = elem(2, &[-2, 0, 1]);
        let pa = MinimalPair::asserted(a.clone(), g("1")).unwrap();
        // -√2 has the same minimal polynomial
        let neg = MinimalPair::asserted(a, g("1")).unwrap();
        let eq = pairs_equivalent(&pa, &neg).unwrap();
        assert!(eq.equivalent);
        assert_eq!(eq.max_distance, OrderedValue::Infinity);

        let shifted = MinimalPair::asserted(elem(2, &[2, -4, 1]), g("1")).unwrap();
        let eq = pairs_equivalent(&pa, &shifted).unwrap();
        assert!(eq.equivalent);
        assert!(!eq.conjugate_choice_sensitive);

        let pa4 = MinimalPair::asserted(elem(2, &[-2, 0, 1]), g("1/4")).unwrap();
        let w = MinimalPair::asserted(elem(2, &[1, 1, 1]), g("1/4")).unwrap();
        assert!(!pairs_equivalent(&pa4, &w).unwrap().equivalent);
        assert!(pairs_equivalent(&pa, &w).is_err());
    }

    #[test]
    fn rank_two_gamma_needs_nonzero_tail() {
        assert!(MinimalPair::asserted(elem(2, &[-2, 0, 1]), g("(1,0)")).is_err());
    }
}
