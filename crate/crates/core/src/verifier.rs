//! Theorem-level checks. Each verdict carries the numbers it compared, all
//! recomputed here from the underlying objects rather than read from a cache.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algext::{AlgebraicElement, DistanceMultiset, NewtonPolygon};
use crate::basefield::ValuedField;
use crate::error::{Error, Result};
use crate::exactpoly::{Poly, QuotientRing};
use crate::gaussval::GaussValuation;
use crate::minpair::{pairs_equivalent, MinimalPair};
use crate::ordvals::OrderedValue;

pub const THM_1_1: &str = "thm_1_1";
pub const THM_1_2: &str = "thm_1_2";
pub const LEMMA_4_1: &str = "lemma_4_1";
pub const EQ_7: &str = "eq_7_ic_degree";
pub const THM_1_3: &str = "thm_1_3_sandwich";
pub const COR_5_3: &str = "cor_5_3";

/// All verdict names, in report order.
pub const VERDICT_NAMES: [&str; 6] = [THM_1_1, THM_1_2, LEMMA_4_1, EQ_7, THM_1_3, COR_5_3];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIPPED",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub status: Status,
    pub message: String,
    pub details: Value,
    /// Status the scenario declares for this check; absent means "not FAIL".
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Status>,
}

impl Verdict {
    fn new(name: &str, ok: bool, message: String, details: Value) -> Self {
        let status = if ok { Status::Pass } else { Status::Fail };
        Verdict {
            name: name.into(),
            status,
            message,
            details,
            expected: None,
        }
    }

    fn skipped(name: &str, message: String, details: Value) -> Self {
        Verdict {
            name: name.into(),
            status: Status::Skipped,
            message,
            details,
            expected: None,
        }
    }

    /// Whether the outcome matches the declared expectation.
    pub fn as_expected(&self) -> bool {
        match self.expected {
            Some(s) => self.status == s,
            None => self.status != Status::Fail,
        }
    }
}

/// Where `IC(K(X)|K, v)` sits between `K^h` and `K(a)^h`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum IcClassification {
    EqualsHenselizationOfK,
    EqualsKaHenselization,
    Intermediate { degree: u64 },
}

impl fmt::Display for IcClassification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IcClassification::EqualsHenselizationOfK => f.write_str("K^h"),
            IcClassification::EqualsKaHenselization => f.write_str("K(a)^h"),
            IcClassification::Intermediate { degree } => write!(f, "intermediate, [K(a)^h : IC] = {degree}"),
        }
    }
}

/// `λ · [K(a,X)v : K(X)v] = j`.
pub fn verify_thm_1_1<K: ValuedField>(gv: &GaussValuation<K>) -> Result<Verdict> {
    let lambda = gv.value_groups().2;
    let resdeg = gv.residue_degree()? as u64;
    let j = gv.pair().compute_j()? as u64;
    let details = json!({ "lambda": lambda, "residue_degree": resdeg, "j": j });
    Ok(Verdict::new(
        THM_1_1,
        lambda * resdeg == j,
        format!("{lambda}·{resdeg} vs j = {j}"),
        details,
    ))
}

/// `j(a) = j(a')` for equivalent pairs; skipped when not equivalent.
pub fn verify_thm_1_2<K: ValuedField>(p1: &MinimalPair<K>, p2: &MinimalPair<K>) -> Result<Verdict> {
    let eq = pairs_equivalent(p1, p2)?;
    let mut details = json!({
        "other": p2.element().describe(),
        "max_cross_distance": eq.max_distance,
        "conjugate_choice_sensitive": eq.conjugate_choice_sensitive,
    });
    if !eq.equivalent {
        return Ok(Verdict::skipped(
            THM_1_2,
            format!("pairs are not equivalent: max distance {} < γ", eq.max_distance),
            details,
        ));
    }
    let (j1, j2) = (p1.compute_j()?, p2.compute_j()?);
    details["j"] = json!(j1);
    details["j_other"] = json!(j2);
    Ok(Verdict::new(THM_1_2, j1 == j2, format!("j = {j1} vs j' = {j2}"), details))
}

/// `j(a, K, γ) = j(a, K, (γ, -1))`, and the lifted `vQ` has second
/// coordinate `-j`.
pub fn verify_lift<K: ValuedField>(pair: &MinimalPair<K>) -> Result<Verdict> {
    if pair.rank() != 1 {
        return Ok(Verdict::skipped(LEMMA_4_1, "γ is already value transcendental".into(), Value::Null));
    }
    let lifted = pair.lift()?;
    let j = pair.compute_j()?;
    let jl = lifted.compute_j()?;
    let v_q = GaussValuation::new(lifted.clone())?.vg_eval(pair.element().min_poly())?;
    let second = v_q.coords().map(|c| c[1].clone());
    let expected = num_rational::BigRational::from_integer((-(j as i64)).into());
    let ok = j == jl && second.as_ref() == Some(&expected);
    let details = json!({ "j": j, "j_lifted": jl, "lifted_gamma": lifted.gamma(), "lifted_vQ": v_q });
    Ok(Verdict::new(
        LEMMA_4_1,
        ok,
        format!("j = {j}, lifted j = {jl}, lifted vQ = {v_q}"),
        details,
    ))
}

/// Degree and position of the implicit constant field.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IcReport {
    /// `[K(a)^h : IC] = [K(a,X)^h : K(X)^h] = λ · [K(a,X)v : K(X)v] · defect`.
    pub ic_degree: u64,
    pub defect: u64,
    pub classification: IcClassification,
    pub eq_7: Verdict,
    pub cor_5_3: Verdict,
}

pub fn ic_degree_report<K: ValuedField>(gv: &GaussValuation<K>) -> Result<IcReport> {
    let a = gv.pair().element();
    let n = a.degree() as u64;
    // Both bases are defectless and the extension K(a,X)^h | K(X)^h inherits that.
    let defect = if a.certificate().defectless { 1 } else { 0 };
    let ic = gv.value_groups().2 * gv.residue_degree()? as u64 * defect;
    let j = gv.pair().compute_j()? as u64;

    let classification = if ic == 1 {
        IcClassification::EqualsKaHenselization
    } else if ic == n {
        IcClassification::EqualsHenselizationOfK
    } else {
        IcClassification::Intermediate { degree: ic }
    };
    let eq7_ok = ic == j * defect && ic > 0 && n % ic == 0;
    let eq_7 = Verdict::new(
        EQ_7,
        eq7_ok,
        format!("[K(a)^h : IC] = {ic}, j·d = {j}·{defect}, [K(a):K] = {n}"),
        json!({ "ic_degree": ic, "j": j, "defect": defect, "degree": n, "classification": classification.to_string() }),
    );
    let cor_ok = (ic == 1) == (j == 1);
    let cor_5_3 = Verdict::new(
        COR_5_3,
        cor_ok,
        format!("IC = K(a)^h is {}, j = 1 is {}", ic == 1, j == 1),
        json!({ "ic_is_Ka_h": ic == 1, "j_is_1": j == 1, "j_is_degree": j == n, "purely_inseparable": a.inseparable_degree() == n }),
    );
    Ok(IcReport {
        ic_degree: ic,
        defect,
        classification,
        eq_7,
        cor_5_3,
    })
}

/// Checks the sandwich `K(b)^h ⊆ IC ⊆ K(a)^h` for a tame `b = B(a)` with
/// minimal polynomial `Qb`, via `j(a, K, γ) = j(a, K(b), γ)` and
/// `[K(a)^h : IC]` dividing `[K(a) : K(b)]`.
pub fn verify_thm_1_3<K: ValuedField>(gv: &GaussValuation<K>, b_expr: &Poly<K>, qb: &Poly<K>) -> Result<Verdict> {
    let pair = gv.pair();
    let a = pair.element();
    let n = a.degree();
    if !qb.compose_mod(b_expr, a.min_poly())?.is_zero() {
        return Err(Error::Scenario(format!("b = {b_expr}(a) is not a root of Qb = {qb}")));
    }
    let b = match AlgebraicElement::certify(a.base().clone(), qb.clone()) {
        Ok(b) => b,
        Err(e) => return Ok(Verdict::skipped(THM_1_3, format!("K(b) not certified: {e}"), Value::Null)),
    };
    let p = a.base().prime();
    let tame = b.e() % p != 0 && b.is_separable();
    let base_details = json!({ "Qb": b.describe(), "e_b": b.e(), "f_b": b.f(), "tame": tame });
    if !tame {
        return Ok(Verdict::skipped(
            THM_1_3,
            format!("K(b)|K is not tame (e_b = {}, p = {p})", b.e()),
            base_details,
        ));
    }
    if n % b.degree() != 0 {
        return Err(Error::Scenario(format!("deg Qb = {} does not divide deg Q = {n}", b.degree())));
    }

    let m = relative_min_poly(a, b_expr)?;
    let rel_degree = m.degree().unwrap_or(0);
    if rel_degree * b.degree() != n {
        return Err(Error::Internal(format!(
            "[K(a):K(b)] = {rel_degree} but n / deg Qb = {}",
            n / b.degree()
        )));
    }
    let distances = relative_distances(a, &m)?;
    let j_k = pair.compute_j()?;
    let j_b = distances.count_at_least(pair.gamma())?;
    let ic = ic_degree_report(gv)?.ic_degree as usize;

    let divisible = j_b > 0 && j_k % j_b == 0;
    let ratio_one = j_k == j_b;
    let ic_divides = ic > 0 && rel_degree % ic == 0;
    let sharp = j_k == rel_degree;
    let mut details = base_details;
    details["j_K"] = json!(j_k);
    details["j_Kb"] = json!(j_b);
    details["relative_degree"] = json!(rel_degree);
    details["relative_distances"] = json!(distances);
    details["ic_degree"] = json!(ic);
    details["sandwich_sharp"] = json!(sharp);
    details["maximality_of_b_certified"] = json!(false);
    if sharp && ic_divides {
        details["ic_equals"] = json!("K(b)^h");
    }
    let ok = divisible && ratio_one && ic_divides;
    let message = format!(
        "j(a,K,γ)/j(a,K(b),γ) = {j_k}/{j_b}, [K(a)^h:IC] = {ic} divides [K(a):K(b)] = {rel_degree}: {ic_divides}{}",
        if sharp { "; sandwich sharp" } else { "" }
    );
    Ok(Verdict::new(THM_1_3, ok, message, details))
}

/// Minimal polynomial of `a` over `K(b)`, `b = B(a)`, computed over `K(a)` as
/// `gcd(Q(Y), (B(Y) - B(a))^s)` with `s` the inseparable degree of `a`.
pub fn relative_min_poly<K: ValuedField>(a: &AlgebraicElement<K>, b_expr: &Poly<K>) -> Result<Poly<QuotientRing<K>>> {
    let ring = a.ring();
    let q = ring.lift_poly(a.min_poly());
    let b_of_a = a.reduce(b_expr);
    let shifted = &ring.lift_poly(b_expr) - &Poly::constant(ring.clone(), b_of_a);
    let m = q.gcd(&shifted.pow(a.inseparable_degree()));
    if m.degree().is_none_or(|d| d == 0) {
        return Err(Error::Internal("a is not a root of gcd(Q, B - b)".into()));
    }
    Ok(m)
}

/// Distances from `a` to the roots of `m ∈ K(a)[Y]` (with `m(a) = 0`), from
/// the Newton polygon of `m(a + Y)`.
pub fn relative_distances<K: ValuedField>(a: &AlgebraicElement<K>, m: &Poly<QuotientRing<K>>) -> Result<DistanceMultiset> {
    let c = m.taylor_shift(&a.generator());
    let s = c.low_degree().ok_or_else(|| Error::Internal("zero relative polynomial".into()))?;
    let mut points = Vec::new();
    for (i, ci) in c.coeffs().iter().enumerate().skip(s) {
        if let OrderedValue::Finite(v) = a.elem_valuation(ci)? {
            points.push((i - s, v[0].clone()));
        }
    }
    let values = NewtonPolygon::from_points(&points)
        .root_values()
        .into_iter()
        .map(|(v, k)| (OrderedValue::rational(v), k));
    Ok(DistanceMultiset::from_values(
        std::iter::once((OrderedValue::Infinity, s)).chain(values),
    ))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::basefield::{PAdicRationals, TAdicFunctionField};
    use crate::exactpoly::Field;
    use crate::minpair::Candidate;

    fn elem(p: u64, c: &[i64]) -> Arc<AlgebraicElement<PAdicRationals>> {
        let k = PAdicRationals::new(p);
        Arc::new(AlgebraicElement::certify(k, Poly::from_ints(k, c)).unwrap())
    }

    fn pair(p: u64, c: &[i64], gamma: &str) -> MinimalPair<PAdicRationals> {
        let k = PAdicRationals::new(p);
        let cands: Vec<_> = (-4..=4)
            .map(|e| Candidate::Element(k.uniformizer_pow(e)))
            .chain([Candidate::Element(k.zero())])
            .collect();
        MinimalPair::certify(elem(p, c), gamma.parse().unwrap(), &cands).unwrap().0
    }

    fn gv(p: u64, c: &[i64], gamma: &str) -> GaussValuation<PAdicRationals> {
        GaussValuation::new(pair(p, c, gamma)).unwrap()
    }

    #[test]
    fn thm_1_1_examples() {
        for (c, g) in [
            (&[-2, 0, 1][..], "1"),
            (&[-2, 0, 1], "(1,-1)"),
            (&[-2, 0, 1], "2"),
            (&[1, 1, 1], "1/2"),
        ] {
            let v = verify_thm_1_1(&gv(2, c, g)).unwrap();
            assert_eq!(v.status, Status::Pass, "{c:?} {g}: {}", v.message);
        }
        let k = TAdicFunctionField::new(2);
        let q = Poly::new(k.clone(), vec![k.t(), k.zero(), k.one()]);
        let a = Arc::new(AlgebraicElement::certify(k, q).unwrap());
        let g = GaussValuation::new(MinimalPair::certify(a, "1".parse().unwrap(), &[]).unwrap().0).unwrap();
        assert_eq!(verify_thm_1_1(&g).unwrap().status, Status::Pass);
        let ic = ic_degree_report(&g).unwrap();
        assert_eq!(ic.classification, IcClassification::EqualsHenselizationOfK);
    }

    #[test]
    fn thm_1_2_examples() {
        let p = pair(2, &[-2, 0, 1], "1");
        let shifted = MinimalPair::asserted(elem(2, &[2, -4, 1]), "1".parse().unwrap()).unwrap();
        assert_eq!(verify_thm_1_2(&p, &shifted).unwrap().status, Status::Pass);
        let w = MinimalPair::asserted(elem(2, &[1, 1, 1]), "1".parse().unwrap()).unwrap();
        assert_eq!(verify_thm_1_2(&p, &w).unwrap().status, Status::Skipped);
    }

    #[test]
    fn lift_examples() {
        let v = verify_lift(&pair(2, &[-2, 0, 1], "1")).unwrap();
        assert_eq!(v.status, Status::Pass);
        assert_eq!(v.details["lifted_vQ"], json!(["2", "-2"]));
        let v = verify_lift(&pair(2, &[-2, 0, 1], "2")).unwrap();
        assert_eq!(v.details["lifted_vQ"], json!(["7/2", "-1"]));
        assert_eq!(verify_lift(&pair(2, &[1, 1, 1], "1/2")).unwrap().status, Status::Pass);
    }

    #[test]
    fn ic_examples() {
        let r = ic_degree_report(&gv(2, &[-2, 0, 1], "1")).unwrap();
        assert_eq!(
            (r.ic_degree, r.classification.clone()),
            (2, IcClassification::EqualsHenselizationOfK)
        );
        let r = ic_degree_report(&gv(2, &[-2, 0, 1], "2")).unwrap();
        assert_eq!((r.ic_degree, r.classification), (1, IcClassification::EqualsKaHenselization));
        assert_eq!(r.cor_5_3.status, Status::Pass);
    }

    #[test]
    fn thm_1_3_wild_is_skipped() {
        let g = gv(2, &[-2, 0, 1], "1");
        let v = verify_thm_1_3(&g, &Poly::from_ints(PAdicRationals::new(2), &[0, 1]), g.pair().element().min_poly()).unwrap();
        assert_eq!(v.status, Status::Skipped);
    }

    #[test]
    fn thm_1_3_trivial_subfield() {
        let k = PAdicRationals::new(3);
        let g = gv(3, &[-3, 0, 1], "1");
        let v = verify_thm_1_3(&g, &Poly::zero(k), &Poly::from_ints(k, &[0, 1])).unwrap();
        assert_eq!(v.status, Status::Pass, "{}", v.message);
    }

    #[test]
    fn thm_1_3_catches_non_minimal_pair() {
        // (√3, 1/2) is not minimal (b = 0 is as close), so the sandwich breaks.
        let k = PAdicRationals::new(3);
        let p = MinimalPair::asserted(elem(3, &[-3, 0, 1]), "1/2".parse().unwrap()).unwrap();
        let g = GaussValuation::new(p).unwrap();
        let v = verify_thm_1_3(&g, &Poly::from_ints(k, &[0, 1]), &Poly::from_ints(k, &[-3, 0, 1])).unwrap();
        assert_eq!(v.status, Status::Fail, "{}", v.message);
        assert_eq!((v.details["j_K"].clone(), v.details["j_Kb"].clone()), (json!(2), json!(1)));
    }

    #[test]
    fn thm_1_3_bad_root_is_an_error() {
        let k = PAdicRationals::new(3);
        let g = gv(3, &[-3, 0, 1], "1");
        assert!(verify_thm_1_3(&g, &Poly::from_ints(k, &[1]), &Poly::from_ints(k, &[0, 1])).is_err());
    }
}
