//! The valuation `v_{a,γ}` on `K[X]` and `K(X)`:
//! `v_{a,γ}(Σ c_i (X-a)^i) = min_i v(c_i) + iγ`.
//!
//! Besides evaluation this computes the value groups `vK(X) ⊆ vK(a,X)`, the
//! integers `e`, `E`, `λ`, and the residue map into `K(a)v(t)` where
//! `t = (f(a)(X-a)^E)v`. Graded reduction keeps, for numerator and
//! denominator separately, only the terms of minimal value; those indices are
//! congruent modulo `E`, so the surviving terms become a polynomial in `t`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algext::AlgebraicElement;
use crate::basefield::{format_terms, ValuedField};
use crate::error::{Error, Result};
use crate::exactpoly::{Field, FiniteField, Poly, RationalFunction};
use crate::minpair::MinimalPair;
use crate::ordvals::{GroupIndex, OrderedValue, ValueGroup};

/// A residue in `K(a)v(t)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedResidue {
    pub value: RationalFunction<FiniteField>,
}

impl GradedResidue {
    /// `[F(t) : F(self)]` when non-constant.
    pub fn degree(&self) -> usize {
        self.value.degree()
    }

    pub fn is_constant(&self) -> bool {
        self.value.is_constant()
    }

    /// Numerator and denominator as coefficient lists in `t`, each coefficient
    /// an element of `F_{p^f}` given by its coordinates in the residue basis.
    pub fn to_repr(&self) -> ResidueRepr {
        let coeffs = |p: &Poly<FiniteField>| p.coeffs().iter().map(|c| c.coeffs().to_vec()).collect();
        ResidueRepr {
            num: coeffs(self.value.num()),
            den: coeffs(self.value.den()),
        }
    }
}

/// A polynomial in `t` over `F_{p^f}`; coefficients outside `F_p` are written
/// as polynomials in the residue generator `y`.
fn format_residue_poly(p: &Poly<FiniteField>) -> String {
    format_terms(
        p.coeffs().iter().map(|c| {
            let y = format_terms(c.coeffs().iter().map(|&d| (d != 0).then(|| d.to_string())), "y");
            match c.degree() {
                None => None,
                Some(0) => Some(y),
                Some(_) => Some(format!("({y})")),
            }
        }),
        "t",
    )
}

impl fmt::Display for GradedResidue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = format_residue_poly(self.value.num());
        if self.value.den().degree() == Some(0) {
            f.write_str(&num)
        } else {
            write!(f, "({num})/({})", format_residue_poly(self.value.den()))
        }
    }
}

/// Serializable form of a [`GradedResidue`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueRepr {
    pub num: Vec<Vec<u64>>,
    pub den: Vec<Vec<u64>>,
}

/// `v_{a,γ}` with its cached invariants.
#[derive(Clone, Debug)]
pub struct GaussValuation<K: ValuedField> {
    pair: MinimalPair<K>,
    rank: usize,
    j: usize,
    v_q: OrderedValue,
    alpha: OrderedValue,
    vka: ValueGroup,
    vkx: ValueGroup,
    vkax: ValueGroup,
    lambda: u64,
    /// `e` and `E`; undefined in the value-transcendental case.
    e: Option<u64>,
    big_e: Option<u64>,
    f_poly: Option<Poly<K>>,
    g_poly: Option<Poly<K>>,
    h_poly: Option<Poly<K>>,
}

impl<K: ValuedField> GaussValuation<K> {
    pub fn new(pair: MinimalPair<K>) -> Result<Self> {
        let a = pair.element();
        let gamma = pair.gamma().clone();
        let rank = pair.rank();
        let j = pair.compute_j()?;

        let mut alpha = OrderedValue::zero(rank);
        for entry in &a.conjugate_distances().entries {
            let d = entry.value.embed(rank)?;
            if d.compare(&gamma)?.is_lt() {
                alpha = alpha.checked_add(&d.scale(entry.multiplicity as i64))?;
            }
        }
        let formula = gamma.scale(j as i64).checked_add(&alpha)?;

        let vka = ValueGroup::new(rank, &[OrderedValue::from_ratio(1, a.e() as i64).embed(rank)?])?;
        let mut gv = GaussValuation {
            pair: pair.clone(),
            rank,
            j,
            v_q: formula.clone(),
            alpha,
            vkax: vka.adjoin(&gamma)?,
            vkx: vka.adjoin(&formula)?,
            vka,
            lambda: 0,
            e: None,
            big_e: None,
            f_poly: None,
            g_poly: None,
            h_poly: None,
        };
        let expanded = gv.vg_eval(a.min_poly())?;
        if expanded != formula {
            return Err(Error::Internal(format!(
                "vQ from the expansion is {expanded}, but jγ + α = {formula}"
            )));
        }

        gv.lambda = match gv.vkax.index_of(&gv.vkx) {
            Ok(GroupIndex::Finite(l)) => l,
            Ok(GroupIndex::Infinite) => return Err(Error::Internal("vK(X) has infinite index in vK(a,X)".into())),
            Err(e) => return Err(Error::Internal(format!("vK(X) is not inside vK(a,X): {e}"))),
        };

        if rank == 1 {
            let e = gv
                .vka
                .least_multiple_in(&gv.v_q)?
                .ok_or_else(|| Error::Internal("vQ is not torsion over vK(a)".into()))?;
            let big_e = gv
                .vka
                .least_multiple_in(&gamma)?
                .ok_or_else(|| Error::Internal("γ is not torsion over vK(a)".into()))?;
            if big_e != gv.lambda * e {
                return Err(Error::Internal(format!("E = {big_e} but λe = {}·{e}", gv.lambda)));
            }
            gv.e = Some(e);
            gv.big_e = Some(big_e);
            gv.f_poly = Some(gv.realize(&gamma.scale(-(big_e as i64)), "f")?);
            gv.g_poly = Some(gv.realize(&gv.v_q.scale(-(e as i64)), "g")?);
            gv.h_poly = Some(if gv.alpha.is_zero() {
                Poly::one(a.base().clone())
            } else {
                gv.realize(&gv.alpha.scale(-(big_e as i64)), "h")?
            });
        }
        Ok(gv)
    }

    /// A monomial `c·X^m` (`m < e(a)`) of `v_{a,γ}`-value `w`, checked by
    /// evaluation.
    fn realize(&self, w: &OrderedValue, name: &str) -> Result<Poly<K>> {
        let a = self.pair.element();
        let target = w.leading().ok_or(Error::InfiniteValue)?;
        let p = a
            .element_of_value(target)
            .ok_or_else(|| Error::Internal(format!("no polynomial of degree < n has value {w} (looking for {name})")))?;
        let got = self.vg_eval(&p)?;
        if &got != w {
            return Err(Error::Internal(format!("{name} = {p} has value {got}, expected {w}")));
        }
        Ok(p)
    }

    pub fn pair(&self) -> &MinimalPair<K> {
        &self.pair
    }

    fn element(&self) -> &AlgebraicElement<K> {
        self.pair.element()
    }

    pub fn gamma(&self) -> &OrderedValue {
        self.pair.gamma()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn v_q(&self) -> &OrderedValue {
        &self.v_q
    }

    pub fn alpha(&self) -> &OrderedValue {
        &self.alpha
    }

    pub fn e(&self) -> Option<u64> {
        self.e
    }

    pub fn big_e(&self) -> Option<u64> {
        self.big_e
    }

    pub fn lambda(&self) -> u64 {
        self.lambda
    }

    pub fn f_poly(&self) -> Option<&Poly<K>> {
        self.f_poly.as_ref()
    }

    pub fn g_poly(&self) -> Option<&Poly<K>> {
        self.g_poly.as_ref()
    }

    pub fn h_poly(&self) -> Option<&Poly<K>> {
        self.h_poly.as_ref()
    }

    /// `(vK(X), vK(a,X), λ)`.
    pub fn value_groups(&self) -> (&ValueGroup, &ValueGroup, u64) {
        (&self.vkx, &self.vkax, self.lambda)
    }

    /// `vK(a)` in the ambient rank.
    pub fn vka(&self) -> &ValueGroup {
        &self.vka
    }

    /// Values `v(c_i) + iγ` of the terms of an expansion; `None` for zero terms.
    fn term_values(&self, c: &[Poly<K>]) -> Result<Vec<Option<OrderedValue>>> {
        let a = self.element();
        c.iter()
            .enumerate()
            .map(|(i, ci)| {
                if ci.is_zero() {
                    return Ok(None);
                }
                let v = a.elem_valuation(ci)?.embed(self.rank)?;
                Ok(Some(v.checked_add(&self.gamma().scale(i as i64))?))
            })
            .collect()
    }

    fn expansion_value(&self, c: &[Poly<K>]) -> Result<OrderedValue> {
        let mut best = OrderedValue::Infinity;
        for v in self.term_values(c)?.into_iter().flatten() {
            best = best.min_of(v)?;
        }
        Ok(best)
    }

    /// `v_{a,γ}(F)`; infinity for `F = 0`.
    pub fn vg_eval(&self, f: &Poly<K>) -> Result<OrderedValue> {
        self.expansion_value(&self.element().expand(f))
    }

    /// `v_{a,γ}(num) - v_{a,γ}(den)`.
    pub fn vg_eval_rat(&self, num: &Poly<K>, den: &Poly<K>) -> Result<OrderedValue> {
        if den.is_zero() {
            return Err(Error::Precondition("zero denominator".into()));
        }
        let n = self.vg_eval(num)?;
        let d = self.vg_eval(den)?;
        if n.is_infinite() {
            return Ok(n);
        }
        Ok(&n - &d)
    }

    /// Residue of `num/den`, which must have value 0.
    pub fn graded_reduce(&self, num: &Poly<K>, den: &Poly<K>) -> Result<GradedResidue> {
        let a = self.element();
        self.reduce_expansions(&a.expand(num), &a.expand(den))
    }

    /// [`Self::graded_reduce`] on `(X - a)`-adic expansions over `K(a)`.
    pub fn reduce_expansions(&self, num: &[Poly<K>], den: &[Poly<K>]) -> Result<GradedResidue> {
        let (vn, sn) = self.min_support(num)?;
        let (vd, sd) = self.min_support(den)?;
        if vd.is_infinite() {
            return Err(Error::Precondition("zero denominator".into()));
        }
        if vn != vd {
            return Err(Error::Precondition(format!("value {} is not zero", &vn - &vd)));
        }
        let a = self.element();
        let ring = a.ring();
        let kv = a.residue_field().clone();
        let big_e = self.big_e.unwrap_or(1) as i64;
        let (i_n, i_d) = (sn[0], sd[0]);
        let shift = i_n as i64 - i_d as i64;
        if shift % big_e != 0 || (self.rank == 2 && shift != 0) {
            return Err(Error::Internal(format!(
                "reference indices {i_n}, {i_d} are not congruent modulo E = {big_e}"
            )));
        }
        let lead = ring.div(&num[i_n], &den[i_d]).expect("nonzero coefficient");
        let lead = ring.mul(&lead, &self.f_at_a_pow(-shift / big_e)?);
        let lead = a.elem_residue(&lead)?;

        let part_n = self.support_polynomial(num, &sn)?;
        let part_d = self.support_polynomial(den, &sd)?;
        let tpow = |k: i64| Poly::monomial(kv.clone(), kv.one(), k.max(0) as usize);
        let n = (&part_n * &tpow(shift / big_e)).scale(&lead);
        let d = &part_d * &tpow(-shift / big_e);
        let value = RationalFunction::new(n, d).expect("nonzero denominator");
        Ok(GradedResidue { value })
    }

    /// `Σ_{i ∈ S} (c_i / c_{i0} · f(a)^{-(i-i0)/E})v · t^{(i-i0)/E}`.
    fn support_polynomial(&self, c: &[Poly<K>], support: &[usize]) -> Result<Poly<FiniteField>> {
        let a = self.element();
        let ring = a.ring();
        let kv = a.residue_field().clone();
        let big_e = self.big_e.unwrap_or(1) as usize;
        let i0 = support[0];
        let mut coeffs = Vec::new();
        for &i in support {
            let k = (i - i0) / big_e;
            let x = ring.div(&c[i], &c[i0]).expect("nonzero coefficient");
            let x = ring.mul(&x, &self.f_at_a_pow(-(k as i64))?);
            if coeffs.len() <= k {
                coeffs.resize(k + 1, kv.zero());
            }
            coeffs[k] = a.elem_residue(&x)?;
        }
        Ok(Poly::new(kv, coeffs))
    }

    /// `f(a)^k`; `f(a) = 1` in the value-transcendental case, where only
    /// constant residues occur.
    fn f_at_a_pow(&self, k: i64) -> Result<Poly<K>> {
        let a = self.element();
        let ring = a.ring();
        match &self.f_poly {
            None => Ok(ring.one()),
            Some(f) => {
                let fa = a.reduce(f);
                ring.ipow(&fa, k).ok_or_else(|| Error::Internal("f(a) = 0".into()))
            }
        }
    }

    /// Minimal value and the sorted indices attaining it, asserting they are
    /// congruent modulo `E`.
    fn min_support(&self, c: &[Poly<K>]) -> Result<(OrderedValue, Vec<usize>)> {
        let values = self.term_values(c)?;
        let mut best = OrderedValue::Infinity;
        for v in values.iter().flatten() {
            best = best.min_of(v.clone())?;
        }
        let support: Vec<usize> = values
            .iter()
            .enumerate()
            .filter(|(_, v)| v.as_ref() == Some(&best))
            .map(|(i, _)| i)
            .collect();
        if let Some(&i0) = support.first() {
            let big_e = self.big_e.unwrap_or(1) as usize;
            if let Some(bad) = support.iter().find(|&&i| (i - i0) % big_e != 0) {
                return Err(Error::Internal(format!(
                    "minimal support {support:?} breaks E-periodicity at {bad} (E = {big_e})"
                )));
            }
            if self.rank == 2 && support.len() > 1 {
                return Err(Error::Internal(format!("rank-2 minimal support {support:?} is not a single index")));
            }
        }
        Ok((best, support))
    }

    /// `s = (g·Q^e)v` as a rational function of `t`; `None` in the
    /// value-transcendental case.
    pub fn s_residue(&self) -> Result<Option<GradedResidue>> {
        let (Some(g), Some(e)) = (&self.g_poly, self.e) else {
            return Ok(None);
        };
        let a = self.element();
        let num = g * &a.min_poly().pow(e);
        let s = self.graded_reduce(&num, &Poly::one(a.base().clone()))?;
        if s.is_constant() {
            return Err(Error::Internal(format!("s = {s} is constant")));
        }
        Ok(Some(s))
    }

    /// `[K(a,X)v : K(X)v]`, the degree of `s` in `t`; 1 in the
    /// value-transcendental case.
    pub fn residue_degree(&self) -> Result<usize> {
        Ok(self.s_residue()?.map_or(1, |s| s.degree()))
    }

    /// Degree in `t` of `(f^j h Q^E)v`; equals `j` when the expansion of `Q`
    /// behaves as predicted.
    pub fn fjhqe_degree(&self) -> Result<Option<usize>> {
        let (Some(f), Some(h), Some(big_e)) = (&self.f_poly, &self.h_poly, self.big_e) else {
            return Ok(None);
        };
        let a = self.element();
        let num = &(&f.pow(self.j as u64) * h) * &a.min_poly().pow(big_e);
        let r = self.graded_reduce(&num, &Poly::one(a.base().clone()))?;
        if r.value.den().degree() != Some(0) {
            return Err(Error::Internal(format!("(f^j h Q^E)v = {r} is not a polynomial in t")));
        }
        Ok(Some(r.degree()))
    }

    /// `vg_eval` on `X - b` for `b ∈ K`, and the predicted `min(γ, v(a - b))`.
    pub fn linear_check(&self, b: &K::Elem) -> Result<(OrderedValue, OrderedValue)> {
        let a = self.element();
        let x = Poly::linear(a.base().clone(), b);
        let direct = self.vg_eval(&x)?;
        let d = a.valuation_of(&x)?.embed(self.rank)?;
        Ok((direct, self.gamma().clone().min_of(d)?))
    }

    /// `t` described in words, for reports.
    pub fn t_definition(&self) -> Option<String> {
        let f = self.f_poly.as_ref()?;
        Some(format!("(f(a)·(X-a)^{})v with f = {}", self.big_e?, describe_poly(f)))
    }
}

/// Coefficient list in scenario syntax.
pub fn describe_poly<K: ValuedField>(p: &Poly<K>) -> String {
    let parts: Vec<String> = p.coeffs().iter().map(|c| p.field().format(c)).collect();
    format!("[{}]", parts.join(", "))
}
