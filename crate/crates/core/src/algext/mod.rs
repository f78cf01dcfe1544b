//! Algebraic elements `a` over a base valued field.
//!
//! An element is accepted only with a certificate that `v` extends uniquely
//! from `K` to `K(a)` without defect: the Newton polygon of the minimal
//! polynomial has one slope `-h/e` and its residual polynomial is irreducible
//! over `F_p`. Under that certificate `v(g(a)) = v(N(g(a)))/n` with the norm
//! computed as a resultant, and residues can be found by search over the
//! finite residue field.

mod newton;

use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

pub use newton::{NewtonPolygon, Segment};

use crate::basefield::ValuedField;
use crate::error::{Error, Result};
use crate::exactpoly::{is_irreducible_mod_p, resultant, Field, FiniteField, Poly, PrimeField, QuotientRing};
use crate::ordvals::{OrderedValue, ValueGroup};

/// Largest residue field `F_{p^f}` we search exhaustively.
pub const MAX_RESIDUE_FIELD_SIZE: u64 = 64;

/// Evidence that `v` extends uniquely and without defect to `K(a)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OreCertificate {
    pub polygon: NewtonPolygon,
    pub e: u64,
    pub f: u64,
    /// Over `F_p`, low degree first. Its root is the residue of `a^e / π^h`.
    pub residual_modulus: Vec<u64>,
    /// `p^m` when `Q ∈ K[X^{p^m}]`; 1 when separable.
    pub inseparable_degree: u64,
    pub defectless: bool,
}

/// One entry `(value, multiplicity)` of a distance multiset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceEntry {
    pub value: OrderedValue,
    pub multiplicity: usize,
}

/// The values `v(a - a_i)` over all conjugates `a_i` (with multiplicity,
/// including `a` itself), largest first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DistanceMultiset {
    pub entries: Vec<DistanceEntry>,
}

impl DistanceMultiset {
    pub fn from_values(values: impl IntoIterator<Item = (OrderedValue, usize)>) -> Self {
        let mut entries: Vec<DistanceEntry> = Vec::new();
        for (value, multiplicity) in values {
            if multiplicity == 0 {
                continue;
            }
            match entries.iter_mut().find(|e| e.value == value) {
                Some(e) => e.multiplicity += multiplicity,
                None => entries.push(DistanceEntry { value, multiplicity }),
            }
        }
        entries.sort_by(|a, b| b.value.partial_cmp(&a.value).expect("rank-1 distances"));
        DistanceMultiset { entries }
    }

    pub fn total(&self) -> usize {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    /// Number of entries `>= gamma`; rank-1 distances are embedded when
    /// `gamma` has rank 2.
    pub fn count_at_least(&self, gamma: &OrderedValue) -> Result<usize> {
        let rank = gamma.rank().ok_or(Error::InfiniteValue)?;
        let mut n = 0;
        for e in &self.entries {
            if e.value.embed(rank)?.compare(gamma)?.is_ge() {
                n += e.multiplicity;
            }
        }
        Ok(n)
    }

    /// Largest finite entry.
    pub fn max_finite(&self) -> Option<&OrderedValue> {
        self.entries.iter().map(|e| &e.value).find(|v| !v.is_infinite())
    }

    pub fn infinite_multiplicity(&self) -> usize {
        self.entries.iter().filter(|e| e.value.is_infinite()).map(|e| e.multiplicity).sum()
    }
}

impl fmt::Display for DistanceMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| format!("{}x{}", e.value, e.multiplicity)).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// A root `a` of a certified monic irreducible `Q ∈ K[X]`.
#[derive(Clone, Debug)]
pub struct AlgebraicElement<K: ValuedField> {
    base: K,
    q: Poly<K>,
    ring: QuotientRing<K>,
    cert: OreCertificate,
    residue_field: FiniteField,
    /// `v(a) = h/e`.
    value: BigRational,
    /// `lifts[k]` lifts `residue_field.element(k)`.
    lifts: Vec<Poly<K>>,
    distances: DistanceMultiset,
}

impl<K: ValuedField> AlgebraicElement<K> {
    /// Certifies `Q` and builds `K(a)`.
    pub fn certify(base: K, q: Poly<K>) -> Result<Self> {
        let n = match q.degree() {
            Some(n) if n >= 1 && q.is_monic() => n,
            _ => {
                return Err(Error::Precondition(format!(
                    "minimal polynomial must be monic of positive degree, got {q}"
                )))
            }
        };
        let fp = base.residue_field();
        let points: Vec<(usize, BigRational)> = q
            .coeffs()
            .iter()
            .enumerate()
            .filter_map(|(i, c)| base.ord(c).map(|k| (i, BigRational::from_integer(k.into()))))
            .collect();
        let polygon = NewtonPolygon::from_points(&points);
        let not_certified = |reason: &str| Error::NotCertified {
            reason: reason.into(),
            polygon: polygon.to_string(),
        };

        let (value, e, residual) = if n == 1 {
            let value = BigRational::from_integer(base.ord(&q.coeff(0)).unwrap_or(0).into());
            (value, 1u64, Poly::from_ints(fp, &[-1, 1]))
        } else {
            if base.is_zero(&q.coeff(0)) {
                return Err(not_certified("reducible: X divides Q"));
            }
            if !polygon.is_single_slope() {
                return Err(not_certified("Newton polygon has several slopes"));
            }
            let v0 = base.ord(&q.coeff(0)).unwrap();
            let value = BigRational::new(v0.into(), (n as i64).into());
            let e = u64::try_from(value.denom().clone()).unwrap();
            let h = i64::try_from(value.numer().clone()).unwrap();
            let d = n / e as usize;
            let mut r = Vec::with_capacity(d + 1);
            for k in 0..=d {
                let c = q.coeff(k * e as usize);
                let target = v0 - k as i64 * h;
                r.push(if base.ord(&c) == Some(target) {
                    base.residue(&base.mul(&c, &base.uniformizer_pow(-target)))?
                } else {
                    0
                });
            }
            let residual = Poly::new(fp, r);
            if !is_irreducible_mod_p(&residual) {
                return Err(not_certified(&format!(
                    "residual polynomial {residual} is reducible over F_{}",
                    fp.modulus()
                )));
            }
            (value, e, residual)
        };

        let f = residual.degree().unwrap() as u64;
        let p = fp.modulus();
        if p.checked_pow(f as u32).is_none_or(|q| q > MAX_RESIDUE_FIELD_SIZE) {
            return Err(not_certified(&format!(
                "residue field F_{p}^{f} exceeds {MAX_RESIDUE_FIELD_SIZE} elements"
            )));
        }
        debug_assert_eq!(e * f, n as u64);

        let inseparable_degree = inseparable_degree(&q, base.characteristic());
        let cert = OreCertificate {
            polygon,
            e,
            f,
            residual_modulus: residual.coeffs().to_vec(),
            inseparable_degree,
            defectless: true,
        };
        let ring = QuotientRing::new(q.clone())?;
        let residue_field = QuotientRing::new(residual)?;

        let h = i64::try_from((&value * BigRational::from_integer((e as i64).into())).to_integer()).unwrap();
        let unit = if n == 1 {
            ring.one()
        } else {
            let ae = ring.pow(&ring.generator(), e);
            ring.mul(&ae, &ring.embed(&base.uniformizer_pow(-h)))
        };
        let size = p.pow(f as u32);
        let lifts = (0..size)
            .map(|k| {
                let c = residue_field.element(k);
                let mut acc = ring.zero();
                let mut power = ring.one();
                for ck in c.coeffs() {
                    acc = ring.add(&acc, &ring.mul(&power, &ring.embed(&base.from_residue(*ck))));
                    power = ring.mul(&power, &unit);
                }
                acc
            })
            .collect();

        let mut a = AlgebraicElement {
            base,
            q,
            ring,
            cert,
            residue_field,
            value,
            lifts,
            distances: DistanceMultiset { entries: Vec::new() },
        };
        a.distances = a.compute_distances()?;
        Ok(a)
    }

    pub fn base(&self) -> &K {
        &self.base
    }

    pub fn min_poly(&self) -> &Poly<K> {
        &self.q
    }

    pub fn degree(&self) -> usize {
        self.q.degree().unwrap()
    }

    /// `K(a)` as `K[X]/(Q)`.
    pub fn ring(&self) -> &QuotientRing<K> {
        &self.ring
    }

    /// `a` as an element of [`Self::ring`].
    pub fn generator(&self) -> Poly<K> {
        self.ring.generator()
    }

    pub fn certificate(&self) -> &OreCertificate {
        &self.cert
    }

    pub fn e(&self) -> u64 {
        self.cert.e
    }

    pub fn f(&self) -> u64 {
        self.cert.f
    }

    pub fn inseparable_degree(&self) -> u64 {
        self.cert.inseparable_degree
    }

    pub fn is_separable(&self) -> bool {
        self.cert.inseparable_degree == 1
    }

    /// `K(a)v = F_p[y]/(R)`.
    pub fn residue_field(&self) -> &FiniteField {
        &self.residue_field
    }

    /// `v(a)`.
    pub fn value(&self) -> &BigRational {
        &self.value
    }

    /// `vK(a) = (1/e)Z`.
    pub fn value_group(&self) -> ValueGroup {
        let gen = OrderedValue::from_ratio(1, self.cert.e as i64);
        ValueGroup::new(1, &[gen]).expect("rank-1 generator")
    }

    pub fn reduce(&self, g: &Poly<K>) -> Poly<K> {
        self.ring.reduce(g)
    }

    /// `v(g(a)) = v(Res(Q, g))/n` for `deg g < n`.
    pub fn elem_valuation(&self, g: &Poly<K>) -> Result<OrderedValue> {
        let n = self.degree();
        match g.degree() {
            None => return Ok(OrderedValue::Infinity),
            Some(d) if d >= n => return Err(Error::DegreeTooLarge { degree: d, bound: n }),
            _ => {}
        }
        let norm = resultant(&self.q, g)?;
        let k = self
            .base
            .ord(&norm)
            .ok_or_else(|| Error::Internal(format!("zero norm of nonzero {g}")))?;
        Ok(OrderedValue::from_ratio(k, n as i64))
    }

    /// [`Self::elem_valuation`] after reducing modulo `Q`.
    pub fn valuation_of(&self, g: &Poly<K>) -> Result<OrderedValue> {
        self.elem_valuation(&self.reduce(g))
    }

    /// Residue of an element of value 0, by search over `K(a)v`.
    pub fn elem_residue(&self, x: &Poly<K>) -> Result<Poly<PrimeField>> {
        let x = self.reduce(x);
        for (k, lift) in self.lifts.iter().enumerate() {
            if self.elem_valuation(&self.ring.sub(&x, lift))?.is_positive() {
                return Ok(self.residue_field.element(k as u64));
            }
        }
        Err(Error::Internal(format!(
            "no residue found for {x} in K(a)v of size {}",
            self.lifts.len()
        )))
    }

    /// Residue of an integral element: zero when the value is positive.
    pub fn residue(&self, x: &Poly<K>) -> Result<Poly<PrimeField>> {
        let v = self.valuation_of(x)?;
        if v.is_negative() {
            return Err(Error::NegativeValuation(v.to_string()));
        }
        if v.is_zero() {
            self.elem_residue(x)
        } else {
            Ok(self.residue_field.zero())
        }
    }

    /// A monomial `π^k X^m` with `m < e` whose value at `a` is `w`, if
    /// `w ∈ vK(a)`.
    pub fn element_of_value(&self, w: &BigRational) -> Option<Poly<K>> {
        let e = self.cert.e as i64;
        (0..e).find_map(|m| {
            let k = w - &self.value * BigRational::from_integer(m.into());
            k.is_integer().then(|| {
                let k = i64::try_from(k.to_integer()).expect("small exponent");
                Poly::monomial(self.base.clone(), self.base.uniformizer_pow(k), m as usize)
            })
        })
    }

    /// Coefficients `c_i ∈ K(a)` of `F = Σ c_i (X - a)^i`.
    pub fn expand(&self, f: &Poly<K>) -> Vec<Poly<K>> {
        self.ring.lift_poly(f).taylor_shift(&self.generator()).into_coeffs()
    }

    pub fn conjugate_distances(&self) -> &DistanceMultiset {
        &self.distances
    }

    /// `max v(a - σa)` over conjugates `σa ≠ a`; `None` if there are none.
    pub fn kras(&self) -> Option<&OrderedValue> {
        self.distances.max_finite()
    }

    /// Newton polygon of `Q(a+Y)/Y^s` over `K(a)`, `s` the inseparable degree.
    fn compute_distances(&self) -> Result<DistanceMultiset> {
        let s = self.cert.inseparable_degree as usize;
        let c = self.expand(&self.q);
        if c[..s].iter().any(|x| !x.is_zero()) || c[s].is_zero() {
            return Err(Error::Internal(format!("Q(a+Y) does not vanish to order exactly {s} at Y = 0")));
        }
        let mut points = Vec::new();
        for (i, ci) in c.iter().enumerate().skip(s) {
            if let OrderedValue::Finite(v) = self.elem_valuation(ci)? {
                points.push((i - s, v[0].clone()));
            }
        }
        let polygon = NewtonPolygon::from_points(&points);
        let values = polygon.root_values().into_iter().map(|(v, m)| (OrderedValue::rational(v), m));
        Ok(DistanceMultiset::from_values(
            std::iter::once((OrderedValue::Infinity, s)).chain(values),
        ))
    }
}

/// `p^m` maximal with every nonzero coefficient index divisible by it; 1 in
/// characteristic 0.
fn inseparable_degree<K: Field>(q: &Poly<K>, p: u64) -> u64 {
    if p == 0 {
        return 1;
    }
    let field = q.field();
    let mut s = 1u64;
    loop {
        let next = s * p;
        let ok = q.coeffs().iter().enumerate().all(|(i, c)| field.is_zero(c) || i as u64 % next == 0);
        if !ok || next > q.degree().unwrap_or(0) as u64 {
            return s;
        }
        s = next;
    }
}

/// Multiset `{v(a'_k - a_i)}` over all roots `a_i` of `q1` and `a'_k` of `q2`,
/// from the Newton polygon in `Z` of `Res_Y(q1(Y), q2(Y + Z))`.
///
/// The values are those of the unique extension of `v` to the splitting
/// field, so both polynomials must be certified. The resultant is obtained by
/// evaluating at `deg q1 · deg q2 + 1` points of `K` and interpolating.
pub fn cross_distances<K: ValuedField>(q1: &Poly<K>, q2: &Poly<K>) -> Result<DistanceMultiset> {
    let field = q1.field().clone();
    let (n1, n2) = (q1.degree().unwrap_or(0), q2.degree().unwrap_or(0));
    let size = n1 * n2 + 1;
    let xs: Vec<K::Elem> = (0..size as u64).map(|k| field.element(k)).collect();
    let ys = xs.iter().map(|z| resultant(q1, &q2.taylor_shift(z))).collect::<Result<Vec<_>>>()?;
    let r = interpolate(&field, &xs, &ys);
    let zero_roots = r.low_degree().ok_or_else(|| Error::Internal("vanishing cross resultant".into()))?;
    let points: Vec<(usize, BigRational)> = r
        .coeffs()
        .iter()
        .enumerate()
        .skip(zero_roots)
        .filter_map(|(i, c)| field.ord(c).map(|k| (i - zero_roots, BigRational::from_integer(k.into()))))
        .collect();
    let values = NewtonPolygon::from_points(&points)
        .root_values()
        .into_iter()
        .map(|(v, m)| (OrderedValue::rational(v), m));
    Ok(DistanceMultiset::from_values(
        std::iter::once((OrderedValue::Infinity, zero_roots)).chain(values),
    ))
}

/// Conjugate distances of a root of `q` via [`cross_distances`]`(q, q)`:
/// by symmetry every root sees the same multiset, so multiplicities are
/// divided by `deg q`.
pub fn conjugate_distances_by_resultant<K: ValuedField>(q: &Poly<K>) -> Result<DistanceMultiset> {
    let n = q.degree().unwrap_or(0);
    let all = cross_distances(q, q)?;
    let mut entries = Vec::new();
    for e in all.entries {
        if e.multiplicity % n != 0 {
            return Err(Error::Internal(format!(
                "multiplicity {} of {} not divisible by {n}",
                e.multiplicity, e.value
            )));
        }
        entries.push((e.value, e.multiplicity / n));
    }
    Ok(DistanceMultiset::from_values(entries))
}

/// Newton-form interpolation through `(xs[i], ys[i])` with distinct `xs`.
fn interpolate<F: Field>(field: &F, xs: &[F::Elem], ys: &[F::Elem]) -> Poly<F> {
    let n = xs.len();
    let mut coef = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = field.sub(&coef[i], &coef[i - 1]);
            let den = field.sub(&xs[i], &xs[i - j]);
            coef[i] = field.div(&num, &den).expect("distinct nodes");
        }
    }
    let mut acc = Poly::zero(field.clone());
    for i in (0..n).rev() {
        acc = &(&acc * &Poly::linear(field.clone(), &xs[i])) + &Poly::constant(field.clone(), coef[i].clone());
    }
    acc
}

impl<K: ValuedField> AlgebraicElement<K> {
    /// Short human-readable description, e.g. `root of [-2, 0, 1]`.
    pub fn describe(&self) -> String {
        format!("root of {}", self.q)
    }
}
