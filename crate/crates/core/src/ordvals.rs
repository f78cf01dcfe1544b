//! Values in lexicographically ordered `Q^k` (k = 1 or 2) and finitely
//! generated value groups.
//!
//! Rank 1 carries the values of residue-transcendental scenarios. Rank 2 is
//! `(vK̄ ⊕ Z)_lex` and carries value-transcendental ones; the only coercion
//! between ranks is the embedding `x ↦ (x, 0)` done by [`OrderedValue::embed`].
//!
//! Group indices are computed by scaling generators to integer vectors and
//! comparing the gcd of maximal minors of Hermite bases.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of `Q^k` under the lexicographic order, or `+∞`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum OrderedValue {
    Finite(Vec<BigRational>),
    Infinity,
}

impl OrderedValue {
    pub fn rational(q: BigRational) -> Self {
        OrderedValue::Finite(vec![q])
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::rational(BigRational::new(num.into(), den.into()))
    }

    pub fn integer(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }

    pub fn pair(first: BigRational, second: BigRational) -> Self {
        OrderedValue::Finite(vec![first, second])
    }

    pub fn zero(rank: usize) -> Self {
        OrderedValue::Finite(vec![BigRational::zero(); rank])
    }

    /// `None` for infinity.
    pub fn rank(&self) -> Option<usize> {
        match self {
            OrderedValue::Finite(c) => Some(c.len()),
            OrderedValue::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, OrderedValue::Infinity)
    }

    pub fn coords(&self) -> Option<&[BigRational]> {
        match self {
            OrderedValue::Finite(c) => Some(c),
            OrderedValue::Infinity => None,
        }
    }

    /// First coordinate of a finite value.
    pub fn leading(&self) -> Option<&BigRational> {
        self.coords().map(|c| &c[0])
    }

    /// Lexicographic comparison; infinity exceeds everything finite.
    pub fn compare(&self, other: &OrderedValue) -> Result<Ordering> {
        match (self, other) {
            (OrderedValue::Infinity, OrderedValue::Infinity) => Ok(Ordering::Equal),
            (OrderedValue::Infinity, _) => Ok(Ordering::Greater),
            (_, OrderedValue::Infinity) => Ok(Ordering::Less),
            (OrderedValue::Finite(a), OrderedValue::Finite(b)) => {
                if a.len() != b.len() {
                    return Err(Error::RankMismatch {
                        left: a.len(),
                        right: b.len(),
                    });
                }
                Ok(a.cmp(b))
            }
        }
    }

    /// Pads with zero coordinates up to `rank` (`α ↦ (α, 0)`).
    pub fn embed(&self, rank: usize) -> Result<OrderedValue> {
        match self {
            OrderedValue::Infinity => Ok(OrderedValue::Infinity),
            OrderedValue::Finite(c) if c.len() > rank => Err(Error::RankMismatch {
                left: c.len(),
                right: rank,
            }),
            OrderedValue::Finite(c) => {
                let mut c = c.clone();
                c.resize(rank, BigRational::zero());
                Ok(OrderedValue::Finite(c))
            }
        }
    }

    pub fn checked_add(&self, other: &OrderedValue) -> Result<OrderedValue> {
        match (self, other) {
            (OrderedValue::Infinity, _) | (_, OrderedValue::Infinity) => Ok(OrderedValue::Infinity),
            (OrderedValue::Finite(a), OrderedValue::Finite(b)) => {
                if a.len() != b.len() {
                    return Err(Error::RankMismatch {
                        left: a.len(),
                        right: b.len(),
                    });
                }
                Ok(OrderedValue::Finite(a.iter().zip(b).map(|(x, y)| x + y).collect()))
            }
        }
    }

    /// Integer multiple. Infinity stays infinite for positive multipliers.
    pub fn scale(&self, k: i64) -> OrderedValue {
        match self {
            OrderedValue::Infinity => OrderedValue::Infinity,
            OrderedValue::Finite(c) => {
                let k = BigRational::from_integer(k.into());
                OrderedValue::Finite(c.iter().map(|x| x * &k).collect())
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, OrderedValue::Finite(c) if c.iter().all(Zero::is_zero))
    }

    pub fn is_positive(&self) -> bool {
        match self {
            OrderedValue::Infinity => true,
            OrderedValue::Finite(c) => c.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_positive()),
        }
    }

    pub fn is_negative(&self) -> bool {
        !self.is_zero() && !self.is_positive()
    }

    /// Minimum of two values of equal rank.
    pub fn min_of(self, other: OrderedValue) -> Result<OrderedValue> {
        Ok(match self.compare(&other)? {
            Ordering::Greater => other,
            _ => self,
        })
    }
}

impl PartialOrd for OrderedValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.compare(other).ok()
    }
}

/// Panics on rank mismatch; use [`OrderedValue::checked_add`] at API edges.
impl Add for &OrderedValue {
    type Output = OrderedValue;
    fn add(self, rhs: &OrderedValue) -> OrderedValue {
        self.checked_add(rhs).expect("adding values of different rank")
    }
}

impl Add for OrderedValue {
    type Output = OrderedValue;
    fn add(self, rhs: OrderedValue) -> OrderedValue {
        &self + &rhs
    }
}

impl Neg for &OrderedValue {
    type Output = OrderedValue;
    fn neg(self) -> OrderedValue {
        match self {
            OrderedValue::Infinity => panic!("negating infinity"),
            OrderedValue::Finite(c) => OrderedValue::Finite(c.iter().map(|x| -x).collect()),
        }
    }
}

impl Sub for &OrderedValue {
    type Output = OrderedValue;
    fn sub(self, rhs: &OrderedValue) -> OrderedValue {
        self + &(-rhs)
    }
}

impl fmt::Display for OrderedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderedValue::Infinity => write!(f, "inf"),
            OrderedValue::Finite(c) if c.len() == 1 => write!(f, "{}", c[0]),
            OrderedValue::Finite(c) => {
                write!(f, "(")?;
                for (i, x) in c.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Parses a single exact fraction such as `-3/2` or `7`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not an exact fraction: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

/// Serde adapter writing a rational as its fraction string.
pub mod rational_string {
    use super::*;

    pub fn serialize<S: Serializer>(q: &BigRational, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&q.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> std::result::Result<BigRational, D::Error> {
        let s = String::deserialize(de)?;
        parse_rational(&s).map_err(de::Error::custom)
    }
}

impl FromStr for OrderedValue {
    type Err = Error;

    /// Accepts `inf`, `3/2`, or `(3/2,-1)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "inf" {
            return Ok(OrderedValue::Infinity);
        }
        if let Some(inner) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            let coords = inner.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?;
            if coords.is_empty() || coords.len() > 2 {
                return Err(Error::Parse(format!("rank must be 1 or 2: {s:?}")));
            }
            return Ok(OrderedValue::Finite(coords));
        }
        Ok(OrderedValue::rational(parse_rational(s)?))
    }
}

impl Serialize for OrderedValue {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            OrderedValue::Infinity => ser.serialize_str("inf"),
            OrderedValue::Finite(c) if c.len() == 1 => ser.serialize_str(&c[0].to_string()),
            OrderedValue::Finite(c) => {
                let mut seq = ser.serialize_seq(Some(c.len()))?;
                for x in c {
                    seq.serialize_element(&x.to_string())?;
                }
                seq.end()
            }
        }
    }
}

impl<'de> Deserialize<'de> for OrderedValue {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            One(String),
            Many(Vec<String>),
        }
        match Raw::deserialize(de)? {
            Raw::One(s) => s.parse().map_err(de::Error::custom),
            Raw::Many(v) => {
                if v.is_empty() || v.len() > 2 {
                    return Err(de::Error::custom("value rank must be 1 or 2"));
                }
                let c = v.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>();
                c.map(OrderedValue::Finite).map_err(de::Error::custom)
            }
        }
    }
}

/// Index of one value group in another.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupIndex {
    Finite(u64),
    Infinite,
}

impl Serialize for GroupIndex {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            GroupIndex::Finite(n) => ser.serialize_u64(*n),
            GroupIndex::Infinite => ser.serialize_str("infinite"),
        }
    }
}

impl<'de> Deserialize<'de> for GroupIndex {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u64),
            Tag(String),
        }
        match Raw::deserialize(de)? {
            Raw::Num(n) => Ok(GroupIndex::Finite(n)),
            Raw::Tag(s) if s == "infinite" => Ok(GroupIndex::Infinite),
            Raw::Tag(s) => Err(de::Error::custom(format!("bad group index {s:?}"))),
        }
    }
}

impl GroupIndex {
    pub fn finite(self) -> Option<u64> {
        match self {
            GroupIndex::Finite(n) => Some(n),
            GroupIndex::Infinite => None,
        }
    }
}

impl fmt::Display for GroupIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupIndex::Finite(n) => write!(f, "{n}"),
            GroupIndex::Infinite => write!(f, "infinite"),
        }
    }
}

/// Subgroup of `Q^k` generated by finitely many finite values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValueGroup {
    rank: usize,
    generators: Vec<Vec<BigRational>>,
}

impl ValueGroup {
    pub fn new(rank: usize, generators: &[OrderedValue]) -> Result<Self> {
        if rank == 0 || rank > 2 {
            return Err(Error::Precondition(format!("ambient rank {rank} unsupported")));
        }
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            match g {
                OrderedValue::Infinity => return Err(Error::InfiniteValue),
                OrderedValue::Finite(c) if c.len() != rank => {
                    return Err(Error::RankMismatch {
                        left: rank,
                        right: c.len(),
                    })
                }
                OrderedValue::Finite(c) => gens.push(c.clone()),
            }
        }
        Ok(ValueGroup { rank, generators: gens })
    }

    /// `⟨1⟩`, or `⟨(1,0)⟩` in rank 2: the value group of the base fields.
    pub fn integers(rank: usize) -> Self {
        let mut g = vec![BigRational::zero(); rank];
        g[0] = BigRational::one();
        ValueGroup { rank, generators: vec![g] }
    }

    pub fn ambient_rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> Vec<OrderedValue> {
        self.generators.iter().cloned().map(OrderedValue::Finite).collect()
    }

    /// The group generated by `self` and one more value.
    pub fn adjoin(&self, v: &OrderedValue) -> Result<ValueGroup> {
        let mut gens = self.generators();
        gens.push(v.clone());
        ValueGroup::new(self.rank, &gens)
    }

    pub fn sum(&self, other: &ValueGroup) -> Result<ValueGroup> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Ok(ValueGroup {
            rank: self.rank,
            generators: gens,
        })
    }

    fn check_value(&self, v: &OrderedValue) -> Result<Vec<BigRational>> {
        match v {
            OrderedValue::Infinity => Err(Error::InfiniteValue),
            OrderedValue::Finite(c) if c.len() != self.rank => Err(Error::RankMismatch {
                left: self.rank,
                right: c.len(),
            }),
            OrderedValue::Finite(c) => Ok(c.clone()),
        }
    }

    /// Whether `v` is an integer combination of the generators.
    pub fn contains(&self, v: &OrderedValue) -> Result<bool> {
        let v = self.check_value(v)?;
        let scale = common_denominator(self.generators.iter().chain(std::iter::once(&v)));
        let basis = hermite_basis(scale_rows(&self.generators, &scale), self.rank);
        Ok(reduce_against(&basis, scale_row(&v, &scale)).iter().all(Zero::is_zero))
    }

    /// Rational rank of the group (dimension of its divisible hull).
    pub fn rational_rank(&self) -> usize {
        let scale = common_denominator(self.generators.iter());
        hermite_basis(scale_rows(&self.generators, &scale), self.rank).len()
    }

    /// `(self : sub)`; every generator of `sub` must lie in `self`.
    pub fn index_of(&self, sub: &ValueGroup) -> Result<GroupIndex> {
        if self.rank != sub.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: sub.rank,
            });
        }
        for h in sub.generators() {
            if !self.contains(&h)? {
                return Err(Error::NotSubgroup { witness: h.to_string() });
            }
        }
        let scale = common_denominator(self.generators.iter().chain(sub.generators.iter()));
        let big = hermite_basis(scale_rows(&self.generators, &scale), self.rank);
        let small = hermite_basis(scale_rows(&sub.generators, &scale), self.rank);
        if small.len() < big.len() {
            return Ok(GroupIndex::Infinite);
        }
        let (num, den) = (maximal_minor_gcd(&small), maximal_minor_gcd(&big));
        if den.is_zero() {
            // Both trivial.
            return Ok(GroupIndex::Finite(1));
        }
        let (q, r) = num.div_rem(&den);
        if !r.is_zero() {
            return Err(Error::Internal(format!("lattice index {num}/{den} is not integral")));
        }
        q.to_u64()
            .map(GroupIndex::Finite)
            .ok_or_else(|| Error::Internal(format!("group index {q} out of range")))
    }

    /// Least `m ≥ 1` with `m·v` in the group, or `None` when no multiple lies
    /// in it (`v` raises the rational rank).
    pub fn least_multiple_in(&self, v: &OrderedValue) -> Result<Option<u64>> {
        self.check_value(v)?;
        let extended = self.adjoin(v)?;
        let bound = match extended.index_of(self)? {
            GroupIndex::Infinite => return Ok(None),
            GroupIndex::Finite(n) => n,
        };
        for m in 1..=bound {
            if self.contains(&v.scale(m as i64))? {
                return Ok(Some(m));
            }
        }
        Err(Error::Internal(format!("no multiple of {v} up to the index bound {bound}")))
    }
}

impl fmt::Display for ValueGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.generators().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

fn common_denominator<'a>(rows: impl Iterator<Item = &'a Vec<BigRational>>) -> BigInt {
    let mut l = BigInt::one();
    for r in rows {
        for x in r {
            l = l.lcm(x.denom());
        }
    }
    l
}

fn scale_row(row: &[BigRational], scale: &BigInt) -> Vec<BigInt> {
    row.iter()
        .map(|x| {
            let y = x * BigRational::from_integer(scale.clone());
            debug_assert!(y.is_integer());
            y.to_integer()
        })
        .collect()
}

fn scale_rows(rows: &[Vec<BigRational>], scale: &BigInt) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| scale_row(r, scale)).collect()
}

/// Row-style Hermite normal form; returns the nonzero rows (a basis of the
/// row lattice) with positive pivots in strictly increasing columns.
pub fn hermite_basis(mut rows: Vec<Vec<BigInt>>, cols: usize) -> Vec<Vec<BigInt>> {
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    let mut top = 0;
    for c in 0..cols {
        loop {
            // Smallest nonzero entry in this column becomes the pivot candidate.
            let Some(p) = (top..rows.len())
                .filter(|&i| !rows[i][c].is_zero())
                .min_by(|&a, &b| rows[a][c].abs().cmp(&rows[b][c].abs()))
            else {
                break;
            };
            rows.swap(top, p);
            let mut done = true;
            for i in top + 1..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[top][c]);
                let pivot_row = rows[top].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
                if !rows[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if top < rows.len() && !rows[top][c].is_zero() {
            if rows[top][c].is_negative() {
                for x in rows[top].iter_mut() {
                    *x = -x.clone();
                }
            }
            let pivot_row = rows[top].clone();
            for i in 0..top {
                let q = rows[i][c].div_floor(&pivot_row[c]);
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
            }
            top += 1;
        }
    }
    rows.truncate(top);
    rows
}

/// Reduces `v` modulo the Hermite basis; zero result means membership.
fn reduce_against(basis: &[Vec<BigInt>], mut v: Vec<BigInt>) -> Vec<BigInt> {
    for row in basis {
        let Some(c) = row.iter().position(|x| !x.is_zero()) else { continue };
        let (q, r) = v[c].div_rem(&row[c]);
        if !r.is_zero() {
            return v;
        }
        for (x, y) in v.iter_mut().zip(row) {
            *x -= &q * y;
        }
    }
    v
}

/// gcd of the r×r minors of an r×k basis; invariant under unimodular row
/// operations, so the ratio for nested lattices of equal rank is the index.
fn maximal_minor_gcd(basis: &[Vec<BigInt>]) -> BigInt {
    let r = basis.len();
    if r == 0 {
        return BigInt::zero();
    }
    let k = basis[0].len();
    let mut g = BigInt::zero();
    for cols in column_subsets(k, r) {
        let m: Vec<Vec<BigInt>> = basis.iter().map(|row| cols.iter().map(|&c| row[c].clone()).collect()).collect();
        g = g.gcd(&determinant(m));
    }
    g
}

fn column_subsets(k: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, k: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for c in start..k {
            cur.push(c);
            go(c + 1, k, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, k, r, &mut Vec::new(), &mut out);
    out
}

/// Bareiss fraction-free determinant.
fn determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for i in 0..n {
        if m[i][i].is_zero() {
            let Some(p) = (i + 1..n).find(|&r| !m[r][i].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(i, p);
            sign = -sign;
        }
        for r in i + 1..n {
            for c in i + 1..n {
                let v = (&m[r][c] * &m[i][i] - &m[r][i] * &m[i][c]) / &prev;
                m[r][c] = v;
            }
        }
        prev = m[i][i].clone();
    }
    sign * &m[n - 1][n - 1]
}
