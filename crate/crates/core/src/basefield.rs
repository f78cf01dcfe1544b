//! The two supported base valued fields: `Q` with the p-adic valuation and
//! `F_p(t)` with the t-adic valuation, both normalized so that `vK = Z` and
//! `Kv = F_p`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactpoly::{Field, Poly, PrimeField, RationalFunction, RationalFunctionField, Rationals};
use crate::ordvals::OrderedValue;

/// Scenario-level description of a base field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "base")]
pub enum BaseField {
    Qp { p: u64 },
    Fpt { p: u64 },
}

impl BaseField {
    pub fn prime(&self) -> u64 {
        match *self {
            BaseField::Qp { p } | BaseField::Fpt { p } => p,
        }
    }
}

impl fmt::Display for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseField::Qp { p } => write!(f, "Q with the {p}-adic valuation"),
            BaseField::Fpt { p } => write!(f, "F_{p}(t) with the t-adic valuation"),
        }
    }
}

/// A discretely valued field with `vK = Z`, residue field `F_p` and a fixed
/// uniformizer.
pub trait ValuedField: Field {
    fn descriptor(&self) -> BaseField;

    /// `None` for zero.
    fn ord(&self, x: &Self::Elem) -> Option<i64>;

    /// Residue of an integral element; zero when `v(x) > 0`.
    fn residue(&self, x: &Self::Elem) -> Result<u64>;

    /// `p` or `t`.
    fn uniformizer(&self) -> Self::Elem;

    /// Parses an element from scenario syntax.
    fn parse_elem(&self, s: &str) -> Result<Self::Elem>;

    fn prime(&self) -> u64 {
        self.descriptor().prime()
    }

    fn residue_field(&self) -> PrimeField {
        PrimeField::new(self.prime())
    }

    /// Infinity for zero.
    fn valuation(&self, x: &Self::Elem) -> OrderedValue {
        match self.ord(x) {
            None => OrderedValue::Infinity,
            Some(k) => OrderedValue::integer(k),
        }
    }

    fn uniformizer_pow(&self, k: i64) -> Self::Elem {
        self.ipow(&self.uniformizer(), k).expect("uniformizer is nonzero")
    }

    /// The lift `0 <= c < p` (as an integer, resp. a constant) of a residue.
    fn from_residue(&self, c: u64) -> Self::Elem {
        self.from_int(c as i64)
    }

    /// `x / π^{ord x}`, a unit; `None` for zero.
    fn unit_part(&self, x: &Self::Elem) -> Option<Self::Elem> {
        let k = self.ord(x)?;
        Some(self.mul(x, &self.uniformizer_pow(-k)))
    }
}

fn ord_p(n: &BigInt, p: &BigInt) -> i64 {
    let mut n = n.clone();
    let mut k = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return k;
        }
        n = q;
        k += 1;
    }
}

/// `Q` with `v(p) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PAdicRationals {
    p: u64,
    residue: PrimeField,
}

impl PAdicRationals {
    pub fn new(p: u64) -> Self {
        PAdicRationals {
            p,
            residue: PrimeField::new(p),
        }
    }
}

impl Field for PAdicRationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        Rationals.zero()
    }
    fn one(&self) -> BigRational {
        Rationals.one()
    }
    fn from_int(&self, n: i64) -> BigRational {
        Rationals.from_int(n)
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        Rationals.inv(a)
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn cardinality(&self) -> Option<u64> {
        None
    }
    fn element(&self, k: u64) -> BigRational {
        Rationals.element(k)
    }
    fn format(&self, a: &BigRational) -> String {
        a.to_string()
    }
}

impl ValuedField for PAdicRationals {
    fn descriptor(&self) -> BaseField {
        BaseField::Qp { p: self.p }
    }

    fn ord(&self, x: &BigRational) -> Option<i64> {
        if x.is_zero() {
            return None;
        }
        let p = BigInt::from(self.p);
        Some(ord_p(x.numer(), &p) - ord_p(x.denom(), &p))
    }

    fn residue(&self, x: &BigRational) -> Result<u64> {
        match self.ord(x) {
            None => Ok(0),
            Some(k) if k > 0 => Ok(0),
            Some(0) => {
                let f = self.residue;
                let den = f.reduce_int(x.denom());
                Ok(f.mul(&f.reduce_int(x.numer()), &f.inv(&den).expect("unit denominator")))
            }
            Some(k) => Err(Error::NegativeValuation(k.to_string())),
        }
    }

    fn uniformizer(&self) -> BigRational {
        self.from_int(self.p as i64)
    }

    fn parse_elem(&self, s: &str) -> Result<BigRational> {
        ExprParser::new(self, s, None).parse()
    }
}

/// `F_p(t)` with `v(t) = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct TAdicFunctionField {
    inner: RationalFunctionField<PrimeField>,
}

impl TAdicFunctionField {
    pub fn new(p: u64) -> Self {
        TAdicFunctionField {
            inner: RationalFunctionField::new(PrimeField::new(p)),
        }
    }

    pub fn t(&self) -> RationalFunction<PrimeField> {
        self.inner.t()
    }

    pub fn from_poly(&self, coeffs: &[i64]) -> RationalFunction<PrimeField> {
        self.inner.from_poly(Poly::from_ints(*self.inner.base(), coeffs))
    }
}

impl Field for TAdicFunctionField {
    type Elem = RationalFunction<PrimeField>;

    fn zero(&self) -> Self::Elem {
        self.inner.zero()
    }
    fn one(&self) -> Self::Elem {
        self.inner.one()
    }
    fn from_int(&self, n: i64) -> Self::Elem {
        self.inner.from_int(n)
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.inner.add(a, b)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.inner.neg(a)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.inner.mul(a, b)
    }
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        self.inner.inv(a)
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }
    fn characteristic(&self) -> u64 {
        self.inner.characteristic()
    }
    fn cardinality(&self) -> Option<u64> {
        None
    }
    fn element(&self, k: u64) -> Self::Elem {
        self.inner.element(k)
    }
    fn format(&self, a: &Self::Elem) -> String {
        let num = format_t_poly(a.num());
        if a.den().degree() == Some(0) {
            num
        } else {
            format!("({num})/({})", format_t_poly(a.den()))
        }
    }
}

fn format_t_poly(p: &Poly<PrimeField>) -> String {
    format_terms(p.coeffs().iter().map(|&c| (c != 0).then(|| c.to_string())), "t")
}

/// `c0+c1*t+c2*t^2` from optional coefficient strings (`None` for zero),
/// eliding unit coefficients.
pub(crate) fn format_terms(coeffs: impl Iterator<Item = Option<String>>, var: &str) -> String {
    let mut terms = Vec::new();
    for (k, c) in coeffs.enumerate() {
        let Some(c) = c else { continue };
        terms.push(match (k, c.as_str()) {
            (0, _) => c,
            (1, "1") => var.to_string(),
            (1, _) => format!("{c}*{var}"),
            (k, "1") => format!("{var}^{k}"),
            (k, _) => format!("{c}*{var}^{k}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

impl ValuedField for TAdicFunctionField {
    fn descriptor(&self) -> BaseField {
        BaseField::Fpt {
            p: self.inner.base().modulus(),
        }
    }

    fn ord(&self, x: &Self::Elem) -> Option<i64> {
        let n = x.num().low_degree()?;
        let d = x.den().low_degree().expect("nonzero denominator");
        Some(n as i64 - d as i64)
    }

    fn residue(&self, x: &Self::Elem) -> Result<u64> {
        match self.ord(x) {
            None => Ok(0),
            Some(k) if k > 0 => Ok(0),
            Some(0) => {
                let f = self.inner.base();
                let n = x.num().coeff(x.num().low_degree().unwrap());
                let d = x.den().coeff(x.den().low_degree().unwrap());
                Ok(f.mul(&n, &f.inv(&d).unwrap()))
            }
            Some(k) => Err(Error::NegativeValuation(k.to_string())),
        }
    }

    fn uniformizer(&self) -> Self::Elem {
        self.t()
    }

    fn parse_elem(&self, s: &str) -> Result<Self::Elem> {
        ExprParser::new(self, s, Some(self.t())).parse()
    }
}

/// Recursive-descent parser for field expressions such as `3/8`,
/// `t^2/(1+t)` or `-2*t^3+1`. The variable `t` is accepted only when a value
/// for it is supplied.
struct ExprParser<'a, F: Field> {
    field: &'a F,
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
    var: Option<F::Elem>,
}

impl<'a, F: Field> ExprParser<'a, F> {
    fn new(field: &'a F, src: &'a str, var: Option<F::Elem>) -> Self {
        let chars = src.chars().filter(|c| !c.is_whitespace()).collect();
        ExprParser {
            field,
            src,
            chars,
            pos: 0,
            var,
        }
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at position {} in {:?}", self.pos, self.src))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn parse(mut self) -> Result<F::Elem> {
        if self.chars.is_empty() {
            return Err(self.err("empty expression"));
        }
        let v = self.expr()?;
        if self.pos != self.chars.len() {
            return Err(self.err("unexpected character"));
        }
        Ok(v)
    }

    fn expr(&mut self) -> Result<F::Elem> {
        let mut acc = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' {
                self.field.add(&acc, &rhs)
            } else {
                self.field.sub(&acc, &rhs)
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<F::Elem> {
        let mut acc = self.unary()?;
        while let Some(c @ ('*' | '/')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if c == '*' {
                self.field.mul(&acc, &rhs)
            } else {
                self.field.div(&acc, &rhs).ok_or_else(|| self.err("division by zero"))?
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<F::Elem> {
        if self.peek() == Some('-') {
            self.pos += 1;
            let v = self.unary()?;
            return Ok(self.field.neg(&v));
        }
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let neg = self.peek() == Some('-');
        if neg {
            self.pos += 1;
        }
        let e = self.integer()?;
        let e: i64 = e.try_into().map_err(|_| self.err("exponent too large"))?;
        self.field
            .ipow(&base, if neg { -e } else { e })
            .ok_or_else(|| self.err("negative power of zero"))
    }

    fn atom(&mut self) -> Result<F::Elem> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some('t') if self.var.is_some() => {
                self.pos += 1;
                Ok(self.var.clone().unwrap())
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(self.from_bigint(&n))
            }
            _ => Err(self.err("expected a number, variable or '('")),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("ascii digits"))
    }

    fn from_bigint(&self, n: &BigInt) -> F::Elem {
        // Horner in base 10^9 keeps this generic over the field.
        let chunk = BigInt::from(1_000_000_000u64);
        let mut digits = Vec::new();
        let mut n = n.abs();
        while !n.is_zero() {
            let (q, r) = n.div_rem(&chunk);
            digits.push(i64::try_from(r).unwrap());
            n = q;
        }
        let f = self.field;
        let base = f.from_int(1_000_000_000);
        digits
            .iter()
            .rev()
            .fold(f.zero(), |acc, &d| f.add(&f.mul(&acc, &base), &f.from_int(d)))
    }
}

#[cfg(test)]
mod tests {
    use num_rational::Ratio;

    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        Ratio::new(n.into(), d.into())
    }

    #[test]
    fn padic_valuation_examples() {
        let k = PAdicRationals::new(2);
        assert_eq!(k.ord(&q(12, 1)), Some(2));
        assert_eq!(k.ord(&q(3, 8)), Some(-3));
        assert_eq!(k.valuation(&q(0, 1)), OrderedValue::Infinity);
    }

    #[test]
    fn padic_residue_examples() {
        let k2 = PAdicRationals::new(2);
        // 3 * 5^{-1} mod 2, computed via an explicit inverse.
        let five_inv = (1..2).find(|i| (5 * i) % 2 == 1).unwrap();
        assert_eq!(k2.residue(&q(3, 5)).unwrap(), (3 * five_inv) % 2);
        assert_eq!(PAdicRationals::new(3).residue(&q(6, 1)).unwrap(), 0);
        assert!(k2.residue(&q(1, 2)).is_err());
        let k7 = PAdicRationals::new(7);
        assert_eq!(k7.residue(&q(3, 5)).unwrap(), 2); // 5*2 = 10 = 3 mod 7
    }

    #[test]
    fn tadic_examples() {
        let k = TAdicFunctionField::new(2);
        let x = k.parse_elem("t^2/(1+t)").unwrap();
        assert_eq!(k.ord(&x), Some(2));
        let y = k.parse_elem("(1+t)/(1+t+t^2)").unwrap();
        assert_eq!(k.residue(&y).unwrap(), 1);
        assert!(k.residue(&k.parse_elem("1/t").unwrap()).is_err());
        assert_eq!(k.format(&x), "(t^2)/(1+t)");
    }

    #[test]
    fn parser_forms() {
        let k = PAdicRationals::new(3);
        assert_eq!(k.parse_elem("-3/8").unwrap(), q(-3, 8));
        assert_eq!(k.parse_elem("2^-2 + 1").unwrap(), q(5, 4));
        assert_eq!(k.parse_elem("12345678901234").unwrap(), q(12345678901234, 1));
        assert!(k.parse_elem("t").is_err());
        assert!(k.parse_elem("abc").is_err());
        assert!(k.parse_elem("1/0").is_err());
        let f = TAdicFunctionField::new(3);
        assert_eq!(f.parse_elem("2*t^3+1").unwrap(), f.from_poly(&[1, 0, 0, 2]));
        assert_eq!(f.parse_elem("-t").unwrap(), f.from_poly(&[0, 2]));
    }

    #[test]
    fn descriptor_serde() {
        let b: BaseField = serde_json::from_str(r#"{"base":"Fpt","p":2}"#).unwrap();
        assert_eq!(b, BaseField::Fpt { p: 2 });
        assert_eq!(serde_json::to_string(&BaseField::Qp { p: 3 }).unwrap(), r#"{"base":"Qp","p":3}"#);
    }
}
