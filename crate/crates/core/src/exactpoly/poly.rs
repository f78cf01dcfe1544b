use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::Field;
use crate::error::{Error, Result};

/// Dense univariate polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> Poly<F> {
    pub fn new(field: F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn from_ints(field: F, coeffs: &[i64]) -> Self {
        let c = coeffs.iter().map(|&n| field.from_int(n)).collect();
        Poly::new(field, c)
    }

    pub fn zero(field: F) -> Self {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn one(field: F) -> Self {
        let one = field.one();
        Poly::new(field, vec![one])
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        Poly::new(field, vec![c])
    }

    /// `c·X^k`
    pub fn monomial(field: F, c: F::Elem, k: usize) -> Self {
        let mut coeffs = vec![field.zero(); k];
        coeffs.push(c);
        Poly::new(field, coeffs)
    }

    pub fn x(field: F) -> Self {
        let one = field.one();
        Self::monomial(field, one, 1)
    }

    /// `X - c`
    pub fn linear(field: F, c: &F::Elem) -> Self {
        let coeffs = vec![field.neg(c), field.one()];
        Poly::new(field, coeffs)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F::Elem> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_some_and(|c| self.field.is_one(c))
    }

    pub fn lc(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    /// Index of the lowest nonzero coefficient.
    pub fn low_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !self.field.is_zero(c))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let coeffs = self.coeffs.iter().map(|x| self.field.mul(x, c)).collect();
        Poly::new(self.field.clone(), coeffs)
    }

    /// Multiplies by `X^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn monic(&self) -> Self {
        match self.lc() {
            None => self.clone(),
            Some(lc) => self.scale(&self.field.inv(lc).expect("nonzero leading coefficient")),
        }
    }

    pub fn map<G: Field>(&self, target: &G, f: impl Fn(&F::Elem) -> G::Elem) -> Poly<G> {
        Poly::new(target.clone(), self.coeffs.iter().map(f).collect())
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::one(self.field.clone());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(c, &f.from_int(i as i64)))
            .collect();
        Poly::new(f.clone(), coeffs)
    }

    /// Euclidean division; fails only for a zero divisor.
    pub fn div_rem(&self, d: &Poly<F>) -> Result<(Poly<F>, Poly<F>)> {
        let f = &self.field;
        let Some(dd) = d.degree() else {
            return Err(Error::Precondition("division by the zero polynomial".into()));
        };
        let lc_inv = f.inv(d.lc().unwrap()).unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Poly::zero(f.clone()), self.clone()));
        }
        let mut q = vec![f.zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            if f.is_zero(&r[i]) {
                continue;
            }
            let c = f.mul(&r[i], &lc_inv);
            for (k, dc) in d.coeffs.iter().enumerate() {
                let idx = i - dd + k;
                r[idx] = f.sub(&r[idx], &f.mul(&c, dc));
            }
            q[i - dd] = c;
        }
        r.truncate(dd);
        Ok((Poly::new(f.clone(), q), Poly::new(f.clone(), r)))
    }

    pub fn rem(&self, d: &Poly<F>) -> Result<Poly<F>> {
        Ok(self.div_rem(d)?.1)
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Poly<F>) -> Poly<F> {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s·self + t·other = g` monic.
    pub fn ext_gcd(&self, other: &Poly<F>) -> (Poly<F>, Poly<F>, Poly<F>) {
        let f = self.field.clone();
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f.clone()), Poly::zero(f.clone()));
        let (mut t0, mut t1) = (Poly::zero(f.clone()), Poly::one(f.clone()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.lc().cloned() {
            None => (r0, s0, t0),
            Some(lc) => {
                let li = f.inv(&lc).unwrap();
                (r0.scale(&li), s0.scale(&li), t0.scale(&li))
            }
        }
    }

    /// `self(g)`
    pub fn compose(&self, g: &Poly<F>) -> Poly<F> {
        let mut acc = Poly::zero(self.field.clone());
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &Poly::constant(self.field.clone(), c.clone());
        }
        acc
    }

    /// `self(g) mod m`, reducing after every Horner step.
    pub fn compose_mod(&self, g: &Poly<F>, m: &Poly<F>) -> Result<Poly<F>> {
        let g = g.rem(m)?;
        let mut acc = Poly::zero(self.field.clone());
        for c in self.coeffs.iter().rev() {
            acc = (&(&acc * &g) + &Poly::constant(self.field.clone(), c.clone())).rem(m)?;
        }
        Ok(acc)
    }

    /// Coefficients of the `(X - a)`-adic expansion: `self(a + Y)` as a
    /// polynomial in `Y`.
    pub fn taylor_shift(&self, a: &F::Elem) -> Poly<F> {
        let f = &self.field;
        let mut c = self.coeffs.clone();
        let n = c.len();
        // Repeated synthetic division by (Y - a), in place.
        for i in 0..n {
            for k in (i..n.saturating_sub(1)).rev() {
                let t = f.mul(&c[k + 1], a);
                c[k] = f.add(&c[k], &t);
            }
        }
        Poly::new(f.clone(), c)
    }
}

/// `Res(f, g) = lc(f)^{deg g} · Π g(roots of f)`, via Euclidean remainders.
pub fn resultant<F: Field>(f: &Poly<F>, g: &Poly<F>) -> Result<F::Elem> {
    let field = f.field().clone();
    match (f.degree(), g.degree()) {
        (None, None) => return Err(Error::ZeroResultant),
        (None, _) | (_, None) => return Ok(field.zero()),
        _ => {}
    }
    let (mut a, mut b) = (f.clone(), g.clone());
    let mut acc = field.one();
    loop {
        let (m, n) = (a.degree().unwrap(), b.degree().unwrap());
        if n == 0 {
            return Ok(field.mul(&acc, &field.pow(b.lc().unwrap(), m as u64)));
        }
        if m == 0 {
            return Ok(field.mul(&acc, &field.pow(a.lc().unwrap(), n as u64)));
        }
        let r = a.rem(&b)?;
        let Some(s) = r.degree() else {
            return Ok(field.zero());
        };
        // Res(a,b) = (-1)^{mn} lc(b)^{m-s} Res(b, r)
        if (m * n) % 2 == 1 {
            acc = field.neg(&acc);
        }
        acc = field.mul(&acc, &field.pow(b.lc().unwrap(), (m - s) as u64));
        a = b;
        b = r;
    }
}

impl<F: Field> Add for &Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: &Poly<F>) -> Poly<F> {
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let c = (0..n).map(|i| f.add(&self.coeff(i), &rhs.coeff(i))).collect();
        Poly::new(f.clone(), c)
    }
}

impl<F: Field> Sub for &Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: &Poly<F>) -> Poly<F> {
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let c = (0..n).map(|i| f.sub(&self.coeff(i), &rhs.coeff(i))).collect();
        Poly::new(f.clone(), c)
    }
}

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        let c = self.coeffs.iter().map(|x| self.field.neg(x)).collect();
        Poly::new(self.field.clone(), c)
    }
}

impl<F: Field> Mul for &Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: &Poly<F>) -> Poly<F> {
        let f = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(f.clone());
        }
        let mut c = vec![f.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] = f.add(&c[i + j], &f.mul(a, b));
            }
        }
        Poly::new(f.clone(), c)
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    /// Coefficient list, lowest degree first.
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(out, ", ")?;
            }
            write!(out, "{}", self.field.format(c))?;
        }
        write!(out, "]")
    }
}

#[cfg(test)]
mod tests {
    use num_rational::BigRational;

    use super::*;
    use crate::exactpoly::{PrimeField, QuotientRing, Rationals};

    fn qp(c: &[i64]) -> Poly<Rationals> {
        Poly::from_ints(Rationals, c)
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    /// Sylvester-matrix determinant by Gaussian elimination; independent of
    /// the remainder-sequence route.
    fn sylvester_resultant(f: &Poly<Rationals>, g: &Poly<Rationals>) -> BigRational {
        let (m, n) = (f.degree().unwrap(), g.degree().unwrap());
        let size = m + n;
        let mut mat = vec![vec![q(0); size]; size];
        for r in 0..n {
            for (k, c) in f.coeffs().iter().rev().enumerate() {
                mat[r][r + k] = c.clone();
            }
        }
        for r in 0..m {
            for (k, c) in g.coeffs().iter().rev().enumerate() {
                mat[n + r][r + k] = c.clone();
            }
        }
        let mut det = q(1);
        for i in 0..size {
            let Some(p) = (i..size).find(|&r| mat[r][i] != q(0)) else {
                return q(0);
            };
            if p != i {
                mat.swap(p, i);
                det = -det;
            }
            det *= mat[i][i].clone();
            for r in i + 1..size {
                let factor = &mat[r][i] / &mat[i][i];
                for c in i..size {
                    let t = &factor * &mat[i][c];
                    mat[r][c] -= t;
                }
            }
        }
        det
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(resultant(&qp(&[-2, 0, 1]), &qp(&[0, 1])).unwrap(), q(-2));
        assert_eq!(resultant(&qp(&[1, 1, 1]), &qp(&[-1, 1])).unwrap(), q(3));
        // Linear case: Res(X - c, g) = g(c).
        let g = qp(&[5, -3, 0, 2]);
        assert_eq!(resultant(&qp(&[-7, 1]), &g).unwrap(), g.eval(&q(7)));
        assert_eq!(resultant(&Poly::zero(Rationals), &Poly::zero(Rationals)), Err(Error::ZeroResultant));
    }

    #[test]
    fn resultant_matches_sylvester() {
        let cases = [
            (qp(&[-2, 0, 1]), qp(&[3, 1])),
            (qp(&[1, 2, 0, 1]), qp(&[4, -1, 3])),
            (qp(&[7, 0, 0, 0, 1]), qp(&[1, 1, 1, 1])),
            (qp(&[2, -3, 1]), qp(&[-1, 0, 5, 2])),
        ];
        for (f, g) in cases {
            assert_eq!(resultant(&f, &g).unwrap(), sylvester_resultant(&f, &g), "{f} {g}");
        }
    }

    #[test]
    fn compose_mod_examples() {
        let m = qp(&[0, 0, 0, 1]);
        assert_eq!(qp(&[0, 0, 1]).compose_mod(&qp(&[1, 1]), &m).unwrap(), qp(&[1, 2, 1]));
        let q2 = qp(&[-2, 0, 1]);
        assert!(q2.compose_mod(&qp(&[0, 1]), &q2).unwrap().is_zero());
        let m5 = qp(&[0, 0, 0, 0, 0, 1]);
        assert!(qp(&[0, 0, 0, 1]).compose_mod(&qp(&[0, 0, 1]), &m5).unwrap().is_zero());
    }

    #[test]
    fn taylor_shift_examples() {
        let q2 = qp(&[-2, 0, 1]);
        let ring = QuotientRing::new(q2.clone()).unwrap();
        let a = ring.generator();
        let lifted = q2.map(&ring, |c| ring.embed(c));
        let c = lifted.taylor_shift(&a);
        assert!(ring.is_zero(&c.coeff(0)));
        assert_eq!(c.coeff(1), ring.mul(&ring.from_int(2), &a));
        assert_eq!(c.coeff(2), ring.one());

        // X^2 + X + 1 at its own root: c1 = 2a + 1.
        let cyc = qp(&[1, 1, 1]);
        let ring = QuotientRing::new(cyc.clone()).unwrap();
        let a = ring.generator();
        let c = cyc.map(&ring, |x| ring.embed(x)).taylor_shift(&a);
        assert!(ring.is_zero(&c.coeff(0)));
        assert_eq!(c.coeff(1), ring.add(&ring.mul(&ring.from_int(2), &a), &ring.one()));
        assert_eq!(c.coeff(2), ring.one());

        let x = qp(&[0, 1]);
        assert_eq!(x.taylor_shift(&q(0)), x);
    }

    #[test]
    fn div_rem_and_gcd() {
        let f = qp(&[-1, 0, 1]);
        let g = qp(&[1, 1]);
        let (quo, r) = f.div_rem(&g).unwrap();
        assert_eq!(quo, qp(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(f.gcd(&qp(&[1, 2, 1])), qp(&[1, 1]));
        let (g2, s, t) = qp(&[1, 0, 1]).ext_gcd(&qp(&[0, 1]));
        assert_eq!(g2, qp(&[1]));
        assert_eq!(&(&s * &qp(&[1, 0, 1])) + &(&t * &qp(&[0, 1])), g2);
    }

    #[test]
    fn derivative_in_char_p() {
        let f = Poly::from_ints(PrimeField::new(2), &[1, 0, 1]);
        assert!(f.derivative().is_zero());
    }
}
