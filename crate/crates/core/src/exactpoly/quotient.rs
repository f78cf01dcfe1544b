use std::sync::Arc;

use super::{Field, Poly, PrimeField};
use crate::error::{Error, Result};

/// `F[y]/(m)` for a monic modulus `m`. Elements are reduced polynomials of
/// degree `< deg m`.
///
/// Field operations assume `m` irreducible; the constructor only checks that
/// it is monic of positive degree. [`FiniteField::checked`] additionally
/// proves irreducibility over a prime field.
#[derive(Clone, Debug, PartialEq)]
pub struct QuotientRing<F: Field> {
    base: F,
    modulus: Arc<Poly<F>>,
}

/// `F_p[y]/(m)` with `m` irreducible: the residue fields `K(a)v`.
pub type FiniteField = QuotientRing<PrimeField>;

impl<F: Field> QuotientRing<F> {
    pub fn new(modulus: Poly<F>) -> Result<Self> {
        match modulus.degree() {
            Some(d) if d >= 1 && modulus.is_monic() => Ok(QuotientRing {
                base: modulus.field().clone(),
                modulus: Arc::new(modulus),
            }),
            _ => Err(Error::Precondition(format!("modulus {modulus} must be monic of positive degree"))),
        }
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    pub fn modulus(&self) -> &Poly<F> {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap()
    }

    pub fn reduce(&self, p: &Poly<F>) -> Poly<F> {
        p.rem(&self.modulus).expect("modulus is nonzero")
    }

    /// The class of `y`.
    pub fn generator(&self) -> Poly<F> {
        self.reduce(&Poly::x(self.base.clone()))
    }

    pub fn embed(&self, c: &F::Elem) -> Poly<F> {
        Poly::constant(self.base.clone(), c.clone())
    }

    /// Lifts a polynomial over the base to one over this ring.
    pub fn lift_poly(&self, p: &Poly<F>) -> Poly<Self> {
        p.map(self, |c| self.embed(c))
    }

    /// Degree-0 part of a reduced element, if it lies in the base.
    pub fn as_base(&self, x: &Poly<F>) -> Option<F::Elem> {
        x.is_constant().then(|| x.coeff(0))
    }
}

impl<F: Field> Field for QuotientRing<F> {
    type Elem = Poly<F>;

    fn zero(&self) -> Poly<F> {
        Poly::zero(self.base.clone())
    }
    fn one(&self) -> Poly<F> {
        Poly::one(self.base.clone())
    }
    fn from_int(&self, n: i64) -> Poly<F> {
        Poly::constant(self.base.clone(), self.base.from_int(n))
    }
    fn add(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        a + b
    }
    fn neg(&self, a: &Poly<F>) -> Poly<F> {
        -a
    }
    fn sub(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        a - b
    }
    fn mul(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        self.reduce(&(a * b))
    }
    fn inv(&self, a: &Poly<F>) -> Option<Poly<F>> {
        if a.is_zero() {
            return None;
        }
        let (g, s, _) = a.ext_gcd(&self.modulus);
        // A nontrivial gcd means the modulus was reducible.
        (g.degree() == Some(0)).then(|| self.reduce(&s))
    }
    fn is_zero(&self, a: &Poly<F>) -> bool {
        a.is_zero()
    }
    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }
    fn cardinality(&self) -> Option<u64> {
        let q = self.base.cardinality()?;
        q.checked_pow(self.degree() as u32)
    }
    fn element(&self, k: u64) -> Poly<F> {
        match self.base.cardinality() {
            None => self.embed(&self.base.element(k)),
            Some(q) => {
                let mut digits = Vec::new();
                let mut k = k;
                while k > 0 && digits.len() < self.degree() {
                    digits.push(self.base.element(k % q));
                    k /= q;
                }
                Poly::new(self.base.clone(), digits)
            }
        }
    }
    fn format(&self, a: &Poly<F>) -> String {
        a.to_string()
    }
}

impl FiniteField {
    /// `F_p[y]/(m)`, after proving `m` irreducible.
    pub fn checked(modulus: Poly<PrimeField>) -> Result<Self> {
        if !modulus.is_monic() || !is_irreducible_mod_p(&modulus) {
            return Err(Error::Precondition(format!("{modulus} is not monic irreducible over F_p")));
        }
        QuotientRing::new(modulus)
    }
}

/// Ben-Or: `f` of degree `n` is irreducible over `F_p` iff
/// `gcd(f, y^{p^i} - y) = 1` for `1 <= i <= n/2`.
pub fn is_irreducible_mod_p(f: &Poly<PrimeField>) -> bool {
    let field = *f.field();
    let Some(n) = f.degree() else { return false };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let f = f.monic();
    let ring = QuotientRing {
        base: field,
        modulus: Arc::new(f.clone()),
    };
    let y = ring.generator();
    let mut power = y.clone();
    for _ in 1..=n / 2 {
        power = ring.pow(&power, field.modulus());
        let g = f.gcd(&(&power - &y));
        if g.degree() != Some(0) {
            return false;
        }
    }
    true
}
