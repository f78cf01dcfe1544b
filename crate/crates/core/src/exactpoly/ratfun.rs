use std::fmt;

use super::{Field, Poly};

/// A quotient `num/den` of polynomials with `den` monic and coprime to `num`.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFunction<F: Field> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Field> RationalFunction<F> {
    /// `None` when `den` is zero.
    pub fn new(num: Poly<F>, den: Poly<F>) -> Option<Self> {
        let lc = den.lc()?.clone();
        let field = den.field().clone();
        if num.is_zero() {
            return Some(Self::from_poly(num));
        }
        let g = num.gcd(&den);
        let lc_inv = field.inv(&lc).unwrap();
        let (num, _) = num.div_rem(&g).unwrap();
        let (den, _) = den.div_rem(&g).unwrap();
        // g is monic, so the leading coefficient of den is still lc.
        Some(RationalFunction {
            num: num.scale(&lc_inv),
            den: den.scale(&lc_inv),
        })
    }

    pub fn from_poly(p: Poly<F>) -> Self {
        let den = Poly::one(p.field().clone());
        RationalFunction { num: p, den }
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// `max(deg num, deg den)`: the degree of `F(t)` over `F(self)` when
    /// `self` is not constant.
    pub fn degree(&self) -> usize {
        self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0))
    }
}

impl<F: Field> fmt::Display for RationalFunction<F> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            write!(out, "{}", self.num)
        } else {
            write!(out, "{}/{}", self.num, self.den)
        }
    }
}

/// `F(t)` over a base field context.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFunctionField<F: Field> {
    base: F,
}

impl<F: Field> RationalFunctionField<F> {
    pub fn new(base: F) -> Self {
        RationalFunctionField { base }
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    pub fn t(&self) -> RationalFunction<F> {
        RationalFunction::from_poly(Poly::x(self.base.clone()))
    }

    pub fn from_poly(&self, p: Poly<F>) -> RationalFunction<F> {
        RationalFunction::from_poly(p)
    }

    pub fn from_base(&self, c: F::Elem) -> RationalFunction<F> {
        RationalFunction::from_poly(Poly::constant(self.base.clone(), c))
    }
}

impl<F: Field> Field for RationalFunctionField<F> {
    type Elem = RationalFunction<F>;

    fn zero(&self) -> RationalFunction<F> {
        RationalFunction::from_poly(Poly::zero(self.base.clone()))
    }
    fn one(&self) -> RationalFunction<F> {
        RationalFunction::from_poly(Poly::one(self.base.clone()))
    }
    fn from_int(&self, n: i64) -> RationalFunction<F> {
        self.from_base(self.base.from_int(n))
    }
    fn add(&self, a: &RationalFunction<F>, b: &RationalFunction<F>) -> RationalFunction<F> {
        if a.den == b.den {
            return RationalFunction::new(&a.num + &b.num, a.den.clone()).unwrap();
        }
        let num = &(&a.num * &b.den) + &(&b.num * &a.den);
        RationalFunction::new(num, &a.den * &b.den).unwrap()
    }
    fn neg(&self, a: &RationalFunction<F>) -> RationalFunction<F> {
        RationalFunction {
            num: -&a.num,
            den: a.den.clone(),
        }
    }
    fn mul(&self, a: &RationalFunction<F>, b: &RationalFunction<F>) -> RationalFunction<F> {
        RationalFunction::new(&a.num * &b.num, &a.den * &b.den).unwrap()
    }
    fn inv(&self, a: &RationalFunction<F>) -> Option<RationalFunction<F>> {
        RationalFunction::new(a.den.clone(), a.num.clone())
    }
    fn is_zero(&self, a: &RationalFunction<F>) -> bool {
        a.is_zero()
    }
    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }
    fn cardinality(&self) -> Option<u64> {
        None
    }
    /// Polynomials in `t` whose coefficients are the base-`q` digits of `k`.
    fn element(&self, k: u64) -> RationalFunction<F> {
        match self.base.cardinality() {
            None => self.from_base(self.base.element(k)),
            Some(q) => {
                let mut digits = Vec::new();
                let mut k = k;
                while k > 0 {
                    digits.push(self.base.element(k % q));
                    k /= q;
                }
                RationalFunction::from_poly(Poly::new(self.base.clone(), digits))
            }
        }
    }
    fn format(&self, a: &RationalFunction<F>) -> String {
        a.to_string()
    }
}
