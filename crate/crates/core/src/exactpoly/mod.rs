//! Exact univariate polynomials and rational functions over runtime fields.
//!
//! Fields are context objects (the modulus of `F_p`, the minimal polynomial of
//! a simple extension) implementing [`Field`]; polynomials carry their field.
//! Everything is exact: equality of elements is decidable and used freely.

mod fields;
mod poly;
mod quotient;
mod ratfun;

use std::fmt::Debug;

pub use fields::{is_prime, PrimeField, Rationals};
pub use poly::{resultant, Poly};
pub use quotient::{is_irreducible_mod_p, FiniteField, QuotientRing};
pub use ratfun::{RationalFunction, RationalFunctionField};

/// A field given as a context object; elements are plain values.
pub trait Field: Clone + PartialEq + Debug {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` exactly for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn characteristic(&self) -> u64;
    /// Number of elements, `None` when infinite.
    fn cardinality(&self) -> Option<u64>;
    /// An enumeration of elements, injective on `0..cardinality` (or on all
    /// of `u64` for infinite fields).
    fn element(&self, k: u64) -> Self::Elem;
    fn format(&self, a: &Self::Elem) -> String;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `a^e` for possibly negative `e`; `None` for negative powers of zero.
    fn ipow(&self, a: &Self::Elem, e: i64) -> Option<Self::Elem> {
        if e >= 0 {
            Some(self.pow(a, e as u64))
        } else {
            self.inv(a).map(|ai| self.pow(&ai, e.unsigned_abs()))
        }
    }
}
