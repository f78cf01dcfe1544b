mod common;

use std::cmp::Ordering;

use minpair_core::algext::AlgebraicElement;
use minpair_core::basefield::{PAdicRationals, TAdicFunctionField};
use minpair_core::exactpoly::{resultant, Field, Poly, PrimeField, Rationals};
use minpair_core::ordvals::{GroupIndex, OrderedValue, ValueGroup};
use num_rational::BigRational;
use proptest::prelude::*;

fn rat() -> impl Strategy<Value = BigRational> {
    (-40i64..40, 1i64..9).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

fn value(rank: usize) -> impl Strategy<Value = OrderedValue> {
    prop::collection::vec(rat(), rank).prop_map(OrderedValue::Finite)
}

fn qpoly(max_deg: usize) -> impl Strategy<Value = Poly<Rationals>> {
    prop::collection::vec(rat(), 1..=max_deg + 1).prop_map(|c| Poly::new(Rationals, c))
}

fn fpoly(p: u64, max_deg: usize) -> impl Strategy<Value = Poly<PrimeField>> {
    prop::collection::vec(0..p as i64, 1..=max_deg + 1).prop_map(move |c| Poly::from_ints(PrimeField::new(p), &c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn taylor_expansion_reconstructs(f in qpoly(12), c in rat()) {
        let shifted = f.taylor_shift(&c);
        let back = shifted.compose(&Poly::linear(Rationals, &c));
        prop_assert_eq!(back, f);
    }

    #[test]
    fn resultant_is_multiplicative(f in qpoly(4), g in qpoly(4), h in qpoly(4)) {
        prop_assume!(!f.is_zero() && !g.is_zero() && !h.is_zero());
        let q = Rationals;
        let lhs = resultant(&f, &(&g * &h)).unwrap();
        let rhs = q.mul(&resultant(&f, &g).unwrap(), &resultant(&f, &h).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn resultant_is_multiplicative_mod_p(f in fpoly(5, 5), g in fpoly(5, 5), h in fpoly(5, 5)) {
        prop_assume!(!f.is_zero() && !g.is_zero() && !h.is_zero());
        let k = PrimeField::new(5);
        let lhs = resultant(&f, &(&g * &h)).unwrap();
        prop_assert_eq!(lhs, k.mul(&resultant(&f, &g).unwrap(), &resultant(&f, &h).unwrap()));
    }

    #[test]
    fn division_identity(f in qpoly(8), d in qpoly(4)) {
        prop_assume!(!d.is_zero());
        let (q, r) = f.div_rem(&d).unwrap();
        prop_assert_eq!(&(&q * &d) + &r, f);
        prop_assert!(r.is_zero() || r.degree() < d.degree());
    }

    #[test]
    fn value_addition_is_an_ordered_group(
        (a, b, c) in (1usize..=2).prop_flat_map(|r| (value(r), value(r), value(r))),
    ) {
        prop_assert_eq!(a.checked_add(&b).unwrap(), b.checked_add(&a).unwrap());
        prop_assert_eq!(a.checked_add(&b).unwrap().checked_add(&c).unwrap(), a.checked_add(&b.checked_add(&c).unwrap()).unwrap());
        // translation invariance of the order
        let ab = a.compare(&b).unwrap();
        prop_assert_eq!(a.checked_add(&c).unwrap().compare(&b.checked_add(&c).unwrap()).unwrap(), ab);
        // sign of the difference
        let d = &a - &b;
        let sign = if d.is_zero() { Ordering::Equal } else if d.is_positive() { Ordering::Greater } else { Ordering::Less };
        prop_assert_eq!(sign, ab);
        prop_assert!(OrderedValue::Infinity.compare(&a).unwrap().is_gt());
        prop_assert_eq!(a.to_string().parse::<OrderedValue>().unwrap(), a.clone());
        prop_assert_eq!(a.embed(2).unwrap().compare(&b.embed(2).unwrap()).unwrap(), ab);
    }

    #[test]
    fn index_is_multiplicative_in_towers(
        g in prop::collection::vec(prop::collection::vec(-6i64..7, 2), 2..4),
        m1 in prop::collection::vec(prop::collection::vec(-3i64..4, 4), 2..4),
        m2 in prop::collection::vec(prop::collection::vec(-3i64..4, 4), 2..4),
    ) {
        let combine = |base: &[Vec<i64>], coeffs: &[Vec<i64>]| -> Vec<Vec<i64>> {
            coeffs.iter().map(|c| {
                let mut v = vec![0i64; 2];
                for (x, b) in c.iter().zip(base) {
                    v[0] += x * b[0];
                    v[1] += x * b[1];
                }
                v
            }).collect()
        };
        let h = combine(&g, &m1);
        let l = combine(&h, &m2);
        let gh = common::library_index(&g, &h, 6);
        let hl = common::library_index(&h, &l, 6);
        let gl = common::library_index(&g, &l, 6);
        match (gh, hl, gl) {
            (GroupIndex::Finite(a), GroupIndex::Finite(b), GroupIndex::Finite(c)) => prop_assert_eq!(a * b, c),
            (_, _, GroupIndex::Finite(_)) => prop_assert!(false, "finite total index with an infinite step"),
            _ => {}
        }
    }

    #[test]
    fn lattice_index_matches_coset_count(
        g in prop::collection::vec(prop::collection::vec(-5i64..6, 2), 2..4),
        m in prop::collection::vec(prop::collection::vec(-3i64..4, 3), 2..4),
        den in 1i64..7,
    ) {
        let h: Vec<Vec<i64>> = m.iter().map(|c| {
            let mut v = vec![0i64; 2];
            for (x, b) in c.iter().zip(&g) {
                v[0] += x * b[0];
                v[1] += x * b[1];
            }
            v
        }).collect();
        let full_rank = h.iter().enumerate().any(|(i, a)| h[i + 1..].iter().any(|b| a[0] * b[1] != a[1] * b[0]));
        prop_assume!(full_rank);
        prop_assert_eq!(common::library_index(&g, &h, den), GroupIndex::Finite(common::brute_force_index(&g, &h)));
    }

    #[test]
    fn containment_agrees_with_membership_of_combinations(
        gens in prop::collection::vec(value(2), 1..4),
        coeffs in prop::collection::vec(-5i64..6, 4),
    ) {
        let g = ValueGroup::new(2, &gens).unwrap();
        let mut v = OrderedValue::zero(2);
        for (x, c) in gens.iter().zip(&coeffs) {
            v = v.checked_add(&x.scale(*c)).unwrap();
        }
        prop_assert!(g.contains(&v).unwrap());
    }

    #[test]
    fn residue_map_is_multiplicative(x in prop::collection::vec(-20i64..21, 2), y in prop::collection::vec(-20i64..21, 2)) {
        // Z_2[w], w^2 + w + 1 = 0: residues in F_4
        let k = PAdicRationals::new(2);
        let a = AlgebraicElement::certify(k, Poly::from_ints(k, &[1, 1, 1])).unwrap();
        let (px, py) = (Poly::from_ints(k, &x), Poly::from_ints(k, &y));
        prop_assume!(a.elem_valuation(&px).unwrap().is_zero() && a.elem_valuation(&py).unwrap().is_zero());
        let kv = a.residue_field().clone();
        let prod = a.residue(&(&px * &py)).unwrap();
        prop_assert_eq!(prod, kv.mul(&a.elem_residue(&px).unwrap(), &a.elem_residue(&py).unwrap()));
    }

    #[test]
    fn element_valuation_is_multiplicative(x in prop::collection::vec(-30i64..31, 3), y in prop::collection::vec(-30i64..31, 3)) {
        let k = TAdicFunctionField::new(3);
        let t = k.t();
        // X^3 - t: totally ramified and purely inseparable
        let a = AlgebraicElement::certify(k.clone(), Poly::new(k.clone(), vec![k.neg(&t), k.zero(), k.zero(), k.one()])).unwrap();
        let lift = |c: &[i64]| Poly::new(k.clone(), c.iter().map(|&n| k.mul(&k.from_int(n), &k.ipow(&t, n.rem_euclid(3)).unwrap())).collect());
        let (px, py) = (lift(&x), lift(&y));
        let sum = a.valuation_of(&px).unwrap().checked_add(&a.valuation_of(&py).unwrap()).unwrap();
        prop_assert_eq!(a.valuation_of(&(&px * &py)).unwrap(), sum);
    }
}
