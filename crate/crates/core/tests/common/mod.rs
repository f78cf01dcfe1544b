//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use minpair_core::ordvals::{GroupIndex, OrderedValue, ValueGroup};
use num_rational::BigRational;

/// Size of the subgroup of `(Z/N)^k` generated by `gens`, by breadth-first
/// closure.
fn closure_size(gens: &[Vec<i64>], n: i64) -> usize {
    let k = gens.first().map_or(1, Vec::len);
    let start = vec![0i64; k];
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y: Vec<i64> = x.iter().zip(g).map(|(a, b)| (a + b).rem_euclid(n)).collect();
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen.len()
}

/// `(G : H)` for full-rank integer lattices `H ⊆ G ⊆ Z^k` (k = 1, 2) by
/// counting cosets modulo `N·Z^k ⊆ H`, where `N = |det|` of `k` independent
/// generators of `H`.
pub fn brute_force_index(g: &[Vec<i64>], h: &[Vec<i64>]) -> u64 {
    let n = match h[0].len() {
        1 => h.iter().map(|v| v[0].abs()).find(|&x| x != 0).expect("full rank"),
        _ => {
            let mut n = 0;
            'outer: for (i, a) in h.iter().enumerate() {
                for b in &h[i + 1..] {
                    n = (a[0] * b[1] - a[1] * b[0]).abs();
                    if n != 0 {
                        break 'outer;
                    }
                }
            }
            assert!(n != 0, "H must have full rank");
            n
        }
    };
    (closure_size(g, n) / closure_size(h, n)) as u64
}

/// The same index through the crate, with every coordinate divided by `den`.
pub fn library_index(g: &[Vec<i64>], h: &[Vec<i64>], den: i64) -> GroupIndex {
    let to_value = |v: &Vec<i64>| {
        let c: Vec<BigRational> = v.iter().map(|&x| BigRational::new(x.into(), den.into())).collect();
        OrderedValue::Finite(c)
    };
    let rank = g[0].len();
    let big = ValueGroup::new(rank, &g.iter().map(to_value).collect::<Vec<_>>()).unwrap();
    let small = ValueGroup::new(rank, &h.iter().map(to_value).collect::<Vec<_>>()).unwrap();
    big.index_of(&small).unwrap()
}
