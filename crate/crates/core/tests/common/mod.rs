//! Naive oracles and generators shared by the property suites. Nothing here
//! calls into the code under test.
#![allow(dead_code)]

use mignotte::Natural;
use proptest::prelude::*;

/// Largest `d` dividing both, by trial division from the top.
pub fn trial_gcd(a: u64, b: u64) -> u64 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    (1..=a.min(b))
        .rev()
        .find(|d| a.is_multiple_of(*d) && b.is_multiple_of(*d))
        .unwrap()
}

pub fn naive_coprime(xs: &[u64]) -> bool {
    xs.iter()
        .enumerate()
        .all(|(i, &a)| xs[i + 1..].iter().all(|&b| trial_gcd(a, b) == 1))
}

/// Product by repeated multiplication, one factor at a time, each step
/// done schoolbook-style over the decimal digits of the factor.
pub fn naive_product(xs: &[Natural]) -> Natural {
    let mut acc = Natural::from(1u32);
    for x in xs {
        let mut next = Natural::from(0u32);
        for d in x.to_string().bytes() {
            next = next * 10u32 + &acc * u32::from(d - b'0');
        }
        acc = next;
    }
    acc
}

/// Every `x` in `0..product` satisfying all congruences.
pub fn crt_scan(pairs: &[(u64, u64)]) -> Vec<u64> {
    let product: u64 = pairs.iter().map(|p| p.1).product();
    (0..product)
        .filter(|x| pairs.iter().all(|&(r, m)| x % m == r))
        .collect()
}

pub fn nats(xs: &[u64]) -> Vec<Natural> {
    xs.iter().copied().map(Natural::from).collect()
}

/// Greedy filter: sort, dedup, keep values coprime to everything kept so far.
pub fn coprime_subset(mut xs: Vec<u64>) -> Vec<u64> {
    xs.sort_unstable();
    xs.dedup();
    let mut kept: Vec<u64> = Vec::new();
    for x in xs {
        if x > 0 && kept.iter().all(|&k| trial_gcd(k, x) == 1) {
            kept.push(x);
        }
    }
    kept
}

/// Increasing pairwise coprime lists of length 3..=8 with entries below
/// `max`.
pub fn coprime_seed(max: u64) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(1..max, 3..24)
        .prop_map(coprime_subset)
        .prop_filter("need at least 3 coprime terms", |v| v.len() >= 3)
        .prop_map(|mut v| {
            v.truncate(8);
            v
        })
}

/// First `n` terms of `q_{i+1} = 1 + q_1···q_i`.
pub fn sylvester_oracle(q1: u64, n: usize) -> Vec<Natural> {
    let mut out = vec![Natural::from(q1)];
    while out.len() < n {
        let p: Natural = out.iter().product();
        out.push(p + 1u32);
    }
    out
}

/// Mix of Sylvester-style and hand-built seeds.
pub fn any_seed() -> impl Strategy<Value = Vec<Natural>> {
    prop_oneof![
        (1u64..=4, 3usize..=8).prop_map(|(q1, n)| sylvester_oracle(q1, n)),
        coprime_seed(200).prop_map(|v| nats(&v)),
    ]
}
