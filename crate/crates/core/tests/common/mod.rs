//! Test-only oracles and generators, independent of the library's algorithms.

#![allow(dead_code)]

use rand::seq::index::sample;
use rand::Rng;
use staircase_kit::{Pair, Sign, StaircaseIdeal, TruncatedRingParams};

/// Membership of `⟨gens⟩` on `[0, limit)` by direct subset-sum DP.
pub fn brute_members(gens: &[u64], limit: usize) -> Vec<bool> {
    let mut member = vec![false; limit];
    if limit > 0 {
        member[0] = true;
    }
    for n in 1..limit {
        member[n] = gens.iter().any(|&g| (g as usize) <= n && member[n - g as usize]);
    }
    member
}

/// Conductor of `⟨gens⟩`: one past the last nonmember below `limit`.
/// `limit` must exceed the Frobenius number by at least the smallest generator.
pub fn brute_conductor(gens: &[u64], limit: usize) -> u64 {
    let member = brute_members(gens, limit);
    let c = member.iter().rposition(|&m| !m).map_or(0, |i| i + 1);
    let smallest = *gens.iter().min().unwrap() as usize;
    assert!(c + smallest <= limit, "limit {limit} too small for {gens:?}");
    c as u64
}

/// Value set `vals + ⟨gens⟩` on `[0, limit)`.
pub fn brute_closure(gens: &[u64], vals: &[u64], limit: usize) -> Vec<bool> {
    let member = brute_members(gens, limit);
    (0..limit)
        .map(|n| vals.iter().any(|&v| (v as usize) <= n && member[n - v as usize]))
        .collect()
}

/// Random primary staircase of `k[x,y]/(x^a - y^b)` with
/// `a > a₁ > … > aₙ = 0`, `0 = b₁ < … < bₙ < b`.
pub fn random_staircase<R: Rng>(rng: &mut R, max_a: u32, max_b: u32, max_n: usize) -> StaircaseIdeal {
    let a = rng.gen_range(2..=max_a);
    let b = rng.gen_range(2..=max_b);
    let cap = max_n.min(a as usize).min(b as usize);
    let n = rng.gen_range(2..=cap);

    let mut xs: Vec<u32> = sample(rng, (a - 1) as usize, n - 1)
        .into_iter()
        .map(|i| i as u32 + 1)
        .collect();
    xs.sort_unstable_by(|p, q| q.cmp(p));
    xs.push(0);
    let mut ys: Vec<u32> = sample(rng, (b - 1) as usize, n - 1)
        .into_iter()
        .map(|i| i as u32 + 1)
        .collect();
    ys.sort_unstable();
    ys.insert(0, 0);

    let pairs: Vec<Pair> = xs.into_iter().zip(ys).collect();
    let sign = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
    let ring = TruncatedRingParams::relation(a, b, sign).unwrap();
    let ideal = StaircaseIdeal::normalize(ring, &pairs).unwrap();
    assert_eq!(ideal.pairs(), pairs.as_slice());
    ideal
}
