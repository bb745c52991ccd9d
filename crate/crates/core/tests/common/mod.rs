//! Seeded generators and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use qpower::rational::{int, ratio};
use qpower::{all_coalitions, Coalition, Model, Rational, SimpleGame, TuGame};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_rational(rng: &mut impl Rng) -> Rational {
    ratio(rng.random_range(-20..=20), rng.random_range(1..=6))
}

/// Standard-model TU game with small rational worths.
pub fn random_tu(rng: &mut impl Rng, n: usize) -> TuGame {
    let values: Vec<Rational> = (0..1u64 << n)
        .map(|b| if b == 0 { int(0) } else { random_rational(rng) })
        .collect();
    TuGame::new(n, Model::Standard, values).unwrap()
}

/// Self-dual TU game: `v(S) + v(X \ S) = v(X)` for every `S`.
pub fn random_self_dual_tu(rng: &mut impl Rng, n: usize) -> TuGame {
    let grand = Coalition::grand(n);
    let total = random_rational(rng);
    let mut values = vec![int(0); 1 << n];
    values[grand.bits() as usize] = total.clone();
    for s in all_coalitions(n).filter(|s| s.contains(0) && *s != grand) {
        let v = random_rational(rng);
        values[s.complement(n).bits() as usize] = &total - &v;
        values[s.bits() as usize] = v;
    }
    TuGame::new(n, Model::Standard, values).unwrap()
}

/// Monotone game from a few random minimal winning coalitions.
pub fn random_monotone(rng: &mut impl Rng, n: usize) -> SimpleGame {
    let count = rng.random_range(1..=4);
    let minimal = (0..count)
        .map(|_| {
            let bits = rng.random_range(1..1u64 << n);
            Coalition::from_bits(bits)
        })
        .collect();
    SimpleGame::minimal_winning(n, Model::Standard, minimal).unwrap()
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// `C(n, k)` by Pascal's triangle.
pub fn pascal(n: usize, k: usize) -> BigInt {
    let mut row = vec![BigInt::from(1)];
    for _ in 0..n {
        let mut next = vec![BigInt::from(1); row.len() + 1];
        for j in 1..row.len() {
            next[j] = &row[j - 1] + &row[j];
        }
        row = next;
    }
    row.get(k).cloned().unwrap_or_default()
}

/// Shapley value from `(|S|-1)! (n-|S|)! / n!` weights, looping over bitmasks.
pub fn shapley_oracle(n: usize, v: impl Fn(u64) -> Rational) -> Vec<Rational> {
    let nf = factorial(n);
    (0..n)
        .map(|i| {
            let mut acc = int(0);
            for s in 0..1u64 << n {
                if s >> i & 1 == 1 {
                    let k = s.count_ones() as usize;
                    let w = Rational::new(factorial(k - 1) * factorial(n - k), nf.clone());
                    acc += w * (v(s) - v(s & !(1 << i)));
                }
            }
            acc
        })
        .collect()
}

/// Banzhaf value: average marginal contribution over all `2^(n-1)` coalitions.
pub fn banzhaf_oracle(n: usize, v: impl Fn(u64) -> Rational) -> Vec<Rational> {
    (0..n)
        .map(|i| {
            let total: Rational = (0..1u64 << n)
                .filter(|s| s >> i & 1 == 1)
                .map(|s| v(s) - v(s & !(1 << i)))
                .sum();
            total / Rational::from_integer(BigInt::from(1u64 << (n - 1)))
        })
        .collect()
}

/// Shapley-Shubik index by walking every ordering and crediting the pivot.
pub fn shapley_shubik_oracle(game: &SimpleGame) -> Vec<Rational> {
    let n = game.n();
    let mut counts = vec![0u64; n];
    let mut order: Vec<usize> = (0..n).collect();
    let mut total = 0u64;
    permutations(&mut order, 0, &mut |perm| {
        total += 1;
        let mut seen = 0u64;
        for &p in perm {
            seen |= 1 << p;
            if game.is_winning(Coalition::from_bits(seen)) {
                counts[p] += 1;
                break;
            }
        }
    });
    counts
        .into_iter()
        .map(|c| ratio(c as i64, total as i64))
        .collect()
}

pub fn permutations(items: &mut [usize], start: usize, visit: &mut impl FnMut(&[usize])) {
    if start == items.len() {
        visit(items);
        return;
    }
    for j in start..items.len() {
        items.swap(start, j);
        permutations(items, start + 1, visit);
        items.swap(start, j);
    }
}

/// Winning coalitions of each size, by testing every bitmask against a
/// predicate.
pub fn winning_by_size(n: usize, wins: impl Fn(u64) -> bool) -> Vec<u64> {
    let mut w = vec![0u64; n + 1];
    for s in 0..1u64 << n {
        if wins(s) {
            w[s.count_ones() as usize] += 1;
        }
    }
    w
}
