//! Brute-force oracles shared by the integration tests. They avoid the fast paths they check:
//! holes come from box enumeration plus BFS over the monoid, closure from powers of the ideal.

#![allow(dead_code)]

use std::collections::BTreeSet;

use malachite::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rees_lab::cone::conic_combination;
use rees_lab::ideal::{power_membership, MonomialIdeal};
use rees_lab::lattice::group_contains;
use rees_lab::monoid::AffineMonoid;
use rees_lab::{IntMatrix, IntVector};

pub fn v(xs: &[i64]) -> IntVector {
    IntVector::from_i64s(xs)
}

pub fn monoid(rows: &[&[i64]]) -> AffineMonoid {
    AffineMonoid::from_i64_rows(rows).expect("valid monoid")
}

pub fn ideal(s: &AffineMonoid, rows: &[&[i64]]) -> MonomialIdeal {
    MonomialIdeal::new(s.clone(), IntMatrix::from_i64_rows(rows).expect("rows")).expect("valid ideal")
}

fn small(x: &Integer) -> i64 {
    i64::try_from(x).expect("small integer")
}

/// A random pointed monoid: dimension 1..=3, 1..=5 generators, entries in -1..=4.
pub fn random_monoid(rng: &mut ChaCha8Rng) -> AffineMonoid {
    loop {
        let d = rng.gen_range(1..=3usize);
        let n = rng.gen_range(1..=5usize);
        let rows: Vec<IntVector> = (0..n)
            .map(|_| IntVector::from_i64s(&(0..d).map(|_| rng.gen_range(-1..=4i64)).collect::<Vec<_>>()))
            .collect();
        if let Ok(s) = IntMatrix::new(d, rows).and_then(AffineMonoid::new) {
            return s;
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Group points of the cone with weight at most `w` that are not in `S`, in (weight, lex) order.
///
/// A cone point is a nonnegative combination of generators, so coordinate `j` lies between
/// `w * min(0, g_j / w(g))` and `w * max(0, g_j / w(g))`.
pub fn brute_force_holes(s: &AffineMonoid, w: i64) -> Vec<IntVector> {
    let d = s.ambient_dim();
    let gens = s.generators().rows().to_vec();
    let mut lo = vec![0i64; d];
    let mut hi = vec![0i64; d];
    for g in &gens {
        let wg = small(&s.weight_of(g));
        for j in 0..d {
            let x = small(&g.coords()[j]) * w;
            lo[j] = lo[j].min(x.div_euclid(wg));
            hi[j] = hi[j].max(-((-x).div_euclid(wg)));
        }
    }
    let members: BTreeSet<IntVector> = s.elements_up_to(&Integer::from(w)).into_iter().collect();
    let mut holes = Vec::new();
    let mut x = lo.clone();
    loop {
        let p = v(&x);
        let wp = s.weight_of(&p);
        if wp >= 0 && wp <= w
            && !members.contains(&p)
            && group_contains(s.group(), &p).expect("dimension")
            && conic_combination(&gens, &p).is_some()
        {
            holes.push(p);
        }
        let mut j = 0;
        while j < d && x[j] == hi[j] {
            x[j] = lo[j];
            j += 1;
        }
        if j == d {
            break;
        }
        x[j] += 1;
    }
    holes.sort_by_key(|h| s.order_key(h));
    holes
}

/// Smallest `k <= kmax` with `k·a ∈ I^{kn}`.
pub fn power_oracle(i: &MonomialIdeal, a: &IntVector, n: u64, kmax: u64) -> Option<u64> {
    (1..=kmax).find(|&k| power_membership(i, &a.scale_i64(k as i64), k * n))
}
