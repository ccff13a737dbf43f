//! Seeded random instances for property suites and sampled entropy bounds.
//!
//! All generators take a caller-owned RNG; [`rng`] gives the ChaCha stream
//! the CLI uses so a seed reproduces the same instances everywhere.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cover::Cover;
use crate::dynamics::LatticeAutomorphism;
use crate::enumerate::{automorphisms, space_of_preorder};
use crate::lattice::{bits_iter, Poset};
use crate::topology::{ContinuousMap, FiniteSpace};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random partial order on `n` points: each pair `i < j` (in index order) is
/// related with probability `density`, then closed transitively.
pub fn random_poset<R: Rng>(rng: &mut R, n: usize, density: f64) -> Poset {
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                pairs.push((i, j));
            }
        }
    }
    // Shuffle labels so the order is not always aligned with indices.
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let pairs: Vec<(usize, usize)> = pairs.into_iter().map(|(i, j)| (perm[i], perm[j])).collect();
    Poset::from_indexed_pairs(n, &pairs).expect("index order is acyclic")
}

/// Random cover: up to `max_members` random down-closures of random point
/// sets, topped up with principal downsets of uncovered maximal points.
pub fn random_cover<R: Rng>(rng: &mut R, poset: &Poset, max_members: usize) -> Cover {
    let n = poset.len();
    let k = rng.gen_range(1..=max_members.max(1));
    let mut bits = Vec::with_capacity(k + n);
    for _ in 0..k {
        let mut seed = 0u64;
        for p in 0..n {
            if rng.gen_bool(0.35) {
                seed |= 1 << p;
            }
        }
        bits.push(poset.down_closure(seed).bits());
    }
    let covered = bits.iter().fold(0, |a, b| a | b);
    for m in poset.maximal_points() {
        if covered >> m & 1 == 0 {
            bits.push(poset.down_mask(m));
        }
    }
    Cover::from_bits(poset, bits).expect("every maximal point is covered")
}

/// Uniformly chosen order automorphism (enumerates all of them; small posets
/// only).
pub fn random_automorphism<R: Rng>(rng: &mut R, poset: &Poset) -> LatticeAutomorphism {
    let auts = automorphisms(poset);
    let pick = auts
        .choose(rng)
        .expect("identity is always an automorphism");
    LatticeAutomorphism::from_permutation(poset, pick).expect("enumerated automorphism")
}

/// Random downset.
pub fn random_downset<R: Rng>(rng: &mut R, poset: &Poset) -> crate::lattice::Downset {
    let seed = (0..poset.len()).fold(
        0u64,
        |acc, p| if rng.gen_bool(0.4) { acc | 1 << p } else { acc },
    );
    // Close downward, then drop random maximal elements to vary sizes.
    let d = poset.down_closure(seed).bits();
    let drop: u64 = bits_iter(d)
        .filter(|&p| poset.up_mask(p) & d == 1 << p && rng.gen_bool(0.3))
        .fold(0, |acc, p| acc | 1 << p);
    poset.wrap(d & !drop)
}

/// Random topology on `n` points: the downward-closed sets of a random
/// preorder.
pub fn random_space<R: Rng>(rng: &mut R, n: usize) -> FiniteSpace {
    let labels: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let mut down: Vec<u64> = (0..n).map(|p| 1 << p).collect();
    for q in 0..n {
        for p in 0..n {
            if p != q && rng.gen_bool(0.3) {
                down[q] |= 1 << p;
            }
        }
    }
    // Transitive closure.
    loop {
        let mut changed = false;
        for q in 0..n {
            let closed = bits_iter(down[q]).fold(down[q], |acc, p| acc | down[p]);
            if closed != down[q] {
                down[q] = closed;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    space_of_preorder(&labels, &down)
}

/// Random continuous map, by rejection; falls back to a constant map.
pub fn random_continuous_map<R: Rng>(
    rng: &mut R,
    x: &FiniteSpace,
    y: &FiniteSpace,
) -> ContinuousMap {
    for _ in 0..64 {
        let map: Vec<usize> = (0..x.len()).map(|_| rng.gen_range(0..y.len())).collect();
        if let Ok(f) = ContinuousMap::new(x, y, &map) {
            return f;
        }
    }
    let c = rng.gen_range(0..y.len());
    ContinuousMap::new(x, y, &vec![c; x.len()]).expect("constant maps are continuous")
}
