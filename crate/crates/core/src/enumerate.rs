//! Exhaustive enumeration of small structures: labeled posets, order
//! automorphisms and isomorphisms, covers.

use crate::cover::{maximal_bits, Cover};
use crate::error::Result;
use crate::lattice::{bits_iter, Poset};
use crate::topology::FiniteSpace;

/// Every partial order on `n` labeled points `p0..`, for `1 <= n <= 5`.
pub fn all_posets(n: usize) -> Vec<Poset> {
    assert!(
        (1..=5).contains(&n),
        "exhaustive poset enumeration is for 1..=5 points"
    );
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    'rel: for rel in 0u64..(1 << pairs.len()) {
        // down[q] = { p : p <= q }
        let mut down: Vec<u64> = (0..n).map(|p| 1 << p).collect();
        for (k, &(p, q)) in pairs.iter().enumerate() {
            if rel >> k & 1 == 1 {
                down[q] |= 1 << p;
            }
        }
        for q in 0..n {
            for p in bits_iter(down[q]) {
                if p != q && down[p] >> q & 1 == 1 {
                    continue 'rel;
                }
                if down[p] & !down[q] != 0 {
                    continue 'rel;
                }
            }
        }
        let strict: Vec<(usize, usize)> = (0..n)
            .flat_map(|q| {
                bits_iter(down[q])
                    .filter(move |&p| p != q)
                    .map(move |p| (p, q))
            })
            .collect();
        out.push(Poset::from_indexed_pairs(n, &strict).expect("closed partial order"));
    }
    out
}

/// Every bijection `f: P -> Q` with `p <= p'` iff `f(p) <= f(p')`.
pub fn isomorphisms(p: &Poset, q: &Poset) -> Vec<Vec<usize>> {
    let n = p.len();
    if q.len() != n {
        return Vec::new();
    }
    let sig = |poset: &Poset, x: usize| {
        (
            poset.down_mask(x).count_ones(),
            poset.up_mask(x).count_ones(),
        )
    };
    let mut out = Vec::new();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn rec(
        p: &Poset,
        q: &Poset,
        i: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
        sig: &dyn Fn(&Poset, usize) -> (u32, u32),
    ) {
        if i == p.len() {
            out.push(map.clone());
            return;
        }
        for y in 0..q.len() {
            if used[y] || sig(p, i) != sig(q, y) {
                continue;
            }
            let consistent =
                (0..i).all(|j| p.leq(j, i) == q.leq(map[j], y) && p.leq(i, j) == q.leq(y, map[j]));
            if consistent {
                map[i] = y;
                used[y] = true;
                rec(p, q, i + 1, map, used, out, sig);
                used[y] = false;
            }
        }
        map[i] = usize::MAX;
    }
    rec(p, q, 0, &mut map, &mut used, &mut out, &sig);
    out
}

/// Order automorphisms of `p` as point permutations (identity first).
pub fn automorphisms(p: &Poset) -> Vec<Vec<usize>> {
    isomorphisms(p, p)
}

/// Every family of lattice elements (including `0`) that joins to `1`. Only
/// for lattices with at most 16 elements.
pub fn all_covers(poset: &Poset) -> Result<Vec<Cover>> {
    let elems = poset.downsets(16)?;
    let mut out = Vec::new();
    for mask in 1u32..(1 << elems.len()) {
        let bits: Vec<u64> = (0..elems.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| elems[i].bits())
            .collect();
        if bits.iter().fold(0, |a, b| a | b) == poset.full() {
            out.push(Cover::from_bits_unchecked(poset, bits));
        }
    }
    Ok(out)
}

/// Every canonical cover: antichains of nonzero elements joining to `1`.
/// Each equivalence class of covers has exactly one representative here.
pub fn antichain_covers(poset: &Poset, cap: usize) -> Result<Vec<Cover>> {
    let elems: Vec<u64> = poset
        .downsets(cap)?
        .into_iter()
        .map(|d| d.bits())
        .filter(|&b| b != 0)
        .collect();
    let mut out = Vec::new();
    let mut stack = Vec::new();
    fn rec(elems: &[u64], start: usize, stack: &mut Vec<u64>, full: u64, out: &mut Vec<Vec<u64>>) {
        if stack.iter().fold(0, |a, b| a | b) == full {
            out.push(stack.clone());
        }
        for i in start..elems.len() {
            let e = elems[i];
            if stack.iter().all(|&s| s & !e != 0 && e & !s != 0) {
                stack.push(e);
                rec(elems, i + 1, stack, full, out);
                stack.pop();
            }
        }
    }
    let mut raw = Vec::new();
    rec(&elems, 0, &mut stack, poset.full(), &mut raw);
    for bits in raw {
        let c = Cover::from_bits_unchecked(poset, bits);
        debug_assert_eq!(maximal_bits(c.bits()), c.bits());
        out.push(c);
    }
    Ok(out)
}

/// Every topology on the points `x0..x{n-1}`, for `n <= 5`.
///
/// Finite topologies correspond to preorders: the open sets are the sets
/// closed downward under the specialization preorder.
pub fn all_topologies(n: usize) -> Vec<FiniteSpace> {
    assert!(
        n <= 5,
        "exhaustive topology enumeration is for at most 5 points"
    );
    let labels: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    'rel: for rel in 0u64..1 << pairs.len() {
        let mut down: Vec<u64> = (0..n).map(|p| 1 << p).collect();
        for (k, &(p, q)) in pairs.iter().enumerate() {
            if rel >> k & 1 == 1 {
                down[q] |= 1 << p;
            }
        }
        for q in 0..n {
            for p in bits_iter(down[q]) {
                if down[p] & !down[q] != 0 {
                    continue 'rel;
                }
            }
        }
        out.push(space_of_preorder(&labels, &down));
    }
    out
}

pub(crate) fn space_of_preorder(labels: &[String], down: &[u64]) -> FiniteSpace {
    let n = labels.len();
    let opens: Vec<u64> = (0..1u64 << n)
        .filter(|&m| bits_iter(m).all(|p| down[p] & !m == 0))
        .collect();
    FiniteSpace::from_masks(labels.to_vec(), opens).expect("downsets of a preorder form a topology")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labeled_poset_counts() {
        // OEIS A001035.
        let counts: Vec<usize> = (1..=4).map(|n| all_posets(n).len()).collect();
        assert_eq!(counts, vec![1, 3, 19, 219]);
    }

    #[test]
    fn automorphism_counts() {
        let anti = Poset::antichain(&["a", "b", "c"]).unwrap();
        assert_eq!(automorphisms(&anti).len(), 6);
        let v = Poset::new(&["a", "b", "c"], &[("c", "a"), ("c", "b")]).unwrap();
        assert_eq!(automorphisms(&v).len(), 2);
        let chain = Poset::new(&["c", "a"], &[("c", "a")]).unwrap();
        assert_eq!(automorphisms(&chain), vec![vec![0, 1]]);
    }

    #[test]
    fn topology_counts() {
        // OEIS A000798.
        let counts: Vec<usize> = (0..=4).map(|n| all_topologies(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 4, 29, 355]);
    }

    #[test]
    fn cover_counts() {
        let v = Poset::new(&["a", "b", "c"], &[("c", "a"), ("c", "b")]).unwrap();
        // Elements 0, c, ac, bc, 1: families containing 1 (16) plus {ac, bc}
        // with or without 0 and c (4).
        assert_eq!(all_covers(&v).unwrap().len(), 20);
        // Canonical: {1} and {ac, bc}.
        assert_eq!(antichain_covers(&v, 64).unwrap().len(), 2);
        // Dedekind number M(2) = 6 antichains of the 2-cube; those joining
        // to the top: {1}, {a, b}.
        let anti = Poset::antichain(&["a", "b"]).unwrap();
        assert_eq!(antichain_covers(&anti, 64).unwrap().len(), 2);
    }
}
