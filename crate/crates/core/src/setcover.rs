//! Exact minimum set cover by branch and bound.
//!
//! Used for minimal subcovers of lattice covers (universe = poset points) and
//! of cylinder covers (universe = words). The search seeds its upper bound
//! with the greedy cover, drops dominated sets, branches on the uncovered
//! element with the fewest candidate sets and prunes with the larger of a
//! disjoint-candidates packing bound and a cardinality bound.

/// Fixed-width bitset over `0..len`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitSet {
    words: Vec<u64>,
    len: usize,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        BitSet {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Self::new(len);
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    pub fn from_u64(bits: u64, len: usize) -> Self {
        let mut s = Self::new(len);
        if len > 0 {
            s.words[0] = bits & crate::lattice::full_mask(len.min(64));
        }
        s
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn union_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn difference_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn intersection_count(&self, other: &BitSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words
            .iter()
            .enumerate()
            .flat_map(|(wi, &w)| crate::lattice::bits_iter(w).map(move |b| wi * 64 + b))
    }
}

/// Search statistics, reported for diagnostics.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub greedy_size: usize,
    pub reduced_sets: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetCoverSolution {
    /// Indices into the input family, ascending.
    pub chosen: Vec<usize>,
    pub stats: SearchStats,
}

impl SetCoverSolution {
    pub fn size(&self) -> usize {
        self.chosen.len()
    }
}

/// Minimum number of sets from `sets` whose union is `0..universe`.
///
/// Returns `None` when the whole family does not cover the universe. Among
/// optimal covers the one returned is the first reached when sets are tried
/// in input order, so callers control tie-breaking by ordering `sets`.
pub fn min_set_cover(universe: usize, sets: &[BitSet]) -> Option<SetCoverSolution> {
    let mut all = BitSet::new(universe);
    for s in sets {
        debug_assert_eq!(s.len(), universe);
        all.union_with(s);
    }
    if all.count() != universe {
        return None;
    }
    if universe == 0 {
        return Some(SetCoverSolution {
            chosen: Vec::new(),
            stats: SearchStats::default(),
        });
    }

    // Drop empty and dominated sets; among equal sets keep the first.
    let mut kept: Vec<usize> = Vec::new();
    for (i, s) in sets.iter().enumerate() {
        if s.is_empty() {
            continue;
        }
        let dominated = sets
            .iter()
            .enumerate()
            .any(|(j, t)| j != i && s.is_subset(t) && (!t.is_subset(s) || j < i));
        if !dominated {
            kept.push(i);
        }
    }
    let family: Vec<&BitSet> = kept.iter().map(|&i| &sets[i]).collect();

    // candidates[e] = kept-set positions containing e.
    let mut candidates = vec![BitSet::new(family.len()); universe];
    for (k, s) in family.iter().enumerate() {
        for e in s.iter() {
            candidates[e].insert(k);
        }
    }

    let greedy = greedy_cover(universe, &family);
    let mut solver = Solver {
        family: &family,
        candidates: &candidates,
        max_size: family.iter().map(|s| s.count()).max().unwrap_or(1),
        best: greedy.clone(),
        stack: Vec::new(),
        nodes: 0,
    };
    solver.search(&BitSet::full(universe));

    let mut chosen: Vec<usize> = solver.best.iter().map(|&k| kept[k]).collect();
    chosen.sort_unstable();
    Some(SetCoverSolution {
        chosen,
        stats: SearchStats {
            nodes: solver.nodes,
            greedy_size: greedy.len(),
            reduced_sets: family.len(),
        },
    })
}

fn greedy_cover(universe: usize, family: &[&BitSet]) -> Vec<usize> {
    let mut uncovered = BitSet::full(universe);
    let mut out = Vec::new();
    while !uncovered.is_empty() {
        let (k, _) = family
            .iter()
            .enumerate()
            .map(|(k, s)| (k, s.intersection_count(&uncovered)))
            .fold(
                (usize::MAX, 0),
                |best, cur| if cur.1 > best.1 { cur } else { best },
            );
        out.push(k);
        uncovered.difference_with(family[k]);
    }
    out
}

struct Solver<'a> {
    family: &'a [&'a BitSet],
    candidates: &'a [BitSet],
    max_size: usize,
    best: Vec<usize>,
    stack: Vec<usize>,
    nodes: u64,
}

impl Solver<'_> {
    fn lower_bound(&self, uncovered: &BitSet) -> usize {
        let remaining = uncovered.count();
        let by_size = remaining.div_ceil(self.max_size);
        // Elements with pairwise disjoint candidate lists need distinct sets.
        let mut elems: Vec<usize> = uncovered.iter().collect();
        elems.sort_by_key(|&e| (self.candidates[e].count(), e));
        let mut used = BitSet::new(self.family.len());
        let mut packing = 0;
        for e in elems {
            if !self.candidates[e].intersects(&used) {
                used.union_with(&self.candidates[e]);
                packing += 1;
            }
        }
        by_size.max(packing)
    }

    fn search(&mut self, uncovered: &BitSet) {
        self.nodes += 1;
        if uncovered.is_empty() {
            if self.stack.len() < self.best.len() {
                self.best = self.stack.clone();
            }
            return;
        }
        if self.stack.len() + self.lower_bound(uncovered) >= self.best.len() {
            return;
        }
        let pivot = uncovered
            .iter()
            .min_by_key(|&e| (self.candidates[e].count(), e))
            .expect("nonempty");
        let options: Vec<usize> = self.candidates[pivot].iter().collect();
        for k in options {
            let mut next = uncovered.clone();
            next.difference_with(self.family[k]);
            self.stack.push(k);
            self.search(&next);
            self.stack.pop();
        }
    }
}

/// Exhaustive oracle: tries every subset in order of increasing size.
/// Only for small families (`sets.len() <= 63`).
pub fn brute_force_min_cover(universe: usize, sets: &[BitSet]) -> Option<usize> {
    assert!(sets.len() < 64);
    let target = BitSet::full(universe);
    for size in 0..=sets.len() {
        let found = combinations(sets.len(), size).any(|combo| {
            let mut acc = BitSet::new(universe);
            for i in crate::lattice::bits_iter(combo) {
                acc.union_with(&sets[i]);
            }
            target.is_subset(&acc)
        });
        if found {
            return Some(size);
        }
    }
    None
}

/// All `k`-subsets of `0..n` as bitmasks (Gosper's hack).
pub fn combinations(n: usize, k: usize) -> impl Iterator<Item = u64> {
    assert!(n < 64);
    let limit = 1u64 << n;
    let mut cur = if k == 0 { 0 } else { (1u64 << k) - 1 };
    let mut done = k > n;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = cur;
        if k == 0 {
            done = true;
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            cur = (((r ^ cur) >> 2) / c) | r;
            if cur >= limit {
                done = true;
            }
        }
        Some(out)
    })
}
