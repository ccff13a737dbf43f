//! Finite bounded distributive lattices in their Birkhoff presentation.
//!
//! A finite distributive lattice `L` is the lattice of downsets of the poset
//! `J(L)` of its join-irreducible elements. Every lattice element is stored
//! as a [`Downset`], a bitmask over the points of a [`Poset`]; join and meet
//! are union and intersection, `0` is the empty set and `1` is every point.
//! Lattices given as explicit operation tables are converted on ingestion by
//! [`from_explicit`].

use std::collections::hash_map::DefaultHasher;
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hard upper bound on the number of poset points; downsets are `u64` masks.
pub const MAX_POINTS: usize = 64;

/// Identifies the poset a [`Downset`] belongs to. Derived from the labels and
/// the order relation, so structurally identical posets share a tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PosetTag(u64);

#[derive(Debug)]
struct PosetInner {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    /// `down[p]` is the principal downset of `p`.
    down: Vec<u64>,
    /// `up[p]` is the principal upset of `p`.
    up: Vec<u64>,
    tag: PosetTag,
}

/// A finite partial order on labeled points `0..len()`. Cheap to clone.
#[derive(Clone)]
pub struct Poset {
    inner: Arc<PosetInner>,
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<(&str, &str)> = self
            .strict_pairs()
            .map(|(p, q)| (self.label(p), self.label(q)))
            .collect();
        f.debug_struct("Poset")
            .field("points", &self.inner.labels)
            .field("lt", &pairs)
            .finish()
    }
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.inner.labels == other.inner.labels && self.inner.down == other.inner.down
    }
}

impl Eq for Poset {}

#[inline]
pub(crate) fn bits_iter(mut bits: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if bits == 0 {
            None
        } else {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        }
    })
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl Poset {
    /// Builds a poset from labels and `(lower, upper)` pairs, taking the
    /// reflexive-transitive closure. Fails on duplicate or unknown labels and
    /// on cycles, reporting the offending cycle.
    pub fn new<S: AsRef<str>>(labels: &[S], pairs: &[(S, S)]) -> Result<Self> {
        Self::with_point_limit(labels, pairs, MAX_POINTS)
    }

    /// Like [`Poset::new`] with a tighter point limit (values above
    /// [`MAX_POINTS`] are clamped to it).
    pub fn with_point_limit<S: AsRef<str>>(
        labels: &[S],
        pairs: &[(S, S)],
        limit: usize,
    ) -> Result<Self> {
        let labels: Vec<String> = labels.iter().map(|s| s.as_ref().to_owned()).collect();
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let lookup = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| Error::UnknownLabel(s.to_owned()))
        };
        let mut edges = Vec::with_capacity(pairs.len());
        for (lo, hi) in pairs {
            edges.push((lookup(lo.as_ref())?, lookup(hi.as_ref())?));
        }
        Self::build(labels, &edges, limit.min(MAX_POINTS))
    }

    /// Index-based constructor; labels default to `p0, p1, ...`.
    pub fn from_indexed_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let labels = (0..n).map(|i| format!("p{i}")).collect();
        Self::from_labeled_indexed_pairs(labels, pairs)
    }

    pub fn from_labeled_indexed_pairs(
        labels: Vec<String>,
        pairs: &[(usize, usize)],
    ) -> Result<Self> {
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        for &(a, b) in pairs {
            for x in [a, b] {
                if x >= labels.len() {
                    return Err(Error::UnknownLabel(format!("#{x}")));
                }
            }
        }
        Self::build(labels, pairs, MAX_POINTS)
    }

    /// Antichain on the given labels.
    pub fn antichain<S: AsRef<str>>(labels: &[S]) -> Result<Self> {
        Self::new(labels, &[])
    }

    fn build(labels: Vec<String>, edges: &[(usize, usize)], limit: usize) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::EmptyPoset);
        }
        if n > limit {
            return Err(Error::TooManyPoints { points: n, limit });
        }
        let mut down: Vec<u64> = (0..n).map(|p| 1u64 << p).collect();
        for &(lo, hi) in edges {
            down[hi] |= 1 << lo;
        }
        // Warshall closure on bit rows.
        for k in 0..n {
            let dk = down[k];
            for row in down.iter_mut() {
                if *row >> k & 1 == 1 {
                    *row |= dk;
                }
            }
        }
        for p in 0..n {
            for q in bits_iter(down[p]) {
                if q != p && down[q] >> p & 1 == 1 {
                    let cycle = find_cycle(n, edges, p, q);
                    return Err(Error::CycleDetected(
                        cycle.into_iter().map(|i| labels[i].clone()).collect(),
                    ));
                }
            }
        }
        let mut up = vec![0u64; n];
        for p in 0..n {
            for q in bits_iter(down[p]) {
                up[q] |= 1 << p;
            }
        }
        let mut h = DefaultHasher::new();
        labels.hash(&mut h);
        down.hash(&mut h);
        let tag = PosetTag(h.finish());
        let index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        Ok(Poset {
            inner: Arc::new(PosetInner {
                labels,
                index,
                down,
                up,
                tag,
            }),
        })
    }

    pub fn len(&self) -> usize {
        self.inner.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn tag(&self) -> PosetTag {
        self.inner.tag
    }

    pub fn labels(&self) -> &[String] {
        &self.inner.labels
    }

    pub fn label(&self, p: usize) -> &str {
        &self.inner.labels[p]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.inner
            .index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_owned()))
    }

    /// `p <= q` in the poset.
    #[inline]
    pub fn leq(&self, p: usize, q: usize) -> bool {
        self.inner.down[q] >> p & 1 == 1
    }

    /// Pairs `p < q`.
    pub fn strict_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).flat_map(move |q| {
            bits_iter(self.inner.down[q])
                .filter(move |&p| p != q)
                .map(move |p| (p, q))
        })
    }

    /// Pairs `p < q` with nothing strictly in between (the Hasse diagram).
    pub fn covering_pairs(&self) -> Vec<(usize, usize)> {
        self.strict_pairs()
            .filter(|&(p, q)| {
                let between = self.inner.down[q] & self.inner.up[p] & !(1 << p) & !(1 << q);
                between == 0
            })
            .collect()
    }

    pub(crate) fn down_mask(&self, p: usize) -> u64 {
        self.inner.down[p]
    }

    pub(crate) fn up_mask(&self, p: usize) -> u64 {
        self.inner.up[p]
    }

    pub(crate) fn full(&self) -> u64 {
        full_mask(self.len())
    }

    pub fn zero(&self) -> Downset {
        self.wrap(0)
    }

    pub fn one(&self) -> Downset {
        self.wrap(self.full())
    }

    /// The principal downset `↓p`.
    pub fn principal(&self, p: usize) -> Downset {
        self.wrap(self.inner.down[p])
    }

    #[inline]
    pub(crate) fn wrap(&self, bits: u64) -> Downset {
        debug_assert!(self.is_downset_mask(bits));
        Downset {
            tag: self.inner.tag,
            bits,
        }
    }

    pub fn is_downset_mask(&self, bits: u64) -> bool {
        if bits & !self.full() != 0 {
            return false;
        }
        bits_iter(bits).all(|p| self.inner.down[p] & !bits == 0)
    }

    pub fn downset(&self, bits: u64) -> Result<Downset> {
        if self.is_downset_mask(bits) {
            Ok(self.wrap(bits))
        } else {
            Err(Error::NotADownset(self.mask_labels(bits)))
        }
    }

    /// Downset from a label list; the labels must already be downward closed.
    pub fn downset_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Downset> {
        let mut bits = 0u64;
        for l in labels {
            bits |= 1 << self.index_of(l.as_ref())?;
        }
        self.downset(bits)
    }

    /// Smallest downset containing the given points.
    pub fn down_closure(&self, bits: u64) -> Downset {
        let closed = bits_iter(bits & self.full()).fold(0, |acc, p| acc | self.inner.down[p]);
        self.wrap(closed)
    }

    fn mask_labels(&self, bits: u64) -> Vec<String> {
        let mut out: Vec<String> = bits_iter(bits & self.full())
            .map(|p| self.inner.labels[p].clone())
            .collect();
        out.sort();
        out
    }

    /// Sorted label list: the serialized form of a downset.
    pub fn labels_of(&self, d: Downset) -> Vec<String> {
        self.mask_labels(d.bits)
    }

    pub fn contains(&self, d: Downset) -> bool {
        d.tag == self.inner.tag
    }

    pub(crate) fn check(&self, d: Downset) -> Result<()> {
        if self.contains(d) {
            Ok(())
        } else {
            Err(Error::MixedPosets)
        }
    }

    pub fn maximal_points(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&p| self.inner.up[p] == 1 << p)
            .collect()
    }

    pub fn minimal_points(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&p| self.inner.down[p] == 1 << p)
            .collect()
    }

    /// Least upper bound of a family; `0` for the empty family.
    pub fn join_all<I: IntoIterator<Item = Downset>>(&self, items: I) -> Result<Downset> {
        let mut acc = 0u64;
        for d in items {
            self.check(d)?;
            acc |= d.bits;
        }
        Ok(self.wrap(acc))
    }

    /// Greatest lower bound of a family; `1` for the empty family.
    pub fn meet_all<I: IntoIterator<Item = Downset>>(&self, items: I) -> Result<Downset> {
        let mut acc = self.full();
        for d in items {
            self.check(d)?;
            acc &= d.bits;
        }
        Ok(self.wrap(acc))
    }

    /// The join-irreducible elements `{↓p}` in point order.
    pub fn join_irreducibles(&self) -> Vec<Downset> {
        (0..self.len()).map(|p| self.principal(p)).collect()
    }

    /// Point order compatible with the partial order (a linear extension).
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&p| (self.inner.down[p].count_ones(), p));
        order
    }

    /// Number of downsets, or `None` once it exceeds `cap`.
    pub fn count_downsets(&self, cap: usize) -> Option<usize> {
        let mut count = 0usize;
        let ok = self.visit_downsets(&mut |_| {
            count += 1;
            count <= cap
        });
        ok.then_some(count)
    }

    /// Every element of the lattice, sorted by size then mask. Fails with
    /// `SearchCapExceeded` when there are more than `cap` of them.
    pub fn downsets(&self, cap: usize) -> Result<Vec<Downset>> {
        let mut out = Vec::new();
        let ok = self.visit_downsets(&mut |bits| {
            out.push(bits);
            out.len() <= cap
        });
        if !ok {
            return Err(Error::SearchCapExceeded { cap });
        }
        out.sort_by_key(|&b| (b.count_ones(), b));
        Ok(out.into_iter().map(|b| self.wrap(b)).collect())
    }

    /// Calls `f` on every downset mask until it returns false. Returns whether
    /// the enumeration ran to completion.
    fn visit_downsets(&self, f: &mut dyn FnMut(u64) -> bool) -> bool {
        fn rec(
            poset: &Poset,
            order: &[usize],
            i: usize,
            cur: u64,
            f: &mut dyn FnMut(u64) -> bool,
        ) -> bool {
            if i == order.len() {
                return f(cur);
            }
            let p = order[i];
            if !rec(poset, order, i + 1, cur, f) {
                return false;
            }
            let below = poset.inner.down[p] & !(1 << p);
            if below & !cur == 0 {
                return rec(poset, order, i + 1, cur | 1 << p, f);
            }
            true
        }
        let order = self.linear_extension();
        rec(self, &order, 0, 0, f)
    }

    /// Same poset with new labels (used to build isomorphic copies).
    pub fn relabeled(&self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.len() {
            return Err(Error::MalformedTable(format!(
                "expected {} labels, got {}",
                self.len(),
                labels.len()
            )));
        }
        let pairs: Vec<(usize, usize)> = self.strict_pairs().collect();
        Self::from_labeled_indexed_pairs(labels, &pairs)
    }
}

/// Shortest path `p -> ... -> q -> ... -> p` in the edge graph, for error
/// reporting. `p <= q` and `q <= p` are both known to hold.
fn find_cycle(n: usize, edges: &[(usize, usize)], p: usize, q: usize) -> Vec<usize> {
    let mut adj = vec![Vec::new(); n];
    for &(lo, hi) in edges {
        adj[lo].push(hi);
    }
    let path = |from: usize, to: usize| -> Vec<usize> {
        let mut prev = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([from]);
        seen[from] = true;
        while let Some(x) = queue.pop_front() {
            if x == to {
                break;
            }
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    prev[y] = x;
                    queue.push_back(y);
                }
            }
        }
        let mut out = vec![to];
        let mut cur = to;
        while cur != from {
            cur = prev[cur];
            out.push(cur);
        }
        out.reverse();
        out
    };
    let mut cycle = path(p, q);
    cycle.extend(path(q, p).into_iter().skip(1));
    cycle
}

pub(crate) fn downset_unchecked(tag: PosetTag, bits: u64) -> Downset {
    Downset { tag, bits }
}

/// A lattice element: a downward closed set of points of one poset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Downset {
    tag: PosetTag,
    bits: u64,
}

impl Downset {
    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn tag(self) -> PosetTag {
        self.tag
    }

    pub fn is_zero(self) -> bool {
        self.bits == 0
    }

    pub fn contains_point(self, p: usize) -> bool {
        p < 64 && self.bits >> p & 1 == 1
    }

    pub fn points(self) -> impl Iterator<Item = usize> {
        bits_iter(self.bits)
    }

    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    fn same(self, other: Downset) -> Result<()> {
        if self.tag == other.tag {
            Ok(())
        } else {
            Err(Error::MixedPosets)
        }
    }

    pub fn join(self, other: Downset) -> Result<Downset> {
        self.same(other)?;
        Ok(Downset {
            tag: self.tag,
            bits: self.bits | other.bits,
        })
    }

    pub fn meet(self, other: Downset) -> Result<Downset> {
        self.same(other)?;
        Ok(Downset {
            tag: self.tag,
            bits: self.bits & other.bits,
        })
    }

    /// Lattice order, i.e. set inclusion.
    pub fn leq(self, other: Downset) -> Result<bool> {
        self.same(other)?;
        Ok(self.bits & !other.bits == 0)
    }
}

/// A finite lattice given by explicit operation tables over indices
/// `0..names.len()`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExplicitLattice {
    pub names: Vec<String>,
    pub join: Vec<Vec<usize>>,
    pub meet: Vec<Vec<usize>>,
    pub zero: usize,
    pub one: usize,
}

impl ExplicitLattice {
    fn check_shape(&self) -> Result<()> {
        let k = self.names.len();
        for (what, t) in [("join", &self.join), ("meet", &self.meet)] {
            if t.len() != k || t.iter().any(|row| row.len() != k) {
                return Err(Error::MalformedTable(format!(
                    "{what} table is not {k}x{k}"
                )));
            }
            if t.iter().flatten().any(|&x| x >= k) {
                return Err(Error::MalformedTable(format!(
                    "{what} table entry out of range"
                )));
            }
        }
        if self.zero >= k || self.one >= k {
            return Err(Error::MalformedTable("zero/one index out of range".into()));
        }
        Ok(())
    }

    /// Checks commutativity, associativity, absorption, boundedness and
    /// distributivity, in that order.
    pub fn validate(&self) -> Result<()> {
        self.check_shape()?;
        let k = self.names.len();
        if k < 2 || self.zero == self.one {
            return Err(Error::ZeroEqualsOne);
        }
        let (j, m) = (&self.join, &self.meet);
        for x in 0..k {
            for y in 0..k {
                if j[x][y] != j[y][x] {
                    return Err(Error::NotALattice {
                        law: "join commutativity",
                        witness: vec![x, y],
                    });
                }
                if m[x][y] != m[y][x] {
                    return Err(Error::NotALattice {
                        law: "meet commutativity",
                        witness: vec![x, y],
                    });
                }
                if j[x][m[x][y]] != x || m[x][j[x][y]] != x {
                    return Err(Error::NotALattice {
                        law: "absorption",
                        witness: vec![x, y],
                    });
                }
            }
        }
        for x in 0..k {
            for y in 0..k {
                for z in 0..k {
                    if j[j[x][y]][z] != j[x][j[y][z]] {
                        return Err(Error::NotALattice {
                            law: "join associativity",
                            witness: vec![x, y, z],
                        });
                    }
                    if m[m[x][y]][z] != m[x][m[y][z]] {
                        return Err(Error::NotALattice {
                            law: "meet associativity",
                            witness: vec![x, y, z],
                        });
                    }
                }
            }
        }
        for x in 0..k {
            if j[self.zero][x] != x || m[self.one][x] != x {
                return Err(Error::NotBounded);
            }
        }
        for x in 0..k {
            for y in 0..k {
                for z in 0..k {
                    if m[x][j[y][z]] != j[m[x][y]][m[x][z]] {
                        return Err(Error::NotDistributive { witness: [x, y, z] });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.join[x][y] == y
    }
}

/// Converts an explicit lattice to its Birkhoff dual.
///
/// Returns the poset of join-irreducible elements (labeled by their names)
/// and, for every element index of `lattice`, the corresponding downset.
pub fn from_explicit(lattice: &ExplicitLattice) -> Result<(Poset, Vec<Downset>)> {
    lattice.validate()?;
    let k = lattice.names.len();
    let irreducible: Vec<usize> = (0..k)
        .filter(|&x| {
            if x == lattice.zero {
                return false;
            }
            let below = (0..k)
                .filter(|&y| y != x && lattice.leq(y, x))
                .fold(lattice.zero, |acc, y| lattice.join[acc][y]);
            below != x
        })
        .collect();
    if irreducible.len() > MAX_POINTS {
        return Err(Error::TooManyPoints {
            points: irreducible.len(),
            limit: MAX_POINTS,
        });
    }
    let labels: Vec<String> = irreducible
        .iter()
        .map(|&x| lattice.names[x].clone())
        .collect();
    let mut pairs = Vec::new();
    for (a, &x) in irreducible.iter().enumerate() {
        for (b, &y) in irreducible.iter().enumerate() {
            if a != b && lattice.leq(x, y) {
                pairs.push((a, b));
            }
        }
    }
    let poset = Poset::from_labeled_indexed_pairs(labels, &pairs)?;
    let mut seen = HashSet::with_capacity(k);
    let mut map = Vec::with_capacity(k);
    for x in 0..k {
        let bits = irreducible
            .iter()
            .enumerate()
            .filter(|&(_, &j)| lattice.leq(j, x))
            .fold(0u64, |acc, (a, _)| acc | 1 << a);
        if !seen.insert(bits) {
            // Unreachable for distributive lattices; kept as a hard check.
            return Err(Error::NotDistributive { witness: [x, x, x] });
        }
        map.push(poset.downset(bits)?);
    }
    Ok((poset, map))
}

impl Poset {
    /// The downset lattice as explicit tables, elements in [`Poset::downsets`]
    /// order. Inverse of [`from_explicit`] up to relabeling.
    pub fn to_explicit(&self, cap: usize) -> Result<(ExplicitLattice, Vec<Downset>)> {
        let elems = self.downsets(cap)?;
        let pos: HashMap<u64, usize> = elems.iter().enumerate().map(|(i, d)| (d.bits, i)).collect();
        let k = elems.len();
        let mut join = vec![vec![0; k]; k];
        let mut meet = vec![vec![0; k]; k];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                join[i][j] = pos[&(a.bits | b.bits)];
                meet[i][j] = pos[&(a.bits & b.bits)];
            }
        }
        let names = elems
            .iter()
            .map(|&d| format!("{{{}}}", self.labels_of(d).join(",")))
            .collect();
        let lattice = ExplicitLattice {
            names,
            join,
            meet,
            zero: pos[&0],
            one: pos[&self.full()],
        };
        Ok((lattice, elems))
    }
}
