//! Cover calculus on a finite distributive lattice.
//!
//! A cover is a finite family of lattice elements whose join is `1`. Families
//! are sets, so duplicates collapse; `0` may appear but never matters for
//! refinement, order or joins. Every cover caches its canonical form, the
//! antichain of its inclusion-maximal nonzero members: two covers are
//! equivalent (mutually refining) exactly when their canonical forms agree.

mod maximal;
mod subcover;

pub use maximal::{maximal_meet_cover, proper_maximal_elements};
pub use subcover::{minimal_subcover, Subcover};

use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{Downset, Poset, PosetTag};

#[derive(Clone)]
pub struct Cover {
    poset: Poset,
    /// Sorted, deduplicated member masks.
    members: Vec<u64>,
    /// Sorted inclusion-maximal nonzero members.
    canonical: Vec<u64>,
}

impl PartialEq for Cover {
    fn eq(&self, other: &Self) -> bool {
        self.poset.tag() == other.poset.tag() && self.members == other.members
    }
}

impl Eq for Cover {}

impl fmt::Debug for Cover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.to_labels()).finish()
    }
}

pub(crate) fn sort_dedup(mut v: Vec<u64>) -> Vec<u64> {
    v.sort_unstable();
    v.dedup();
    v
}

/// Inclusion-maximal nonzero elements of a sorted, deduplicated family.
pub(crate) fn maximal_bits(members: &[u64]) -> Vec<u64> {
    members
        .iter()
        .copied()
        .filter(|&m| m != 0 && !members.iter().any(|&o| o != m && m & !o == 0))
        .collect()
}

/// Zero members of `finer` are ignored, so `{0} ≺ ∅`.
pub(crate) fn refines_bits(finer: &[u64], coarser: &[u64]) -> bool {
    finer
        .iter()
        .all(|&u| u == 0 || coarser.iter().any(|&v| u & !v == 0))
}

/// Pairwise meets, canonicalized. The canonical form of a wedge depends only
/// on the canonical forms of its factors.
pub(crate) fn wedge_canonical_bits(a: &[u64], b: &[u64]) -> Vec<u64> {
    let raw: Vec<u64> = a
        .iter()
        .flat_map(|&x| b.iter().map(move |&y| x & y))
        .collect();
    maximal_bits(&sort_dedup(raw))
}

fn family_tag(items: &[Downset]) -> Result<Option<PosetTag>> {
    let mut tag = None;
    for d in items {
        match tag {
            None => tag = Some(d.tag()),
            Some(t) if t != d.tag() => return Err(Error::MixedPosets),
            _ => {}
        }
    }
    Ok(tag)
}

impl Cover {
    /// Builds a cover, rejecting families over another poset or whose join is
    /// not `1`.
    pub fn new<I: IntoIterator<Item = Downset>>(poset: &Poset, members: I) -> Result<Cover> {
        let mut bits = Vec::new();
        for d in members {
            poset.check(d)?;
            bits.push(d.bits());
        }
        Cover::from_bits(poset, bits)
    }

    pub(crate) fn from_bits(poset: &Poset, bits: Vec<u64>) -> Result<Cover> {
        let joined = bits.iter().fold(0, |acc, b| acc | b);
        if joined != poset.full() {
            return Err(Error::NotACover);
        }
        Ok(Cover::from_bits_unchecked(poset, bits))
    }

    pub(crate) fn from_bits_unchecked(poset: &Poset, bits: Vec<u64>) -> Cover {
        let members = sort_dedup(bits);
        let canonical = maximal_bits(&members);
        debug_assert_eq!(canonical.iter().fold(0, |a, b| a | b), poset.full());
        Cover {
            poset: poset.clone(),
            members,
            canonical,
        }
    }

    /// Cover from serialized members (label lists).
    pub fn from_labels<S: AsRef<str>>(poset: &Poset, members: &[Vec<S>]) -> Result<Cover> {
        let downs = members
            .iter()
            .map(|m| poset.downset_from_labels(m))
            .collect::<Result<Vec<_>>>()?;
        Cover::new(poset, downs)
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    /// Number of distinct members.
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> Vec<Downset> {
        self.members.iter().map(|&b| self.poset.wrap(b)).collect()
    }

    pub(crate) fn bits(&self) -> &[u64] {
        &self.members
    }

    pub(crate) fn canonical_bits(&self) -> &[u64] {
        &self.canonical
    }

    pub fn contains(&self, d: Downset) -> bool {
        self.poset.contains(d) && self.members.binary_search(&d.bits()).is_ok()
    }

    /// The antichain of maximal members, as a cover.
    pub fn canonical(&self) -> Cover {
        Cover {
            poset: self.poset.clone(),
            members: self.canonical.clone(),
            canonical: self.canonical.clone(),
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.members == self.canonical
    }

    fn same(&self, other: &Cover) -> Result<()> {
        if self.poset.tag() == other.poset.tag() {
            Ok(())
        } else {
            Err(Error::MixedPosets)
        }
    }

    pub fn refines(&self, other: &Cover) -> Result<bool> {
        self.same(other)?;
        Ok(refines_bits(&self.canonical, &other.canonical))
    }

    /// Serialized members: each a sorted label list, sorted lexicographically.
    pub fn to_labels(&self) -> Vec<Vec<String>> {
        let mut out: Vec<Vec<String>> = self
            .members
            .iter()
            .map(|&b| self.poset.labels_of(self.poset.wrap(b)))
            .collect();
        out.sort();
        out
    }
}

/// Whether the family joins to `1`.
pub fn is_cover(poset: &Poset, family: &[Downset]) -> Result<bool> {
    Ok(poset.join_all(family.iter().copied())? == poset.one())
}

/// `finer ≺ coarser`: every member of `finer` lies below some member of
/// `coarser`. Works on arbitrary finite families.
pub fn refines(finer: &[Downset], coarser: &[Downset]) -> Result<bool> {
    let a = family_tag(finer)?;
    let b = family_tag(coarser)?;
    if let (Some(a), Some(b)) = (a, b) {
        if a != b {
            return Err(Error::MixedPosets);
        }
    }
    let f: Vec<u64> = finer.iter().map(|d| d.bits()).collect();
    let c: Vec<u64> = coarser.iter().map(|d| d.bits()).collect();
    Ok(refines_bits(&f, &c))
}

/// Mutual refinement, decided by comparing canonical antichains.
pub fn equivalent(u: &Cover, v: &Cover) -> Result<bool> {
    u.same(v)?;
    Ok(u.canonical == v.canonical)
}

/// `{u ⊓ v : u ∈ U, v ∈ V}`.
pub fn wedge(u: &Cover, v: &Cover) -> Result<Cover> {
    u.same(v)?;
    let raw: Vec<u64> = u
        .members
        .iter()
        .flat_map(|&x| v.members.iter().map(move |&y| x & y))
        .collect();
    Ok(Cover::from_bits_unchecked(&u.poset, raw))
}

/// Largest number of distinct members with a nonzero common meet.
///
/// Downsets meet nontrivially iff they share a point, so this is the largest
/// number of members through a single point.
pub fn order(u: &Cover) -> usize {
    (0..u.poset.len())
        .map(|p| u.members.iter().filter(|&&m| m >> p & 1 == 1).count())
        .max()
        .unwrap_or(0)
}

/// `U² = {u₁ ⊔ u₂ : u₁ ⊓ u₂ ≠ 0}`.
pub fn square(u: &Cover) -> Cover {
    let m = &u.members;
    let mut raw = Vec::new();
    for (i, &a) in m.iter().enumerate() {
        for &b in &m[i..] {
            if a & b != 0 {
                raw.push(a | b);
            }
        }
    }
    Cover::from_bits_unchecked(&u.poset, raw)
}

/// Components of a finite family: joins of the connected clusters of its
/// nonzero members, where two members are linked when they meet nontrivially.
/// The result is pairwise disjoint and sorted by mask.
pub fn components(family: &[Downset]) -> Result<Vec<Downset>> {
    let Some(tag) = family_tag(family)? else {
        return Ok(Vec::new());
    };
    let bits = components_bits(&family.iter().map(|d| d.bits()).collect::<Vec<_>>());
    // Joins of downsets are downsets of the same poset.
    Ok(bits
        .into_iter()
        .map(|b| crate::lattice::downset_unchecked(tag, b))
        .collect())
}

pub(crate) fn components_bits(family: &[u64]) -> Vec<u64> {
    let items = sort_dedup(family.iter().copied().filter(|&b| b != 0).collect());
    let mut parent: Vec<usize> = (0..items.len()).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut c = x;
        while parent[c] != r {
            let next = parent[c];
            parent[c] = r;
            c = next;
        }
        r
    }
    for i in 0..items.len() {
        for j in i + 1..items.len() {
            if items[i] & items[j] != 0 {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[b] = a;
                }
            }
        }
    }
    let mut joins = vec![0u64; items.len()];
    for i in 0..items.len() {
        let r = find(&mut parent, i);
        joins[r] |= items[i];
    }
    sort_dedup(joins.into_iter().filter(|&b| b != 0).collect())
}

/// The cover `J(L)` of all principal downsets; it refines every cover.
pub fn finest_cover(poset: &Poset) -> Cover {
    let bits = (0..poset.len()).map(|p| poset.down_mask(p)).collect();
    Cover::from_bits_unchecked(poset, bits)
}
