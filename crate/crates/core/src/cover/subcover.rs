use super::Cover;
use crate::setcover::{min_set_cover, BitSet, SearchStats};

/// An optimal subcover together with its cardinality.
#[derive(Clone, Debug)]
pub struct Subcover {
    pub cover: Cover,
    pub count: usize,
    pub stats: SearchStats,
}

/// Exact minimum-cardinality subcover.
///
/// Members are offered to the solver in serialization order (sorted label
/// lists), which fixes the witness among optimal subcovers.
pub fn minimal_subcover(u: &Cover) -> Subcover {
    let poset = u.poset();
    let n = poset.len();
    let mut members: Vec<(Vec<String>, u64)> = u
        .bits()
        .iter()
        .map(|&b| (poset.labels_of(poset.wrap(b)), b))
        .collect();
    members.sort();
    let sets: Vec<BitSet> = members
        .iter()
        .map(|(_, b)| BitSet::from_u64(*b, n))
        .collect();
    let sol = min_set_cover(n, &sets).expect("a cover covers every point");
    let chosen: Vec<u64> = sol.chosen.iter().map(|&i| members[i].1).collect();
    Subcover {
        count: chosen.len(),
        cover: Cover::from_bits_unchecked(poset, chosen),
        stats: sol.stats,
    }
}
