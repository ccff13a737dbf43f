use std::collections::HashSet;

use super::Cover;
use crate::error::{Error, Result};
use crate::lattice::{Downset, Poset};

/// Proper maximal elements (coatoms): `u ≠ 1` with nothing strictly between
/// `u` and `1`.
///
/// In the downset lattice these are exactly `1 \ {m}` for maximal points `m`;
/// the complement of a coatom is a single point that must be an upset.
/// Returned in point order.
pub fn proper_maximal_elements(poset: &Poset) -> Vec<Downset> {
    poset
        .maximal_points()
        .into_iter()
        .map(|m| poset.wrap(poset.full() & !(1 << m)))
        .collect()
}

fn is_proper_maximal(poset: &Poset, d: Downset) -> bool {
    let missing = poset.full() & !d.bits();
    missing.count_ones() == 1 && poset.up_mask(missing.trailing_zeros() as usize) == missing
}

/// Given distinct proper maximal `u₀..u_m`, the cover
/// `{v_k = ⊓_{i≠k} u_i}`: it has exactly `m + 1` members and no proper
/// subcover. A single input gives `{1}`.
pub fn maximal_meet_cover(poset: &Poset, us: &[Downset]) -> Result<Cover> {
    let mut seen = HashSet::new();
    for &u in us {
        poset.check(u)?;
        if !is_proper_maximal(poset, u) {
            return Err(Error::NotProperMaximal(poset.labels_of(u)));
        }
        if !seen.insert(u.bits()) {
            return Err(Error::DuplicateInputs);
        }
    }
    if us.is_empty() {
        // ⊓ over the empty index set is 1, but there is no v_k to build.
        return Err(Error::NotACover);
    }
    let vs: Vec<u64> = (0..us.len())
        .map(|k| {
            us.iter()
                .enumerate()
                .filter(|&(i, _)| i != k)
                .fold(poset.full(), |acc, (_, u)| acc & u.bits())
        })
        .collect();
    Cover::from_bits(poset, vs)
}
