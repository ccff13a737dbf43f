//! Covering dimension: the least `n` such that every cover is refined by a
//! cover of order at most `n + 1`.
//!
//! `J(L)` refines every cover, so it is enough to refine `J(L)` itself. A
//! cover refining `J(L)` has each member inside some `↓q`; the member holding
//! a maximal point `m` must then be `↓m`. Every such cover therefore contains
//! all `↓m`, and `{↓m : m maximal}` is one of them. Its order, the largest
//! number of maximal points above a single point, is the minimum.

use crate::cover::Cover;
use crate::error::{Error, Result};
use crate::lattice::Poset;

pub const DEFAULT_SEARCH_CAP: usize = 4096;

/// The cover `{↓m : m maximal}` realizing the dimension.
pub fn dimension_witness(poset: &Poset) -> Cover {
    let bits = poset
        .maximal_points()
        .into_iter()
        .map(|m| poset.down_mask(m))
        .collect();
    Cover::from_bits_unchecked(poset, bits)
}

/// Covering dimension of `L(P)`.
///
/// `search_cap` bounds the lattice size accepted, as for the other exhaustive
/// procedures.
pub fn dimension(poset: &Poset, search_cap: usize) -> Result<usize> {
    if poset.count_downsets(search_cap).is_none() {
        return Err(Error::SearchCapExceeded { cap: search_cap });
    }
    Ok(crate::cover::order(&dimension_witness(poset)) - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::{finest_cover, order};
    use crate::enumerate::{all_covers, all_posets};

    /// Straight from the quantifiers: least `n` such that every cover has a
    /// refinement of order `≤ n + 1`, searched over all covers.
    fn brute_dimension(poset: &Poset) -> usize {
        let covers = all_covers(poset).unwrap();
        let best_for = |u: &Cover| {
            covers
                .iter()
                .filter(|v| v.refines(u).unwrap())
                .map(order)
                .min()
                .unwrap()
        };
        covers.iter().map(best_for).max().unwrap() - 1
    }

    #[test]
    fn examples() {
        let one = Poset::new(&["a"], &[]).unwrap();
        assert_eq!(dimension(&one, 64).unwrap(), 0);
        let anti = Poset::antichain(&["a", "b"]).unwrap();
        assert_eq!(dimension(&anti, 64).unwrap(), 0);
        let v = Poset::new(&["a", "b", "c"], &[("c", "a"), ("c", "b")]).unwrap();
        assert_eq!(dimension(&v, 64).unwrap(), 1);
        assert!(dimension_witness(&v).refines(&finest_cover(&v)).unwrap());
    }

    #[test]
    fn matches_exhaustive_search() {
        for n in 1..=3 {
            for poset in all_posets(n) {
                assert_eq!(dimension(&poset, 64).unwrap(), brute_dimension(&poset));
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let anti = Poset::antichain(&["a", "b", "c", "d"]).unwrap();
        assert_eq!(
            dimension(&anti, 15).unwrap_err(),
            Error::SearchCapExceeded { cap: 15 }
        );
        assert_eq!(dimension(&anti, 16).unwrap(), 0);
    }
}
