//! Expansivity on a finite lattice.
//!
//! `J(L)` refines every cover, so a wedge trajectory eventually refines every
//! cover exactly when its stable class refines `J(L)`; and if any cover is an
//! expansivity cover then so is `J(L)`, because refinement passes through
//! `λ` and `∧`. Both facts reduce the quantifiers over all covers to a single
//! comparison.

use super::trajectory::{stabilize, Mode};
use super::{LatticeAutomorphism, SelfMap};
use crate::cover::{finest_cover, refines_bits, Cover};
use crate::error::{Error, Result};

fn limit_refines_finest<M: SelfMap + ?Sized>(
    map: &M,
    u: &Cover,
    mode: Mode,
    max_depth: usize,
) -> Result<bool> {
    let t = stabilize(map, u, mode, max_depth)?;
    let limit = t.limit().ok_or(Error::NotStabilized(max_depth))?;
    let j = finest_cover(map.poset());
    Ok(refines_bits(limit.canonical_bits(), j.bits()))
}

/// Whether two-sided wedges of `u` eventually refine every cover.
pub fn is_expansivity_cover(
    aut: &LatticeAutomorphism,
    u: &Cover,
    max_depth: usize,
) -> Result<bool> {
    limit_refines_finest(aut, u, Mode::TwoSided, max_depth)
}

/// Whether forward wedges of `u` eventually refine every cover.
pub fn is_positive_expansivity_cover<M: SelfMap + ?Sized>(
    map: &M,
    u: &Cover,
    max_depth: usize,
) -> Result<bool> {
    limit_refines_finest(map, u, Mode::Forward, max_depth)
}

/// Expansivity decided on the candidate `J(L)`, returned as the witness.
pub fn is_expansive(aut: &LatticeAutomorphism, max_depth: usize) -> Result<(bool, Option<Cover>)> {
    let j = finest_cover(aut.poset());
    let ok = is_expansivity_cover(aut, &j, max_depth)?;
    Ok((ok, ok.then_some(j)))
}

pub fn is_positively_expansive<M: SelfMap + ?Sized>(
    map: &M,
    max_depth: usize,
) -> Result<(bool, Option<Cover>)> {
    let j = finest_cover(map.poset());
    let ok = is_positive_expansivity_cover(map, &j, max_depth)?;
    Ok((ok, ok.then_some(j)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::refines;
    use crate::dynamics::DEFAULT_MAX_DEPTH;
    use crate::enumerate::{all_covers, all_posets, automorphisms};
    use crate::lattice::Poset;

    fn v_poset() -> Poset {
        Poset::new(&["a", "b", "c"], &[("c", "a"), ("c", "b")]).unwrap()
    }

    #[test]
    fn examples() {
        let v = v_poset();
        let id = LatticeAutomorphism::identity(&v);
        assert!(is_expansivity_cover(&id, &finest_cover(&v), 8).unwrap());
        let top = Cover::new(&v, [v.one()]).unwrap();
        assert!(!is_expansivity_cover(&id, &top, 8).unwrap());
        assert!(!is_positive_expansivity_cover(&id, &top, 8).unwrap());

        let p = Poset::antichain(&["a", "b"]).unwrap();
        let swap = LatticeAutomorphism::from_permutation(&p, &[1, 0]).unwrap();
        let j = finest_cover(&p);
        assert!(is_expansivity_cover(&swap, &j, 8).unwrap());
        let (ok, w) = is_expansive(&swap, 8).unwrap();
        assert!(ok);
        assert_eq!(w.unwrap(), j);
        assert!(is_positively_expansive(&id, 8).unwrap().0);
        assert_eq!(
            is_expansive(&id, 8).unwrap().0,
            is_positively_expansive(&id, 8).unwrap().0
        );
    }

    /// Brute force over every cover: `λ` is expansive iff some cover's
    /// trajectory eventually refines every cover; both must agree with the
    /// single-candidate decision.
    #[test]
    fn single_candidate_matches_all_covers() {
        for n in 1..=3 {
            for poset in all_posets(n) {
                let covers = all_covers(&poset).unwrap();
                for perm in automorphisms(&poset) {
                    let aut = LatticeAutomorphism::from_permutation(&poset, &perm).unwrap();
                    let brute = covers.iter().any(|u| {
                        let t = stabilize(&aut, u, Mode::TwoSided, DEFAULT_MAX_DEPTH).unwrap();
                        let lim = t.limit().unwrap().members();
                        covers.iter().all(|v| refines(&lim, &v.members()).unwrap())
                    });
                    assert_eq!(brute, is_expansive(&aut, DEFAULT_MAX_DEPTH).unwrap().0);
                }
            }
        }
    }
}
