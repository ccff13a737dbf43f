//! Generators of positively expansive automorphisms and the resulting bound
//! on minimal subcovers.

use super::expansive::{is_positive_expansivity_cover, is_positively_expansive};
use super::trajectory::{iterated_wedge, Mode};
use super::LatticeAutomorphism;
use crate::cover::Cover;
use crate::error::{Error, Result};

/// Least `N` with `⋀_{n=0}^{N} λⁿU ≺ λ⁻¹U`, and that wedge as `U₀`.
pub fn utz_generator(
    aut: &LatticeAutomorphism,
    u: &Cover,
    max_depth: usize,
) -> Result<(Cover, usize)> {
    if !is_positive_expansivity_cover(aut, u, max_depth)? {
        return Err(Error::NotPositiveExpansivityCover);
    }
    let target = aut.inverse().apply_cover(u)?;
    for n in 0..=max_depth {
        let w = iterated_wedge(aut, u, n as i64, Mode::Forward)?;
        if w.refines(&target)? {
            return Ok((w, n));
        }
    }
    Err(Error::NotStabilized(max_depth))
}

/// Least `n ≤ max_n` with `λⁿU₀ ≺ V`.
pub fn utz_return_time(
    aut: &LatticeAutomorphism,
    u0: &Cover,
    v: &Cover,
    max_n: usize,
) -> Result<Option<usize>> {
    let mut cur = u0.clone();
    for n in 0..=max_n {
        if cur.refines(v)? {
            return Ok(Some(n));
        }
        cur = aut.apply_cover(&cur)?;
    }
    Ok(None)
}

/// `|U₀|` for the generator grown from `J(L)`: every cover has a subcover
/// with at most this many members.
pub fn utz_bound(aut: &LatticeAutomorphism, max_depth: usize) -> Result<usize> {
    let (ok, witness) = is_positively_expansive(aut, max_depth)?;
    let Some(j) = witness.filter(|_| ok) else {
        return Err(Error::NotPositivelyExpansive);
    };
    let (u0, _) = utz_generator(aut, &j, max_depth)?;
    Ok(u0.canonical().len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::{equivalent, finest_cover, minimal_subcover, proper_maximal_elements};
    use crate::enumerate::{all_covers, all_posets, automorphisms};
    use crate::lattice::Poset;

    #[test]
    fn examples() {
        let v = Poset::new(&["a", "b", "c"], &[("c", "a"), ("c", "b")]).unwrap();
        let id = LatticeAutomorphism::identity(&v);
        let j = finest_cover(&v);
        let (u0, n) = utz_generator(&id, &j, 8).unwrap();
        assert_eq!(n, 0);
        assert!(equivalent(&u0, &j).unwrap());

        let p = Poset::antichain(&["a", "b"]).unwrap();
        let swap = LatticeAutomorphism::from_permutation(&p, &[1, 0]).unwrap();
        let jp = finest_cover(&p);
        let (u0, n) = utz_generator(&swap, &jp, 8).unwrap();
        assert!(n <= 1);
        assert!(equivalent(&u0, &jp).unwrap());
        assert_eq!(utz_return_time(&swap, &u0, &jp, 4).unwrap(), Some(0));

        assert_eq!(utz_bound(&LatticeAutomorphism::identity(&p), 8).unwrap(), 2);
        let one = Poset::new(&["a"], &[]).unwrap();
        assert_eq!(
            utz_bound(&LatticeAutomorphism::identity(&one), 8).unwrap(),
            1
        );

        let top = Cover::new(&v, [v.one()]).unwrap();
        assert_eq!(
            utz_generator(&id, &top, 8).unwrap_err(),
            Error::NotPositiveExpansivityCover
        );
    }

    #[test]
    fn bound_holds_on_small_posets() {
        for n in 1..=3 {
            for poset in all_posets(n) {
                let covers = all_covers(&poset).unwrap();
                for perm in automorphisms(&poset) {
                    let aut = LatticeAutomorphism::from_permutation(&poset, &perm).unwrap();
                    let bound = utz_bound(&aut, 16).unwrap();
                    assert!(proper_maximal_elements(&poset).len() <= bound);
                    for u in &covers {
                        assert!(minimal_subcover(u).count <= bound);
                    }
                }
            }
        }
    }
}
