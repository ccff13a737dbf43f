//! Entropy of covers and of lattice maps relative to a cover.
//!
//! Counts are exact minimal-subcover sizes; logarithms (natural) are taken
//! only when estimates are reported.

use serde::{Deserialize, Serialize};

use crate::cover::{minimal_subcover, Cover};
use crate::dynamics::{is_expansive, stabilize, LatticeAutomorphism, Mode, SelfMap};
use crate::error::{Error, Result};

/// Tolerance for the `converged` flag.
pub const CONVERGENCE_TOL: f64 = 1e-9;

/// Minimal subcover size of `u` and its logarithm.
pub fn cover_entropy(u: &Cover) -> (usize, f64) {
    let count = minimal_subcover(u).count;
    (count, (count as f64).ln())
}

/// Counts `mₙ` for `n = 1..=n_max` with the estimates `log(mₙ)/n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntropySequence {
    pub counts: Vec<usize>,
    pub estimates: Vec<f64>,
    /// Smallest estimate; the limit is the infimum of the estimates.
    pub upper_bound: f64,
    pub converged: bool,
    /// Set when the forward wedges stabilized within `n_max`: the counts
    /// are constant from then on and the entropy is exactly 0.
    pub certified: bool,
    /// The exact entropy, when certified.
    pub value: Option<f64>,
    /// Depth at which the forward wedges stabilized.
    pub stabilized_at: Option<usize>,
}

/// Entropy of `map` relative to `u`, from the forward wedges
/// `⋀_{k=0}^{n-1} λᵏU`.
pub fn relative_entropy<M: SelfMap + ?Sized>(
    map: &M,
    u: &Cover,
    n_max: usize,
) -> Result<EntropySequence> {
    let n_max = n_max.max(1);
    // A_{n-1} is the wedge used for mₙ.
    let traj = stabilize(map, u, Mode::Forward, n_max.saturating_sub(1).max(1))?;
    let mut counts = Vec::with_capacity(n_max);
    let mut last = None;
    for n in 1..=n_max {
        let idx = n - 1;
        let count = match (traj.stabilized_at, last) {
            (Some(s), Some(c)) if idx > s => c,
            _ => minimal_subcover(&traj.covers[idx]).count,
        };
        last = Some(count);
        counts.push(count);
    }
    let estimates: Vec<f64> = counts
        .iter()
        .enumerate()
        .map(|(i, &c)| (c as f64).ln() / (i + 1) as f64)
        .collect();
    let upper_bound = estimates.iter().copied().fold(f64::INFINITY, f64::min);
    let certified = traj.stabilized_at.is_some();
    let converged = certified
        || estimates
            .windows(2)
            .last()
            .is_some_and(|w| (w[1] - w[0]).abs() < CONVERGENCE_TOL);
    Ok(EntropySequence {
        counts,
        estimates,
        upper_bound,
        converged,
        certified,
        value: certified.then_some(0.0),
        stabilized_at: traj.stabilized_at,
    })
}

/// Entropy of an expansive automorphism, computed relative to its
/// expansivity witness, where it attains the supremum over covers.
pub fn expansive_entropy(
    aut: &LatticeAutomorphism,
    n_max: usize,
) -> Result<(f64, EntropySequence)> {
    let (ok, witness) = is_expansive(aut, crate::dynamics::DEFAULT_MAX_DEPTH.max(n_max))?;
    let u = match witness {
        Some(u) if ok => u,
        _ => return Err(Error::NotExpansive),
    };
    let seq = relative_entropy(aut, &u, n_max)?;
    Ok((seq.value.unwrap_or(seq.upper_bound), seq))
}

/// Largest relative entropy over the given covers: a lower bound on the
/// entropy of `map`.
pub fn entropy_lower_bound<M: SelfMap + ?Sized>(
    map: &M,
    covers: &[Cover],
    n_max: usize,
) -> Result<f64> {
    let mut best = 0.0f64;
    for u in covers {
        let s = relative_entropy(map, u, n_max)?;
        best = best.max(s.value.unwrap_or(s.upper_bound));
    }
    Ok(best)
}

/// `m_{i+j} ≤ mᵢ·mⱼ` for every split inside the sequence (1-based counts).
pub fn is_submultiplicative(counts: &[usize]) -> bool {
    let m = |n: usize| counts[n - 1] as u128;
    (2..=counts.len()).all(|n| (1..n).all(|i| m(n) <= m(i) * m(n - i)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::finest_cover;
    use crate::dynamics::UnitalMorphism;
    use crate::lattice::Poset;

    #[test]
    fn cover_entropy_examples() {
        let v = Poset::new(&["a", "b", "c"], &[("c", "a"), ("c", "b")]).unwrap();
        assert_eq!(cover_entropy(&Cover::new(&v, [v.one()]).unwrap()), (1, 0.0));
        let anti = Poset::antichain(&["a", "b", "c"]).unwrap();
        let (c, h) = cover_entropy(&finest_cover(&anti));
        assert_eq!(c, 3);
        assert!((h - 3f64.ln()).abs() < 1e-12);
        let u = Cover::new(&v, [v.principal(0), v.principal(1), v.principal(2)]).unwrap();
        assert_eq!(cover_entropy(&u).0, 2);
    }

    #[test]
    fn identity_counts_are_constant() {
        let v = Poset::new(&["a", "b", "c"], &[("c", "a"), ("c", "b")]).unwrap();
        let id = LatticeAutomorphism::identity(&v);
        let s = relative_entropy(&id, &finest_cover(&v), 10).unwrap();
        assert_eq!(s.counts, vec![2; 10]);
        assert!(s.certified && s.converged);
        assert_eq!(s.value, Some(0.0));
        assert!((s.upper_bound - 2f64.ln() / 10.0).abs() < 1e-12);
    }

    #[test]
    fn swap_on_antichain() {
        let p = Poset::antichain(&["a", "b"]).unwrap();
        let swap = LatticeAutomorphism::from_permutation(&p, &[1, 0]).unwrap();
        let s = relative_entropy(&swap, &finest_cover(&p), 6).unwrap();
        assert_eq!(s.counts, vec![2; 6]);
        assert!(s.estimates.windows(2).all(|w| w[1] < w[0]));
        let (h, _) = expansive_entropy(&swap, 6).unwrap();
        assert_eq!(h, 0.0);
    }

    #[test]
    fn forward_wedges_of_a_morphism() {
        let p = Poset::antichain(&["a", "b", "c"]).unwrap();
        let m = UnitalMorphism::new(&p, &p, &[1, 2, 2]).unwrap();
        let u = Cover::new(&p, [p.downset(0b011).unwrap(), p.downset(0b110).unwrap()]).unwrap();
        let s = relative_entropy(&m, &u, 8).unwrap();
        assert!(is_submultiplicative(&s.counts));
        assert!(s.certified);
    }

    #[test]
    fn submultiplicativity_check() {
        assert!(is_submultiplicative(&[2, 4, 8]));
        assert!(!is_submultiplicative(&[2, 5]));
        assert!(is_submultiplicative(&[]));
    }
}
