//! The cover `W` that absorbs the two-sided wedges of an expansivity cover,
//! and the component covers built from it that bound the covering dimension.

use super::expansive::is_expansivity_cover;
use super::trajectory::{iterated_wedge, Mode};
use super::LatticeAutomorphism;
use crate::cover::{
    components_bits, refines_bits, sort_dedup, square, wedge_canonical_bits, Cover,
};
use crate::error::{Error, Result};

/// Least `N` with `⋀_{|k|≤N} λᵏU ≺ V`, and that wedge as `W`.
pub fn mane_witness(
    aut: &LatticeAutomorphism,
    u: &Cover,
    v: &Cover,
    max_depth: usize,
) -> Result<(usize, Cover)> {
    if u.poset().tag() != v.poset().tag() {
        return Err(Error::MixedPosets);
    }
    if !is_expansivity_cover(aut, u, max_depth)? {
        return Err(Error::NotExpansivityCover);
    }
    for n in 0..=max_depth {
        let w = iterated_wedge(aut, u, n as i64, Mode::TwoSided)?;
        if w.refines(v)? {
            return Ok((n, w));
        }
    }
    Err(Error::NotStabilized(max_depth))
}

/// Evaluates `λ⁻ⁿW ∧ (⋀_{|k|≤n} λᵏU) ∧ λⁿW ≺ ⋀_{|k|≤n} λᵏV`.
pub fn mane_check(
    aut: &LatticeAutomorphism,
    u: &Cover,
    v: &Cover,
    w: &Cover,
    n: usize,
) -> Result<bool> {
    let tag = aut.poset().tag();
    if [u, v, w].iter().any(|c| c.poset().tag() != tag) {
        return Err(Error::MixedPosets);
    }
    let m = n as i64;
    let wn = wedge_canonical_bits(
        aut.power(-m).apply_cover(w)?.canonical_bits(),
        aut.power(m).apply_cover(w)?.canonical_bits(),
    );
    let un = iterated_wedge(aut, u, m, Mode::TwoSided)?;
    let lhs = wedge_canonical_bits(&wn, un.canonical_bits());
    let rhs = iterated_wedge(aut, v, m, Mode::TwoSided)?;
    Ok(refines_bits(&lhs, rhs.canonical_bits()))
}

fn meets(a: &[u64], b: &[u64]) -> Vec<u64> {
    sort_dedup(
        a.iter()
            .flat_map(|&x| b.iter().map(move |&y| x & y))
            .collect(),
    )
}

/// The depth-`n` component cover and its order bound.
#[derive(Clone, Debug)]
pub struct DimensionCertificate {
    /// `W` from [`mane_witness`] applied to `U²` and `U`.
    pub w: Cover,
    /// Depth at which `W` was found.
    pub witness_depth: usize,
    pub n: usize,
    /// `⋀_{|k|≤n} λᵏU`.
    pub wedge: Cover,
    /// `⋃_{w ∈ Wₙ} c(w ∧ Vₙ)`.
    pub cover: Cover,
    /// `|W|²`.
    pub bound: usize,
}

/// Builds `W`, then `Wₙ = λ⁻ⁿW ∧ λⁿW`, `Vₙ = Uₙ ∧ Wₙ` and the union of the
/// components of `w ∧ Vₙ` over `w ∈ Wₙ`.
pub fn mane_dimension_certificate(
    aut: &LatticeAutomorphism,
    u: &Cover,
    n: usize,
    max_depth: usize,
) -> Result<DimensionCertificate> {
    let u2 = square(u);
    if !is_expansivity_cover(aut, &u2, max_depth)? {
        return Err(Error::SquareNotExpansivityCover);
    }
    let (witness_depth, w) = mane_witness(aut, &u2, u, max_depth)?;
    let m = n as i64;
    let back = aut.power(-m).apply_cover(&w)?;
    let fwd = aut.power(m).apply_cover(&w)?;
    let wn = meets(back.bits(), fwd.bits());
    let un = iterated_wedge(aut, u, m, Mode::TwoSided)?;
    let vn = meets(un.bits(), &wn);
    let mut pieces = Vec::new();
    for &x in &wn {
        let restricted: Vec<u64> = vn.iter().map(|&v| x & v).collect();
        pieces.extend(components_bits(&restricted));
    }
    let poset = aut.poset();
    let cover = Cover::from_bits(poset, pieces)?;
    Ok(DimensionCertificate {
        bound: w.len() * w.len(),
        w,
        witness_depth,
        n,
        wedge: un,
        cover,
    })
}
