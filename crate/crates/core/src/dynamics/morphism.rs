use std::collections::HashMap;

use crate::cover::Cover;
use crate::error::{Error, Result};
use crate::lattice::{bits_iter, Downset, Poset};

/// A lattice map `L(P) -> L(P)` that wedge trajectories can iterate.
pub trait SelfMap {
    fn poset(&self) -> &Poset;

    /// Action on a downset mask.
    fn image_bits(&self, bits: u64) -> u64;

    /// Action of the inverse map, when the map is invertible.
    fn inverse_image_bits(&self, _bits: u64) -> Option<u64> {
        None
    }

    fn check_endomorphism(&self) -> Result<()> {
        Ok(())
    }
}

fn permute(map: &[usize], bits: u64) -> u64 {
    bits_iter(bits).fold(0, |acc, p| acc | 1 << map[p])
}

fn check_order_bijection(source: &Poset, target: &Poset, map: &[usize]) -> Result<()> {
    let n = source.len();
    if map.len() != n || target.len() != n {
        return Err(Error::NotOrderAutomorphism(format!(
            "map has {} entries for {} -> {} points",
            map.len(),
            n,
            target.len()
        )));
    }
    let mut hit = vec![false; n];
    for &y in map {
        if y >= n || std::mem::replace(&mut hit[y], true) {
            return Err(Error::NotOrderAutomorphism("not a bijection".into()));
        }
    }
    for p in 0..n {
        for q in 0..n {
            if source.leq(p, q) != target.leq(map[p], map[q]) {
                let what = if source.leq(p, q) {
                    "monotone"
                } else {
                    "order reflecting"
                };
                return Err(Error::NotOrderAutomorphism(format!(
                    "{} -> {}, {} -> {} is not {what}",
                    source.label(p),
                    target.label(map[p]),
                    source.label(q),
                    target.label(map[q]),
                )));
            }
        }
    }
    Ok(())
}

fn invert(map: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; map.len()];
    for (p, &q) in map.iter().enumerate() {
        inv[q] = p;
    }
    inv
}

/// Point map given as label pairs; unmentioned source points are mapped to
/// themselves when `default_identity` is set.
fn resolve_label_map(
    source: &Poset,
    target: &Poset,
    pairs: &HashMap<String, String>,
    default_identity: bool,
) -> Result<Vec<usize>> {
    for k in pairs.keys() {
        source.index_of(k)?;
    }
    (0..source.len())
        .map(|p| match pairs.get(source.label(p)) {
            Some(t) => target.index_of(t),
            None if default_identity => target.index_of(source.label(p)),
            None => Err(Error::UnknownLabel(format!(
                "no image for `{}`",
                source.label(p)
            ))),
        })
        .collect()
}

/// Lattice automorphism `λ(D) = π(D)` induced by an order automorphism `π`
/// of the dual poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeAutomorphism {
    poset: Poset,
    forward: Vec<usize>,
    inverse: Vec<usize>,
}

impl LatticeAutomorphism {
    pub fn identity(poset: &Poset) -> Self {
        let id: Vec<usize> = (0..poset.len()).collect();
        LatticeAutomorphism {
            poset: poset.clone(),
            forward: id.clone(),
            inverse: id,
        }
    }

    /// Rejects maps that are not bijective, monotone and order reflecting.
    pub fn from_permutation(poset: &Poset, map: &[usize]) -> Result<Self> {
        check_order_bijection(poset, poset, map)?;
        Ok(LatticeAutomorphism {
            poset: poset.clone(),
            forward: map.to_vec(),
            inverse: invert(map),
        })
    }

    /// Permutation by labels; unmentioned points are fixed.
    pub fn from_label_map(poset: &Poset, pairs: &HashMap<String, String>) -> Result<Self> {
        let map = resolve_label_map(poset, poset, pairs, true)?;
        Self::from_permutation(poset, &map)
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn permutation(&self) -> &[usize] {
        &self.forward
    }

    pub fn inverse(&self) -> Self {
        LatticeAutomorphism {
            poset: self.poset.clone(),
            forward: self.inverse.clone(),
            inverse: self.forward.clone(),
        }
    }

    /// `λ ∘ other`.
    pub fn compose(&self, other: &LatticeAutomorphism) -> Result<Self> {
        if self.poset.tag() != other.poset.tag() {
            return Err(Error::MixedPosets);
        }
        let forward: Vec<usize> = other.forward.iter().map(|&p| self.forward[p]).collect();
        Ok(LatticeAutomorphism {
            poset: self.poset.clone(),
            inverse: invert(&forward),
            forward,
        })
    }

    /// `λ^m` for any integer `m`; `λ^0` is the identity.
    pub fn power(&self, m: i64) -> Self {
        let mut base = if m < 0 { self.inverse() } else { self.clone() };
        let mut e = m.unsigned_abs();
        let mut acc = LatticeAutomorphism::identity(&self.poset);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base).expect("same poset");
            }
            base = base.compose(&base).expect("same poset");
            e >>= 1;
        }
        acc
    }

    /// `φ λ φ⁻¹`, an automorphism of the target of `φ`.
    pub fn conjugate(&self, phi: &LatticeIsomorphism) -> Result<Self> {
        if phi.source.tag() != self.poset.tag() {
            return Err(Error::MixedPosets);
        }
        let n = self.poset.len();
        let inv = invert(&phi.map);
        let forward: Vec<usize> = (0..n).map(|y| phi.map[self.forward[inv[y]]]).collect();
        Ok(LatticeAutomorphism {
            poset: phi.target.clone(),
            inverse: invert(&forward),
            forward,
        })
    }

    pub fn apply(&self, d: Downset) -> Result<Downset> {
        self.poset.check(d)?;
        Ok(self.poset.wrap(permute(&self.forward, d.bits())))
    }

    pub fn apply_cover(&self, u: &Cover) -> Result<Cover> {
        if u.poset().tag() != self.poset.tag() {
            return Err(Error::MixedPosets);
        }
        let bits = u
            .bits()
            .iter()
            .map(|&b| permute(&self.forward, b))
            .collect();
        Ok(Cover::from_bits_unchecked(&self.poset, bits))
    }

    /// The same map viewed as a unital morphism `D ↦ g⁻¹(D)` with `g = π⁻¹`.
    pub fn to_unital(&self) -> UnitalMorphism {
        UnitalMorphism {
            source: self.poset.clone(),
            target: self.poset.clone(),
            g: self.inverse.clone(),
        }
    }

    /// Number of iterations after which `λ` returns to the identity.
    pub fn period(&self) -> u64 {
        let mut seen = vec![false; self.forward.len()];
        let mut lcm = 1u64;
        for start in 0..self.forward.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.forward[p];
                len += 1;
            }
            lcm = lcm / gcd(lcm, len) * len;
        }
        lcm
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl SelfMap for LatticeAutomorphism {
    fn poset(&self) -> &Poset {
        &self.poset
    }

    fn image_bits(&self, bits: u64) -> u64 {
        permute(&self.forward, bits)
    }

    fn inverse_image_bits(&self, bits: u64) -> Option<u64> {
        Some(permute(&self.inverse, bits))
    }
}

/// Lattice isomorphism `L(P) -> L(Q)` induced by an order isomorphism
/// `P -> Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeIsomorphism {
    source: Poset,
    target: Poset,
    map: Vec<usize>,
}

impl LatticeIsomorphism {
    pub fn new(source: &Poset, target: &Poset, map: &[usize]) -> Result<Self> {
        check_order_bijection(source, target, map)?;
        Ok(LatticeIsomorphism {
            source: source.clone(),
            target: target.clone(),
            map: map.to_vec(),
        })
    }

    pub fn source(&self) -> &Poset {
        &self.source
    }

    pub fn target(&self) -> &Poset {
        &self.target
    }

    pub fn apply(&self, d: Downset) -> Result<Downset> {
        self.source.check(d)?;
        Ok(self.target.wrap(permute(&self.map, d.bits())))
    }

    pub fn apply_cover(&self, u: &Cover) -> Result<Cover> {
        if u.poset().tag() != self.source.tag() {
            return Err(Error::MixedPosets);
        }
        let bits = u.bits().iter().map(|&b| permute(&self.map, b)).collect();
        Ok(Cover::from_bits_unchecked(&self.target, bits))
    }
}

/// Unital lattice morphism `L(P) -> L(Q)` of preimage type: `λ(D) = g⁻¹(D)`
/// for a monotone point map `g: Q -> P`.
///
/// Preimages under a monotone map preserve unions, intersections, `∅` and
/// the full set, so every such `λ` is a unital morphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitalMorphism {
    source: Poset,
    target: Poset,
    g: Vec<usize>,
}

impl UnitalMorphism {
    pub fn identity(poset: &Poset) -> Self {
        UnitalMorphism {
            source: poset.clone(),
            target: poset.clone(),
            g: (0..poset.len()).collect(),
        }
    }

    /// `g[q]` is the point of `source` that target point `q` maps to.
    pub fn new(source: &Poset, target: &Poset, g: &[usize]) -> Result<Self> {
        if g.len() != target.len() || g.iter().any(|&p| p >= source.len()) {
            return Err(Error::NotMonotone("point map has the wrong shape".into()));
        }
        for (q, q2) in target.strict_pairs() {
            if !source.leq(g[q], g[q2]) {
                return Err(Error::NotMonotone(format!(
                    "{} <= {} but {} !<= {}",
                    target.label(q),
                    target.label(q2),
                    source.label(g[q]),
                    source.label(g[q2])
                )));
            }
        }
        Ok(UnitalMorphism {
            source: source.clone(),
            target: target.clone(),
            g: g.to_vec(),
        })
    }

    /// Endomorphism of `L(P)` from a label map `q -> g(q)`.
    pub fn from_label_map(poset: &Poset, pairs: &HashMap<String, String>) -> Result<Self> {
        let g = resolve_label_map(poset, poset, pairs, false)?;
        Self::new(poset, poset, &g)
    }

    /// Recovers the dual point map of a unital morphism from its values on
    /// the join-irreducibles: `images[p] = λ(↓p)`.
    ///
    /// For each target point `q` the set `{p : q ∈ λ(↓p)}` must have a least
    /// element, which becomes `g(q)`; the resulting preimage map is then
    /// checked to reproduce every given image.
    pub fn from_principal_images(
        source: &Poset,
        target: &Poset,
        images: &[Downset],
    ) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::NotUnitalMorphism(
                "one image per source point is required".into(),
            ));
        }
        for &d in images {
            target.check(d)?;
        }
        let mut g = Vec::with_capacity(target.len());
        for q in 0..target.len() {
            let hits: Vec<usize> = (0..source.len())
                .filter(|&p| images[p].contains_point(q))
                .collect();
            let least = hits
                .iter()
                .copied()
                .find(|&p| hits.iter().all(|&o| source.leq(p, o)))
                .ok_or_else(|| {
                    Error::NotUnitalMorphism(format!(
                        "no least join-irreducible reaches `{}`",
                        target.label(q)
                    ))
                })?;
            g.push(least);
        }
        let m = Self::new(source, target, &g)?;
        for p in 0..source.len() {
            if m.image_of(source.down_mask(p)) != images[p].bits() {
                return Err(Error::NotUnitalMorphism(format!(
                    "image of ↓{} is not a preimage",
                    source.label(p)
                )));
            }
        }
        Ok(m)
    }

    pub fn source(&self) -> &Poset {
        &self.source
    }

    pub fn target(&self) -> &Poset {
        &self.target
    }

    pub fn point_map(&self) -> &[usize] {
        &self.g
    }

    pub fn is_endomorphism(&self) -> bool {
        self.source.tag() == self.target.tag()
    }

    fn image_of(&self, bits: u64) -> u64 {
        self.g
            .iter()
            .enumerate()
            .filter(|&(_, &p)| bits >> p & 1 == 1)
            .fold(0, |acc, (q, _)| acc | 1 << q)
    }

    pub fn apply(&self, d: Downset) -> Result<Downset> {
        self.source.check(d)?;
        Ok(self.target.wrap(self.image_of(d.bits())))
    }

    pub fn apply_cover(&self, u: &Cover) -> Result<Cover> {
        if u.poset().tag() != self.source.tag() {
            return Err(Error::MixedPosets);
        }
        let bits = u.bits().iter().map(|&b| self.image_of(b)).collect();
        Ok(Cover::from_bits_unchecked(&self.target, bits))
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &UnitalMorphism) -> Result<Self> {
        if first.target.tag() != self.source.tag() {
            return Err(Error::MixedPosets);
        }
        // (first ∘ ...) : λ_self(λ_first(D)) = g_self⁻¹(g_first⁻¹(D)) = (g_first ∘ g_self)⁻¹(D)
        let g = self.g.iter().map(|&p| first.g[p]).collect();
        Ok(UnitalMorphism {
            source: first.source.clone(),
            target: self.target.clone(),
            g,
        })
    }

    /// The automorphism this morphism is, if `g` is an order automorphism.
    pub fn to_automorphism(&self) -> Result<LatticeAutomorphism> {
        if !self.is_endomorphism() {
            return Err(Error::NotEndomorphism);
        }
        LatticeAutomorphism::from_permutation(&self.source, &invert_checked(&self.g)?)
    }
}

fn invert_checked(map: &[usize]) -> Result<Vec<usize>> {
    let mut inv = vec![usize::MAX; map.len()];
    for (p, &q) in map.iter().enumerate() {
        if q >= map.len() || inv[q] != usize::MAX {
            return Err(Error::NotOrderAutomorphism("not a bijection".into()));
        }
        inv[q] = p;
    }
    Ok(inv)
}

impl SelfMap for UnitalMorphism {
    fn poset(&self) -> &Poset {
        &self.source
    }

    fn image_bits(&self, bits: u64) -> u64 {
        self.image_of(bits)
    }

    fn check_endomorphism(&self) -> Result<()> {
        if self.is_endomorphism() {
            Ok(())
        } else {
            Err(Error::NotEndomorphism)
        }
    }
}
