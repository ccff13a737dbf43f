use serde::{Deserialize, Serialize};

use super::SelfMap;
use crate::cover::{sort_dedup, wedge_canonical_bits, Cover};
use crate::error::{Error, Result};

pub const DEFAULT_MAX_DEPTH: usize = 64;

/// Which powers of the map enter a wedge window.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// `⋀_{|n|≤N} λⁿU`; needs an invertible map.
    TwoSided,
    /// `⋀_{n=0}^{N} λⁿU`.
    Forward,
}

fn map_bits<M: SelfMap + ?Sized>(map: &M, bits: &[u64]) -> Vec<u64> {
    sort_dedup(bits.iter().map(|&b| map.image_bits(b)).collect())
}

fn inverse_bits<M: SelfMap + ?Sized>(map: &M, bits: &[u64]) -> Result<Vec<u64>> {
    bits.iter()
        .map(|&b| {
            map.inverse_image_bits(b).ok_or_else(|| {
                Error::NotOrderAutomorphism("two-sided wedges need an invertible map".into())
            })
        })
        .collect::<Result<Vec<_>>>()
        .map(sort_dedup)
}

/// Incremental computation of the canonical wedges `A₀, A₁, …`.
struct Stepper<'a, M: SelfMap + ?Sized> {
    map: &'a M,
    mode: Mode,
    /// `λᴺU` and `λ⁻ᴺU` for the current depth.
    pos: Vec<u64>,
    neg: Vec<u64>,
    acc: Vec<u64>,
}

impl<'a, M: SelfMap + ?Sized> Stepper<'a, M> {
    fn new(map: &'a M, u: &Cover, mode: Mode) -> Result<Self> {
        map.check_endomorphism()?;
        if u.poset().tag() != map.poset().tag() {
            return Err(Error::MixedPosets);
        }
        if mode == Mode::TwoSided && map.inverse_image_bits(0).is_none() {
            return Err(Error::NotOrderAutomorphism(
                "two-sided wedges need an invertible map".into(),
            ));
        }
        let base = u.canonical_bits().to_vec();
        Ok(Stepper {
            map,
            mode,
            pos: base.clone(),
            neg: base.clone(),
            acc: base,
        })
    }

    fn step(&mut self) -> Result<()> {
        self.pos = map_bits(self.map, &self.pos);
        self.acc = wedge_canonical_bits(&self.acc, &self.pos);
        if self.mode == Mode::TwoSided {
            self.neg = inverse_bits(self.map, &self.neg)?;
            self.acc = wedge_canonical_bits(&self.acc, &self.neg);
        }
        Ok(())
    }

    fn current(&self) -> Cover {
        Cover::from_bits_unchecked(self.map.poset(), self.acc.clone())
    }
}

/// The wedge over the depth-`depth` window, in canonical form.
pub fn iterated_wedge<M: SelfMap + ?Sized>(
    map: &M,
    u: &Cover,
    depth: i64,
    mode: Mode,
) -> Result<Cover> {
    if depth < 0 {
        return Err(Error::NegativeDepth);
    }
    let mut s = Stepper::new(map, u, mode)?;
    for _ in 0..depth {
        s.step()?;
    }
    Ok(s.current())
}

/// `⋀_{n=lo}^{hi} λⁿU` as a plain set of meets, without canonicalization.
/// Negative exponents need an invertible map.
pub fn wedge_window<M: SelfMap + ?Sized>(map: &M, u: &Cover, lo: i64, hi: i64) -> Result<Cover> {
    map.check_endomorphism()?;
    if u.poset().tag() != map.poset().tag() {
        return Err(Error::MixedPosets);
    }
    if lo > hi {
        return Ok(Cover::from_bits_unchecked(
            map.poset(),
            vec![map.poset().full()],
        ));
    }
    let power_of = |k: i64| -> Result<Vec<u64>> {
        let mut cur = u.bits().to_vec();
        for _ in 0..k.unsigned_abs() {
            cur = if k > 0 {
                map_bits(map, &cur)
            } else {
                inverse_bits(map, &cur)?
            };
        }
        Ok(cur)
    };
    let mut acc = power_of(lo)?;
    for k in lo + 1..=hi {
        let f = power_of(k)?;
        acc = sort_dedup(
            acc.iter()
                .flat_map(|&x| f.iter().map(move |&y| x & y))
                .collect(),
        );
    }
    Ok(Cover::from_bits_unchecked(map.poset(), acc))
}

/// Canonical wedges `A₀, A₁, …` up to the first depth at which they become
/// equivalent, or up to the depth limit.
#[derive(Clone, Debug)]
pub struct WedgeTrajectory {
    pub mode: Mode,
    /// `A₀ ..= A_{N*+1}` when stabilized, otherwise `A₀ ..= A_{N_max}`.
    pub covers: Vec<Cover>,
    /// First `N` with `A_{N+1} ~ A_N`.
    pub stabilized_at: Option<usize>,
}

impl WedgeTrajectory {
    /// The stable class `A_{N*}` if the trajectory stabilized.
    pub fn limit(&self) -> Option<&Cover> {
        self.stabilized_at.map(|n| &self.covers[n])
    }
}

/// Iterates the wedge until `A_{N+1} ~ A_N`.
///
/// Equivalence is a congruence for `λ` and `∧`, so once two consecutive
/// wedges agree every later one agrees too.
pub fn stabilize<M: SelfMap + ?Sized>(
    map: &M,
    u: &Cover,
    mode: Mode,
    max_depth: usize,
) -> Result<WedgeTrajectory> {
    let mut s = Stepper::new(map, u, mode)?;
    let mut covers = vec![s.current()];
    let mut stabilized_at = None;
    for n in 0..max_depth.max(1) {
        s.step()?;
        let next = s.current();
        let same = next.canonical_bits() == covers[n].canonical_bits();
        covers.push(next);
        if same {
            stabilized_at = Some(n);
            break;
        }
    }
    Ok(WedgeTrajectory {
        mode,
        covers,
        stabilized_at,
    })
}
