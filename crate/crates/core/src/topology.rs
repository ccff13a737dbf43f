//! Finite topological spaces, their lattices of open sets, and the lattice
//! maps induced by continuous maps (`λ_f U = f⁻¹U`).

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::dynamics::{LatticeAutomorphism, UnitalMorphism};
use crate::error::{Error, Result};
use crate::lattice::{bits_iter, from_explicit, Downset, ExplicitLattice, Poset, MAX_POINTS};

/// A finite set with a family of open subsets, stored as point masks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSpace {
    points: Vec<String>,
    index: HashMap<String, usize>,
    /// Sorted, deduplicated.
    opens: Vec<u64>,
    t0: bool,
    t1: bool,
}

/// JSON form of a space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceSpec {
    pub points: Vec<String>,
    pub opens: Vec<Vec<String>>,
}

fn all_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl FiniteSpace {
    pub fn new<S: AsRef<str>>(points: &[S], opens: &[Vec<S>]) -> Result<Self> {
        if points.len() > MAX_POINTS {
            return Err(Error::TooManyPoints {
                points: points.len(),
                limit: MAX_POINTS,
            });
        }
        let mut index = HashMap::new();
        for (i, p) in points.iter().enumerate() {
            if index.insert(p.as_ref().to_string(), i).is_some() {
                return Err(Error::DuplicateLabel(p.as_ref().to_string()));
            }
        }
        let mut masks = Vec::with_capacity(opens.len());
        for o in opens {
            let mut m = 0u64;
            for p in o {
                let i = *index
                    .get(p.as_ref())
                    .ok_or_else(|| Error::UnknownLabel(p.as_ref().to_string()))?;
                m |= 1 << i;
            }
            masks.push(m);
        }
        let labels = points.iter().map(|p| p.as_ref().to_string()).collect();
        Self::from_masks(labels, masks)
    }

    pub fn from_spec(spec: &SpaceSpec) -> Result<Self> {
        Self::new(&spec.points, &spec.opens)
    }

    pub(crate) fn from_masks(points: Vec<String>, mut opens: Vec<u64>) -> Result<Self> {
        let n = points.len();
        opens.sort_unstable();
        opens.dedup();
        let index = points
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let mut space = FiniteSpace {
            points,
            index,
            opens,
            t0: false,
            t1: false,
        };
        let full = all_mask(n);
        if !space.is_open(0) {
            return Err(Error::NotATopology("the empty set is not open".into()));
        }
        if !space.is_open(full) {
            return Err(Error::NotATopology("the whole space is not open".into()));
        }
        for (i, &a) in space.opens.iter().enumerate() {
            for &b in &space.opens[i + 1..] {
                for (what, m) in [("union", a | b), ("intersection", a & b)] {
                    if !space.is_open(m) {
                        return Err(Error::NotATopology(format!(
                            "{what} of {} and {} is missing",
                            space.format_set(a),
                            space.format_set(b)
                        )));
                    }
                }
            }
        }
        let separated = |p: usize, q: usize| {
            space
                .opens
                .iter()
                .any(|&o| o >> p & 1 == 1 && o >> q & 1 == 0)
        };
        space.t0 = (0..n).all(|p| (p + 1..n).all(|q| separated(p, q) || separated(q, p)));
        space.t1 = (0..n).all(|p| (0..n).all(|q| p == q || separated(p, q)));
        Ok(space)
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn opens(&self) -> &[u64] {
        &self.opens
    }

    pub fn is_open(&self, mask: u64) -> bool {
        self.opens.binary_search(&mask).is_ok()
    }

    pub fn is_t0(&self) -> bool {
        self.t0
    }

    pub fn is_t1(&self) -> bool {
        self.t1
    }

    pub fn full(&self) -> u64 {
        all_mask(self.points.len())
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Sorted labels of a point set.
    pub fn labels_of(&self, mask: u64) -> Vec<String> {
        let mut v: Vec<String> = bits_iter(mask).map(|p| self.points[p].clone()).collect();
        v.sort();
        v
    }

    fn format_set(&self, mask: u64) -> String {
        format!("{{{}}}", self.labels_of(mask).join(","))
    }

    /// Smallest open set containing `p`.
    pub fn neighborhood(&self, p: usize) -> u64 {
        self.opens
            .iter()
            .filter(|&&o| o >> p & 1 == 1)
            .fold(self.full(), |acc, &o| acc & o)
    }

    /// Notes about the input that do not make it invalid.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.t0 {
            let n = self.len();
            for p in 0..n {
                for q in p + 1..n {
                    if self.neighborhood(p) == self.neighborhood(q) {
                        out.push(format!(
                            "points {} and {} have the same open neighborhoods and are identified in the open lattice",
                            self.points[p], self.points[q]
                        ));
                    }
                }
            }
        }
        out
    }

    pub fn to_spec(&self) -> SpaceSpec {
        SpaceSpec {
            points: self.points.clone(),
            opens: self.opens.iter().map(|&o| self.labels_of(o)).collect(),
        }
    }
}

/// The lattice of open sets in its downset representation.
#[derive(Clone, Debug)]
pub struct OpenLattice {
    pub poset: Poset,
    /// `elements[i]` represents `space.opens()[i]`.
    pub elements: Vec<Downset>,
    opens: Vec<u64>,
}

impl OpenLattice {
    pub fn downset_of(&self, open: u64) -> Option<Downset> {
        self.opens
            .binary_search(&open)
            .ok()
            .map(|i| self.elements[i])
    }

    pub fn open_of(&self, d: Downset) -> Option<u64> {
        self.elements
            .iter()
            .position(|&e| e == d)
            .map(|i| self.opens[i])
    }
}

/// Open sets ordered by inclusion, converted through the lattice tables.
///
/// The join-irreducible opens are the minimal neighborhoods; each is named
/// after the points it is the minimal neighborhood of, so for a `T0` space
/// the dual poset is the space's own points.
pub fn open_lattice(space: &FiniteSpace) -> Result<OpenLattice> {
    let opens = space.opens.clone();
    let k = opens.len();
    let names: Vec<String> = opens
        .iter()
        .map(|&o| {
            let owners: Vec<String> = (0..space.len())
                .filter(|&p| o != 0 && space.neighborhood(p) == o)
                .map(|p| space.points[p].clone())
                .collect();
            if owners.is_empty() {
                space.format_set(o)
            } else {
                owners.join("=")
            }
        })
        .collect();
    let pos = |m: u64| {
        opens
            .binary_search(&m)
            .expect("closed under union and intersection")
    };
    let join = (0..k)
        .map(|i| (0..k).map(|j| pos(opens[i] | opens[j])).collect())
        .collect();
    let meet = (0..k)
        .map(|i| (0..k).map(|j| pos(opens[i] & opens[j])).collect())
        .collect();
    let table = ExplicitLattice {
        names,
        join,
        meet,
        zero: pos(0),
        one: pos(space.full()),
    };
    let (poset, elements) = from_explicit(&table)?;
    Ok(OpenLattice {
        poset,
        elements,
        opens,
    })
}

/// A map between finite spaces whose preimages of opens are open.
#[derive(Clone, Debug)]
pub struct ContinuousMap {
    source: FiniteSpace,
    target: FiniteSpace,
    map: Vec<usize>,
}

impl ContinuousMap {
    pub fn new(source: &FiniteSpace, target: &FiniteSpace, map: &[usize]) -> Result<Self> {
        if map.len() != source.len() || map.iter().any(|&y| y >= target.len()) {
            return Err(Error::UnknownLabel(
                "map does not send every point into the target".into(),
            ));
        }
        let f = ContinuousMap {
            source: source.clone(),
            target: target.clone(),
            map: map.to_vec(),
        };
        for &o in &target.opens {
            if !source.is_open(f.preimage(o)) {
                return Err(Error::NotContinuous(target.labels_of(o)));
            }
        }
        Ok(f)
    }

    /// Map given by labels; every source point needs an image.
    pub fn from_label_map(
        source: &FiniteSpace,
        target: &FiniteSpace,
        pairs: &HashMap<String, String>,
    ) -> Result<Self> {
        for k in pairs.keys() {
            source.index_of(k)?;
        }
        let map = source
            .points
            .iter()
            .map(|p| {
                let t = pairs
                    .get(p)
                    .ok_or_else(|| Error::UnknownLabel(format!("no image for `{p}`")))?;
                target.index_of(t)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, target, &map)
    }

    pub fn identity(space: &FiniteSpace) -> Self {
        ContinuousMap {
            source: space.clone(),
            target: space.clone(),
            map: (0..space.len()).collect(),
        }
    }

    pub fn source(&self) -> &FiniteSpace {
        &self.source
    }

    pub fn target(&self) -> &FiniteSpace {
        &self.target
    }

    pub fn point_map(&self) -> &[usize] {
        &self.map
    }

    pub fn preimage(&self, mask: u64) -> u64 {
        self.map
            .iter()
            .enumerate()
            .filter(|&(_, &y)| mask >> y & 1 == 1)
            .fold(0, |acc, (x, _)| acc | 1 << x)
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &ContinuousMap) -> Result<Self> {
        if g.source != self.target {
            return Err(Error::MixedPosets);
        }
        let map: Vec<usize> = self.map.iter().map(|&y| g.map[y]).collect();
        Ok(ContinuousMap {
            source: self.source.clone(),
            target: g.target.clone(),
            map,
        })
    }
}

/// `λ_f = f⁻¹`, a unital morphism from the open lattice of the target to the
/// open lattice of the source.
pub fn induced_morphism(f: &ContinuousMap) -> Result<UnitalMorphism> {
    let lx = open_lattice(&f.source)?;
    let ly = open_lattice(&f.target)?;
    let images = (0..ly.poset.len())
        .map(|q| {
            let open = ly
                .open_of(ly.poset.principal(q))
                .expect("element of the lattice");
            Ok(lx.downset_of(f.preimage(open)).expect("continuous"))
        })
        .collect::<Result<Vec<_>>>()?;
    UnitalMorphism::from_principal_images(&ly.poset, &lx.poset, &images)
}

/// `λ_f` for a homeomorphism of a space onto itself.
pub fn induced_automorphism(f: &ContinuousMap) -> Result<LatticeAutomorphism> {
    if f.source != f.target {
        return Err(Error::NotHomeomorphism("source and target differ".into()));
    }
    let n = f.source.len();
    let mut inv = vec![usize::MAX; n];
    for (x, &y) in f.map.iter().enumerate() {
        if inv[y] != usize::MAX {
            return Err(Error::NotHomeomorphism("map is not injective".into()));
        }
        inv[y] = x;
    }
    if let Some(&o) = f
        .source
        .opens
        .iter()
        .find(|&&o| !f.source.is_open(image(&f.map, o)))
    {
        return Err(Error::NotHomeomorphism(format!(
            "image of the open set {} is not open",
            f.source.format_set(o)
        )));
    }
    induced_morphism(f)?.to_automorphism()
}

fn image(map: &[usize], mask: u64) -> u64 {
    bits_iter(mask).fold(0, |acc, x| acc | 1 << map[x])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::proper_maximal_elements;
    use crate::dynamics::is_expansive;
    use crate::enumerate::all_topologies;

    fn discrete2() -> FiniteSpace {
        FiniteSpace::new(&["a", "b"], &[vec![], vec!["a"], vec!["b"], vec!["a", "b"]]).unwrap()
    }

    fn sierpinski() -> FiniteSpace {
        FiniteSpace::new(&["a", "b"], &[vec![], vec!["a"], vec!["a", "b"]]).unwrap()
    }

    #[test]
    fn validation() {
        let d = discrete2();
        assert!(d.is_t0() && d.is_t1());
        let s = sierpinski();
        assert!(s.is_t0() && !s.is_t1());
        assert!(matches!(
            FiniteSpace::new(&["a", "b"], &[vec![], vec!["a"], vec!["b"]]),
            Err(Error::NotATopology(_))
        ));
        let indiscrete = FiniteSpace::new(&["a", "b"], &[vec![], vec!["a", "b"]]).unwrap();
        assert!(!indiscrete.is_t0());
        assert_eq!(indiscrete.warnings().len(), 1);
    }

    #[test]
    fn open_lattices() {
        let l = open_lattice(&discrete2()).unwrap();
        assert_eq!(l.poset.len(), 2);
        assert_eq!(l.poset.strict_pairs().count(), 0);

        let l = open_lattice(&sierpinski()).unwrap();
        assert_eq!(l.poset.len(), 2);
        assert!(l.poset.leq(
            l.poset.index_of("a").unwrap(),
            l.poset.index_of("b").unwrap()
        ));

        let v = FiniteSpace::new(
            &["a", "b", "c"],
            &[
                vec![],
                vec!["c"],
                vec!["a", "c"],
                vec!["b", "c"],
                vec!["a", "b", "c"],
            ],
        )
        .unwrap();
        let l = open_lattice(&v).unwrap();
        let expected = Poset::new(&["a", "b", "c"], &[("c", "a"), ("c", "b")]).unwrap();
        let mut got: Vec<(String, String)> = l
            .poset
            .strict_pairs()
            .map(|(p, q)| (l.poset.label(p).to_string(), l.poset.label(q).to_string()))
            .collect();
        got.sort();
        let mut want: Vec<(String, String)> = expected
            .strict_pairs()
            .map(|(p, q)| (expected.label(p).to_string(), expected.label(q).to_string()))
            .collect();
        want.sort();
        assert_eq!(got, want);
        for (i, &o) in v.opens().iter().enumerate() {
            assert_eq!(l.elements[i].len(), o.count_ones() as usize);
        }

        let empty = FiniteSpace::new::<&str>(&[], &[vec![]]).unwrap();
        assert_eq!(open_lattice(&empty).unwrap_err(), Error::ZeroEqualsOne);
    }

    #[test]
    fn induced_maps() {
        let s = sierpinski();
        let id = induced_morphism(&ContinuousMap::identity(&s)).unwrap();
        let l = open_lattice(&s).unwrap();
        assert_eq!(id, UnitalMorphism::identity(&l.poset));

        // Constant map onto the dense point `a`: every nonempty open pulls
        // back to the whole space.
        let c = ContinuousMap::new(&s, &s, &[0, 0]).unwrap();
        let m = induced_morphism(&c).unwrap();
        for (i, &o) in s.opens().iter().enumerate() {
            let img = m.apply(l.elements[i]).unwrap();
            assert_eq!(
                img,
                if o == 0 {
                    l.poset.zero()
                } else {
                    l.poset.one()
                }
            );
        }

        assert_eq!(
            ContinuousMap::new(&s, &s, &[1, 0]).unwrap_err(),
            Error::NotContinuous(vec!["a".into()])
        );
    }

    #[test]
    fn homeomorphisms() {
        let s = sierpinski();
        let id = induced_automorphism(&ContinuousMap::identity(&s)).unwrap();
        assert!(is_expansive(&id, 8).unwrap().0);

        let d = discrete2();
        let swap = induced_automorphism(&ContinuousMap::new(&d, &d, &[1, 0]).unwrap()).unwrap();
        let l = open_lattice(&d).unwrap();
        assert_eq!(
            swap.apply(l.poset.principal(0)).unwrap(),
            l.poset.principal(1)
        );
        assert!(is_expansive(&swap, 8).unwrap().0);

        // The identity of points from the discrete space onto the Sierpiński
        // space is a continuous bijection whose inverse is not continuous.
        let f = ContinuousMap::new(&d, &s, &[0, 1]).unwrap();
        assert!(matches!(
            induced_automorphism(&f),
            Err(Error::NotHomeomorphism(_))
        ));
        let collapse = ContinuousMap::new(&d, &d, &[0, 0]).unwrap();
        assert!(matches!(
            induced_automorphism(&collapse),
            Err(Error::NotHomeomorphism(_))
        ));
    }

    #[test]
    fn t1_proper_maximal_opens_are_point_complements() {
        for n in 1..=4 {
            for space in all_topologies(n).into_iter().filter(|s| s.is_t1()) {
                let l = open_lattice(&space).unwrap();
                let mut got: Vec<u64> = proper_maximal_elements(&l.poset)
                    .into_iter()
                    .map(|d| l.open_of(d).unwrap())
                    .collect();
                got.sort();
                let mut want: Vec<u64> = (0..n).map(|p| space.full() & !(1 << p)).collect();
                want.sort();
                assert_eq!(got, want);
            }
        }
    }
}
