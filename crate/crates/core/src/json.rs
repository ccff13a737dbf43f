//! JSON input formats and report helpers.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cover::Cover;
use crate::dynamics::{LatticeAutomorphism, UnitalMorphism};
use crate::error::Result;
use crate::lattice::{Downset, Poset};
use crate::shift::SymbolPoset;

/// `{"points": [...], "leq": [[lower, upper], ...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetSpec {
    pub points: Vec<String>,
    #[serde(default)]
    pub leq: Vec<(String, String)>,
}

impl PosetSpec {
    pub fn build(&self) -> Result<Poset> {
        Poset::new(&self.points, &self.leq)
    }

    /// Points in index order and the covering pairs of the order.
    pub fn from_poset(p: &Poset) -> Self {
        PosetSpec {
            points: p.labels().to_vec(),
            leq: p
                .covering_pairs()
                .into_iter()
                .map(|(a, b)| (p.label(a).to_string(), p.label(b).to_string()))
                .collect(),
        }
    }
}

/// `{"permutation": {"a": "b", ...}}`; unmentioned points are fixed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomorphismSpec {
    pub permutation: BTreeMap<String, String>,
}

impl AutomorphismSpec {
    pub fn build(&self, poset: &Poset) -> Result<LatticeAutomorphism> {
        LatticeAutomorphism::from_label_map(poset, &self.permutation.clone().into_iter().collect())
    }
}

/// `{"map": {"q": "p", ...}}`: the monotone point map whose preimages give
/// the morphism. Also the format of continuous maps between spaces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    pub map: BTreeMap<String, String>,
}

impl MapSpec {
    pub fn build_morphism(&self, poset: &Poset) -> Result<UnitalMorphism> {
        UnitalMorphism::from_label_map(poset, &self.map.clone().into_iter().collect())
    }
}

/// `{"symbols": [...], "leq": [[lower, upper], ...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymbolPosetSpec {
    pub symbols: Vec<String>,
    #[serde(default)]
    pub leq: Vec<(String, String)>,
}

impl SymbolPosetSpec {
    pub fn build(&self) -> Result<SymbolPoset> {
        SymbolPoset::new(&self.symbols, &self.leq)
    }
}

/// A cover as a list of downsets, each a list of point labels.
pub type CoverSpec = Vec<Vec<String>>;

pub fn cover_from_spec(poset: &Poset, spec: &CoverSpec) -> Result<Cover> {
    Cover::from_labels(poset, spec)
}

/// Canonical-sorted serialization of a cover's antichain form.
pub fn canonical_labels(c: &Cover) -> CoverSpec {
    c.canonical().to_labels()
}

pub fn downset_labels(poset: &Poset, d: Downset) -> Vec<String> {
    poset.labels_of(d)
}

/// Rounds to 12 significant digits for reports.
pub fn round12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}
