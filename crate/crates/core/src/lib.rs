//! Finite distributive lattices as lattices of downsets, with the cover
//! calculus, expansivity decisions, covering dimension and entropy for their
//! automorphisms and unital morphisms, exact entropy of shifts over ordered
//! alphabets, and the bridge from finite topological spaces.
//!
//! ```
//! use lattidyn::{cover::finest_cover, dynamics::{is_expansive, LatticeAutomorphism}, Poset};
//!
//! let v = Poset::new(&["a", "b", "c"], &[("c", "a"), ("c", "b")]).unwrap();
//! let swap = LatticeAutomorphism::from_permutation(&v, &[1, 0, 2]).unwrap();
//! let (expansive, witness) = is_expansive(&swap, 64).unwrap();
//! assert!(expansive);
//! assert_eq!(witness.unwrap(), finest_cover(&v));
//! ```

pub mod cover;
pub mod dynamics;
pub mod entropy;
pub mod enumerate;
pub mod error;
pub mod json;
pub mod lattice;
pub mod sample;
pub mod setcover;
pub mod shift;
pub mod topology;

pub use cover::Cover;
pub use error::{Error, Result};
pub use lattice::{Downset, ExplicitLattice, Poset};
