//! Automorphisms and unital morphisms of `L(P)`, wedge trajectories and the
//! decision procedures built on them.

mod dimension;
mod expansive;
mod mane;
mod morphism;
mod trajectory;
mod utz;

pub use dimension::{dimension, dimension_witness, DEFAULT_SEARCH_CAP};
pub use expansive::{
    is_expansive, is_expansivity_cover, is_positive_expansivity_cover, is_positively_expansive,
};
pub use mane::{mane_check, mane_dimension_certificate, mane_witness, DimensionCertificate};
pub use morphism::{LatticeAutomorphism, LatticeIsomorphism, SelfMap, UnitalMorphism};
pub use trajectory::{
    iterated_wedge, stabilize, wedge_window, Mode, WedgeTrajectory, DEFAULT_MAX_DEPTH,
};
pub use utz::{utz_bound, utz_generator, utz_return_time};
