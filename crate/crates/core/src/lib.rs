//! Exact root-system combinatorics and `L^p` decay bounds for semisimple
//! groups whose relative root system is reduced.
//!
//! Everything is exact: roots are integer vectors in the simple-root basis,
//! characters of the split torus are rational vectors in the same basis, and
//! every decay threshold is a [`Rational`] or the [`Threshold::Infinite`]
//! sentinel.
//!
//! Simple roots are labelled `1..=rank` wherever an index is visible to the
//! caller: Weyl words, Levi index sets, coordinates named in diagnostics and
//! the `eliminate` argument of [`decay::restrict_weight`]. Coefficient
//! vectors themselves are ordinary zero-based slices.

pub mod catalog;
pub mod classify;
pub mod cli;
pub mod decay;
pub mod error;
pub mod parabolic;
pub mod pipeline;
pub mod rational;
pub mod roots;
pub mod subsystem;
pub mod weyl;

pub use catalog::{Catalog, GroupCatalogEntry};
pub use classify::{classify, DynkinType, Family};
pub use decay::{
    combine_subgroup_decay, holder_combine, isolation_check, oscillator_sharp_q, restrict_weight,
    sharp_p_from_exponents, weyl_search, Exponent, OscillatorBound, SubgroupBound, Threshold,
};
pub use error::{Error, Result};
pub use parabolic::{
    heisenberg_radical, heisenberg_tower, modular_weight, radical_to_parabolic, subsystem_delta,
    ParabolicShape, TowerLevel,
};
pub use pipeline::{pipeline, DecayReport};
pub use rational::Rational;
pub use roots::{Root, RootSystem, Weight};
pub use subsystem::Subsystem;
pub use weyl::{enumerate_weyl, WeylElement};
