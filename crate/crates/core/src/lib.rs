//! Exact genus-zero Gromov-Witten computations on small testbed spaces.
//!
//! Every value is a [`Rational`]. The crate is layered bottom-up:
//! [`ring`] models cohomology, [`quantum`] evaluates absolute invariants,
//! [`partitions`] orders relative keys, [`relative`] holds the closed forms
//! for `P^1`-bundles, and [`degeneration`] ties them together through the
//! comparison identity between absolute and relative invariants.

pub mod degeneration;
pub mod error;
pub mod partitions;
pub mod quantum;
pub mod rational;
pub mod relative;
pub mod ring;

pub use degeneration::{CutSpec, RelativeSource};
pub use error::{GwError, Result};
pub use partitions::{InvariantKey, WeightedPair, WeightedPartition};
pub use quantum::{gw_invariant, virtual_dimension, CurveClass, InvariantQuery, QuantumClass};
pub use rational::Rational;
pub use relative::{BundleClass, BundleSpec, NormalBound, RelInsertion, RelQuery};
pub use ring::{BasisClass, DivisorDescriptor, RingElement, Space, SpaceKind};
