//! Finite-window constructions around the Ornstein–Weiss factor map of the
//! free group: the map itself and its iterated tower, the kernel group and the
//! affine cocycle it carries, the coinduction machinery that transports all of
//! it to a group containing a free subgroup, and a topological doubling gadget.
//!
//! Every map here acts on finite [`Pattern`]s and reports its output only where
//! that output is fully determined by the input window.

pub mod cli;
pub mod coinduction;
pub mod doubling;
pub mod error;
pub mod free_group;
pub mod gf2;
pub mod ow_tower;
pub mod pattern;
pub mod skew;

pub use error::{Error, Result};
pub use free_group::{ball, FreeGroup, Gen, GroupOracle, Homomorphism, Word};
pub use pattern::{Alphabet, Pattern};
