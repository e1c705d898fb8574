//! Enumeration, canonicalization and counting of the combinatorial
//! structures that classify minimal separating sets on closed orientable
//! surfaces.
//!
//! Ribbon graphs that are minimal separating in genus `g` (and in no lower
//! genus) are found as hypermaps dual to them, one per isomorphism class.
//! Their underlying graphs are then reduced to homeomorphism classes, from
//! which the counts of connected, all, and cumulative graph classes follow.

pub mod character;
pub mod class;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod io;
pub mod map;
pub mod oracle;
pub mod partition;
pub mod perm;
pub mod rules;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{GenusTable, MultiGraph};
pub use map::{CombinatorialMap, Hypermap};
pub use partition::Partition;
pub use perm::Permutation;
pub use rules::TypeTriple;
