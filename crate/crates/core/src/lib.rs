//! Finite proximity lattices, their canonical extensions, and the duality
//! with finite topological spaces.
//!
//! Every structure is finite and small (at most 256 elements), elements are
//! indices, and subsets are [`Bits`] masks. Checks that are stated for all
//! finite subsets are decided exactly on these carriers.

pub mod bits;
pub mod canext;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod lattice;
pub mod morphext;
pub mod proximity;
pub mod relation;
pub mod spectra;

pub use bits::Bits;
pub use error::{Error, Result};
pub use lattice::{FiniteLattice, LatticeMap, Preorder};
pub use proximity::{ProximityLattice, ProximityMorphism};
pub use relation::Relation;
pub use spectra::FiniteSpace;
