//! Finite relation algebras with at most 4 atoms: the census of integral
//! algebras, representations and their verification, amalgamation-based
//! classification, polymorphism search on atom structures, and network
//! satisfaction solvers, all machine-checkable from first principles.

pub mod algebra;
pub mod amalgamation;
pub mod atom_structure;
pub mod catalog;
pub mod hardness;
pub mod io;
pub mod network;
pub mod representation;
pub mod solver;

pub use algebra::{AtomId, Element, Involution, RelationAlgebra};
pub use catalog::{catalog, CatalogEntry, NspComplexity, Representability};
pub use network::{AtomicNetwork, Network};
