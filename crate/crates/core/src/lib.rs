//! Matroids as cyclic-flat presentations.
//!
//! The crate stores a matroid as its lattice of cyclic flats with their ranks
//! and builds everything else on top: rank and closure oracles, standard
//! constructions, the amalgam-of-coextensions intertwine construction and its
//! variants, and exhaustive checkers for minors, transversality and
//! connectivity at small sizes.

pub mod axioms;
pub mod constructions;
pub mod document;
pub mod element_set;
pub mod error;
pub mod fixtures;
pub mod intertwine;
pub mod iso;
pub mod lattice;
pub mod matroid;
pub mod verification;

pub use axioms::validate_presentation;
pub use element_set::ElementSet;
pub use error::{AxiomViolation, MatroidError, Result};
pub use matroid::{recompute_cyclic_flats, Matroid, MinorOracle, RankOracle, RankTable, RankedFlat};
