//! Finite abstract simplicial complexes and the contiguity distance between
//! simplicial maps.
//!
//! The crate is organized around a small set of immutable value types
//! ([`SimplicialComplex`], [`Subcomplex`], [`SimplicialMap`]) and the search
//! machinery built on top of them:
//!
//! * [`collapse`] — dominated vertices, strong collapses and cores,
//!   strong-homotopy-type comparison;
//! * [`constructions`] — barycentric subdivision, categorical products,
//!   diagonal and axis inclusions;
//! * [`contiguity`] — one-step contiguity and contiguity-class decision by
//!   breadth-first search over the (finite) space of simplicial maps;
//! * [`distance`] — the contiguity distance `SD(φ, ψ)` computed as an exact
//!   minimum set cover of the domain's facets by "good" facet-generated
//!   subcomplexes, and the derived invariants `scat`, `tc` and `scat_map`;
//! * [`oracle`] — independent brute-force reimplementations used to
//!   cross-check the engine;
//! * [`verify`] — a property suite that mechanically checks the theorems the
//!   distance obeys, over bundled fixtures and randomly generated complexes.

pub mod collapse;
pub mod complex;
pub mod config;
pub mod constructions;
pub mod contiguity;
pub mod corpus;
pub mod distance;
pub mod error;
pub mod io;
pub mod iso;
pub mod maps;
pub mod oracle;
pub mod verify;

pub use complex::{Simplex, SimplicialComplex, Subcomplex, VertexId};
pub use config::EngineConfig;
pub use error::Error;
pub use maps::SimplicialMap;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
