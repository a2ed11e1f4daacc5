//! Finding, certifying, and counting cores and dense configurations in
//! 3-uniform hypergraphs.
//!
//! A core is a nonempty edge subset in which every covered vertex lies
//! in at least two of its edges. The crate provides the data model and
//! file formats ([`hypergraph`], [`io`]), pigeonhole counting and the
//! constructive small-core finders ([`census`]), stripping, exhaustive
//! minimum-core search and the pair-graph cycle method
//! ([`core_search`]), extremal and random generators
//! ([`constructions`]), configuration machinery up to the 14- and
//! 15-vertex assemblies ([`configs`]), and a scan/report harness
//! ([`harness`]).

pub mod census;
pub mod configs;
pub mod constructions;
pub mod core_search;
pub mod error;
pub mod harness;
pub mod hypergraph;
pub mod io;

pub use error::{Error, Result};
pub use hypergraph::{ConfigWitness, CoreCertificate, EdgeId, Hypergraph3};
