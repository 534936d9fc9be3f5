//! Cartesian products of hypergraphs and their prime factorization.
//!
//! The crate covers the whole pipeline around the Cartesian product of
//! finite simple hypergraphs:
//!
//! * [`hypergraph`]: the data model, the `.hg` text format and its canonical
//!   JSON form.
//! * [`sections`]: 2-sections, labelled 2-sections, subsections, maximal
//!   cliques and conformality.
//! * [`product`]: products of hypergraphs, graphs and labelled sections.
//! * [`graphfactor`]: prime factorization of connected graphs.
//! * [`hyperfactor`]: prime factorization of connected conformal hypergraphs
//!   through their labelled 2-section.
//! * [`coloring`]: exact weak and strong chromatic numbers, chromatic index,
//!   and coloring a product from colorings of its factors.
//! * [`iso`]: isomorphism tests and the random generators used by the tests.
//! * [`cli`]: the command-line front end.

pub mod cli;
pub mod coloring;
pub mod graphfactor;
pub mod hyperfactor;
pub mod hypergraph;
pub mod iso;
mod limits;
pub mod product;
pub mod sections;
mod vertex;

pub use hypergraph::{parse_hypergraph, Graph, Hyperedge, Hypergraph, HypergraphError, InputKind, Stats};
pub use limits::Limits;
pub use product::TupleVertex;
pub use vertex::{VertexError, VertexId};
