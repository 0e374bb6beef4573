//! Betti tables of squarefree monomial ideals attached to hypergraphs.

mod error;
pub mod betti;
pub mod check;
pub mod format;
pub mod generators;
pub mod hypergraph;
pub mod metric;
pub mod ideal;
pub mod mis;
pub mod oracle;
pub mod structure;

pub use error::{Error, Result};
pub use hypergraph::{Hypergraph, Uniformity, VertexSet};

// the guide's snippets run as doctests
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/introduction.md")]
mod book_introduction {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/hypergraphs.md")]
mod book_hypergraphs {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/distance.md")]
mod book_distance {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/splitting.md")]
mod book_splitting {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/triangulated.md")]
mod book_triangulated {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/oracle.md")]
mod book_oracle {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/recursion.md")]
mod book_recursion {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/invariants.md")]
mod book_invariants {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
mod book_cli {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/json-schema.md")]
mod book_json_schema {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/checking.md")]
mod book_checking {}
