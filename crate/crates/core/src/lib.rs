//! Mutual-visibility sets of distance-hereditary graphs.
//!
//! A set `X` of vertices is a mutual-visibility set when every two members
//! are joined by a shortest path with no other member of `X` on it. The
//! largest such set of a distance-hereditary graph is computed in linear time
//! from the graph's canonical split decomposition, oriented into arrows
//! ([`directed`]) and analysed by [`mu::mu_set`].

pub mod directed;
pub mod error;
pub mod generators;
pub mod graph;
pub mod mu;
pub mod oracle;
pub mod split;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
