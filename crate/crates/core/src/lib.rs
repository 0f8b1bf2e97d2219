//! Graph and 3-graph Ramsey constructions with exact verification.
//!
//! The crate pairs randomized constructions (auxiliary high-girth graphs,
//! adjacent-triangle 3-graphs, online Ramsey games) with exhaustive solvers
//! that certify every claim small enough to check directly.

pub mod aux_graph;
pub mod bounds;
pub mod census;
mod decimal;
pub mod error;
pub mod game;
pub mod gamma;
pub mod graph;
pub mod limits;
pub mod logval;
pub mod ops;
pub mod pipeline;
pub mod solvers;
pub mod three_graph;
pub mod vertex_set;

pub use error::{Error, Result};
pub use graph::Graph;
pub use limits::SearchLimits;
pub use logval::LogValue;
pub use solvers::Girth;
pub use three_graph::ThreeGraph;
pub use vertex_set::VertexSet;
