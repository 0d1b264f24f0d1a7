//! Exact computations on Kneser hypergraphs.

pub mod bounds;
pub mod budget;
pub mod coloring;
pub mod error;
pub mod fan;
pub mod hardness;
pub mod hypercore;
pub mod kneser;
pub mod rainbow;
pub mod report;
pub mod signed;
pub mod vertex_set;
mod watch;

pub use error::{Error, Result};
pub use hypercore::{Coloring, Hypergraph};
pub use vertex_set::VertexSet;
