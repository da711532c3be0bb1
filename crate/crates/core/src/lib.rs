//! Island boundary polynomials of graphs embedded in oriented surfaces.

pub mod analysis;
pub mod closed_forms;
pub mod coloring;
pub mod embedded;
pub mod engine;
pub mod error;
pub mod generators;
pub mod graph;
pub mod poly;
pub mod script;
pub mod surface;
pub mod transforms;

pub use embedded::{EmbeddedGraph, Host};
pub use error::{Error, ParseError, Result};
pub use graph::{Edge, Multigraph, VertexSubset};
pub use poly::IntPoly;
pub use surface::RotationMap;
pub use coloring::{merge_colors, Coloring};
pub use engine::{Beta, CountVector, Engine};
