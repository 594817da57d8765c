//! H-bootstrap percolation.
//!
//! Starting from a graph `G`, the `H`-process adds, in every round and all at
//! once, each missing edge whose insertion creates a new copy of `H`. This
//! crate runs the process, generates the starting graphs and gadgets used to
//! build slow or fast processes, and checks running-time bounds exhaustively
//! on small orders.

pub mod analysis;
pub mod constructions;
mod error;
pub mod graph;
pub mod pattern;
pub mod process;

pub use error::{Error, Result};
pub use graph::{graph6, Bipartition, CanonicalForm, Graph, VertexSet, N_MAX};
pub use pattern::Pattern;
pub use process::Trajectory;
