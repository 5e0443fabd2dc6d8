//! Weighted edge monitoring: choose vertices of minimum total weight so
//! that every edge `e` lies in at least `c(e)` triangles whose third vertex
//! is chosen.
//!
//! Each graph class with a polynomial or parameterized algorithm gets its
//! own module. The approximation schemes sit next to the exact solvers of
//! their class. Everything is checked against the exact branch-and-bound
//! oracle in [`oracle`].
//!
//! Weights are exact rationals throughout.

pub mod block;
pub mod cograph;
pub mod complete;
pub mod error;
pub mod format;
pub mod generators;
pub mod graph;
pub mod instance;
pub mod interval;
pub mod monitor;
pub mod oracle;
pub mod planar;
pub mod reductions;

pub use error::{EmError, Result};
pub use graph::{Edge, Graph, Vertex};
pub use instance::{Instance, Solution, Weight};
