//! Sparsity, rigidity, packing and orientation engines for multigraphs under
//! integer set functions, with brute-force oracles for cross-checking.

pub mod connectivity;
pub mod error;
pub mod flow;
pub mod graph;
pub mod oracle;
pub mod orientation;
pub mod packing;
pub mod setfunc;
pub mod sparsity;

pub use error::{Error, Result};
pub use graph::{EdgeId, MultiGraph, Partition, VertexSet};
pub use setfunc::SetFunc;
