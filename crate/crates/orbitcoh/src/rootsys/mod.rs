//! Root systems, Weyl groups, and Dynkin diagram classification for the
//! finite types A-G.

mod diagram;
mod system;

pub use diagram::{Component, DynkinDiagram, DynkinEdge, SimpleKind, MAX_RANK};
pub use system::{build_root_system, DominantInfo, RootSystem, RootVec, Weight, WeylWord};
