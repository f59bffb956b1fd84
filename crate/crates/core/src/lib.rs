//! Kernelization toolkit for maximum edge-colorable subgraph (ECS), multi
//! strong triadic closure (Multi-STC) and their edge-list variants, with an
//! exact branch-and-bound oracle.
//!
//! An instance asks for a labeling of the edges with strong colors `1..=c` or
//! weak (0) such that at most `k` edges are weak. Proper labelings forbid two
//! incident edges of the same strong color; STC labelings only forbid this when
//! the two edges span an induced path on three vertices.

pub mod coloring;
pub mod error;
pub mod format;
pub mod graph;
pub mod harness;
pub mod instance;
pub mod kernel;
pub mod labeling;
pub mod matching;
pub mod params;
pub mod solver;

mod flow;

pub use error::{Error, Result};
pub use graph::{edge, Edge, Graph, Path, PathKind};
pub use instance::{Instance, Kind};
pub use kernel::{Decision, KernelOutcome, Param};
pub use labeling::{ColorSet, EdgeLists, Labeling};
