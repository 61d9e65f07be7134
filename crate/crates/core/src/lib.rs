//! Optimal 2-planar and 3-planar topological graphs.
//!
//! Drawings are stored as planarized rotation systems: every crossing of two
//! edges becomes a degree-4 dummy vertex, and each edge of the underlying
//! multigraph is an ordered path of planarization segments. On top of that
//! representation the crate offers
//!
//! * [`plane`]: the embedded multigraph foundation (darts, rotations, faces,
//!   homotopy tests for parallel edges and self-loops),
//! * [`drawing`]: k-planar drawings, crossing graph, true-planar skeleton and
//!   the structural predicates (quasi-planarity, fan-planarity, ...),
//! * [`characterize`]: verification of optimal 2-/3-planar drawings against
//!   the skeleton characterization, with witnesses,
//! * [`generate`]: skeleton families and the chord patterns that turn them
//!   into optimal drawings,
//! * [`visibility`]: st-numbering, bar visibility and bar 1-visibility,
//! * [`io`] and [`cli`]: JSON documents, SVG/DOT export and the command line.

pub mod characterize;
pub mod cli;
pub mod drawing;
pub mod generate;
pub mod io;
pub mod plane;
pub mod visibility;

pub use characterize::{CharacterizationReport, Verdict};
pub use drawing::{Drawing, VertexKind};
pub use plane::{DartId, EdgeId, FaceId, PlaneMultigraph, VertexId};
