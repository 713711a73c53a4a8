//! Wataridori and Numberlink: models, verifiers and exact solvers, the
//! reduction from Numberlink to Wataridori, and lifting of solutions across
//! it in both directions.

pub mod format;
pub mod grid;
pub mod lifting;
pub mod numberlink;
pub mod reduction;
pub mod render;
pub mod verdict;
pub mod wataridori;

pub use grid::{CellCoord, Path, RegionMap, WallSegment};
pub use numberlink::{NumberlinkInstance, NumberlinkSolution};
pub use reduction::{reduce, ReductionMap};
pub use verdict::{Rule, SolveOutcome, Verdict};
pub use wataridori::{Circle, WataridoriInstance, WataridoriSolution};
