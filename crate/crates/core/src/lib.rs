pub mod cgroup;
pub mod classify;
pub mod error;
pub mod geometry;
pub mod group;
pub mod perm;
pub mod presentations;
pub mod repgraph;

pub use error::{Error, Result};
pub use group::{intersection, intersection_with, orbits, IntersectionStrategy, PermGroup};
pub use perm::{CycleDecomposition, Permutation};
pub use cgroup::{CGroupCandidate, CGroupReport, Witness};
