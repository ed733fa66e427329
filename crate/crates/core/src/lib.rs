//! Plane spanning trees, caterpillars and paths on planar point sets, their
//! reconfiguration graphs under flips, compatible flips, rotations,
//! empty-triangle rotations and slides, and executable constructions of
//! reconfiguration sequences between them.

pub mod analysis;
pub mod cli;
pub mod constructive;
pub mod error;
pub mod geometry;
pub mod reconfig;
pub mod structures;

pub use error::{Error, Result};
