//! Gait-cycle extraction.
//!
//! Long recordings are cut into sub-motions that resemble an exemplary gait
//! cycle: every candidate window is compared with the exemplar by dynamic
//! time warping on bone rotations, windows above a distance threshold are
//! discarded, overlapping survivors are thinned, and subjects left with too
//! few cycles are dropped.

mod database;
mod dtw;
mod extract;

pub use database::{read_database, write_database, MANIFEST_FILE, SKELETON_FILE};
pub use dtw::{dtw_distance, dtw_prefix_distances, dtw_scalar, DtwConfig};
pub use extract::{
    candidate_windows, extract_gait_cycles, extract_with, Candidate, ExtractionParams, GaitCycle,
    GaitDatabase,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SegmentationError {
    #[error("sequences have different frame dimensionality")]
    DimensionMismatch,
    #[error("empty sequence")]
    EmptySequence,
    #[error("database I/O: {0}")]
    Io(String),
    #[error("database manifest: {0}")]
    Manifest(String),
    #[error(transparent)]
    Mocap(#[from] crate::mocap::MocapError),
}

pub type Result<T, E = SegmentationError> = std::result::Result<T, E>;
