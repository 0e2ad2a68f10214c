//! Motion-capture data in the ASF/AMC formats.
//!
//! An ASF document describes a skeleton: a tree of bones, each with a rest
//! direction, a length, a local axis frame and the rotational degrees of
//! freedom that an AMC document animates. An AMC document lists, frame by
//! frame, one line per animated bone with its channel values.
//!
//! Joint coordinates are produced by [`forward_kinematics`]. Before that, a
//! motion is usually passed through [`normalize_root`], which removes the
//! walker's position and heading so that the root joint sits at the origin of
//! a walker-relative frame (X right to left, Y down to up, Z back to front).

mod amc;
mod asf;
mod kinematics;
mod skeleton;

pub use amc::{parse_amc, write_amc};
pub use asf::{parse_asf, write_asf};
pub use kinematics::{euler_rotation, forward_kinematics, normalize_root, JointCoordinateSequence};
pub use skeleton::{
    mean_skeleton, AngleUnit, Axis, ChannelGroup, ChannelLayout, Dof, EulerOrder, Joint, Skeleton,
    Units,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors raised while reading or combining motion-capture data.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum MocapError {
    #[error("malformed ASF at line {line}: {msg}")]
    MalformedAsf { line: usize, msg: String },
    #[error("malformed AMC at line {line}: {msg}")]
    MalformedAmc { line: usize, msg: String },
    #[error("skeletons differ in topology: {0}")]
    HeterogeneousTopology(String),
    #[error("motion does not match skeleton: {0}")]
    UnboundMotion(String),
}

pub type Result<T, E = MocapError> = std::result::Result<T, E>;

/// Default CMU capture rate.
pub const DEFAULT_FRAME_RATE: f64 = 120.0;

/// Per-frame channel values of one recording, in the units of the AMC file
/// (degrees for rotations unless the bound skeleton says otherwise).
///
/// Each frame is a flat vector laid out by [`ChannelLayout`]: channel groups
/// follow skeleton joint order, and within a group values follow the joint's
/// dof order. Joints without dof contribute nothing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MotionSequence {
    pub layout: ChannelLayout,
    pub frames: Vec<Vec<f64>>,
    pub frame_rate: f64,
    pub subject_id: String,
    pub source_file: String,
}

impl MotionSequence {
    pub fn new(layout: ChannelLayout, frames: Vec<Vec<f64>>) -> Self {
        MotionSequence {
            layout,
            frames,
            frame_rate: DEFAULT_FRAME_RATE,
            subject_id: String::new(),
            source_file: String::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    /// Tags the motion with where it came from.
    pub fn with_source(mut self, subject_id: impl Into<String>, source_file: impl Into<String>) -> Self {
        self.subject_id = subject_id.into();
        self.source_file = source_file.into();
        self
    }

    /// Contiguous sub-motion over `start..end` (frame indices, 0-based).
    pub fn window(&self, start: usize, end: usize) -> MotionSequence {
        MotionSequence {
            layout: self.layout.clone(),
            frames: self.frames[start..end].to_vec(),
            frame_rate: self.frame_rate,
            subject_id: self.subject_id.clone(),
            source_file: self.source_file.clone(),
        }
    }

    /// Values of one joint's channels in frame `t`, if the joint is animated.
    pub fn joint_values(&self, t: usize, joint: &str) -> Option<&[f64]> {
        let g = self.layout.group(joint)?;
        Some(&self.frames[t][g.offset..g.offset + g.dof.len()])
    }
}

/// CMU file names look like `07_01.amc`; the subject is the part before the
/// first underscore. Names without an underscore are their own subject.
pub fn subject_from_file_name(name: &str) -> String {
    let stem = std::path::Path::new(name)
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or(name);
    match stem.find('_') {
        Some(i) => stem[..i].to_string(),
        None => stem.to_string(),
    }
}
