use std::sync::Arc;

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use super::{FeatureError, Result};
use crate::mocap::{forward_kinematics, normalize_root, MotionSequence, Skeleton, DEFAULT_FRAME_RATE};

/// Which raw data a sample carries or a method consumes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Representation {
    /// Bone-rotation channels.
    Br,
    /// Joint coordinates.
    Jc,
    Both,
    None,
}

/// One gait cycle of one subject.
///
/// JC frames always have the root at the origin; BR frames keep the
/// skeleton's channel layout.
#[derive(Debug, Clone, PartialEq)]
pub struct GaitSample {
    pub label: String,
    pub frame_rate: f64,
    pub skeleton: Arc<Skeleton>,
    rotations: Option<Vec<Vec<f64>>>,
    coordinates: Option<Vec<Vec<Vector3<f64>>>>,
}

fn check_len(n: usize) -> Result<()> {
    if n < 2 {
        return Err(FeatureError::DegenerateSample(format!(
            "{n} frames, at least 2 required"
        )));
    }
    Ok(())
}

fn recenter(frames: &mut [Vec<Vector3<f64>>]) {
    for f in frames {
        if let Some(&root) = f.first() {
            for p in f.iter_mut() {
                *p -= root;
            }
        }
    }
}

impl GaitSample {
    /// Both representations of a motion cycle bound to `skeleton`. The root
    /// channels are zeroed first.
    pub fn from_motion(motion: &MotionSequence, skeleton: Arc<Skeleton>) -> Result<GaitSample> {
        check_len(motion.len())?;
        let normalized = normalize_root(motion);
        let jc = forward_kinematics(&normalized, &skeleton)?;
        Ok(GaitSample {
            label: motion.subject_id.clone(),
            frame_rate: motion.frame_rate,
            skeleton,
            rotations: Some(normalized.frames),
            coordinates: Some(jc.frames),
        })
    }

    pub fn from_rotations(
        label: impl Into<String>,
        frames: Vec<Vec<f64>>,
        skeleton: Arc<Skeleton>,
    ) -> Result<GaitSample> {
        check_len(frames.len())?;
        let width = skeleton.layout().width();
        if let Some(f) = frames.iter().find(|f| f.len() != width) {
            return Err(FeatureError::DegenerateSample(format!(
                "frame has {} channels, skeleton has {width}",
                f.len()
            )));
        }
        Ok(GaitSample {
            label: label.into(),
            frame_rate: DEFAULT_FRAME_RATE,
            skeleton,
            rotations: Some(frames),
            coordinates: None,
        })
    }

    /// JC-only sample. Every frame is translated so that joint 0 (the root)
    /// is at the origin.
    pub fn from_coordinates(
        label: impl Into<String>,
        mut frames: Vec<Vec<Vector3<f64>>>,
        skeleton: Arc<Skeleton>,
    ) -> Result<GaitSample> {
        check_len(frames.len())?;
        let j = skeleton.len();
        if let Some(f) = frames.iter().find(|f| f.len() != j) {
            return Err(FeatureError::DegenerateSample(format!(
                "frame has {} joints, skeleton has {j}",
                f.len()
            )));
        }
        recenter(&mut frames);
        Ok(GaitSample {
            label: label.into(),
            frame_rate: DEFAULT_FRAME_RATE,
            skeleton,
            rotations: None,
            coordinates: Some(frames),
        })
    }

    pub fn with_frame_rate(mut self, rate: f64) -> GaitSample {
        self.frame_rate = rate;
        self
    }

    pub fn len(&self) -> usize {
        self.rotations
            .as_ref()
            .map(Vec::len)
            .or(self.coordinates.as_ref().map(Vec::len))
            .unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn rotations(&self) -> Option<&[Vec<f64>]> {
        self.rotations.as_deref()
    }

    pub fn coordinates(&self) -> Option<&[Vec<Vector3<f64>>]> {
        self.coordinates.as_deref()
    }

    pub fn representation(&self) -> Representation {
        match (self.rotations.is_some(), self.coordinates.is_some()) {
            (true, true) => Representation::Both,
            (true, false) => Representation::Br,
            (false, true) => Representation::Jc,
            (false, false) => Representation::None,
        }
    }

    /// True if this sample carries what `needed` asks for.
    pub fn supports(&self, needed: Representation) -> bool {
        match needed {
            Representation::None => true,
            Representation::Br => self.rotations.is_some(),
            Representation::Jc => self.coordinates.is_some(),
            Representation::Both => self.rotations.is_some() && self.coordinates.is_some(),
        }
    }

    pub(crate) fn require(&self, method: &'static str, needed: Representation) -> Result<()> {
        if self.supports(needed) {
            Ok(())
        } else {
            Err(FeatureError::RepresentationMismatch { method, needed })
        }
    }

    /// Per-frame vectors of one representation. BR frames drop the root
    /// channels, which normalization sets to zero; JC frames list x, y, z of
    /// every joint in skeleton order.
    pub fn frame_vectors(&self, rep: Representation) -> Result<Vec<Vec<f64>>> {
        match rep {
            Representation::Br => {
                self.require("raw_br", rep)?;
                let skip = self
                    .skeleton
                    .layout()
                    .group("root")
                    .map(|g| g.offset..g.offset + g.dof.len());
                Ok(self
                    .rotations()
                    .unwrap()
                    .iter()
                    .map(|f| {
                        f.iter()
                            .enumerate()
                            .filter(|(c, _)| !skip.as_ref().is_some_and(|r| r.contains(c)))
                            .map(|(_, v)| *v)
                            .collect()
                    })
                    .collect())
            }
            Representation::Jc => {
                self.require("raw_jc", rep)?;
                Ok(self
                    .coordinates()
                    .unwrap()
                    .iter()
                    .map(|f| f.iter().flat_map(|p| [p.x, p.y, p.z]).collect())
                    .collect())
            }
            other => Err(FeatureError::RepresentationMismatch {
                method: "raw",
                needed: other,
            }),
        }
    }

    pub(crate) fn replace_frames(
        &self,
        rotations: Option<Vec<Vec<f64>>>,
        coordinates: Option<Vec<Vec<Vector3<f64>>>>,
    ) -> GaitSample {
        GaitSample {
            label: self.label.clone(),
            frame_rate: self.frame_rate,
            skeleton: self.skeleton.clone(),
            rotations,
            coordinates,
        }
    }
}
