//! Synthetic motion data: a CMU-style skeleton and a parametric walker.
//!
//! Real captures are large and licensed separately, so examples and tests
//! run on motions generated here. A [`WalkerStyle`] is a set of per-channel
//! harmonics (offset plus first and second harmonic of the gait phase);
//! sampling a style with small noise gives gait cycles of one "subject".

use std::f64::consts::PI;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::mocap::{parse_asf, Dof, MotionSequence, Skeleton};

/// ASF text of a 31-joint skeleton with the CMU naming and hierarchy.
pub const CMU_LIKE_ASF: &str = include_str!("../data/cmu_like.asf");

pub fn cmu_skeleton() -> Skeleton {
    parse_asf(CMU_LIKE_ASF).expect("bundled skeleton parses")
}

#[derive(Debug, Clone, PartialEq)]
struct Wave {
    channel: usize,
    offset: f64,
    a1: f64,
    p1: f64,
    a2: f64,
    p2: f64,
}

impl Wave {
    fn at(&self, phase: f64) -> f64 {
        self.offset + self.a1 * (phase + self.p1).sin() + self.a2 * (2.0 * phase + self.p2).sin()
    }
}

// (joint, dof, offset, a1, p1, a2, p2), angles in degrees
const BASE_GAIT: &[(&str, Dof, f64, f64, f64, f64, f64)] = &[
    ("lfemur", Dof::Rx, -8.0, 24.0, 0.0, 3.0, 0.0),
    ("lfemur", Dof::Ry, 0.0, 3.0, 0.5, 0.0, 0.0),
    ("lfemur", Dof::Rz, 2.0, 3.0, 1.0, 0.0, 0.0),
    ("rfemur", Dof::Rx, -8.0, 24.0, PI, 3.0, 0.0),
    ("rfemur", Dof::Ry, 0.0, 3.0, PI + 0.5, 0.0, 0.0),
    ("rfemur", Dof::Rz, -2.0, 3.0, PI + 1.0, 0.0, 0.0),
    ("ltibia", Dof::Rx, 28.0, 22.0, -PI / 2.0, 8.0, 0.3),
    ("rtibia", Dof::Rx, 28.0, 22.0, PI / 2.0, 8.0, 0.3),
    ("lfoot", Dof::Rx, -4.0, 10.0, 0.6, 0.0, 0.0),
    ("lfoot", Dof::Rz, 0.0, 2.0, 0.0, 0.0, 0.0),
    ("rfoot", Dof::Rx, -4.0, 10.0, PI + 0.6, 0.0, 0.0),
    ("rfoot", Dof::Rz, 0.0, 2.0, PI, 0.0, 0.0),
    ("ltoes", Dof::Rx, 0.0, 6.0, 1.2, 0.0, 0.0),
    ("rtoes", Dof::Rx, 0.0, 6.0, PI + 1.2, 0.0, 0.0),
    ("lowerback", Dof::Rx, 4.0, 0.0, 0.0, 2.0, 0.0),
    ("lowerback", Dof::Ry, 0.0, 3.0, 0.0, 0.0, 0.0),
    ("upperback", Dof::Ry, 0.0, 2.0, PI, 0.0, 0.0),
    ("thorax", Dof::Ry, 0.0, 4.0, PI, 0.0, 0.0),
    ("thorax", Dof::Rz, 0.0, 1.5, 0.0, 0.0, 0.0),
    ("lowerneck", Dof::Rx, -6.0, 0.0, 0.0, 1.0, 0.0),
    ("head", Dof::Rx, 3.0, 0.0, 0.0, 1.5, 0.5),
    ("lclavicle", Dof::Rz, -6.0, 1.0, 0.0, 0.0, 0.0),
    ("rclavicle", Dof::Rz, 6.0, 1.0, 0.0, 0.0, 0.0),
    ("lhumerus", Dof::Rx, -10.0, 18.0, PI, 0.0, 0.0),
    ("lhumerus", Dof::Rz, 70.0, 3.0, 0.0, 0.0, 0.0),
    ("rhumerus", Dof::Rx, -10.0, 18.0, 0.0, 0.0, 0.0),
    ("rhumerus", Dof::Rz, -70.0, 3.0, PI, 0.0, 0.0),
    ("lradius", Dof::Rx, 20.0, 10.0, PI + 0.4, 0.0, 0.0),
    ("rradius", Dof::Rx, 20.0, 10.0, 0.4, 0.0, 0.0),
];

/// A subject's walking style: harmonic curves for a set of channels.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkerStyle {
    waves: Vec<Wave>,
    width: usize,
}

impl WalkerStyle {
    /// The shared base gait on `skeleton`, which must use CMU bone names.
    pub fn base(skeleton: &Skeleton) -> WalkerStyle {
        let layout = skeleton.layout();
        let waves = BASE_GAIT
            .iter()
            .filter_map(|&(joint, dof, offset, a1, p1, a2, p2)| {
                layout.channel(joint, dof).map(|channel| Wave {
                    channel,
                    offset,
                    a1,
                    p1,
                    a2,
                    p2,
                })
            })
            .collect();
        WalkerStyle {
            waves,
            width: layout.width(),
        }
    }

    /// Base gait perturbed by `variation` (1.0 gives clearly distinct walkers).
    pub fn random<R: Rng + ?Sized>(skeleton: &Skeleton, variation: f64, rng: &mut R) -> WalkerStyle {
        let mut style = WalkerStyle::base(skeleton);
        let unit = Normal::new(0.0, 1.0).unwrap();
        for w in &mut style.waves {
            w.offset += variation * 4.0 * unit.sample(rng);
            w.a1 *= 1.0 + variation * 0.15 * unit.sample(rng);
            w.p1 += variation * 0.15 * unit.sample(rng);
            w.a2 += variation * 1.0 * unit.sample(rng);
        }
        style
    }

    fn frame(&self, phase: f64) -> Vec<f64> {
        let mut f = vec![0.0; self.width];
        for w in &self.waves {
            f[w.channel] = w.at(phase);
        }
        f
    }

    /// One root-normalized gait cycle of `frames` frames with Gaussian channel
    /// noise of standard deviation `noise` degrees.
    pub fn cycle<R: Rng + ?Sized>(
        &self,
        skeleton: &Skeleton,
        frames: usize,
        noise: f64,
        rng: &mut R,
    ) -> MotionSequence {
        let normal = Normal::new(0.0, noise.max(0.0)).unwrap();
        let layout = skeleton.layout();
        let root = layout.group("root").map(|g| g.offset..g.offset + g.dof.len());
        let data = (0..frames)
            .map(|t| {
                let phase = 2.0 * PI * t as f64 / frames as f64;
                let mut f = self.frame(phase);
                for (c, v) in f.iter_mut().enumerate() {
                    if root.as_ref().is_some_and(|r| r.contains(&c)) {
                        continue;
                    }
                    if noise > 0.0 {
                        *v += normal.sample(rng);
                    }
                }
                f
            })
            .collect();
        MotionSequence::new(layout, data)
    }

    /// A continuous walk with root translation along Z and a constant heading,
    /// `cycle_frames` frames per gait cycle.
    pub fn walk<R: Rng + ?Sized>(
        &self,
        skeleton: &Skeleton,
        total_frames: usize,
        cycle_frames: usize,
        noise: f64,
        rng: &mut R,
    ) -> MotionSequence {
        let normal = Normal::new(0.0, noise.max(0.0)).unwrap();
        let layout = skeleton.layout();
        let heading = rng.random_range(-180.0..180.0);
        let data = (0..total_frames)
            .map(|t| {
                let phase = 2.0 * PI * t as f64 / cycle_frames as f64;
                let mut f = self.frame(phase);
                if noise > 0.0 {
                    for v in f.iter_mut() {
                        *v += normal.sample(rng);
                    }
                }
                if let Some(g) = layout.group("root") {
                    for (k, d) in g.dof.iter().enumerate() {
                        f[g.offset + k] = match d {
                            Dof::Ty => 17.0,
                            Dof::Tz => 0.12 * t as f64,
                            Dof::Ry => heading,
                            _ => 0.0,
                        };
                    }
                }
                f
            })
            .collect();
        MotionSequence::new(layout, data)
    }
}

/// Labeled synthetic gait cycles: `subjects` walkers, `per_subject` cycles
/// each, cycle lengths drawn from `frames`.
pub fn gait_cycles(
    skeleton: &Skeleton,
    subjects: usize,
    per_subject: usize,
    frames: std::ops::RangeInclusive<usize>,
    noise: f64,
    seed: u64,
) -> Vec<MotionSequence> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(subjects * per_subject);
    for s in 0..subjects {
        let style = WalkerStyle::random(skeleton, 1.0, &mut rng);
        for k in 0..per_subject {
            let len = rng.random_range(frames.clone());
            let m = style.cycle(skeleton, len, noise, &mut rng);
            out.push(m.with_source(format!("s{s:02}"), format!("s{s:02}_{k:02}.amc")));
        }
    }
    out
}

/// Raw recordings for extraction: `subjects` walkers with
/// `takes` continuous walks of `total_frames` frames each, named like CMU
/// trials (`01_01.amc`), plus an exemplar cycle of the base style.
pub fn recordings(
    skeleton: &Skeleton,
    subjects: usize,
    takes: usize,
    total_frames: usize,
    cycle_frames: usize,
    seed: u64,
) -> (Vec<MotionSequence>, MotionSequence) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let exemplar = WalkerStyle::base(skeleton).cycle(skeleton, cycle_frames, 0.0, &mut rng);
    let mut out = Vec::with_capacity(subjects * takes);
    for s in 1..=subjects {
        let style = WalkerStyle::random(skeleton, 0.3, &mut rng);
        for k in 1..=takes {
            let m = style.walk(skeleton, total_frames, cycle_frames, 0.5, &mut rng);
            out.push(m.with_source(format!("{s:02}"), format!("{s:02}_{k:02}.amc")));
        }
    }
    (out, exemplar)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mocap::forward_kinematics;

    #[test]
    fn bundled_skeleton_has_31_joints() {
        let s = cmu_skeleton();
        assert_eq!(s.len(), 31);
        assert_eq!(s.layout().width(), 62);
    }

    #[test]
    fn cycles_are_root_normalized_and_deterministic() {
        let s = cmu_skeleton();
        let a = gait_cycles(&s, 2, 3, 40..=50, 1.0, 7);
        let b = gait_cycles(&s, 2, 3, 40..=50, 1.0, 7);
        assert_eq!(a, b);
        assert_eq!(a.len(), 6);
        assert_eq!(a[4].subject_id, "s01");
        let jc = forward_kinematics(&a[0], &s).unwrap();
        for f in &jc.frames {
            assert_eq!(f[0].norm(), 0.0);
        }
    }
}
