//! The thirteen hand-crafted extractors.
//!
//! Angles are in degrees, lengths in skeleton units. Statistics run over a
//! single gait cycle. The walker-relative frame has X pointing right to left,
//! Y upwards and Z in the walking direction.

use std::sync::Arc;

use nalgebra::Vector3;

use super::body::{centroid, Body, Landmark, BODY_BONES};
use super::resample::{resample_frames, resample_signal};
use super::stats::{local_extremes, max, mean, mean_abs_diff, min, skew, std};
use super::{FeatureError, GaitSample, Method, Representation, Result, Template, TemplateData, RAW_FRAMES};
use crate::mocap::Dof;

use Landmark::*;

/// Frames per cycle in Kwolek's normalization.
pub const KWOLEK_FRAMES: usize = 30;

const LEFT_RIGHT: [(Landmark, Landmark); 4] = [
    (LFoot, RFoot),
    (LKnee, RKnee),
    (LWrist, RWrist),
    (LShoulder, RShoulder),
];

fn down() -> Vector3<f64> {
    -Vector3::y()
}

/// Distance and angle signals compared by Gavrilova's method.
#[derive(Debug, Clone, PartialEq)]
pub struct GavrilovaSignals {
    pub distances: Vec<(Landmark, Landmark)>,
    /// Interior angle at the middle landmark.
    pub angles: Vec<(Landmark, Landmark, Landmark)>,
}

impl Default for GavrilovaSignals {
    /// 20 distances (root to head and to ten limb points, five left-right
    /// spans, head to wrists, wrist to ankle per side) and 16 angles (eight
    /// joints per side).
    fn default() -> Self {
        let mut distances = vec![(Root, Head)];
        for l in [LElbow, RElbow, LWrist, RWrist, LKnee, RKnee, LAnkle, RAnkle, LFoot, RFoot] {
            distances.push((Root, l));
        }
        for pair in [
            (LElbow, RElbow),
            (LWrist, RWrist),
            (LKnee, RKnee),
            (LAnkle, RAnkle),
            (LFoot, RFoot),
        ] {
            distances.push(pair);
        }
        distances.extend([(Head, LWrist), (Head, RWrist), (LWrist, LAnkle), (RWrist, RAnkle)]);
        let mut angles = Vec::new();
        for [sh, el, wr, ha, hip, kn, an, ft, toe] in [
            [LShoulder, LElbow, LWrist, LHand, LHip, LKnee, LAnkle, LFoot, LToe],
            [RShoulder, RElbow, RWrist, RHand, RHip, RKnee, RAnkle, RFoot, RToe],
        ] {
            angles.extend([
                (sh, el, wr),
                (el, wr, ha),
                (Neck, sh, el),
                (hip, sh, el),
                (Root, hip, kn),
                (hip, kn, an),
                (kn, an, ft),
                (an, ft, toe),
            ]);
        }
        GavrilovaSignals { distances, angles }
    }
}

impl GavrilovaSignals {
    /// One-line description for report metadata.
    pub fn describe(&self) -> String {
        let d: Vec<String> = self.distances.iter().map(|(a, b)| format!("{a:?}-{b:?}")).collect();
        let a: Vec<String> = self
            .angles
            .iter()
            .map(|(a, b, c)| format!("{a:?}-{b:?}-{c:?}"))
            .collect();
        format!("distances[{}] angles[{}]", d.join(" "), a.join(" "))
    }
}

fn labeled(method: Method, sample: &GaitSample, data: TemplateData) -> Template {
    Template::new(method, Some(sample.label.clone()), data)
}

/// Template of a geometric method (anything but the learned, raw and
/// random ones).
pub fn extract_geometric_features(method: Method, sample: &GaitSample) -> Result<Template> {
    let id = method.id();
    let data = match method {
        Method::Ahmed => TemplateData::Vector(ahmed(&Body::new(sample, id)?)),
        Method::Ali => TemplateData::Vector(ali(&Body::new(sample, id)?)),
        Method::Andersson => TemplateData::Vector(andersson(&Body::new(sample, id)?)?),
        Method::Ball => TemplateData::Vector(ball(&Body::new(sample, id)?)),
        Method::Dikovski => TemplateData::Vector(dikovski(&Body::new(sample, id)?)?),
        Method::Preis => TemplateData::Vector(preis(&Body::new(sample, id)?)),
        Method::Sinha => TemplateData::Vector(sinha(&Body::new(sample, id)?)),
        Method::Gavrilova => return gavrilova_with(&GavrilovaSignals::default(), sample),
        Method::Jiang => TemplateData::Signals(jiang(&Body::new(sample, id)?)),
        Method::Sedmidubsky => TemplateData::Signals(sedmidubsky(&Body::new(sample, id)?)),
        Method::Kumar => TemplateData::Signals(kumar(sample)?),
        Method::Krzeszowski => TemplateData::Signals(krzeszowski(sample)?),
        Method::Kwolek => TemplateData::Vector(kwolek(sample)?),
        other => {
            return Err(FeatureError::UnknownMethod(format!(
                "{other} is not a geometric method"
            )))
        }
    };
    Ok(labeled(method, sample, data))
}

/// Gavrilova's template with a custom signal list.
pub fn gavrilova_with(signals: &GavrilovaSignals, sample: &GaitSample) -> Result<Template> {
    let body = Body::new(sample, Method::Gavrilova.id())?;
    let mut out: Vec<Vec<f64>> = signals
        .distances
        .iter()
        .map(|&(a, b)| body.distance(a, b))
        .collect();
    out.extend(signals.angles.iter().map(|&(a, b, c)| body.joint_angle(a, b, c)));
    Ok(labeled(Method::Gavrilova, sample, TemplateData::Signals(out)))
}

fn ahmed(body: &Body) -> Vec<f64> {
    let mut v = Vec::with_capacity(24);
    for (a, b) in LEFT_RIGHT {
        let s = body.signal(|p| (p(a).z - p(b).z).abs());
        v.extend([mean(&s), std(&s), skew(&s)]);
    }
    let head = body.signal(|p| p(Head).y);
    v.extend([mean(&head), std(&head)]);
    for (a, b) in [(LWrist, RWrist), (LShoulder, RShoulder), (LKnee, RKnee), (LFoot, RFoot)] {
        let s = body.signal(|p| 0.5 * (p(a).y + p(b).y));
        v.extend([mean(&s), std(&s)]);
    }
    let area = body.triangle_area(Root, LFoot, RFoot);
    v.extend([mean(&area), std(&area)]);
    v
}

fn ali(body: &Body) -> Vec<f64> {
    vec![
        mean(&body.triangle_area(LHip, LKnee, LAnkle)),
        mean(&body.triangle_area(RHip, RKnee, RAnkle)),
    ]
}

/// Step lengths of the two half cycles.
fn steps(body: &Body) -> (f64, f64) {
    let d = body.feet_distance();
    let half = d.len() / 2;
    (max(&d[..half.max(1)]), max(&d[half.min(d.len() - 1)..]))
}

fn velocity(body: &Body) -> f64 {
    let (a, b) = steps(body);
    (a + b) / body.cycle_time()
}

fn body_bone_lengths(body: &Body) -> Result<Vec<Vec<f64>>> {
    BODY_BONES.iter().map(|b| body.bone_length(b)).collect()
}

fn andersson(body: &Body) -> Result<Vec<f64>> {
    let mut v = Vec::with_capacity(68);
    let angles = [
        body.joint_angle(Root, LHip, LKnee),
        body.joint_angle(Root, RHip, RKnee),
        body.joint_angle(LHip, LKnee, LAnkle),
        body.joint_angle(RHip, RKnee, RAnkle),
        body.joint_angle(LKnee, LAnkle, LFoot),
        body.joint_angle(RKnee, RAnkle, RFoot),
        body.segments_angle(LHip, LKnee, RHip, RKnee),
    ];
    for a in &angles {
        let e = local_extremes(a);
        v.extend([mean(&e), std(&e)]);
    }
    let (s1, s2) = steps(body);
    let time = body.cycle_time();
    v.extend([s1, s2, s1 + s2, time, (s1 + s2) / time, body.height()]);
    for len in body_bone_lengths(body)? {
        v.extend([mean(&len), std(&len)]);
    }
    Ok(v)
}

fn ball(body: &Body) -> Vec<f64> {
    let mut v = Vec::with_capacity(18);
    for (hip, knee, ankle, foot) in [(LHip, LKnee, LAnkle, LFoot), (RHip, RKnee, RAnkle, RFoot)] {
        for s in [
            body.segment_angle(hip, knee, down()),
            body.segments_angle(hip, knee, knee, ankle),
            body.segment_angle(ankle, foot, Vector3::z()),
        ] {
            v.extend([mean(&s), std(&s), max(&s)]);
        }
    }
    v
}

fn dikovski(body: &Body) -> Result<Vec<f64>> {
    let mut v = Vec::with_capacity(71);
    let (s1, s2) = steps(body);
    v.push(0.5 * (s1 + s2));
    v.push(body.height());
    for len in body_bone_lengths(body)? {
        v.push(mean(&len));
    }
    let signals = [
        body.joint_angle(LShoulder, LElbow, LWrist),
        body.joint_angle(RShoulder, RElbow, RWrist),
        body.joint_angle(Neck, LShoulder, LElbow),
        body.joint_angle(Neck, RShoulder, RElbow),
        body.joint_angle(Root, LHip, LKnee),
        body.joint_angle(Root, RHip, RKnee),
        body.joint_angle(LHip, LKnee, LAnkle),
        body.joint_angle(RHip, RKnee, RAnkle),
        body.segments_angle(RShoulder, LShoulder, RHip, LHip),
    ];
    for s in &signals {
        v.extend([mean(s), std(s), min(s), max(s), mean_abs_diff(s)]);
    }
    Ok(v)
}

fn preis(body: &Body) -> Vec<f64> {
    let m = |a, b| mean(&body.distance(a, b));
    let leg = |hip, knee, ankle| m(hip, knee) + m(knee, ankle);
    vec![
        body.height(),
        0.5 * (leg(LHip, LKnee, LAnkle) + leg(RHip, RKnee, RAnkle)),
        m(Root, Neck),
        m(LKnee, LAnkle),
        m(RKnee, RAnkle),
        m(LHip, LKnee),
        m(RHip, RKnee),
        m(LShoulder, LElbow),
        m(RShoulder, RElbow),
        m(LElbow, LWrist),
        m(RElbow, RWrist),
        max(&body.feet_distance()),
        velocity(body),
    ]
}

const UPPER_BODY: [Landmark; 4] = [LShoulder, RShoulder, RHip, LHip];
const LOWER_BODY: [Landmark; 4] = [LHip, RHip, RAnkle, LAnkle];
const LIMBS: [[Landmark; 3]; 4] = [
    [LShoulder, LElbow, LWrist],
    [RShoulder, RElbow, RWrist],
    [LHip, LKnee, LAnkle],
    [RHip, RKnee, RAnkle],
];

fn sinha(body: &Body) -> Vec<f64> {
    let mut v = ball(body);
    v.extend(preis(body));
    v.push(mean(&body.polygon_area(&UPPER_BODY)));
    v.push(mean(&body.polygon_area(&LOWER_BODY)));
    for limb in LIMBS {
        let d = body.signal(|p| {
            let upper: Vec<_> = UPPER_BODY.iter().map(|&l| p(l)).collect();
            let pts: Vec<_> = limb.iter().map(|&l| p(l)).collect();
            (centroid(&pts) - centroid(&upper)).norm()
        });
        v.extend([mean(&d), std(&d), max(&d)]);
    }
    v
}

fn jiang(body: &Body) -> Vec<Vec<f64>> {
    vec![
        body.segment_angle(LHip, LKnee, down()),
        body.segment_angle(RHip, RKnee, down()),
        body.segment_angle(LKnee, LAnkle, down()),
        body.segment_angle(RKnee, RAnkle, down()),
    ]
}

fn sedmidubsky(body: &Body) -> Vec<Vec<f64>> {
    vec![body.distance(LShoulder, LHand), body.distance(RShoulder, RHand)]
}

fn kumar(sample: &GaitSample) -> Result<Vec<Vec<f64>>> {
    let frames = resample_frames(&sample.frame_vectors(Representation::Jc)?, RAW_FRAMES);
    let width = frames.first().map_or(0, Vec::len);
    Ok((0..width).map(|c| frames.iter().map(|f| f[c]).collect()).collect())
}

/// A BR channel as a signal, zeros if the joint lacks that dof.
fn channel(sample: &GaitSample, joint: &str, dof: Dof) -> Result<Vec<f64>> {
    let skel = &sample.skeleton;
    if skel.index_of(joint).is_none() {
        return Err(FeatureError::MissingJoint(joint.into()));
    }
    let rot = sample.rotations().unwrap();
    Ok(match skel.layout().channel(joint, dof) {
        Some(c) => rot.iter().map(|f| f[c]).collect(),
        None => vec![0.0; rot.len()],
    })
}

fn krzeszowski(sample: &GaitSample) -> Result<Vec<Vec<f64>>> {
    sample.require(Method::Krzeszowski.id(), Representation::Both)?;
    let body = Body::new(sample, Method::Krzeszowski.id())?;
    let mut out = Vec::with_capacity(26);
    for bone in ["lhumerus", "lradius", "lfemur", "ltibia", "rhumerus", "rradius", "rfemur", "rtibia"] {
        for dof in [Dof::Rx, Dof::Ry, Dof::Rz] {
            out.push(channel(sample, bone, dof)?);
        }
    }
    out.push(vec![body.height(); body.len()]);
    out.push(body.feet_distance());
    Ok(out)
}

const KWOLEK_CHANNELS: [(&str, Dof); 10] = [
    ("femur", Dof::Rx),
    ("femur", Dof::Ry),
    ("femur", Dof::Rz),
    ("tibia", Dof::Rx),
    ("foot", Dof::Rx),
    ("foot", Dof::Rz),
    ("humerus", Dof::Rx),
    ("humerus", Dof::Ry),
    ("humerus", Dof::Rz),
    ("radius", Dof::Rx),
];

fn kwolek(sample: &GaitSample) -> Result<Vec<f64>> {
    sample.require(Method::Kwolek.id(), Representation::Both)?;
    let body = Body::new(sample, Method::Kwolek.id())?;
    let mut signals = Vec::with_capacity(22);
    for side in ["l", "r"] {
        for (bone, dof) in KWOLEK_CHANNELS {
            signals.push(channel(sample, &format!("{side}{bone}"), dof)?);
        }
    }
    signals.push(vec![body.height(); body.len()]);
    signals.push(body.feet_distance());
    Ok(signals
        .iter()
        .flat_map(|s| resample_signal(s, KWOLEK_FRAMES))
        .collect())
}

/// Shared skeleton for tests and examples in this module.
#[allow(dead_code)]
pub(crate) fn test_skeleton() -> Arc<crate::mocap::Skeleton> {
    Arc::new(crate::synth::cmu_skeleton())
}
