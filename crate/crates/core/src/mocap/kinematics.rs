use nalgebra::{Matrix3, Rotation3, Vector3};
use serde::{Deserialize, Serialize};

use super::skeleton::{Axis, EulerOrder, Skeleton};
use super::{MocapError, MotionSequence, Result};

/// Rotation matrix for Euler angles (radians) given per axis X, Y, Z,
/// composed so that the first axis of `order` is applied first.
pub fn euler_rotation(angles_xyz: [f64; 3], order: EulerOrder) -> Matrix3<f64> {
    let mut r = Matrix3::identity();
    for axis in order.0 {
        let unit = match axis {
            Axis::X => Vector3::x_axis(),
            Axis::Y => Vector3::y_axis(),
            Axis::Z => Vector3::z_axis(),
        };
        let step = Rotation3::from_axis_angle(&unit, angles_xyz[axis.index()]);
        r = step.matrix() * r;
    }
    r
}

/// ASF `axis` angles are listed in the order of the axis string.
fn axis_frame(skeleton: &Skeleton, joint: usize) -> Matrix3<f64> {
    let j = skeleton.joint(joint);
    let mut per_axis = [0.0; 3];
    for (k, axis) in j.order.0.iter().enumerate() {
        per_axis[axis.index()] = j.axis[k].to_radians();
    }
    euler_rotation(per_axis, j.order)
}

/// 3D joint positions per frame, one point per skeleton joint.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JointCoordinateSequence {
    pub names: Vec<String>,
    pub frames: Vec<Vec<Vector3<f64>>>,
}

impl JointCoordinateSequence {
    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }
}

/// Computes joint positions for every frame.
///
/// Each bone's local transform is `C · M · C⁻¹`, where `C` is the bone's axis
/// frame and `M` the rotation from its dof values; global transforms compose
/// down the tree and a joint sits at its parent's position plus the rotated
/// bone vector `direction · length`.
pub fn forward_kinematics(
    motion: &MotionSequence,
    skeleton: &Skeleton,
) -> Result<JointCoordinateSequence> {
    if motion.layout != skeleton.layout() {
        return Err(MocapError::UnboundMotion(
            "channel layout differs from the skeleton's".into(),
        ));
    }
    let n = skeleton.len();
    let frames_c: Vec<Matrix3<f64>> = (0..n).map(|i| axis_frame(skeleton, i)).collect();
    let frames_c_inv: Vec<Matrix3<f64>> = frames_c.iter().map(|c| c.transpose()).collect();
    // channel offset of each joint, if animated
    let offsets: Vec<Option<usize>> = skeleton
        .joints()
        .iter()
        .map(|j| motion.layout.group(&j.name).map(|g| g.offset))
        .collect();
    let unit = skeleton.units.angle;

    let mut out = Vec::with_capacity(motion.len());
    let mut global = vec![Matrix3::identity(); n];
    for frame in &motion.frames {
        let mut pos = vec![Vector3::zeros(); n];
        for (i, joint) in skeleton.joints().iter().enumerate() {
            let mut rot = [0.0; 3];
            let mut trans = Vector3::zeros();
            if let Some(off) = offsets[i] {
                for (k, dof) in joint.dof.iter().enumerate() {
                    let v = frame[off + k];
                    if let Some(a) = dof.rotation_axis() {
                        rot[a.index()] = unit.to_radians(v);
                    } else if let Some(a) = dof.translation_axis() {
                        trans[a.index()] = v;
                    }
                }
            }
            let local = frames_c[i] * euler_rotation(rot, joint.order) * frames_c_inv[i];
            match joint.parent {
                None => {
                    global[i] = local;
                    pos[i] = trans;
                }
                Some(p) => {
                    global[i] = global[p] * local;
                    pos[i] = pos[p] + global[i] * (joint.direction * joint.length);
                }
            }
        }
        out.push(pos);
    }
    Ok(JointCoordinateSequence {
        names: skeleton.joints().iter().map(|j| j.name.clone()).collect(),
        frames: out,
    })
}

/// Zeroes the root translation and rotation in every frame.
pub fn normalize_root(motion: &MotionSequence) -> MotionSequence {
    let mut m = motion.clone();
    if let Some(g) = motion.layout.group("root") {
        let range = g.offset..g.offset + g.dof.len();
        for f in &mut m.frames {
            for v in &mut f[range.clone()] {
                *v = 0.0;
            }
        }
    }
    m
}
