use std::fmt;

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use super::{MocapError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Dof {
    Tx,
    Ty,
    Tz,
    Rx,
    Ry,
    Rz,
}

impl Dof {
    pub fn parse(s: &str) -> Option<Dof> {
        match s.to_ascii_lowercase().as_str() {
            "tx" => Some(Dof::Tx),
            "ty" => Some(Dof::Ty),
            "tz" => Some(Dof::Tz),
            "rx" => Some(Dof::Rx),
            "ry" => Some(Dof::Ry),
            "rz" => Some(Dof::Rz),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Dof::Tx => "tx",
            Dof::Ty => "ty",
            Dof::Tz => "tz",
            Dof::Rx => "rx",
            Dof::Ry => "ry",
            Dof::Rz => "rz",
        }
    }

    /// Rotation axis of a rotational channel.
    pub fn rotation_axis(self) -> Option<Axis> {
        match self {
            Dof::Rx => Some(Axis::X),
            Dof::Ry => Some(Axis::Y),
            Dof::Rz => Some(Axis::Z),
            _ => None,
        }
    }

    /// Translation axis of a translational channel.
    pub fn translation_axis(self) -> Option<Axis> {
        match self {
            Dof::Tx => Some(Axis::X),
            Dof::Ty => Some(Axis::Y),
            Dof::Tz => Some(Axis::Z),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }
}

/// Euler rotation order. `XYZ` rotates about X first, then Y, then Z.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EulerOrder(pub [Axis; 3]);

impl EulerOrder {
    pub const XYZ: EulerOrder = EulerOrder([Axis::X, Axis::Y, Axis::Z]);

    pub fn parse(s: &str) -> Option<EulerOrder> {
        let axes: Vec<Axis> = s
            .chars()
            .map(|c| match c.to_ascii_uppercase() {
                'X' => Some(Axis::X),
                'Y' => Some(Axis::Y),
                'Z' => Some(Axis::Z),
                _ => None,
            })
            .collect::<Option<_>>()?;
        if axes.len() != 3 || axes[0] == axes[1] || axes[1] == axes[2] || axes[0] == axes[2] {
            return None;
        }
        Some(EulerOrder([axes[0], axes[1], axes[2]]))
    }
}

impl Default for EulerOrder {
    fn default() -> Self {
        EulerOrder::XYZ
    }
}

impl fmt::Display for EulerOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in self.0 {
            let c = match a {
                Axis::X => 'X',
                Axis::Y => 'Y',
                Axis::Z => 'Z',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AngleUnit {
    Degrees,
    Radians,
}

impl AngleUnit {
    pub fn to_radians(self, v: f64) -> f64 {
        match self {
            AngleUnit::Degrees => v.to_radians(),
            AngleUnit::Radians => v,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Units {
    pub mass: f64,
    pub length: f64,
    pub angle: AngleUnit,
}

impl Default for Units {
    fn default() -> Self {
        Units {
            mass: 1.0,
            length: 1.0,
            angle: AngleUnit::Degrees,
        }
    }
}

/// One node of the skeleton tree.
///
/// For a bone, `direction` is the unit rest direction in global coordinates
/// and the joint position is the far end of the bone. For the root,
/// `direction` is zero, `length` is zero, `axis` holds the root orientation
/// and `dof` the root channel order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Joint {
    pub name: String,
    pub parent: Option<usize>,
    pub direction: Vector3<f64>,
    pub length: f64,
    /// Local axis frame as Euler angles in degrees, listed in `order`.
    pub axis: [f64; 3],
    pub order: EulerOrder,
    pub dof: Vec<Dof>,
    /// Joint limits, kept for writing back; they play no part in kinematics.
    pub limits: Vec<(f64, f64)>,
}

impl Joint {
    pub fn root(order: Vec<Dof>, orientation: [f64; 3], axis_order: EulerOrder) -> Joint {
        Joint {
            name: "root".to_string(),
            parent: None,
            direction: Vector3::zeros(),
            length: 0.0,
            axis: orientation,
            order: axis_order,
            dof: order,
            limits: Vec::new(),
        }
    }
}

/// A skeleton: joints in topological order, joint 0 is the root.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Skeleton {
    pub name: String,
    pub units: Units,
    pub root_position: Vector3<f64>,
    joints: Vec<Joint>,
}

impl Skeleton {
    /// Builds a skeleton after checking the tree invariants.
    pub fn new(
        name: impl Into<String>,
        units: Units,
        root_position: Vector3<f64>,
        joints: Vec<Joint>,
    ) -> Result<Skeleton> {
        let bad = |msg: String| MocapError::MalformedAsf { line: 0, msg };
        if joints.is_empty() || joints[0].parent.is_some() {
            return Err(bad("joint 0 must be the root".into()));
        }
        for (i, j) in joints.iter().enumerate().skip(1) {
            match j.parent {
                Some(p) if p < i => {}
                Some(_) => return Err(bad(format!("bone {} is listed before its parent", j.name))),
                None => return Err(bad(format!("bone {} has no parent", j.name))),
            }
            if !(j.length >= 0.0) {
                return Err(bad(format!("bone {} has negative length", j.name)));
            }
            if (j.direction.norm() - 1.0).abs() > 1e-6 {
                return Err(bad(format!("bone {} has a non-unit direction", j.name)));
            }
        }
        for (i, j) in joints.iter().enumerate() {
            if joints[..i].iter().any(|k| k.name == j.name) {
                return Err(bad(format!("joint name {} is used twice", j.name)));
            }
        }
        Ok(Skeleton {
            name: name.into(),
            units,
            root_position,
            joints,
        })
    }

    pub fn joints(&self) -> &[Joint] {
        &self.joints
    }

    pub fn joint(&self, i: usize) -> &Joint {
        &self.joints[i]
    }

    pub fn len(&self) -> usize {
        self.joints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.joints.is_empty()
    }

    pub fn bone_count(&self) -> usize {
        self.joints.len() - 1
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.joints.iter().position(|j| j.name == name)
    }

    pub fn children(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.joints
            .iter()
            .enumerate()
            .filter(move |(_, j)| j.parent == Some(i))
            .map(|(k, _)| k)
    }

    pub fn layout(&self) -> ChannelLayout {
        let mut groups = Vec::new();
        let mut offset = 0;
        for j in &self.joints {
            if j.dof.is_empty() {
                continue;
            }
            groups.push(ChannelGroup {
                joint: j.name.clone(),
                dof: j.dof.clone(),
                offset,
            });
            offset += j.dof.len();
        }
        ChannelLayout { groups }
    }

    /// Sum of bone lengths from `joint` up to (not including) the root.
    pub fn chain_length(&self, joint: usize) -> f64 {
        let mut total = 0.0;
        let mut cur = joint;
        while let Some(p) = self.joints[cur].parent {
            total += self.joints[cur].length;
            cur = p;
        }
        total
    }
}

/// Channels of one animated joint inside a flat frame vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChannelGroup {
    pub joint: String,
    pub dof: Vec<Dof>,
    pub offset: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ChannelLayout {
    groups: Vec<ChannelGroup>,
}

impl ChannelLayout {
    pub fn groups(&self) -> &[ChannelGroup] {
        &self.groups
    }

    pub fn group(&self, joint: &str) -> Option<&ChannelGroup> {
        self.groups.iter().find(|g| g.joint == joint)
    }

    /// Total number of channels per frame.
    pub fn width(&self) -> usize {
        self.groups.last().map_or(0, |g| g.offset + g.dof.len())
    }

    /// Index of a single channel, e.g. `("lfemur", Dof::Rx)`.
    pub fn channel(&self, joint: &str, dof: Dof) -> Option<usize> {
        let g = self.group(joint)?;
        g.dof.iter().position(|&d| d == dof).map(|k| g.offset + k)
    }
}

/// Prototypical skeleton: the mean of skeletons that share one topology.
///
/// Lengths, axis angles and the root position are averaged; directions are
/// averaged and renormalized.
pub fn mean_skeleton(skeletons: &[Skeleton]) -> Result<Skeleton> {
    let first = skeletons
        .first()
        .ok_or_else(|| MocapError::HeterogeneousTopology("no skeletons given".into()))?;
    for s in &skeletons[1..] {
        if s.joints.len() != first.joints.len() {
            return Err(MocapError::HeterogeneousTopology(format!(
                "{} joints versus {}",
                s.joints.len(),
                first.joints.len()
            )));
        }
        if s.units.angle != first.units.angle {
            return Err(MocapError::HeterogeneousTopology("angle units differ".into()));
        }
        for (a, b) in s.joints.iter().zip(&first.joints) {
            if a.name != b.name || a.parent != b.parent || a.dof != b.dof || a.order != b.order {
                return Err(MocapError::HeterogeneousTopology(format!(
                    "joint {} does not match joint {}",
                    a.name, b.name
                )));
            }
        }
    }
    let n = skeletons.len() as f64;
    let mut joints = first.joints.clone();
    for (i, joint) in joints.iter_mut().enumerate() {
        let length = skeletons.iter().map(|s| s.joints[i].length).sum::<f64>() / n;
        let mut axis = [0.0; 3];
        for (k, a) in axis.iter_mut().enumerate() {
            *a = skeletons.iter().map(|s| s.joints[i].axis[k]).sum::<f64>() / n;
        }
        let dir_sum: Vector3<f64> = skeletons.iter().map(|s| s.joints[i].direction).sum();
        joint.length = length;
        joint.axis = axis;
        if i > 0 {
            let norm = dir_sum.norm();
            if norm == 0.0 {
                return Err(MocapError::HeterogeneousTopology(format!(
                    "directions of bone {} cancel out",
                    joint.name
                )));
            }
            joint.direction = dir_sum / norm;
        }
    }
    let root_position = skeletons.iter().map(|s| s.root_position).sum::<Vector3<f64>>() / n;
    let units = Units {
        mass: skeletons.iter().map(|s| s.units.mass).sum::<f64>() / n,
        length: skeletons.iter().map(|s| s.units.length).sum::<f64>() / n,
        angle: first.units.angle,
    };
    Skeleton::new(first.name.clone(), units, root_position, joints)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_bone(len: f64, dir: Vector3<f64>) -> Skeleton {
        let root = Joint::root(
            vec![Dof::Tx, Dof::Ty, Dof::Tz, Dof::Rx, Dof::Ry, Dof::Rz],
            [0.0; 3],
            EulerOrder::XYZ,
        );
        let bone = Joint {
            name: "bone".into(),
            parent: Some(0),
            direction: dir.normalize(),
            length: len,
            axis: [0.0; 3],
            order: EulerOrder::XYZ,
            dof: vec![Dof::Rx, Dof::Ry, Dof::Rz],
            limits: vec![],
        };
        Skeleton::new("test", Units::default(), Vector3::zeros(), vec![root, bone]).unwrap()
    }

    #[test]
    fn mean_of_identical_is_identity() {
        let s = two_bone(2.5, Vector3::new(0.0, 1.0, 0.0));
        let m = mean_skeleton(&[s.clone(), s.clone(), s.clone()]).unwrap();
        assert_eq!(m, s);
    }

    #[test]
    fn mean_averages_lengths() {
        let a = two_bone(1.0, Vector3::x());
        let b = two_bone(3.0, Vector3::x());
        let m = mean_skeleton(&[a, b]).unwrap();
        assert_eq!(m.joint(1).length, 2.0);
    }

    #[test]
    fn mean_renormalizes_directions() {
        let a = two_bone(1.0, Vector3::x());
        let b = two_bone(1.0, Vector3::y());
        let m = mean_skeleton(&[a, b]).unwrap();
        let h = 1.0 / 2f64.sqrt();
        assert!((m.joint(1).direction - Vector3::new(h, h, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn mean_rejects_different_topology() {
        let a = two_bone(1.0, Vector3::x());
        let mut b = two_bone(1.0, Vector3::x());
        b.joints[1].name = "other".into();
        assert!(matches!(
            mean_skeleton(&[a, b]),
            Err(MocapError::HeterogeneousTopology(_))
        ));
    }

    #[test]
    fn euler_order_round_trips() {
        let o = EulerOrder::parse("zxy").unwrap();
        assert_eq!(o.to_string(), "ZXY");
        assert!(EulerOrder::parse("XXY").is_none());
        assert!(EulerOrder::parse("XY").is_none());
    }

    #[test]
    fn layout_skips_joints_without_dof() {
        let s = two_bone(1.0, Vector3::x());
        let l = s.layout();
        assert_eq!(l.width(), 9);
        assert_eq!(l.channel("bone", Dof::Ry), Some(7));
        assert_eq!(l.channel("bone", Dof::Tx), None);
    }
}
