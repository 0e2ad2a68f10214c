use nalgebra::Vector3;

use super::{FeatureError, GaitSample, Representation, Result};

/// Anatomical points, each the end point of a CMU-named bone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Landmark {
    Root,
    Neck,
    Head,
    LHip,
    RHip,
    LKnee,
    RKnee,
    LAnkle,
    RAnkle,
    LFoot,
    RFoot,
    LToe,
    RToe,
    LShoulder,
    RShoulder,
    LElbow,
    RElbow,
    LWrist,
    RWrist,
    LHand,
    RHand,
}

impl Landmark {
    pub const ALL: [Landmark; 21] = [
        Landmark::Root,
        Landmark::Neck,
        Landmark::Head,
        Landmark::LHip,
        Landmark::RHip,
        Landmark::LKnee,
        Landmark::RKnee,
        Landmark::LAnkle,
        Landmark::RAnkle,
        Landmark::LFoot,
        Landmark::RFoot,
        Landmark::LToe,
        Landmark::RToe,
        Landmark::LShoulder,
        Landmark::RShoulder,
        Landmark::LElbow,
        Landmark::RElbow,
        Landmark::LWrist,
        Landmark::RWrist,
        Landmark::LHand,
        Landmark::RHand,
    ];

    /// Name of the bone whose end is this landmark.
    pub fn joint_name(self) -> &'static str {
        use Landmark::*;
        match self {
            Root => "root",
            Neck => "thorax",
            Head => "head",
            LHip => "lhipjoint",
            RHip => "rhipjoint",
            LKnee => "lfemur",
            RKnee => "rfemur",
            LAnkle => "ltibia",
            RAnkle => "rtibia",
            LFoot => "lfoot",
            RFoot => "rfoot",
            LToe => "ltoes",
            RToe => "rtoes",
            LShoulder => "lclavicle",
            RShoulder => "rclavicle",
            LElbow => "lhumerus",
            RElbow => "rhumerus",
            LWrist => "lradius",
            RWrist => "rradius",
            LHand => "lhand",
            RHand => "rhand",
        }
    }
}

/// Bones measured by the anthropometric extractors: every bone except the
/// hands, fingers and thumbs.
pub const BODY_BONES: [&str; 24] = [
    "lhipjoint", "lfemur", "ltibia", "lfoot", "ltoes", "rhipjoint", "rfemur", "rtibia", "rfoot",
    "rtoes", "lowerback", "upperback", "thorax", "lowerneck", "upperneck", "head", "lclavicle",
    "lhumerus", "lradius", "lwrist", "rclavicle", "rhumerus", "rradius", "rwrist",
];

/// Landmark access over the JC frames of a sample.
pub struct Body<'a> {
    sample: &'a GaitSample,
    frames: &'a [Vec<Vector3<f64>>],
    index: [usize; Landmark::ALL.len()],
}

impl<'a> Body<'a> {
    pub fn new(sample: &'a GaitSample, method: &'static str) -> Result<Body<'a>> {
        sample.require(method, Representation::Jc)?;
        let mut index = [0; Landmark::ALL.len()];
        for (k, l) in Landmark::ALL.iter().enumerate() {
            index[k] = sample
                .skeleton
                .index_of(l.joint_name())
                .ok_or_else(|| FeatureError::MissingJoint(l.joint_name().into()))?;
        }
        Ok(Body {
            sample,
            frames: sample.coordinates().unwrap(),
            index,
        })
    }

    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    pub fn at(&self, t: usize, l: Landmark) -> Vector3<f64> {
        self.frames[t][self.index[l as usize]]
    }

    /// Evaluates `f` on every frame.
    pub fn signal(&self, f: impl Fn(&dyn Fn(Landmark) -> Vector3<f64>) -> f64) -> Vec<f64> {
        (0..self.len())
            .map(|t| f(&|l| self.at(t, l)))
            .collect()
    }

    pub fn distance(&self, a: Landmark, b: Landmark) -> Vec<f64> {
        self.signal(|p| (p(a) - p(b)).norm())
    }

    /// Interior angle at `b` in degrees.
    pub fn joint_angle(&self, a: Landmark, b: Landmark, c: Landmark) -> Vec<f64> {
        self.signal(|p| angle_between(&(p(a) - p(b)), &(p(c) - p(b))))
    }

    /// Angle between segment `a→b` and a fixed direction, in degrees.
    pub fn segment_angle(&self, a: Landmark, b: Landmark, dir: Vector3<f64>) -> Vec<f64> {
        self.signal(|p| angle_between(&(p(b) - p(a)), &dir))
    }

    /// Angle between segments `a→b` and `c→d`, in degrees.
    pub fn segments_angle(&self, a: Landmark, b: Landmark, c: Landmark, d: Landmark) -> Vec<f64> {
        self.signal(|p| angle_between(&(p(b) - p(a)), &(p(d) - p(c))))
    }

    pub fn triangle_area(&self, a: Landmark, b: Landmark, c: Landmark) -> Vec<f64> {
        self.signal(|p| polygon_area(&[p(a), p(b), p(c)]))
    }

    pub fn polygon_area(&self, vertices: &[Landmark]) -> Vec<f64> {
        self.signal(|p| {
            let pts: Vec<Vector3<f64>> = vertices.iter().map(|&l| p(l)).collect();
            polygon_area(&pts)
        })
    }

    /// Length of a bone (by joint name) in every frame.
    pub fn bone_length(&self, name: &str) -> Result<Vec<f64>> {
        let skel = &self.sample.skeleton;
        let j = skel
            .index_of(name)
            .ok_or_else(|| FeatureError::MissingJoint(name.into()))?;
        let p = skel.joint(j).parent.unwrap_or(j);
        Ok(self.frames.iter().map(|f| (f[j] - f[p]).norm()).collect())
    }

    /// Frame-wise distance between the feet.
    pub fn feet_distance(&self) -> Vec<f64> {
        self.distance(Landmark::LFoot, Landmark::RFoot)
    }

    /// Head chain plus the mean of the two leg chains, from the skeleton.
    pub fn height(&self) -> f64 {
        let skel = &self.sample.skeleton;
        let chain = |l: Landmark| skel.chain_length(self.index[l as usize]);
        chain(Landmark::Head) + 0.5 * (chain(Landmark::LFoot) + chain(Landmark::RFoot))
    }

    /// Cycle duration in seconds.
    pub fn cycle_time(&self) -> f64 {
        self.len() as f64 / self.sample.frame_rate
    }
}

/// Angle between two vectors in degrees; zero if either vanishes.
pub fn angle_between(u: &Vector3<f64>, v: &Vector3<f64>) -> f64 {
    let n = u.norm() * v.norm();
    if n == 0.0 {
        return 0.0;
    }
    (u.dot(v) / n).clamp(-1.0, 1.0).acos().to_degrees()
}

/// Area of a (possibly non-planar) polygon as the fan of triangles around its
/// first vertex.
pub fn polygon_area(pts: &[Vector3<f64>]) -> f64 {
    if pts.len() < 3 {
        return 0.0;
    }
    let o = pts[0];
    pts[1..]
        .windows(2)
        .map(|w| 0.5 * (w[0] - o).cross(&(w[1] - o)).norm())
        .sum()
}

pub fn centroid(pts: &[Vector3<f64>]) -> Vector3<f64> {
    pts.iter().sum::<Vector3<f64>>() / pts.len() as f64
}
