//! Gait samples, templates and the hand-crafted feature extractors.
//!
//! A [`GaitSample`] is one gait cycle holding bone rotations (BR), joint
//! coordinates (JC) or both. A [`Method`] turns a sample into a [`Template`]:
//! either a fixed-length vector of statistics, a bundle of time signals
//! compared by DTW, or (for learned methods, see [`crate::learning`]) a
//! projection of the length-normalized raw sample.

mod body;
mod distance;
mod geometric;
mod io;
mod resample;
mod sample;
pub mod stats;

pub use body::{Body, Landmark, BODY_BONES};
pub use distance::{covariance_distance, template_distance, MethodDistance, TemplateDistance};
pub use geometric::{extract_geometric_features, gavrilova_with, GavrilovaSignals, KWOLEK_FRAMES};
pub use io::{read_templates, write_templates};
pub use resample::{flatten, raw_vector, resample_frames, resample_linear, unflatten};
pub use sample::{GaitSample, Representation};
pub use body::{angle_between, centroid, polygon_area};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FeatureError {
    #[error("method {method} needs {needed:?} data which the sample does not carry")]
    RepresentationMismatch {
        method: &'static str,
        needed: Representation,
    },
    #[error("sample too short: {0}")]
    DegenerateSample(String),
    #[error("skeleton has no joint {0}")]
    MissingJoint(String),
    #[error("templates are not comparable: {0}")]
    LayoutMismatch(String),
    #[error("method {0} needs a learned model")]
    RequiresModel(&'static str),
    #[error("unknown method {0:?}")]
    UnknownMethod(String),
    #[error("template file line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Mocap(#[from] crate::mocap::MocapError),
}

pub type Result<T, E = FeatureError> = std::result::Result<T, E>;

/// Frame count of the raw baselines and of Kumar's trajectories.
pub const RAW_FRAMES: usize = 150;

/// Every implemented method.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Method {
    Ahmed,
    Ali,
    Andersson,
    Ball,
    Dikovski,
    Gavrilova,
    Jiang,
    Krzeszowski,
    Kumar,
    Kwolek,
    Preis,
    Sedmidubsky,
    Sinha,
    MmcBr,
    MmcJc,
    PcaldaBr,
    PcaldaJc,
    Random,
    RawBr,
    RawJc,
}

/// How two templates of a method are compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DistanceKind {
    Euclidean,
    /// Sum over signals of scalar DTW distances.
    DtwSum,
    /// Frobenius norm between trajectory covariance matrices.
    Covariance,
    Mahalanobis,
    /// No templates, no distance.
    None,
}

/// Static description of a method.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MethodDescriptor {
    pub method: Method,
    pub representation: Representation,
    pub distance: DistanceKind,
    /// Template dimensionality for fixed-length methods.
    pub nominal_td: Option<usize>,
    pub learned: bool,
}

impl Method {
    pub const ALL: [Method; 20] = [
        Method::Ahmed,
        Method::Ali,
        Method::Andersson,
        Method::Ball,
        Method::Dikovski,
        Method::Gavrilova,
        Method::Jiang,
        Method::Krzeszowski,
        Method::Kumar,
        Method::Kwolek,
        Method::Preis,
        Method::Sedmidubsky,
        Method::Sinha,
        Method::MmcBr,
        Method::MmcJc,
        Method::PcaldaBr,
        Method::PcaldaJc,
        Method::Random,
        Method::RawBr,
        Method::RawJc,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Method::Ahmed => "ahmed",
            Method::Ali => "ali",
            Method::Andersson => "andersson",
            Method::Ball => "ball",
            Method::Dikovski => "dikovski",
            Method::Gavrilova => "gavrilova",
            Method::Jiang => "jiang",
            Method::Krzeszowski => "krzeszowski",
            Method::Kumar => "kumar",
            Method::Kwolek => "kwolek",
            Method::Preis => "preis",
            Method::Sedmidubsky => "sedmidubsky",
            Method::Sinha => "sinha",
            Method::MmcBr => "mmc_br",
            Method::MmcJc => "mmc_jc",
            Method::PcaldaBr => "pcalda_br",
            Method::PcaldaJc => "pcalda_jc",
            Method::Random => "random",
            Method::RawBr => "raw_br",
            Method::RawJc => "raw_jc",
        }
    }

    /// Name used in report headers.
    pub fn display_name(self) -> &'static str {
        match self {
            Method::Ahmed => "Ahmed",
            Method::Ali => "Ali",
            Method::Andersson => "Andersson",
            Method::Ball => "Ball",
            Method::Dikovski => "Dikovski",
            Method::Gavrilova => "Gavrilova",
            Method::Jiang => "Jiang",
            Method::Krzeszowski => "Krzeszowski",
            Method::Kumar => "Kumar",
            Method::Kwolek => "Kwolek",
            Method::Preis => "Preis",
            Method::Sedmidubsky => "Sedmidubsky",
            Method::Sinha => "Sinha",
            Method::MmcBr => "MMC_BR",
            Method::MmcJc => "MMC_JC",
            Method::PcaldaBr => "PCALDA_BR",
            Method::PcaldaJc => "PCALDA_JC",
            Method::Random => "Random",
            Method::RawBr => "Raw_BR",
            Method::RawJc => "Raw_JC",
        }
    }

    pub fn from_display_name(name: &str) -> Option<Method> {
        Method::ALL.into_iter().find(|m| m.display_name() == name)
    }

    pub fn descriptor(self) -> MethodDescriptor {
        use DistanceKind::{Covariance, DtwSum, Euclidean, Mahalanobis};
        use Representation::{Both, Br, Jc};
        let (representation, distance, nominal_td) = match self {
            Method::Ahmed => (Jc, Euclidean, Some(24)),
            Method::Ali => (Jc, Euclidean, Some(2)),
            Method::Andersson => (Jc, Euclidean, Some(68)),
            Method::Ball => (Jc, Euclidean, Some(18)),
            Method::Dikovski => (Jc, Euclidean, Some(71)),
            Method::Gavrilova => (Jc, DtwSum, None),
            Method::Jiang => (Jc, DtwSum, None),
            Method::Krzeszowski => (Both, DtwSum, None),
            Method::Kumar => (Jc, Covariance, None),
            Method::Kwolek => (Both, Euclidean, Some(22 * KWOLEK_FRAMES)),
            Method::Preis => (Jc, Euclidean, Some(13)),
            Method::Sedmidubsky => (Jc, DtwSum, None),
            Method::Sinha => (Jc, Euclidean, Some(45)),
            Method::MmcBr | Method::PcaldaBr => (Br, Mahalanobis, None),
            Method::MmcJc | Method::PcaldaJc => (Jc, Mahalanobis, None),
            Method::Random => (Representation::None, DistanceKind::None, Some(0)),
            Method::RawBr => (Br, Euclidean, None),
            Method::RawJc => (Jc, Euclidean, None),
        };
        MethodDescriptor {
            method: self,
            representation,
            distance,
            nominal_td,
            learned: self.is_learned(),
        }
    }

    pub fn is_learned(self) -> bool {
        matches!(
            self,
            Method::MmcBr | Method::MmcJc | Method::PcaldaBr | Method::PcaldaJc
        )
    }

    /// Template of a method that needs no learning.
    pub fn extract(self, sample: &GaitSample) -> Result<Template> {
        match self {
            Method::RawBr => resample::raw_template(sample, Representation::Br),
            Method::RawJc => resample::raw_template(sample, Representation::Jc),
            Method::Random => Ok(Template::new(self, Some(sample.label.clone()), TemplateData::Empty)),
            m if m.is_learned() => Err(FeatureError::RequiresModel(m.id())),
            m => extract_geometric_features(m, sample),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Method {
    type Err = FeatureError;

    fn from_str(s: &str) -> Result<Method> {
        let lower = s.trim().to_ascii_lowercase();
        Method::ALL
            .into_iter()
            .find(|m| m.id() == lower)
            .ok_or_else(|| FeatureError::UnknownMethod(s.to_string()))
    }
}

/// Parses a comma-separated method list; `all` selects every method.
pub fn parse_method_list(s: &str) -> Result<Vec<Method>> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if part.eq_ignore_ascii_case("all") {
            return Ok(Method::ALL.to_vec());
        }
        let m: Method = part.parse()?;
        if !out.contains(&m) {
            out.push(m);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum TemplateData {
    Vector(Vec<f64>),
    Signals(Vec<Vec<f64>>),
    Empty,
}

/// A gait template in a method's feature space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Template {
    pub method: Method,
    pub label: Option<String>,
    pub data: TemplateData,
}

impl Template {
    pub fn new(method: Method, label: Option<String>, data: TemplateData) -> Template {
        Template {
            method,
            label,
            data,
        }
    }

    pub fn vector(method: Method, label: Option<String>, values: Vec<f64>) -> Template {
        Template::new(method, label, TemplateData::Vector(values))
    }

    /// Flattened dimensionality.
    pub fn dimension(&self) -> usize {
        match &self.data {
            TemplateData::Vector(v) => v.len(),
            TemplateData::Signals(s) => s.iter().map(Vec::len).sum(),
            TemplateData::Empty => 0,
        }
    }

    pub fn as_vector(&self) -> Option<&[f64]> {
        match &self.data {
            TemplateData::Vector(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        match &self.data {
            TemplateData::Vector(v) => v.iter().all(|x| x.is_finite()),
            TemplateData::Signals(s) => s.iter().flatten().all(|x| x.is_finite()),
            TemplateData::Empty => true,
        }
    }
}
