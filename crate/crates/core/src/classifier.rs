//! Persisted classifiers and ranked identification of a probe.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::features::{FeatureError, GaitSample, Method, MethodDistance, Template, TemplateDistance};
use crate::learning::{LearnedModel, LearningError};
use crate::mocap::{parse_asf, write_asf, MocapError, Skeleton};

pub const FORMAT: &str = "gait-classifier";
pub const VERSION: u32 = 1;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClassifierError {
    #[error("not a classifier file: {0}")]
    Format(String),
    #[error("gallery is empty")]
    EmptyGallery,
    #[error("probe layout does not match the classifier: {0}")]
    LayoutMismatch(String),
    #[error(transparent)]
    Feature(#[from] FeatureError),
    #[error(transparent)]
    Learning(#[from] LearningError),
    #[error(transparent)]
    Mocap(#[from] MocapError),
}

pub type Result<T, E = ClassifierError> = std::result::Result<T, E>;

/// A method bound to its learned model (if any) and the skeleton its
/// samples must use.
#[derive(Debug, Clone, PartialEq)]
pub struct Classifier {
    pub method: Method,
    pub seed: u64,
    pub skeleton: Arc<Skeleton>,
    pub model: Option<LearnedModel>,
}

#[derive(Serialize, Deserialize)]
struct Stored {
    format: String,
    version: u32,
    method: Method,
    seed: u64,
    /// ASF text of the skeleton.
    skeleton: String,
    model: Option<LearnedModel>,
}

/// One identity in a ranked answer.
#[derive(Debug, Clone, PartialEq)]
pub struct Ranked {
    pub label: String,
    /// Distance to the nearest gallery template of the identity; NaN for
    /// the random baseline.
    pub distance: f64,
}

impl Classifier {
    /// Learns the method on `samples`; methods without learning only record
    /// the skeleton.
    pub fn learn(method: Method, samples: &[GaitSample], skeleton: Arc<Skeleton>, seed: u64) -> Result<Classifier> {
        let model = if method.is_learned() {
            Some(LearnedModel::fit(method, samples)?)
        } else {
            None
        };
        Ok(Classifier {
            method,
            seed,
            skeleton,
            model,
        })
    }

    pub fn to_json(&self) -> String {
        let stored = Stored {
            format: FORMAT.into(),
            version: VERSION,
            method: self.method,
            seed: self.seed,
            skeleton: write_asf(&self.skeleton),
            model: self.model.clone(),
        };
        serde_json::to_string(&stored).expect("classifier serializes")
    }

    pub fn from_json(text: &str) -> Result<Classifier> {
        let s: Stored = serde_json::from_str(text).map_err(|e| ClassifierError::Format(e.to_string()))?;
        if s.format != FORMAT || s.version != VERSION {
            return Err(ClassifierError::Format(format!("{} v{}", s.format, s.version)));
        }
        if s.method.is_learned() != s.model.is_some() {
            return Err(ClassifierError::Format(format!("model presence does not fit {}", s.method)));
        }
        Ok(Classifier {
            method: s.method,
            seed: s.seed,
            skeleton: Arc::new(parse_asf(&s.skeleton)?),
            model: s.model,
        })
    }

    pub fn template(&self, sample: &GaitSample) -> Result<Template> {
        if sample.skeleton.layout() != self.skeleton.layout() {
            return Err(ClassifierError::LayoutMismatch(format!(
                "{} channels, expected {}",
                sample.skeleton.layout().width(),
                self.skeleton.layout().width()
            )));
        }
        Ok(match &self.model {
            Some(m) => m.template(sample)?,
            None => self.method.extract(sample)?,
        })
    }

    fn distance(&self, a: &Template, b: &Template) -> Result<f64> {
        Ok(match &self.model {
            Some(m) => m.distance(a, b)?,
            None => MethodDistance(self.method.descriptor().distance).distance(a, b)?,
        })
    }

    /// Gallery identities ordered by their nearest template (ties by
    /// gallery order). The random baseline shuffles them with the seed.
    pub fn rank(&self, probe: &GaitSample, gallery: &[GaitSample]) -> Result<Vec<Ranked>> {
        if gallery.is_empty() {
            return Err(ClassifierError::EmptyGallery);
        }
        if self.method == Method::Random {
            let mut ids: Vec<&str> = gallery.iter().map(|g| g.label.as_str()).collect();
            ids.sort_unstable();
            ids.dedup();
            ids.shuffle(&mut ChaCha8Rng::seed_from_u64(self.seed));
            return Ok(ids
                .into_iter()
                .map(|l| Ranked {
                    label: l.to_string(),
                    distance: f64::NAN,
                })
                .collect());
        }
        let p = self.template(probe)?;
        let mut best = BTreeMap::<&str, (f64, usize)>::new();
        for (i, g) in gallery.iter().enumerate() {
            let d = self.distance(&p, &self.template(g)?)?;
            let e = best.entry(&g.label).or_insert((d, i));
            if d < e.0 {
                *e = (d, i);
            }
        }
        let mut out: Vec<(&str, f64, usize)> = best.into_iter().map(|(l, (d, i))| (l, d, i)).collect();
        out.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.2.cmp(&b.2)));
        Ok(out
            .into_iter()
            .map(|(l, d, _)| Ranked {
                label: l.to_string(),
                distance: d,
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth;

    fn samples() -> (Arc<Skeleton>, Vec<GaitSample>) {
        let skel = Arc::new(synth::cmu_skeleton());
        let s = synth::gait_cycles(&skel, 3, 4, 40..=46, 0.5, 21)
            .iter()
            .map(|m| GaitSample::from_motion(m, skel.clone()).unwrap())
            .collect();
        (skel, s)
    }

    #[test]
    fn round_trip_keeps_transform() {
        let (skel, s) = samples();
        let c = Classifier::learn(Method::MmcBr, &s, skel, 5).unwrap();
        let back = Classifier::from_json(&c.to_json()).unwrap();
        let (a, b) = (c.model.as_ref().unwrap(), back.model.as_ref().unwrap());
        assert_eq!(a.transform.matrix, b.transform.matrix);
        assert_eq!(a.metric, b.metric);
        assert_eq!(back.skeleton.layout(), c.skeleton.layout());
    }

    #[test]
    fn probe_from_gallery_ranks_first() {
        let (skel, s) = samples();
        for m in [Method::Ahmed, Method::Jiang, Method::PcaldaJc] {
            let c = Classifier::learn(m, &s, skel.clone(), 0).unwrap();
            let r = c.rank(&s[5], &s).unwrap();
            assert_eq!(r[0].label, s[5].label);
            assert_eq!(r[0].distance, 0.0);
            assert_eq!(r.len(), 3);
        }
    }

    #[test]
    fn random_has_no_model() {
        let (skel, s) = samples();
        let c = Classifier::learn(Method::Random, &s, skel, 0).unwrap();
        assert!(c.model.is_none());
        let only: Vec<GaitSample> = s.iter().filter(|g| g.label == s[0].label).cloned().collect();
        let r = c.rank(&s[11], &only).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].label, s[0].label);
    }

    #[test]
    fn rejects_foreign_files() {
        assert!(matches!(Classifier::from_json("{}"), Err(ClassifierError::Format(_))));
    }
}
