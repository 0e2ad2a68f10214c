use serde::{Deserialize, Serialize};

use super::{learn_mmc, learn_pcalda, apply_transform, LabeledDataset, LearningError, LinearTransform, MahalanobisMetric, Result};
use crate::features::{raw_vector, FeatureError, GaitSample, Method, Representation, Template, TemplateData, TemplateDistance};

/// Everything a learned method needs to turn samples into templates and
/// compare them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LearnedModel {
    pub method: Method,
    /// Common length the samples are resampled to: the mean length of the
    /// learning samples.
    pub frames: usize,
    pub transform: LinearTransform,
    pub metric: MahalanobisMetric,
}

impl LearnedModel {
    pub fn fit(method: Method, samples: &[GaitSample]) -> Result<LearnedModel> {
        if !method.is_learned() {
            return Err(FeatureError::UnknownMethod(format!("{method} is not learned")).into());
        }
        if samples.is_empty() {
            return Err(LearningError::Empty);
        }
        let mean_len = samples.iter().map(|s| s.len() as f64).sum::<f64>() / samples.len() as f64;
        let frames = (mean_len.round() as usize).max(2);
        let rep = method.descriptor().representation;
        let vectors = samples
            .iter()
            .map(|s| raw_vector(s, rep, frames))
            .collect::<Result<Vec<_>, _>>()?;
        let labels = samples.iter().map(|s| s.label.clone()).collect();
        let data = LabeledDataset::new(vectors, labels)?;
        let transform = match method {
            Method::MmcBr | Method::MmcJc => learn_mmc(&data)?,
            _ => learn_pcalda(&data)?,
        };
        let templates = data
            .samples
            .iter()
            .map(|g| apply_transform(&transform, g.as_slice()))
            .collect::<Result<Vec<_>>>()?;
        let metric = MahalanobisMetric::fit(&templates)?;
        Ok(LearnedModel {
            method,
            frames,
            transform,
            metric,
        })
    }

    pub fn representation(&self) -> Representation {
        self.method.descriptor().representation
    }

    pub fn template(&self, sample: &GaitSample) -> Result<Template> {
        let g = raw_vector(sample, self.representation(), self.frames)?;
        let v = apply_transform(&self.transform, &g)?;
        Ok(Template::new(
            self.method,
            Some(sample.label.clone()),
            TemplateData::Vector(v),
        ))
    }
}

impl TemplateDistance for LearnedModel {
    fn distance(&self, a: &Template, b: &Template) -> crate::features::Result<f64> {
        self.metric.distance_templates(a, b)
    }
}

impl MahalanobisMetric {
    pub fn distance_templates(&self, a: &Template, b: &Template) -> crate::features::Result<f64> {
        <MahalanobisMetric as TemplateDistance>::distance(self, a, b)
    }
}
