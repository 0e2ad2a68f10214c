use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::linalg::symmetric_pseudo_inverse;
use super::{LearnedModel, LearningError, Result};
use crate::features::{FeatureError, GaitSample, Template, TemplateDistance};

/// Mahalanobis distance under the population covariance of a set of
/// feature vectors, inverted with the pseudo-inverse.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MahalanobisMetric {
    pub covariance: DMatrix<f64>,
    pub inverse: DMatrix<f64>,
}

impl MahalanobisMetric {
    pub fn from_covariance(covariance: DMatrix<f64>) -> MahalanobisMetric {
        let inverse = symmetric_pseudo_inverse(&covariance);
        MahalanobisMetric {
            covariance,
            inverse,
        }
    }

    /// Covariance `(1/N) Σ (xₙ−x̄)(xₙ−x̄)ᵀ` of `vectors`.
    pub fn fit(vectors: &[Vec<f64>]) -> Result<MahalanobisMetric> {
        let first = vectors.first().ok_or(LearningError::Empty)?;
        let k = first.len();
        let n = vectors.len() as f64;
        let cols: Vec<DVector<f64>> = vectors.iter().map(|v| DVector::from_column_slice(v)).collect();
        if let Some(v) = cols.iter().find(|v| v.len() != k) {
            return Err(LearningError::DimensionMismatch {
                expected: k,
                found: v.len(),
            });
        }
        let mean = cols.iter().fold(DVector::zeros(k), |a, v| a + v) / n;
        let centered: Vec<DVector<f64>> = cols.iter().map(|v| v - &mean).collect();
        let m = DMatrix::from_columns(&centered);
        let cov = if k == 0 {
            DMatrix::zeros(0, 0)
        } else {
            &m * m.transpose() / n
        };
        Ok(MahalanobisMetric::from_covariance(cov))
    }

    pub fn dim(&self) -> usize {
        self.inverse.nrows()
    }

    /// `√((a−b)ᵀ S⁺ (a−b))`.
    pub fn distance(&self, a: &[f64], b: &[f64]) -> Result<f64> {
        for v in [a, b] {
            if v.len() != self.dim() {
                return Err(LearningError::DimensionMismatch {
                    expected: self.dim(),
                    found: v.len(),
                });
            }
        }
        let d = DVector::from_iterator(a.len(), a.iter().zip(b).map(|(x, y)| x - y));
        let q = d.dot(&(&self.inverse * &d));
        Ok(q.max(0.0).sqrt())
    }
}

/// A learned model with its gallery of labeled templates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MahalanobisClassifier {
    pub model: LearnedModel,
    pub gallery: Vec<Template>,
}

impl MahalanobisClassifier {
    pub fn new(model: LearnedModel, gallery_samples: &[GaitSample]) -> Result<MahalanobisClassifier> {
        let gallery = gallery_samples
            .iter()
            .map(|s| model.template(s))
            .collect::<Result<_>>()?;
        Ok(MahalanobisClassifier { model, gallery })
    }

    /// Label and distance of the nearest gallery template; the lowest
    /// gallery index wins ties.
    pub fn classify(&self, sample: &GaitSample) -> Result<Option<(String, f64)>> {
        let probe = self.model.template(sample)?;
        let mut best: Option<(usize, f64)> = None;
        for (i, g) in self.gallery.iter().enumerate() {
            let d = mahalanobis_distance(self, &probe, g)?;
            if best.is_none_or(|(_, b)| d < b) {
                best = Some((i, d));
            }
        }
        Ok(best.map(|(i, d)| (self.gallery[i].label.clone().unwrap_or_default(), d)))
    }
}

pub fn mahalanobis_distance(c: &MahalanobisClassifier, a: &Template, b: &Template) -> Result<f64> {
    match (a.as_vector(), b.as_vector()) {
        (Some(x), Some(y)) => c.model.metric.distance(x, y),
        _ => Err(FeatureError::LayoutMismatch("Mahalanobis needs vector templates".into()).into()),
    }
}

impl TemplateDistance for MahalanobisMetric {
    fn distance(&self, a: &Template, b: &Template) -> crate::features::Result<f64> {
        match (a.as_vector(), b.as_vector()) {
            (Some(x), Some(y)) => MahalanobisMetric::distance(self, x, y)
                .map_err(|e| FeatureError::LayoutMismatch(e.to_string())),
            _ => Err(FeatureError::LayoutMismatch(
                "Mahalanobis needs vector templates".into(),
            )),
        }
    }
}
