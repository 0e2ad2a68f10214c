use nalgebra::DMatrix;

use super::{DistanceKind, FeatureError, MethodDescriptor, Result, Template, TemplateData};
use crate::segmentation::dtw_scalar;

/// A dissimilarity between two templates of one method.
pub trait TemplateDistance: Send + Sync {
    fn distance(&self, a: &Template, b: &Template) -> Result<f64>;
}

/// The fixed distance of a non-learned method.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MethodDistance(pub DistanceKind);

impl TemplateDistance for MethodDistance {
    fn distance(&self, a: &Template, b: &Template) -> Result<f64> {
        if a.method != b.method {
            return Err(mismatch(format!("{} vs {}", a.method, b.method)));
        }
        match self.0 {
            DistanceKind::Euclidean => euclidean(a, b),
            DistanceKind::DtwSum => dtw_sum(a, b),
            DistanceKind::Covariance => covariance_distance(a, b),
            DistanceKind::None => Ok(0.0),
            DistanceKind::Mahalanobis => Err(FeatureError::RequiresModel(a.method.id())),
        }
    }
}

/// Distance of `method` between two of its templates.
pub fn template_distance(method: &MethodDescriptor, a: &Template, b: &Template) -> Result<f64> {
    if a.method != method.method || b.method != method.method {
        return Err(mismatch(format!(
            "expected {} templates, got {} and {}",
            method.method, a.method, b.method
        )));
    }
    MethodDistance(method.distance).distance(a, b)
}

fn mismatch(msg: String) -> FeatureError {
    FeatureError::LayoutMismatch(msg)
}

fn euclidean(a: &Template, b: &Template) -> Result<f64> {
    match (&a.data, &b.data) {
        (TemplateData::Vector(x), TemplateData::Vector(y)) if x.len() == y.len() => Ok(x
            .iter()
            .zip(y)
            .map(|(p, q)| (p - q) * (p - q))
            .sum::<f64>()
            .sqrt()),
        _ => Err(mismatch(format!(
            "vectors of length {} and {}",
            a.dimension(),
            b.dimension()
        ))),
    }
}

fn signals<'a>(a: &'a Template, b: &'a Template) -> Result<(&'a [Vec<f64>], &'a [Vec<f64>])> {
    match (&a.data, &b.data) {
        (TemplateData::Signals(x), TemplateData::Signals(y)) if x.len() == y.len() => Ok((x, y)),
        _ => Err(mismatch("signal bundles differ in shape".into())),
    }
}

fn dtw_sum(a: &Template, b: &Template) -> Result<f64> {
    let (x, y) = signals(a, b)?;
    Ok(x.iter().zip(y).map(|(p, q)| dtw_scalar(p, q)).sum())
}

fn covariance(signals: &[Vec<f64>]) -> Result<DMatrix<f64>> {
    let t = signals.first().map_or(0, Vec::len);
    if t == 0 || signals.iter().any(|s| s.len() != t) {
        return Err(mismatch("trajectories differ in length".into()));
    }
    let mut m = DMatrix::from_fn(signals.len(), t, |i, j| signals[i][j]);
    for mut row in m.row_iter_mut() {
        let mu = row.mean();
        row.add_scalar_mut(-mu);
    }
    Ok(&m * m.transpose() / t as f64)
}

/// Frobenius norm of the difference of the two templates' trajectory
/// covariance matrices (population covariance over time).
pub fn covariance_distance(a: &Template, b: &Template) -> Result<f64> {
    let (x, y) = signals(a, b)?;
    Ok((covariance(x)? - covariance(y)?).norm())
}
