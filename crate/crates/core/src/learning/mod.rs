//! Learned linear features.
//!
//! Both learners map a length-normalized raw sample `g` (BR channels or
//! joint coordinates, flattened frame by frame) to a template `Φᵀg`.
//! [`learn_mmc`] keeps the directions whose whitened between-class scatter
//! is at least one half; [`learn_pcalda`] projects onto the leading
//! principal components (as many as there are classes) and solves the
//! Fisher problem there. Templates are compared by the Mahalanobis distance
//! of the learning templates' covariance.

mod dataset;
mod linalg;
mod mahalanobis;
mod mmc;
mod model;
mod pcalda;

pub use dataset::{compute_scatter, LabeledDataset, ScatterSet};
pub use linalg::{fix_column_signs, symmetric_pseudo_inverse};
pub use mahalanobis::{mahalanobis_distance, MahalanobisClassifier, MahalanobisMetric};
pub use mmc::{learn_mmc, mmc_decomposition, MmcDecomposition, MMC_RETENTION, SPECTRUM_CUTOFF};
pub use model::LearnedModel;
pub use pcalda::{learn_pcalda, pcalda_decomposition, PcaLdaDecomposition};

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::features::FeatureError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LearningError {
    #[error("need at least 2 classes, got {0}")]
    TooFewClasses(usize),
    #[error("total scatter has no positive spectrum")]
    DegenerateScatter,
    #[error("within-class scatter is singular even after regularization")]
    SingularWithinScatter,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("empty learning set")]
    Empty,
    #[error(transparent)]
    Feature(#[from] FeatureError),
}

pub type Result<T, E = LearningError> = std::result::Result<T, E>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TransformKind {
    Mmc,
    PcaLda,
}

/// A learned feature matrix `Φ` of size `D × D̃`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearTransform {
    pub matrix: DMatrix<f64>,
    pub kind: TransformKind,
    /// Retained Δ entries (MMC) or generalized eigenvalues (PCA+LDA), in
    /// column order.
    pub eigenvalues: Vec<f64>,
}

impl LinearTransform {
    pub fn input_dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn output_dim(&self) -> usize {
        self.matrix.ncols()
    }
}

/// `Φᵀx`.
pub fn apply_transform(t: &LinearTransform, x: &[f64]) -> Result<Vec<f64>> {
    if x.len() != t.input_dim() {
        return Err(LearningError::DimensionMismatch {
            expected: t.input_dim(),
            found: x.len(),
        });
    }
    let v = DVector::from_column_slice(x);
    Ok(t.matrix.tr_mul(&v).as_slice().to_vec())
}
