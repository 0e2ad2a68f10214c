//! Experimental protocol and metrics.
//!
//! A setup picks identity classes for learning and evaluation, either the
//! same classes with disjoint samples (homogeneous) or disjoint classes
//! (heterogeneous). For every repetition and outer fold the learned methods
//! are fitted on the learning samples, the evaluation templates are
//! compared pairwise, class separability is measured on them, and an inner
//! cross-validation loop classifies each fold against the others. Results
//! are averaged and written in a fixed CSV block layout.

mod matrix;
mod metrics;
mod report;
mod run;
mod separability;
mod split;

pub use matrix::DistanceMatrix;
pub use metrics::{
    classifier_metrics, classify_wta, cmc_from_ranks, inner_folds, random_ranks, ranks, ClassifierMetrics,
    ErrorCurves,
};
pub use report::{parse_report, write_metadata, write_report, MetricsReport};
pub use run::{evaluate_method, evaluate_methods, EvaluationInput};
pub use separability::{class_separability, Separability};
pub use split::{outer_splits, split_data, Split};

use std::fmt;
use std::str::FromStr;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::features::FeatureError;
use crate::learning::LearningError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EvaluationError {
    #[error("setup needs {needed} classes, database has {available}")]
    InsufficientClasses { needed: usize, available: usize },
    #[error("gallery is empty")]
    EmptyGallery,
    #[error("need at least 2 classes with templates, got {0}")]
    TooFewClasses(usize),
    #[error("bad setup {0:?}: expected homogeneous:<C> or heterogeneous:<CL>,<CE>")]
    BadSetup(String),
    #[error("report line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Feature(#[from] FeatureError),
    #[error(transparent)]
    Learning(#[from] LearningError),
}

pub type Result<T, E = EvaluationError> = std::result::Result<T, E>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SetupKind {
    /// The same `classes` identities for learning and evaluation.
    Homogeneous { classes: usize },
    /// Disjoint identities for learning and evaluation.
    Heterogeneous { learning: usize, evaluation: usize },
}

impl SetupKind {
    pub fn evaluation_classes(self) -> usize {
        match self {
            SetupKind::Homogeneous { classes } => classes,
            SetupKind::Heterogeneous { evaluation, .. } => evaluation,
        }
    }
}

impl fmt::Display for SetupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetupKind::Homogeneous { classes } => write!(f, "homogeneous:{classes}"),
            SetupKind::Heterogeneous {
                learning,
                evaluation,
            } => write!(f, "heterogeneous:{learning},{evaluation}"),
        }
    }
}

impl FromStr for SetupKind {
    type Err = EvaluationError;

    fn from_str(s: &str) -> Result<SetupKind> {
        let bad = || EvaluationError::BadSetup(s.to_string());
        let (kind, args) = s.trim().split_once(':').ok_or_else(bad)?;
        let nums: Vec<usize> = args
            .split(',')
            .map(|a| a.trim().parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|_| bad())?;
        match (kind.to_ascii_lowercase().as_str(), nums.as_slice()) {
            ("homogeneous", [c]) if *c >= 2 => Ok(SetupKind::Homogeneous { classes: *c }),
            ("heterogeneous", [l, e]) if *l >= 2 && *e >= 2 => Ok(SetupKind::Heterogeneous {
                learning: *l,
                evaluation: *e,
            }),
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SetupConfig {
    pub kind: SetupKind,
    pub repetitions: usize,
    pub seed: u64,
    pub outer_folds: usize,
    pub inner_folds: usize,
    /// Points per FAR/FRR, ROC and RCL/PCN sequence.
    pub fineness: usize,
}

impl SetupConfig {
    pub fn new(kind: SetupKind, seed: u64) -> SetupConfig {
        SetupConfig {
            kind,
            repetitions: 3,
            seed,
            outer_folds: 3,
            inner_folds: 10,
            fineness: 30,
        }
    }

    pub fn with_repetitions(mut self, repetitions: usize) -> SetupConfig {
        self.repetitions = repetitions;
        self
    }
}

/// What a random stream is used for; part of the stream id.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Purpose {
    Split = 1,
    InnerFolds = 2,
    Random = 3,
}

/// Independent generator for one `(purpose, repetition, fold, salt)` tuple.
/// Streams depend only on their ids, so results do not depend on the order
/// in which work is scheduled.
pub(crate) fn stream(seed: u64, purpose: Purpose, repetition: usize, fold: usize, salt: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let id = ((purpose as u64) << 56)
        ^ ((repetition as u64 & 0xffff) << 40)
        ^ ((fold as u64 & 0xffff) << 24)
        ^ (salt & 0xff_ffff);
    rng.set_stream(id);
    rng
}
