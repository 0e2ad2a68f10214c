//! Gait recognition from motion-capture data.
//!
//! The crate covers the whole pipeline:
//!
//! * [`mocap`]: ASF/AMC parsing, the prototypical skeleton, forward kinematics
//!   and root normalization.
//! * [`segmentation`]: dynamic time warping and extraction of gait cycles from
//!   long recordings.
//! * [`features`]: gait samples, thirteen geometric feature extractors, raw
//!   baselines and per-method template distances.
//! * [`learning`]: linear feature transforms learned by the Maximum Margin
//!   Criterion and by PCA+LDA, compared with the Mahalanobis distance.
//! * [`evaluation`]: homogeneous and heterogeneous setups, nested
//!   cross-validation, class separability coefficients, classifier metrics and
//!   the report format.
//! * [`classifier`]: persisted classifiers for the learn/classify workflow.
//! * [`synth`]: a CMU-style skeleton and a synthetic walking generator for
//!   examples and tests.

pub mod classifier;
pub mod evaluation;
pub mod features;
pub mod learning;
pub mod mocap;
pub mod segmentation;
pub mod synth;
