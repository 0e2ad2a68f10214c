use std::collections::BTreeMap;

use rayon::prelude::*;

use super::dtw::dtw_prefix_distances;
use crate::mocap::MotionSequence;

/// Window search parameters. Lengths and stride are relative to the exemplar
/// length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtractionParams {
    pub threshold: f64,
    pub min_len_factor: f64,
    pub max_len_factor: f64,
    pub stride_factor: f64,
    /// Windows overlapping an accepted window by more than this fraction of
    /// the shorter window are suppressed.
    pub max_overlap: f64,
    pub min_samples_per_subject: usize,
}

impl ExtractionParams {
    pub fn with_threshold(threshold: f64) -> Self {
        ExtractionParams {
            threshold,
            ..Default::default()
        }
    }
}

impl Default for ExtractionParams {
    fn default() -> Self {
        ExtractionParams {
            threshold: 302.0,
            min_len_factor: 0.5,
            max_len_factor: 2.0,
            stride_factor: 0.25,
            max_overlap: 0.5,
            min_samples_per_subject: 10,
        }
    }
}

/// Best-matching window for one start frame of one motion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Candidate {
    pub motion: usize,
    pub start: usize,
    pub len: usize,
    pub distance: f64,
}

impl Candidate {
    fn overlap(&self, other: &Candidate) -> f64 {
        let lo = self.start.max(other.start);
        let hi = (self.start + self.len).min(other.start + other.len);
        if hi <= lo {
            return 0.0;
        }
        (hi - lo) as f64 / self.len.min(other.len) as f64
    }
}

/// A gait cycle cut out of a source motion; `start..end` are 0-based frame
/// indices into the source.
#[derive(Debug, Clone, PartialEq)]
pub struct GaitCycle {
    pub subject: String,
    pub source_file: String,
    pub start: usize,
    pub end: usize,
    pub distance: f64,
    pub motion: MotionSequence,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct GaitDatabase {
    pub samples: Vec<GaitCycle>,
    pub subjects: BTreeMap<String, usize>,
    pub threshold: f64,
}

impl GaitDatabase {
    /// Builds the subject table from the samples.
    pub fn from_samples(samples: Vec<GaitCycle>, threshold: f64) -> GaitDatabase {
        let mut subjects = BTreeMap::new();
        for s in &samples {
            *subjects.entry(s.subject.clone()).or_insert(0) += 1;
        }
        GaitDatabase {
            samples,
            subjects,
            threshold,
        }
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn labels(&self) -> Vec<&str> {
        self.samples.iter().map(|s| s.subject.as_str()).collect()
    }
}

fn window_bounds(exemplar_len: usize, p: &ExtractionParams) -> (usize, usize, usize) {
    let l = exemplar_len as f64;
    let min_len = ((p.min_len_factor * l).ceil() as usize).max(1);
    let max_len = ((p.max_len_factor * l).floor() as usize).max(min_len);
    let stride = ((p.stride_factor * l).round() as usize).max(1);
    (min_len, max_len, stride)
}

/// For every start frame on the stride grid, the window length in
/// `[min_len, max_len]` with the smallest DTW distance to the exemplar
/// (shortest wins ties). Independent of the threshold.
pub fn candidate_windows(
    motions: &[MotionSequence],
    exemplar: &MotionSequence,
    params: &ExtractionParams,
) -> Vec<Candidate> {
    if exemplar.is_empty() {
        return Vec::new();
    }
    let (min_len, max_len, stride) = window_bounds(exemplar.len(), params);
    motions
        .par_iter()
        .enumerate()
        .flat_map_iter(|(mi, m)| {
            let n = m.len();
            let starts = if n >= min_len { (0..=n - min_len).step_by(stride).collect() } else { Vec::new() };
            starts.into_iter().filter_map(move |start| {
                let pre = dtw_prefix_distances(&exemplar.frames, &m.frames[start..], max_len);
                pre.iter()
                    .enumerate()
                    .skip(min_len - 1)
                    .fold(None, |best: Option<(usize, f64)>, (k, &d)| match best {
                        Some((_, bd)) if bd <= d => best,
                        _ => Some((k + 1, d)),
                    })
                    .map(|(len, distance)| Candidate {
                        motion: mi,
                        start,
                        len,
                        distance,
                    })
            })
        })
        .collect()
}

/// Extraction with the default window search and the given threshold.
pub fn extract_gait_cycles(
    motions: &[MotionSequence],
    exemplar: &MotionSequence,
    threshold: f64,
) -> GaitDatabase {
    extract_with(motions, exemplar, &ExtractionParams::with_threshold(threshold))
}

/// Runs the full extraction: candidate search, thresholding, overlap
/// suppression (lowest distance first) and the per-subject minimum.
pub fn extract_with(
    motions: &[MotionSequence],
    exemplar: &MotionSequence,
    params: &ExtractionParams,
) -> GaitDatabase {
    let mut cands: Vec<Candidate> = candidate_windows(motions, exemplar, params)
        .into_iter()
        .filter(|c| c.distance <= params.threshold)
        .collect();
    cands.sort_by(|a, b| {
        a.distance
            .total_cmp(&b.distance)
            .then(a.motion.cmp(&b.motion))
            .then(a.start.cmp(&b.start))
    });
    let mut accepted: Vec<Candidate> = Vec::new();
    for c in cands {
        let clash = accepted
            .iter()
            .any(|a| a.motion == c.motion && a.overlap(&c) > params.max_overlap);
        if !clash {
            accepted.push(c);
        }
    }
    accepted.sort_by_key(|c| (c.motion, c.start));

    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for c in &accepted {
        *counts.entry(motions[c.motion].subject_id.as_str()).or_insert(0) += 1;
    }
    let samples = accepted
        .iter()
        .filter(|c| counts[motions[c.motion].subject_id.as_str()] >= params.min_samples_per_subject)
        .map(|c| {
            let m = &motions[c.motion];
            GaitCycle {
                subject: m.subject_id.clone(),
                source_file: m.source_file.clone(),
                start: c.start,
                end: c.start + c.len,
                distance: c.distance,
                motion: m.window(c.start, c.start + c.len),
            }
        })
        .collect();
    GaitDatabase::from_samples(samples, params.threshold)
}
