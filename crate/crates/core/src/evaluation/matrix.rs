use std::time::Instant;

use rayon::prelude::*;

use super::{EvaluationError, Result};
use crate::features::{Template, TemplateDistance};

/// Symmetric matrix of pairwise template distances, with labels.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    pub labels: Vec<String>,
    n: usize,
    values: Vec<f64>,
    /// Mean wall-clock time of one distance computation in milliseconds.
    pub mean_ms: f64,
}

impl DistanceMatrix {
    /// Computes the upper triangle in parallel; the diagonal is zero.
    /// Templates without a label get an empty one.
    pub fn compute(templates: &[Template], distance: &dyn TemplateDistance) -> Result<DistanceMatrix> {
        let n = templates.len();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let start = Instant::now();
        let d: Vec<f64> = pairs
            .par_iter()
            .map(|&(i, j)| distance.distance(&templates[i], &templates[j]))
            .collect::<Result<_, _>>()?;
        let elapsed = start.elapsed().as_secs_f64() * 1e3;
        let mut values = vec![0.0; n * n];
        for (&(i, j), v) in pairs.iter().zip(d) {
            values[i * n + j] = v;
            values[j * n + i] = v;
        }
        Ok(DistanceMatrix {
            labels: templates.iter().map(|t| t.label.clone().unwrap_or_default()).collect(),
            n,
            values,
            mean_ms: if pairs.is_empty() { 0.0 } else { elapsed / pairs.len() as f64 },
        })
    }

    /// From explicit values; `values` is row-major `n × n` and is
    /// symmetrized.
    pub fn from_values(labels: Vec<String>, values: Vec<f64>) -> Result<DistanceMatrix> {
        let n = labels.len();
        if values.len() != n * n {
            return Err(EvaluationError::Parse {
                line: 0,
                msg: format!("{} values for {n} labels", values.len()),
            });
        }
        let mut m = DistanceMatrix {
            labels,
            n,
            values,
            mean_ms: 0.0,
        };
        for i in 0..n {
            m.values[i * n + i] = 0.0;
            for j in i + 1..n {
                let v = 0.5 * (m.values[i * n + j] + m.values[j * n + i]);
                m.values[i * n + j] = v;
                m.values[j * n + i] = v;
            }
        }
        Ok(m)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n + j]
    }

    /// Distances of unordered pairs `i < j`, split into genuine (same label)
    /// and impostor.
    pub fn pair_distances(&self) -> (Vec<f64>, Vec<f64>) {
        let mut genuine = Vec::new();
        let mut impostor = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.labels[i] == self.labels[j] {
                    genuine.push(self.get(i, j));
                } else {
                    impostor.push(self.get(i, j));
                }
            }
        }
        (genuine, impostor)
    }
}
