use nalgebra::{DMatrix, DVector};

use super::{LearningError, Result};

/// Labeled, length-normalized samples of one dimensionality.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset {
    pub samples: Vec<DVector<f64>>,
    pub labels: Vec<String>,
}

impl LabeledDataset {
    pub fn new(samples: Vec<Vec<f64>>, labels: Vec<String>) -> Result<LabeledDataset> {
        if samples.is_empty() {
            return Err(LearningError::Empty);
        }
        if samples.len() != labels.len() {
            return Err(LearningError::DimensionMismatch {
                expected: samples.len(),
                found: labels.len(),
            });
        }
        let d = samples[0].len();
        if let Some(s) = samples.iter().find(|s| s.len() != d) {
            return Err(LearningError::DimensionMismatch {
                expected: d,
                found: s.len(),
            });
        }
        Ok(LabeledDataset {
            samples: samples.into_iter().map(DVector::from_vec).collect(),
            labels,
        })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.samples.first().map_or(0, |s| s.len())
    }

    /// Member indices per class, classes sorted by label.
    pub fn classes(&self) -> Vec<(String, Vec<usize>)> {
        let mut map = std::collections::BTreeMap::<&str, Vec<usize>>::new();
        for (i, l) in self.labels.iter().enumerate() {
            map.entry(l).or_default().push(i);
        }
        map.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
    }

    pub(crate) fn require_classes(&self) -> Result<Vec<(String, Vec<usize>)>> {
        let classes = self.classes();
        if classes.len() < 2 {
            return Err(LearningError::TooFewClasses(classes.len()));
        }
        Ok(classes)
    }

    pub fn mean(&self) -> DVector<f64> {
        mean_of(self.samples.iter())
    }

    pub(crate) fn mean_of_class(&self, members: &[usize]) -> DVector<f64> {
        mean_of(members.iter().map(|&i| &self.samples[i]))
    }

    /// `Υ = [μ₁−μ ⋯ μ_C−μ]` over sorted classes.
    pub(crate) fn upsilon(&self, classes: &[(String, Vec<usize>)], mu: &DVector<f64>) -> DMatrix<f64> {
        let cols: Vec<DVector<f64>> = classes
            .iter()
            .map(|(_, m)| self.mean_of_class(m) - mu)
            .collect();
        DMatrix::from_columns(&cols)
    }

    /// Columns `(gₙ − μ_c)/√N_c`, whose outer product sum is `Σ_w`.
    pub(crate) fn within_factor(&self, classes: &[(String, Vec<usize>)]) -> DMatrix<f64> {
        let mut cols = Vec::with_capacity(self.len());
        for (_, members) in classes {
            let mc = self.mean_of_class(members);
            let w = 1.0 / (members.len() as f64).sqrt();
            for &i in members {
                cols.push((&self.samples[i] - &mc) * w);
            }
        }
        DMatrix::from_columns(&cols)
    }
}

fn mean_of<'a>(it: impl Iterator<Item = &'a DVector<f64>>) -> DVector<f64> {
    let mut n = 0usize;
    let mut acc: Option<DVector<f64>> = None;
    for v in it {
        n += 1;
        match &mut acc {
            Some(a) => *a += v,
            None => acc = Some(v.clone()),
        }
    }
    acc.map(|a| a / n as f64).unwrap_or_else(|| DVector::zeros(0))
}

/// Dense scatter matrices. Each is `D × D`, so this is meant for small `D`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScatterSet {
    pub mean: DVector<f64>,
    pub class_means: Vec<DVector<f64>>,
    pub between: DMatrix<f64>,
    pub within: DMatrix<f64>,
    pub total: DMatrix<f64>,
}

/// `Σ_b = Σ_c (μ_c−μ)(μ_c−μ)ᵀ`, `Σ_w = Σ_c (1/N_c) Σ_{n∈c} (gₙ−μ_c)(gₙ−μ_c)ᵀ`,
/// `Σ_t = Σ_b + Σ_w`.
pub fn compute_scatter(data: &LabeledDataset) -> Result<ScatterSet> {
    let classes = data.require_classes()?;
    let mean = data.mean();
    let ups = data.upsilon(&classes, &mean);
    let w = data.within_factor(&classes);
    let between = &ups * ups.transpose();
    let within = &w * w.transpose();
    let total = &between + &within;
    Ok(ScatterSet {
        class_means: classes.iter().map(|(_, m)| data.mean_of_class(m)).collect(),
        mean,
        between,
        within,
        total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn labels(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn two_singletons() {
        let d = LabeledDataset::new(vec![vec![-1.0], vec![1.0]], labels(&["a", "b"])).unwrap();
        let s = compute_scatter(&d).unwrap();
        assert_eq!(s.mean[0], 0.0);
        assert_eq!(s.between[(0, 0)], 2.0);
        assert_eq!(s.within[(0, 0)], 0.0);
    }

    #[test]
    fn identical_samples() {
        let d = LabeledDataset::new(vec![vec![2.0, 3.0]; 4], labels(&["a", "a", "b", "b"])).unwrap();
        let s = compute_scatter(&d).unwrap();
        assert_eq!(s.between.norm(), 0.0);
        assert_eq!(s.within.norm(), 0.0);
    }

    #[test]
    fn one_class_is_rejected() {
        let d = LabeledDataset::new(vec![vec![1.0]; 3], labels(&["a", "a", "a"])).unwrap();
        assert_eq!(compute_scatter(&d), Err(LearningError::TooFewClasses(1)));
    }

    #[test]
    fn matches_double_loop() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let dim = rng.random_range(1..6);
            let n = rng.random_range(4..15);
            let samples: Vec<Vec<f64>> = (0..n)
                .map(|_| (0..dim).map(|_| rng.random_range(-3.0..3.0)).collect())
                .collect();
            let labs: Vec<String> = (0..n).map(|i| format!("c{}", i % 3)).collect();
            let data = LabeledDataset::new(samples.clone(), labs.clone()).unwrap();
            let s = compute_scatter(&data).unwrap();

            // naive evaluation, element by element
            let mu: Vec<f64> = (0..dim)
                .map(|k| samples.iter().map(|x| x[k]).sum::<f64>() / n as f64)
                .collect();
            let mut sb = vec![vec![0.0; dim]; dim];
            let mut sw = vec![vec![0.0; dim]; dim];
            for c in ["c0", "c1", "c2"] {
                let idx: Vec<usize> = (0..n).filter(|&i| labs[i] == c).collect();
                let nc = idx.len() as f64;
                let mc: Vec<f64> = (0..dim)
                    .map(|k| idx.iter().map(|&i| samples[i][k]).sum::<f64>() / nc)
                    .collect();
                for a in 0..dim {
                    for b in 0..dim {
                        sb[a][b] += (mc[a] - mu[a]) * (mc[b] - mu[b]);
                        for &i in &idx {
                            sw[a][b] += (samples[i][a] - mc[a]) * (samples[i][b] - mc[b]) / nc;
                        }
                    }
                }
            }
            for a in 0..dim {
                for b in 0..dim {
                    assert!((s.between[(a, b)] - sb[a][b]).abs() < 1e-10);
                    assert!((s.within[(a, b)] - sw[a][b]).abs() < 1e-10);
                    assert!((s.total[(a, b)] - sb[a][b] - sw[a][b]).abs() < 1e-10);
                }
            }
        }
    }
}
