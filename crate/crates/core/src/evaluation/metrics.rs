use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{DistanceMatrix, EvaluationError, Result};
use crate::features::{Template, TemplateDistance};

/// Label of the gallery template nearest to `probe`; ties go to the lowest
/// gallery index.
pub fn classify_wta(probe: &Template, gallery: &[Template], distance: &dyn TemplateDistance) -> Result<String> {
    let mut best: Option<(f64, usize)> = None;
    for (i, g) in gallery.iter().enumerate() {
        let d = distance.distance(probe, g)?;
        if best.is_none_or(|(b, _)| d < b) {
            best = Some((d, i));
        }
    }
    let (_, i) = best.ok_or(EvaluationError::EmptyGallery)?;
    Ok(gallery[i].label.clone().unwrap_or_default())
}

/// Fold index of each of `n` items: a random permutation dealt round-robin
/// into `min(k, n)` folds.
pub fn inner_folds<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Vec<usize> {
    let k = k.min(n).max(1);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut folds = vec![0; n];
    for (pos, &i) in order.iter().enumerate() {
        folds[i] = pos % k;
    }
    folds
}

/// For each item, the 1-based rank of its own class when the item is a
/// probe and the other folds are the gallery. Classes are ordered by their
/// nearest gallery template (ties by gallery index). `None` when the class
/// has no gallery template.
pub fn ranks(dm: &DistanceMatrix, folds: &[usize]) -> Vec<Option<usize>> {
    (0..dm.len())
        .map(|p| {
            let mut nearest = BTreeMap::<&str, (f64, usize)>::new();
            for g in (0..dm.len()).filter(|&g| folds[g] != folds[p]) {
                let d = dm.get(p, g);
                let e = nearest.entry(&dm.labels[g]).or_insert((d, g));
                if d < e.0 {
                    *e = (d, g);
                }
            }
            let own = *nearest.get(dm.labels[p].as_str())?;
            Some(
                1 + nearest
                    .values()
                    .filter(|&&(d, g)| d < own.0 || (d == own.0 && g < own.1))
                    .count(),
            )
        })
        .collect()
}

/// Ranks of a classifier that orders the gallery identities at random.
pub fn random_ranks<R: Rng + ?Sized>(labels: &[String], folds: &[usize], rng: &mut R) -> Vec<Option<usize>> {
    (0..labels.len())
        .map(|p| {
            let mut ids: Vec<&str> = (0..labels.len())
                .filter(|&g| folds[g] != folds[p])
                .map(|g| labels[g].as_str())
                .collect();
            ids.sort_unstable();
            ids.dedup();
            ids.shuffle(rng);
            ids.iter().position(|&l| l == labels[p]).map(|r| r + 1)
        })
        .collect()
}

/// Rank-k rates for `k = 1..=len`.
pub fn cmc_from_ranks(ranks: &[Option<usize>], len: usize) -> Vec<f64> {
    let n = ranks.len().max(1) as f64;
    (1..=len)
        .map(|k| ranks.iter().filter(|r| r.is_some_and(|r| r <= k)).count() as f64 / n)
        .collect()
}

/// Operating points of a distance-threshold verifier: point 0 accepts
/// nothing, point `k ≥ 1` accepts every pair with distance at most the k-th
/// smallest distinct distance.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorCurves {
    pub thresholds: Vec<f64>,
    pub far: Vec<f64>,
    pub frr: Vec<f64>,
    /// Precision of the accepted pairs; 1 at point 0.
    pub precision: Vec<f64>,
}

impl ErrorCurves {
    /// `None` without both genuine and impostor pairs.
    pub fn new(genuine: &[f64], impostor: &[f64]) -> Option<ErrorCurves> {
        if genuine.is_empty() || impostor.is_empty() {
            return None;
        }
        let mut all: Vec<(f64, bool)> = genuine
            .iter()
            .map(|&d| (d, true))
            .chain(impostor.iter().map(|&d| (d, false)))
            .collect();
        all.sort_by(|a, b| a.0.total_cmp(&b.0));
        let (ng, ni) = (genuine.len() as f64, impostor.len() as f64);
        let mut c = ErrorCurves {
            thresholds: vec![0.0],
            far: vec![0.0],
            frr: vec![1.0],
            precision: vec![1.0],
        };
        let (mut tp, mut fp) = (0usize, 0usize);
        let mut i = 0;
        while i < all.len() {
            let t = all[i].0;
            while i < all.len() && all[i].0 == t {
                if all[i].1 {
                    tp += 1;
                } else {
                    fp += 1;
                }
                i += 1;
            }
            c.thresholds.push(t);
            c.far.push(fp as f64 / ni);
            c.frr.push(1.0 - tp as f64 / ng);
            c.precision.push(tp as f64 / (tp + fp) as f64);
        }
        Some(c)
    }

    pub fn tar(&self, k: usize) -> f64 {
        1.0 - self.frr[k]
    }

    /// `(FAR, FRR)` at threshold `t`, interpolated linearly between points.
    pub fn at(&self, t: f64) -> (f64, f64) {
        let k = self.thresholds.partition_point(|&x| x <= t).saturating_sub(1);
        if k + 1 >= self.thresholds.len() {
            return (self.far[k], self.frr[k]);
        }
        let (t0, t1) = (self.thresholds[k], self.thresholds[k + 1]);
        let s = if t1 > t0 { (t - t0) / (t1 - t0) } else { 0.0 };
        (
            self.far[k] + s * (self.far[k + 1] - self.far[k]),
            self.frr[k] + s * (self.frr[k + 1] - self.frr[k]),
        )
    }

    /// `(EER, threshold)` where the interpolated FAR and FRR meet.
    pub fn eer(&self) -> (f64, f64) {
        for k in 1..self.far.len() {
            let d1 = self.frr[k] - self.far[k];
            if d1 <= 0.0 {
                let d0 = self.frr[k - 1] - self.far[k - 1];
                let s = d0 / (d0 - d1);
                let eer = self.far[k - 1] + s * (self.far[k] - self.far[k - 1]);
                let t = self.thresholds[k - 1] + s * (self.thresholds[k] - self.thresholds[k - 1]);
                return (eer, t);
            }
        }
        // unreachable: the last point has FRR = 0 ≤ FAR = 1
        (f64::NAN, f64::NAN)
    }

    /// Trapezoidal area under TAR over FAR.
    pub fn auc(&self) -> f64 {
        (1..self.far.len())
            .map(|k| (self.far[k] - self.far[k - 1]) * (self.tar(k) + self.tar(k - 1)) / 2.0)
            .sum()
    }

    /// Trapezoidal area under precision over recall.
    pub fn map(&self) -> f64 {
        (1..self.far.len())
            .map(|k| (self.tar(k) - self.tar(k - 1)) * (self.precision[k] + self.precision[k - 1]) / 2.0)
            .sum()
    }

    pub fn max_threshold(&self) -> f64 {
        *self.thresholds.last().unwrap_or(&0.0)
    }

    /// `points` thresholds from 0 to the EER threshold at the middle index
    /// and on to the largest distance; `(FAR, FRR)` at each.
    pub fn far_frr_sequence(&self, points: usize) -> Vec<(f64, f64)> {
        let (eer, e) = self.eer();
        let mid = points.saturating_sub(1) / 2;
        let top = self.max_threshold();
        let mut out: Vec<(f64, f64)> = (0..points)
            .map(|i| {
                let t = if i <= mid {
                    e * i as f64 / mid.max(1) as f64
                } else {
                    e + (top - e) * (i - mid) as f64 / (points - 1 - mid) as f64
                };
                self.at(t)
            })
            .collect();
        if points > 0 {
            out[0] = (0.0, 1.0);
            out[mid] = (eer, eer);
            out[points - 1] = (1.0, 0.0);
        }
        out
    }

    /// `points` ROC samples `(TAR, FAR)` at evenly spaced thresholds.
    pub fn roc_sequence(&self, points: usize) -> Vec<(f64, f64)> {
        let top = self.max_threshold();
        let mut out: Vec<(f64, f64)> = (0..points)
            .map(|i| {
                let (far, frr) = self.at(top * i as f64 / (points.max(2) - 1) as f64);
                (1.0 - frr, far)
            })
            .collect();
        if points > 0 {
            out[0] = (0.0, 0.0);
            out[points - 1] = (1.0, 1.0);
        }
        out
    }

    /// `points` samples `(RCL, PCN)` at evenly spaced recall levels.
    pub fn rcl_pcn_sequence(&self, points: usize) -> Vec<(f64, f64)> {
        (0..points)
            .map(|i| {
                let r = i as f64 / (points.max(2) - 1) as f64;
                let k = (0..self.far.len()).find(|&k| self.tar(k) >= r).unwrap_or(self.far.len() - 1);
                let p = if k == 0 || self.tar(k) == r {
                    self.precision[k]
                } else {
                    let (r0, r1) = (self.tar(k - 1), self.tar(k));
                    let s = (r - r0) / (r1 - r0);
                    self.precision[k - 1] + s * (self.precision[k] - self.precision[k - 1])
                };
                (r, p)
            })
            .collect()
    }
}

/// Classifier performance on one evaluation set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifierMetrics {
    pub cmc: Vec<f64>,
    pub ccr: f64,
    pub eer: f64,
    pub auc: f64,
    pub map: f64,
    /// `(FAR, FRR)`
    pub far_frr: Vec<(f64, f64)>,
    /// `(TAR, FAR)`
    pub roc: Vec<(f64, f64)>,
    /// `(RCL, PCN)`
    pub rcl_pcn: Vec<(f64, f64)>,
}

/// Inner cross-validation and verification metrics of a distance matrix.
/// `folds` assigns every template to an inner fold; the CMC has `cmc_len`
/// ranks.
pub fn classifier_metrics(dm: &DistanceMatrix, folds: &[usize], cmc_len: usize, fineness: usize) -> Result<ClassifierMetrics> {
    let classes = {
        let mut l = dm.labels.clone();
        l.sort_unstable();
        l.dedup();
        l.len()
    };
    if classes < 2 {
        return Err(EvaluationError::TooFewClasses(classes));
    }
    let cmc = cmc_from_ranks(&ranks(dm, folds), cmc_len);
    let (genuine, impostor) = dm.pair_distances();
    let nan_seq = vec![(f64::NAN, f64::NAN); fineness];
    let (eer, auc, map, far_frr, roc, rcl_pcn) = match ErrorCurves::new(&genuine, &impostor) {
        Some(c) => (
            c.eer().0,
            c.auc(),
            c.map(),
            c.far_frr_sequence(fineness),
            c.roc_sequence(fineness),
            c.rcl_pcn_sequence(fineness),
        ),
        None => (f64::NAN, f64::NAN, f64::NAN, nan_seq.clone(), nan_seq.clone(), nan_seq),
    };
    Ok(ClassifierMetrics {
        ccr: cmc.first().copied().unwrap_or(0.0),
        cmc,
        eer,
        auc,
        map,
        far_frr,
        roc,
        rcl_pcn,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::features::{DistanceKind, Method, MethodDistance};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn vt(label: &str, v: &[f64]) -> Template {
        Template::vector(Method::Ali, Some(label.into()), v.to_vec())
    }

    const EUCLID: MethodDistance = MethodDistance(DistanceKind::Euclidean);

    #[test]
    fn wta_basics() {
        let g = vec![vt("a", &[0.0]), vt("b", &[2.0]), vt("c", &[5.0])];
        assert_eq!(classify_wta(&vt("?", &[5.0]), &g, &EUCLID).unwrap(), "c");
        assert_eq!(classify_wta(&vt("?", &[1.0]), &g, &EUCLID).unwrap(), "a");
        assert_eq!(classify_wta(&vt("?", &[1.0]), &[], &EUCLID), Err(EvaluationError::EmptyGallery));
    }

    proptest! {
        #[test]
        fn wta_matches_linear_scan(
            gallery in prop::collection::vec((-10i32..10, 0usize..4), 1..20),
            probe in -10i32..10,
        ) {
            let g: Vec<Template> = gallery.iter().map(|&(v, c)| vt(&format!("c{c}"), &[v as f64])).collect();
            let mut best = 0;
            for (i, &(v, _)) in gallery.iter().enumerate() {
                if (v - probe).abs() < (gallery[best].0 - probe).abs() {
                    best = i;
                }
            }
            let got = classify_wta(&vt("?", &[probe as f64]), &g, &EUCLID).unwrap();
            prop_assert_eq!(got, format!("c{}", gallery[best].1));
        }

        #[test]
        fn curves_are_monotone(
            g in prop::collection::vec(0.0f64..10.0, 1..30),
            i in prop::collection::vec(0.0f64..10.0, 1..30),
        ) {
            let c = ErrorCurves::new(&g, &i).unwrap();
            prop_assert!(c.far.windows(2).all(|w| w[0] <= w[1]));
            prop_assert!(c.frr.windows(2).all(|w| w[0] >= w[1]));
            let (eer, _) = c.eer();
            prop_assert!((0.0..=1.0).contains(&eer));
            prop_assert!((0.0..=1.0).contains(&c.auc()));
            prop_assert!((0.0..=1.0 + 1e-12).contains(&c.map()));
            let s = c.far_frr_sequence(30);
            prop_assert_eq!(s[0], (0.0, 1.0));
            prop_assert_eq!(s[14], (eer, eer));
            prop_assert_eq!(s[29], (1.0, 0.0));
            prop_assert!(s.windows(2).all(|w| w[0].0 <= w[1].0 + 1e-12 && w[0].1 + 1e-12 >= w[1].1));
            let r = c.roc_sequence(30);
            prop_assert_eq!((r[0], r[29]), ((0.0, 0.0), (1.0, 1.0)));
            let p = c.rcl_pcn_sequence(30);
            prop_assert_eq!((p[0].0, p[29].0), (0.0, 1.0));
        }

        #[test]
        fn cmc_monotone(
            labels in prop::collection::vec(0usize..4, 4..25),
            seed in any::<u64>(),
        ) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let t: Vec<Template> = labels
                .iter()
                .map(|&c| vt(&format!("c{c}"), &[c as f64 + rng.random::<f64>() * 3.0]))
                .collect();
            let dm = DistanceMatrix::compute(&t, &EUCLID).unwrap();
            let folds = inner_folds(t.len(), 10, &mut rng);
            let r = ranks(&dm, &folds);
            let cmc = cmc_from_ranks(&r, 4);
            prop_assert!(cmc.windows(2).all(|w| w[0] <= w[1]));
            if r.iter().all(|x| x.is_some()) {
                prop_assert_eq!(*cmc.last().unwrap(), 1.0);
            }
        }
    }

    #[test]
    fn perfect_separation() {
        let t: Vec<Template> = (0..12)
            .map(|i| vt(&format!("c{}", i % 3), &[(i % 3) as f64 * 100.0 + (i / 3) as f64]))
            .collect();
        let dm = DistanceMatrix::compute(&t, &EUCLID).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let folds = inner_folds(12, 10, &mut rng);
        let m = classifier_metrics(&dm, &folds, 3, 30).unwrap();
        assert_eq!(m.ccr, 1.0);
        assert_eq!(m.eer, 0.0);
        assert_eq!(m.auc, 1.0);
        assert_eq!(m.map, 1.0);
    }

    #[test]
    fn label_blind_distances_have_half_auc() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let g: Vec<f64> = (0..5000).map(|_| rng.random()).collect();
        let i: Vec<f64> = (0..5000).map(|_| rng.random()).collect();
        let c = ErrorCurves::new(&g, &i).unwrap();
        assert!((c.auc() - 0.5).abs() < 0.05);
        assert!((c.eer().0 - 0.5).abs() < 0.05);
        assert!((c.map() - 0.5).abs() < 0.05);
    }

    #[test]
    fn eer_interpolates() {
        // genuine {1, 3}, impostor {2, 4}: points (FAR, FRR) = (0,1) (0,.5) (.5,.5) (.5,0) (1,0)
        let c = ErrorCurves::new(&[1.0, 3.0], &[2.0, 4.0]).unwrap();
        assert_eq!(c.far, vec![0.0, 0.0, 0.5, 0.5, 1.0]);
        assert_eq!(c.frr, vec![1.0, 0.5, 0.5, 0.0, 0.0]);
        assert_eq!(c.eer(), (0.5, 2.0));
        assert_eq!(c.auc(), 0.75);
    }

    #[test]
    fn random_ranks_are_uniform() {
        let labels: Vec<String> = (0..40).map(|i| format!("c{}", i % 4)).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let folds = inner_folds(40, 10, &mut rng);
        let mut hits = 0.0;
        let reps = 200;
        for _ in 0..reps {
            hits += cmc_from_ranks(&random_ranks(&labels, &folds, &mut rng), 4)[0];
        }
        assert!((hits / reps as f64 - 0.25).abs() < 0.02);
    }
}
