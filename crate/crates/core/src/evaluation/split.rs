use std::collections::BTreeMap;

use rand::seq::SliceRandom;

use super::{stream, EvaluationError, Purpose, Result, SetupConfig, SetupKind};

/// Sample indices of one learning/evaluation separation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Split {
    pub learning: Vec<usize>,
    pub evaluation: Vec<usize>,
}

fn classes(labels: &[String]) -> BTreeMap<&str, Vec<usize>> {
    let mut m = BTreeMap::<&str, Vec<usize>>::new();
    for (i, l) in labels.iter().enumerate() {
        m.entry(l).or_default().push(i);
    }
    m
}

/// All outer splits of one repetition: `outer_folds` splits for the
/// homogeneous setup, one for the heterogeneous.
///
/// Homogeneous: `classes` random identities; within each identity the
/// samples are shuffled and fold `f` learns on `ceil(N_c / outer_folds)` of
/// them, starting at position `round(f·N_c / outer_folds)` and wrapping
/// around, and evaluates on the rest. Heterogeneous: two disjoint random
/// identity sets, all samples of each.
pub fn outer_splits(labels: &[String], cfg: &SetupConfig, repetition: usize) -> Result<Vec<Split>> {
    let by_class = classes(labels);
    let mut names: Vec<&str> = by_class.keys().copied().collect();
    let mut rng = stream(cfg.seed, Purpose::Split, repetition, 0, 0);
    let needed = match cfg.kind {
        SetupKind::Homogeneous { classes } => classes,
        SetupKind::Heterogeneous {
            learning,
            evaluation,
        } => learning + evaluation,
    };
    if names.len() < needed {
        return Err(EvaluationError::InsufficientClasses {
            needed,
            available: names.len(),
        });
    }
    names.shuffle(&mut rng);
    let gather = |set: &[&str]| -> Vec<usize> {
        let mut v: Vec<usize> = set.iter().flat_map(|c| by_class[c].iter().copied()).collect();
        v.sort_unstable();
        v
    };
    match cfg.kind {
        SetupKind::Heterogeneous { learning, evaluation } => Ok(vec![Split {
            learning: gather(&names[..learning]),
            evaluation: gather(&names[learning..learning + evaluation]),
        }]),
        SetupKind::Homogeneous { classes } => {
            let chosen = &names[..classes];
            let order: Vec<Vec<usize>> = chosen
                .iter()
                .map(|c| {
                    let mut s = by_class[c].clone();
                    s.shuffle(&mut rng);
                    s
                })
                .collect();
            let k = cfg.outer_folds.max(1);
            Ok((0..k)
                .map(|f| {
                    let mut learning = Vec::new();
                    let mut evaluation = Vec::new();
                    for s in &order {
                        let n = s.len();
                        let take = n.div_ceil(k);
                        let start = ((f * n) as f64 / k as f64).round() as usize % n;
                        for (pos, &idx) in s.iter().enumerate() {
                            let rel = (pos + n - start) % n;
                            if rel < take {
                                learning.push(idx);
                            } else {
                                evaluation.push(idx);
                            }
                        }
                    }
                    learning.sort_unstable();
                    evaluation.sort_unstable();
                    Split {
                        learning,
                        evaluation,
                    }
                })
                .collect())
        }
    }
}

/// The first outer split of a repetition.
pub fn split_data(labels: &[String], cfg: &SetupConfig, repetition: usize) -> Result<Split> {
    Ok(outer_splits(labels, cfg, repetition)?.remove(0))
}
