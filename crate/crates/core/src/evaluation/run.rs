use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use super::metrics::{classifier_metrics, cmc_from_ranks, inner_folds, random_ranks};
use super::{
    class_separability, outer_splits, stream, DistanceMatrix, MetricsReport, Purpose, Result, SetupConfig, Split,
};
use crate::features::{GaitSample, Method, MethodDistance, Template};
use crate::learning::LearnedModel;

/// A database ready for evaluation.
#[derive(Debug, Clone, Copy)]
pub struct EvaluationInput<'a> {
    pub samples: &'a [GaitSample],
    /// DTW threshold the samples were extracted with; only reported.
    pub threshold: f64,
}

/// One repetition and outer fold.
struct Run {
    values: [f64; 10],
    cmc: Vec<f64>,
    far_frr: Vec<(f64, f64)>,
    roc: Vec<(f64, f64)>,
    rcl_pcn: Vec<(f64, f64)>,
}

fn salt(method: Method) -> u64 {
    Method::ALL.iter().position(|&m| m == method).unwrap_or(0) as u64
}

fn mean_pairs(runs: &[Run], f: impl Fn(&Run) -> &Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    let n = runs.len() as f64;
    let len = runs.iter().map(|r| f(r).len()).max().unwrap_or(0);
    (0..len)
        .map(|i| {
            let (a, b) = runs.iter().fold((0.0, 0.0), |acc, r| {
                let p = f(r)[i];
                (acc.0 + p.0, acc.1 + p.1)
            });
            (a / n, b / n)
        })
        .collect()
}

fn run_split(
    input: &EvaluationInput,
    method: Method,
    cfg: &SetupConfig,
    split: &Split,
    rep: usize,
    fold: usize,
    cached: &BTreeMap<usize, Template>,
) -> Result<Run> {
    let labels: Vec<String> = split.evaluation.iter().map(|&i| input.samples[i].label.clone()).collect();
    let mut fold_rng = stream(cfg.seed, Purpose::InnerFolds, rep, fold, 0);
    let folds = inner_folds(labels.len(), cfg.inner_folds, &mut fold_rng);
    let cmc_len = cfg.kind.evaluation_classes();
    let nan_seq = vec![(f64::NAN, f64::NAN); cfg.fineness];

    if method == Method::Random {
        let mut rng = stream(cfg.seed, Purpose::Random, rep, fold, salt(method));
        let cmc = cmc_from_ranks(&random_ranks(&labels, &folds, &mut rng), cmc_len);
        let nan = f64::NAN;
        return Ok(Run {
            values: [nan, nan, nan, nan, cmc[0], nan, nan, nan, nan, 0.0],
            cmc,
            far_frr: nan_seq.clone(),
            roc: nan_seq.clone(),
            rcl_pcn: nan_seq,
        });
    }

    let model;
    let fixed = MethodDistance(method.descriptor().distance);
    let (templates, distance): (Vec<Template>, &dyn crate::features::TemplateDistance) = if method.is_learned() {
        let learning: Vec<GaitSample> = split.learning.iter().map(|&i| input.samples[i].clone()).collect();
        model = LearnedModel::fit(method, &learning)?;
        let t = split
            .evaluation
            .par_iter()
            .map(|&i| model.template(&input.samples[i]))
            .collect::<Result<Vec<_>, _>>()?;
        (t, &model)
    } else {
        (split.evaluation.iter().map(|&i| cached[&i].clone()).collect(), &fixed)
    };
    let dm = DistanceMatrix::compute(&templates, distance)?;
    let sep = class_separability(&templates, &dm, distance)?;
    let m = classifier_metrics(&dm, &folds, cmc_len, cfg.fineness)?;
    let td = templates.iter().map(|t| t.dimension() as f64).sum::<f64>() / templates.len().max(1) as f64;
    Ok(Run {
        values: [sep.dbi, sep.di, sep.sc, sep.fdr, m.ccr, m.eer, m.auc, m.map, dm.mean_ms, td],
        cmc: m.cmc,
        far_frr: m.far_frr,
        roc: m.roc,
        rcl_pcn: m.rcl_pcn,
    })
}

/// Full protocol for one method, averaged over repetitions and outer folds.
pub fn evaluate_method(input: &EvaluationInput, method: Method, cfg: &SetupConfig) -> Result<MetricsReport> {
    let labels: Vec<String> = input.samples.iter().map(|s| s.label.clone()).collect();
    let mut plan = Vec::new();
    for rep in 0..cfg.repetitions.max(1) {
        for (fold, split) in outer_splits(&labels, cfg, rep)?.into_iter().enumerate() {
            plan.push((rep, fold, split));
        }
    }
    // templates of fixed methods do not depend on the split
    let mut cached = BTreeMap::new();
    if !method.is_learned() && method != Method::Random {
        let needed: BTreeSet<usize> = plan.iter().flat_map(|p| p.2.evaluation.iter().copied()).collect();
        let needed: Vec<usize> = needed.into_iter().collect();
        let templates = needed
            .par_iter()
            .map(|&i| method.extract(&input.samples[i]))
            .collect::<Result<Vec<_>, _>>()?;
        cached = needed.into_iter().zip(templates).collect();
    }
    let runs = plan
        .iter()
        .map(|(rep, fold, split)| run_split(input, method, cfg, split, *rep, *fold, &cached))
        .collect::<Result<Vec<Run>>>()?;

    let n = runs.len() as f64;
    let mut v = [0.0; 10];
    for r in &runs {
        for (acc, x) in v.iter_mut().zip(r.values) {
            *acc += x;
        }
    }
    v.iter_mut().for_each(|x| *x /= n);
    let cmc_len = runs.iter().map(|r| r.cmc.len()).max().unwrap_or(0);
    let cmc = (0..cmc_len)
        .map(|k| runs.iter().map(|r| r.cmc[k]).sum::<f64>() / n)
        .collect();
    Ok(MetricsReport {
        method,
        threshold: input.threshold,
        dbi: v[0],
        di: v[1],
        sc: v[2],
        fdr: v[3],
        ccr: v[4],
        eer: v[5],
        auc: v[6],
        map: v[7],
        dct_ms: v[8],
        td: v[9],
        cmc,
        far_frr: mean_pairs(&runs, |r| &r.far_frr),
        roc: mean_pairs(&runs, |r| &r.roc),
        rcl_pcn: mean_pairs(&runs, |r| &r.rcl_pcn),
    })
}

/// [`evaluate_method`] for each method, in order.
pub fn evaluate_methods(input: &EvaluationInput, methods: &[Method], cfg: &SetupConfig) -> Result<Vec<MetricsReport>> {
    methods.iter().map(|&m| evaluate_method(input, m, cfg)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evaluation::{write_report, SetupKind};
    use crate::features::TemplateData;
    use crate::synth;
    use std::sync::Arc;

    fn toy(classes: usize, per: usize) -> Vec<GaitSample> {
        let skel = Arc::new(synth::cmu_skeleton());
        synth::gait_cycles(&skel, classes, per, 40..=48, 0.5, 17)
            .iter()
            .map(|m| GaitSample::from_motion(m, skel.clone()).unwrap())
            .collect()
    }

    #[test]
    fn toy_pipeline_both_setups() {
        let samples = toy(6, 6);
        let input = EvaluationInput {
            samples: &samples,
            threshold: 302.0,
        };
        let methods = [Method::Ali, Method::Jiang, Method::MmcBr, Method::PcaldaJc, Method::Random, Method::RawJc];
        for kind in [
            SetupKind::Homogeneous { classes: 3 },
            SetupKind::Heterogeneous {
                learning: 2,
                evaluation: 4,
            },
        ] {
            let cfg = SetupConfig::new(kind, 4).with_repetitions(2);
            let reports = evaluate_methods(&input, &methods, &cfg).unwrap();
            assert_eq!(reports.len(), methods.len());
            for r in &reports {
                assert_eq!(r.cmc.len(), kind.evaluation_classes());
                assert!(r.cmc.windows(2).all(|w| w[0] <= w[1]));
                assert_eq!(r.far_frr.len(), 30);
                if r.method != Method::Random {
                    assert!((0.0..=1.0).contains(&r.auc), "{:?}", r);
                    assert!((-1.0..=1.0).contains(&r.sc));
                }
            }
            let text = write_report(&reports);
            assert_eq!(text.lines().count(), methods.len() * (1 + 1 + 1 + 1 + kind.evaluation_classes() + 1 + 30));
        }
    }

    #[test]
    fn deterministic_given_seed() {
        let samples = toy(4, 5);
        let input = EvaluationInput {
            samples: &samples,
            threshold: 302.0,
        };
        let cfg = SetupConfig::new(SetupKind::Homogeneous { classes: 4 }, 11);
        let a = evaluate_methods(&input, &[Method::Ahmed, Method::MmcJc, Method::Random], &cfg).unwrap();
        let b = evaluate_methods(&input, &[Method::Ahmed, Method::MmcJc, Method::Random], &cfg).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.ccr.to_bits(), y.ccr.to_bits());
            assert_eq!(x.dbi.to_bits(), y.dbi.to_bits());
            assert_eq!(x.rcl_pcn.len(), y.rcl_pcn.len());
        }
    }

    #[test]
    fn constant_templates_pick_the_first_gallery_label() {
        // Under the lowest-index tie rule every probe is labeled like the
        // first gallery template; compare with a direct count.
        let labels: Vec<String> = [0, 0, 0, 0, 1, 1, 2, 2, 2, 2, 2, 2]
            .iter()
            .map(|c| format!("c{c}"))
            .collect();
        let t: Vec<Template> = labels
            .iter()
            .map(|l| Template::new(Method::Ali, Some(l.clone()), TemplateData::Vector(vec![1.0, 1.0])))
            .collect();
        let d = MethodDistance(crate::features::DistanceKind::Euclidean);
        let dm = DistanceMatrix::compute(&t, &d).unwrap();
        let mut rng = stream(3, Purpose::InnerFolds, 0, 0, 0);
        let folds = inner_folds(t.len(), 10, &mut rng);
        let m = classifier_metrics(&dm, &folds, 3, 30).unwrap();
        let expected = (0..t.len())
            .filter(|&p| {
                let first = (0..t.len()).find(|&g| folds[g] != folds[p]).unwrap();
                labels[first] == labels[p]
            })
            .count() as f64
            / t.len() as f64;
        assert_eq!(m.ccr, expected);
    }
}
