use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{DistanceMatrix, EvaluationError, Result};
use crate::features::{Template, TemplateData, TemplateDistance};

/// Class separability coefficients of a labeled template set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Separability {
    pub dbi: f64,
    pub di: f64,
    pub sc: f64,
    pub fdr: f64,
}

/// Distances to class centroids and between centroids. Vector templates of
/// one length use the arithmetic mean; anything else uses the medoid.
struct Centroids {
    /// `to_own[n]` = δ(g_n, μ̃_{class of n})
    to_own: Vec<f64>,
    /// `between[c][c']` = δ(μ̃_c, μ̃_{c'})
    between: Vec<Vec<f64>>,
    /// `to_overall[c]` = δ(μ̃_c, μ̃)
    to_overall: Vec<f64>,
}

fn mean_template(templates: &[&Template]) -> Template {
    let first = templates[0];
    let dim = first.dimension();
    let mut acc = vec![0.0; dim];
    for t in templates {
        for (a, v) in acc.iter_mut().zip(t.as_vector().unwrap_or(&[])) {
            *a += v;
        }
    }
    let n = templates.len() as f64;
    acc.iter_mut().for_each(|a| *a /= n);
    Template::new(first.method, None, TemplateData::Vector(acc))
}

fn medoid(members: &[usize], dm: &DistanceMatrix) -> usize {
    let mut best = (f64::INFINITY, members[0]);
    for &i in members {
        let s: f64 = members.iter().map(|&j| dm.get(i, j)).sum();
        if s < best.0 {
            best = (s, i);
        }
    }
    best.1
}

fn centroids(
    templates: &[Template],
    classes: &[Vec<usize>],
    dm: &DistanceMatrix,
    distance: &dyn TemplateDistance,
) -> Result<Centroids> {
    let n = templates.len();
    let dim = templates[0].dimension();
    let vectors = templates
        .iter()
        .all(|t| t.as_vector().is_some() && t.dimension() == dim);
    let c = classes.len();
    let mut to_own = vec![0.0; n];
    let mut between = vec![vec![0.0; c]; c];
    let mut to_overall = vec![0.0; c];
    if vectors {
        let cents: Vec<Template> = classes
            .iter()
            .map(|m| mean_template(&m.iter().map(|&i| &templates[i]).collect::<Vec<_>>()))
            .collect();
        let overall = mean_template(&templates.iter().collect::<Vec<_>>());
        for (k, m) in classes.iter().enumerate() {
            for &i in m {
                to_own[i] = distance.distance(&templates[i], &cents[k])?;
            }
            to_overall[k] = distance.distance(&cents[k], &overall)?;
            for l in k + 1..c {
                let d = distance.distance(&cents[k], &cents[l])?;
                between[k][l] = d;
                between[l][k] = d;
            }
        }
    } else {
        let meds: Vec<usize> = classes.iter().map(|m| medoid(m, dm)).collect();
        let all: Vec<usize> = (0..n).collect();
        let overall = medoid(&all, dm);
        for (k, m) in classes.iter().enumerate() {
            for &i in m {
                to_own[i] = dm.get(i, meds[k]);
            }
            to_overall[k] = dm.get(meds[k], overall);
            for l in k + 1..c {
                between[k][l] = dm.get(meds[k], meds[l]);
                between[l][k] = between[k][l];
            }
        }
    }
    Ok(Centroids {
        to_own,
        between,
        to_overall,
    })
}

/// DBI, DI, SC and FDR of `templates` under `distance`. `dm` must hold the
/// pairwise distances of the same templates in the same order; labels are
/// taken from it.
pub fn class_separability(
    templates: &[Template],
    dm: &DistanceMatrix,
    distance: &dyn TemplateDistance,
) -> Result<Separability> {
    let mut by_label = BTreeMap::<&str, Vec<usize>>::new();
    for (i, l) in dm.labels.iter().enumerate() {
        by_label.entry(l).or_default().push(i);
    }
    let classes: Vec<Vec<usize>> = by_label.into_values().collect();
    if classes.len() < 2 || templates.len() != dm.len() {
        return Err(EvaluationError::TooFewClasses(classes.len()));
    }
    let n = templates.len();
    let c = classes.len();
    let cent = centroids(templates, &classes, dm, distance)?;
    let sigma: Vec<f64> = classes
        .iter()
        .map(|m| m.iter().map(|&i| cent.to_own[i]).sum::<f64>() / m.len() as f64)
        .collect();

    let mut dbi = 0.0;
    for k in 0..c {
        let worst = (0..c)
            .filter(|&l| l != k)
            .map(|l| {
                let d = cent.between[k][l];
                if d == 0.0 {
                    f64::INFINITY
                } else {
                    (sigma[k] + sigma[l]) / d
                }
            })
            .fold(f64::NEG_INFINITY, f64::max);
        dbi += worst;
    }
    dbi /= c as f64;

    let min_between = (0..c)
        .flat_map(|k| (k + 1..c).map(move |l| (k, l)))
        .map(|(k, l)| cent.between[k][l])
        .fold(f64::INFINITY, f64::min);
    let max_sigma = sigma.iter().copied().fold(0.0, f64::max);
    let di = if min_between == 0.0 {
        0.0
    } else {
        min_between / max_sigma
    };

    let mut class_of = vec![0; n];
    for (k, m) in classes.iter().enumerate() {
        for &i in m {
            class_of[i] = k;
        }
    }
    let mut sc = 0.0;
    for i in 0..n {
        let avg = |m: &Vec<usize>| m.iter().map(|&j| dm.get(i, j)).sum::<f64>() / m.len() as f64;
        let a = avg(&classes[class_of[i]]);
        let b = (0..c)
            .filter(|&l| l != class_of[i])
            .map(|l| avg(&classes[l]))
            .fold(f64::INFINITY, f64::min);
        let m = a.max(b);
        if m > 0.0 {
            sc += (b - a) / m;
        }
    }
    sc /= n as f64;

    let num = cent.to_overall.iter().sum::<f64>() / c as f64;
    let den = cent.to_own.iter().sum::<f64>() / n as f64;
    let fdr = if num == 0.0 { 0.0 } else { num / den };
    Ok(Separability { dbi, di, sc, fdr })
}
