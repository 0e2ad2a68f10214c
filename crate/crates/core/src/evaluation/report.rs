use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{EvaluationError, Result, SetupConfig};
use crate::features::{GavrilovaSignals, Method};

/// Averaged results of one method.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub method: Method,
    /// DTW threshold the database was extracted with.
    pub threshold: f64,
    pub dbi: f64,
    pub di: f64,
    pub sc: f64,
    pub fdr: f64,
    pub ccr: f64,
    pub eer: f64,
    pub auc: f64,
    pub map: f64,
    /// Mean time of one distance computation in milliseconds.
    pub dct_ms: f64,
    /// Mean template dimensionality.
    pub td: f64,
    pub cmc: Vec<f64>,
    /// `(FAR, FRR)`
    pub far_frr: Vec<(f64, f64)>,
    /// `(TAR, FAR)`
    pub roc: Vec<(f64, f64)>,
    /// `(RCL, PCN)`
    pub rcl_pcn: Vec<(f64, f64)>,
}

const COLUMNS: &str = "DBI,DI,SC,FDR,CCR,EER,AUC,MAP,DCT,TD";
const SEQUENCE_COLUMNS: &str = "FAR,FRR,TAR,FAR,RCL,PCN";

/// Shortest round-trip form; undefined values are left empty.
fn num(v: f64) -> String {
    if v.is_nan() {
        String::new()
    } else {
        v.to_string()
    }
}

fn dct(ms: f64) -> String {
    if ms.is_nan() {
        String::new()
    } else if ms < 1.0 {
        "<1".into()
    } else {
        format!("{}", ms.round())
    }
}

/// The CSV block layout, one block per report.
pub fn write_report(reports: &[MetricsReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let _ = writeln!(out, "{}, {}", r.method.display_name(), r.threshold);
        let _ = writeln!(out, "{COLUMNS}");
        let head = [r.dbi, r.di, r.sc, r.fdr, r.ccr, r.eer, r.auc, r.map];
        let mut fields: Vec<String> = head.iter().map(|&v| num(v)).collect();
        fields.push(dct(r.dct_ms));
        fields.push(num(r.td));
        let _ = writeln!(out, "{}", fields.join(","));
        let _ = writeln!(out, "CMC");
        for v in &r.cmc {
            let _ = writeln!(out, "{}", num(*v));
        }
        let _ = writeln!(out, "{SEQUENCE_COLUMNS}");
        for i in 0..r.far_frr.len() {
            let (a, b) = r.far_frr[i];
            let (c, d) = r.roc.get(i).copied().unwrap_or((f64::NAN, f64::NAN));
            let (e, f) = r.rcl_pcn.get(i).copied().unwrap_or((f64::NAN, f64::NAN));
            let row: Vec<String> = [a, b, c, d, e, f].iter().map(|&v| num(v)).collect();
            let _ = writeln!(out, "{}", row.join(","));
        }
    }
    out
}

fn parse_num(s: &str, line: usize) -> Result<f64> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(f64::NAN);
    }
    s.parse::<f64>().map_err(|_| EvaluationError::Parse {
        line,
        msg: format!("not a number: {s:?}"),
    })
}

/// Reads back the layout of [`write_report`]. A DCT of `<1` becomes 0.
pub fn parse_report(text: &str) -> Result<Vec<MetricsReport>> {
    let lines: Vec<&str> = text.lines().collect();
    let err = |line: usize, msg: &str| EvaluationError::Parse {
        line: line + 1,
        msg: msg.to_string(),
    };
    let mut out = Vec::new();
    let mut i = 0;
    while i < lines.len() {
        if lines[i].trim().is_empty() {
            i += 1;
            continue;
        }
        let (name, threshold) = lines[i].rsplit_once(',').ok_or_else(|| err(i, "expected header"))?;
        let method = Method::from_display_name(name.trim()).ok_or_else(|| err(i, "unknown method"))?;
        let threshold = parse_num(threshold, i + 1)?;
        i += 1;
        if lines.get(i).map(|l| l.trim()) != Some(COLUMNS) {
            return Err(err(i, "expected column line"));
        }
        i += 1;
        let values: Vec<&str> = lines.get(i).ok_or_else(|| err(i, "missing values"))?.split(',').collect();
        if values.len() != 10 {
            return Err(err(i, "expected 10 values"));
        }
        let mut head = [0.0; 8];
        for (k, v) in values[..8].iter().enumerate() {
            head[k] = parse_num(v, i + 1)?;
        }
        let dct_ms = match values[8].trim() {
            "<1" => 0.0,
            v => parse_num(v, i + 1)?,
        };
        let td = parse_num(values[9], i + 1)?;
        i += 1;
        if lines.get(i).map(|l| l.trim()) != Some("CMC") {
            return Err(err(i, "expected CMC"));
        }
        i += 1;
        let mut cmc = Vec::new();
        while i < lines.len() && lines[i].trim() != SEQUENCE_COLUMNS {
            cmc.push(parse_num(lines[i], i + 1)?);
            i += 1;
        }
        if i == lines.len() {
            return Err(err(i, "expected sequence header"));
        }
        i += 1;
        let (mut far_frr, mut roc, mut rcl_pcn) = (Vec::new(), Vec::new(), Vec::new());
        while i < lines.len() {
            let f: Vec<&str> = lines[i].split(',').collect();
            if f.len() != 6 {
                break;
            }
            let v = f.iter().map(|s| parse_num(s, i + 1)).collect::<Result<Vec<f64>>>()?;
            far_frr.push((v[0], v[1]));
            roc.push((v[2], v[3]));
            rcl_pcn.push((v[4], v[5]));
            i += 1;
        }
        out.push(MetricsReport {
            method,
            threshold,
            dbi: head[0],
            di: head[1],
            sc: head[2],
            fdr: head[3],
            ccr: head[4],
            eer: head[5],
            auc: head[6],
            map: head[7],
            dct_ms,
            td,
            cmc,
            far_frr,
            roc,
            rcl_pcn,
        });
    }
    Ok(out)
}

/// JSON sidecar describing how a report was produced.
pub fn write_metadata(cfg: &SetupConfig, methods: &[Method], threshold: f64) -> String {
    let value = serde_json::json!({
        "setup": cfg.kind.to_string(),
        "seed": cfg.seed,
        "repetitions": cfg.repetitions,
        "outer_folds": cfg.outer_folds,
        "inner_folds": cfg.inner_folds,
        "fineness": cfg.fineness,
        "threshold": threshold,
        "methods": methods.iter().map(|m| m.display_name()).collect::<Vec<_>>(),
        "separator": ",",
        "pairs": "all unordered evaluation pairs, genuine iff same label",
        "eer": "linear interpolation between bracketing thresholds",
        "centroids": "mean for fixed-length vectors, medoid otherwise",
        "averaging": "mean over repetitions and outer folds, pointwise for sequences",
        "gavrilova_signals": GavrilovaSignals::default().describe(),
    });
    serde_json::to_string_pretty(&value).expect("static json")
}
