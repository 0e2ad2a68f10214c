//! AMC motion files.

use std::fmt::Write as _;

use super::skeleton::Skeleton;
use super::{MocapError, MotionSequence, Result};

fn err(line: usize, msg: impl Into<String>) -> MocapError {
    MocapError::MalformedAmc {
        line,
        msg: msg.into(),
    }
}

/// Parses an AMC document against the skeleton it animates.
///
/// Every frame must list each animated joint exactly once with exactly as
/// many values as the joint has dof. Frame numbers must run 1, 2, 3, ...
pub fn parse_amc(text: &str, skeleton: &Skeleton) -> Result<MotionSequence> {
    let layout = skeleton.layout();
    let width = layout.width();
    let groups = layout.groups();
    let mut frames: Vec<Vec<f64>> = Vec::new();
    let mut current: Option<(usize, Vec<f64>, Vec<bool>)> = None;

    let finish = |cur: (usize, Vec<f64>, Vec<bool>), frames: &mut Vec<Vec<f64>>| -> Result<()> {
        let (line, values, seen) = cur;
        if let Some(g) = seen.iter().position(|s| !s) {
            return Err(err(
                line,
                format!("frame {} lacks joint {}", frames.len() + 1, groups[g].joint),
            ));
        }
        frames.push(values);
        Ok(())
    };

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with(':') {
            continue;
        }
        let mut toks = line.split_whitespace();
        let head = toks.next().unwrap_or_default();
        if let Ok(n) = head.parse::<u64>() {
            if toks.next().is_some() {
                return Err(err(line_no, "frame number line has extra fields"));
            }
            if let Some(cur) = current.take() {
                finish(cur, &mut frames)?;
            }
            let expected = frames.len() as u64 + 1;
            if n != expected {
                return Err(err(line_no, format!("expected frame {expected}, found {n}")));
            }
            current = Some((line_no, vec![0.0; width], vec![false; groups.len()]));
            continue;
        }
        let (_, values, seen) = current
            .as_mut()
            .ok_or_else(|| err(line_no, "joint values before the first frame number"))?;
        let gi = groups
            .iter()
            .position(|g| g.joint == head)
            .ok_or_else(|| {
                if skeleton.index_of(head).is_some() {
                    err(line_no, format!("joint {head} has no dof"))
                } else {
                    err(line_no, format!("unknown joint {head}"))
                }
            })?;
        if seen[gi] {
            return Err(err(line_no, format!("joint {head} listed twice in one frame")));
        }
        let g = &groups[gi];
        let vals: Vec<f64> = toks
            .map(|t| t.parse::<f64>().map_err(|_| err(line_no, format!("bad number {t:?}"))))
            .collect::<Result<_>>()?;
        if vals.len() != g.dof.len() {
            return Err(err(
                line_no,
                format!("joint {head} expects {} values, found {}", g.dof.len(), vals.len()),
            ));
        }
        values[g.offset..g.offset + vals.len()].copy_from_slice(&vals);
        seen[gi] = true;
    }
    if let Some(cur) = current.take() {
        finish(cur, &mut frames)?;
    }
    Ok(MotionSequence::new(layout, frames))
}

/// Formats with six decimals, then drops trailing zeros so that exact zeros
/// print as `0`.
pub(crate) fn fmt_value(v: f64) -> String {
    let mut s = format!("{v:.6}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".to_string();
    }
    s
}

/// Writes a motion as AMC. A normalized motion produces `root 0 0 0 0 0 0`
/// lines.
pub fn write_amc(motion: &MotionSequence) -> String {
    let mut out = String::new();
    out.push_str(":FULLY-SPECIFIED\n:DEGREES\n");
    for (t, frame) in motion.frames.iter().enumerate() {
        let _ = writeln!(out, "{}", t + 1);
        for g in motion.layout.groups() {
            out.push_str(&g.joint);
            for v in &frame[g.offset..g.offset + g.dof.len()] {
                out.push(' ');
                out.push_str(&fmt_value(*v));
            }
            out.push('\n');
        }
    }
    out
}
