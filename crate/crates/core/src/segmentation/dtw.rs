use super::{Result, SegmentationError};

/// Dynamic time warping settings.
///
/// The local cost is the Euclidean distance between frame vectors and steps
/// are symmetric (match, insertion, deletion) with unit weights, so the
/// distance is the plain sum of local costs along the best warping path.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DtwConfig {
    /// Sakoe-Chiba band half-width; `None` leaves the warping unconstrained.
    pub window: Option<usize>,
}

#[inline]
pub(crate) fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

fn check<T: AsRef<[f64]>>(a: &[T], b: &[T]) -> Result<usize> {
    if a.is_empty() || b.is_empty() {
        return Err(SegmentationError::EmptySequence);
    }
    let dim = a[0].as_ref().len();
    if a.iter().chain(b).any(|f| f.as_ref().len() != dim) {
        return Err(SegmentationError::DimensionMismatch);
    }
    Ok(dim)
}

/// DTW distance between two sequences of frame vectors.
pub fn dtw_distance<T: AsRef<[f64]>>(a: &[T], b: &[T], cfg: &DtwConfig) -> Result<f64> {
    check(a, b)?;
    let (n, m) = (a.len(), b.len());
    let band = cfg.window.map(|w| w.max(n.abs_diff(m)));
    let mut prev = vec![f64::INFINITY; m + 1];
    let mut cur = vec![f64::INFINITY; m + 1];
    prev[0] = 0.0;
    for i in 1..=n {
        cur.fill(f64::INFINITY);
        let (lo, hi) = match band {
            Some(w) => (i.saturating_sub(w).max(1), (i + w).min(m)),
            None => (1, m),
        };
        for j in lo..=hi {
            let best = prev[j - 1].min(prev[j]).min(cur[j - 1]);
            cur[j] = euclidean(a[i - 1].as_ref(), b[j - 1].as_ref()) + best;
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    Ok(prev[m])
}

/// DTW between scalar series, local cost `|x - y|`.
pub fn dtw_scalar(a: &[f64], b: &[f64]) -> f64 {
    if a.is_empty() || b.is_empty() {
        return if a.is_empty() && b.is_empty() { 0.0 } else { f64::INFINITY };
    }
    let m = b.len();
    let mut prev = vec![f64::INFINITY; m + 1];
    let mut cur = vec![f64::INFINITY; m + 1];
    prev[0] = 0.0;
    for &x in a {
        cur[0] = f64::INFINITY;
        for j in 1..=m {
            let best = prev[j - 1].min(prev[j]).min(cur[j - 1]);
            cur[j] = (x - b[j - 1]).abs() + best;
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[m]
}

/// `out[k]` is the DTW distance between `exemplar` and `stream[..k + 1]`,
/// for every prefix up to `max_len` frames. One dynamic program serves all
/// window lengths that start at the same frame.
pub fn dtw_prefix_distances<T: AsRef<[f64]>>(
    exemplar: &[T],
    stream: &[T],
    max_len: usize,
) -> Vec<f64> {
    let n = exemplar.len();
    let m = stream.len().min(max_len);
    let mut out = Vec::with_capacity(m);
    if n == 0 {
        return out;
    }
    // column over exemplar frames for the previous stream frame
    let mut prev = vec![f64::INFINITY; n];
    let mut cur = vec![f64::INFINITY; n];
    for (j, frame) in stream.iter().take(m).enumerate() {
        for i in 0..n {
            let d = euclidean(exemplar[i].as_ref(), frame.as_ref());
            let best = if i == 0 && j == 0 {
                0.0
            } else {
                let diag = if i > 0 { prev[i - 1] } else { f64::INFINITY };
                let up = if i > 0 { cur[i - 1] } else { f64::INFINITY };
                diag.min(prev[i]).min(up)
            };
            cur[i] = d + best;
        }
        out.push(cur[n - 1]);
        std::mem::swap(&mut prev, &mut cur);
    }
    out
}
