//! Statistics of scalar signals.
//!
//! Moments are population moments. The mean is accumulated as deviations
//! from the first value, so a constant signal gets its value back exactly
//! and zero spread.

pub fn mean(x: &[f64]) -> f64 {
    match x.first() {
        None => f64::NAN,
        Some(&x0) => x0 + x.iter().map(|v| v - x0).sum::<f64>() / x.len() as f64,
    }
}

fn central_moment(x: &[f64], m: f64, k: i32) -> f64 {
    x.iter().map(|v| (v - m).powi(k)).sum::<f64>() / x.len() as f64
}

pub fn variance(x: &[f64]) -> f64 {
    central_moment(x, mean(x), 2)
}

pub fn std(x: &[f64]) -> f64 {
    variance(x).sqrt()
}

/// Standardized third moment `m3 / m2^(3/2)`; zero for a constant signal.
pub fn skew(x: &[f64]) -> f64 {
    let m = mean(x);
    let m2 = central_moment(x, m, 2);
    if m2 == 0.0 {
        return 0.0;
    }
    central_moment(x, m, 3) / m2.powf(1.5)
}

pub fn min(x: &[f64]) -> f64 {
    x.iter().copied().fold(f64::INFINITY, f64::min)
}

pub fn max(x: &[f64]) -> f64 {
    x.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

/// Mean absolute difference of consecutive values.
pub fn mean_abs_diff(x: &[f64]) -> f64 {
    if x.len() < 2 {
        return 0.0;
    }
    x.windows(2).map(|w| (w[1] - w[0]).abs()).sum::<f64>() / (x.len() - 1) as f64
}

/// Centered 3-point moving average; the ends average their two available
/// points.
pub fn moving_average3(x: &[f64]) -> Vec<f64> {
    let n = x.len();
    (0..n)
        .map(|i| {
            let lo = i.saturating_sub(1);
            let hi = (i + 1).min(n - 1);
            mean(&x[lo..=hi])
        })
        .collect()
}

/// Strict local minima and maxima of the smoothed signal. A signal without
/// any (monotone or flat) yields its minimum and maximum instead.
pub fn local_extremes(x: &[f64]) -> Vec<f64> {
    let y = moving_average3(x);
    let ext: Vec<f64> = y
        .windows(3)
        .filter(|w| (w[1] > w[0] && w[1] > w[2]) || (w[1] < w[0] && w[1] < w[2]))
        .map(|w| w[1])
        .collect();
    if ext.is_empty() && !y.is_empty() {
        vec![min(&y), max(&y)]
    } else {
        ext
    }
}
