use super::{GaitSample, Method, Representation, Result, Template, TemplateData, RAW_FRAMES};

/// Position of output frame `t` on the input time grid.
fn source_position(t: usize, from: usize, to: usize) -> f64 {
    if to == 1 {
        0.0
    } else {
        t as f64 * (from - 1) as f64 / (to - 1) as f64
    }
}

fn bracket(pos: f64, from: usize) -> (usize, usize, f64) {
    let i = (pos.floor() as usize).min(from - 1);
    let j = (i + 1).min(from - 1);
    (i, j, pos - i as f64)
}

/// Linear resampling of per-frame vectors to `target` frames. The first and
/// last frames are kept exactly.
pub fn resample_frames(frames: &[Vec<f64>], target: usize) -> Vec<Vec<f64>> {
    let from = frames.len();
    if from == 0 || target == 0 {
        return Vec::new();
    }
    (0..target)
        .map(|t| {
            let (i, j, w) = bracket(source_position(t, from, target), from);
            if w == 0.0 {
                return frames[i].clone();
            }
            frames[i]
                .iter()
                .zip(&frames[j])
                .map(|(a, b)| a + w * (b - a))
                .collect()
        })
        .collect()
}

/// Resamples a scalar signal.
pub(crate) fn resample_signal(signal: &[f64], target: usize) -> Vec<f64> {
    let from = signal.len();
    if from == 0 {
        return Vec::new();
    }
    (0..target)
        .map(|t| {
            let (i, j, w) = bracket(source_position(t, from, target), from);
            if w == 0.0 {
                signal[i]
            } else {
                signal[i] + w * (signal[j] - signal[i])
            }
        })
        .collect()
}

/// Linearly resamples every representation a sample carries.
pub fn resample_linear(sample: &GaitSample, target: usize) -> GaitSample {
    if target == sample.len() {
        return sample.clone();
    }
    let rotations = sample.rotations().map(|f| resample_frames(f, target));
    let coordinates = sample.coordinates().map(|frames| {
        let from = frames.len();
        (0..target)
            .map(|t| {
                let (i, j, w) = bracket(source_position(t, from, target), from);
                if w == 0.0 {
                    frames[i].clone()
                } else {
                    frames[i]
                        .iter()
                        .zip(&frames[j])
                        .map(|(a, b)| a + (b - a) * w)
                        .collect()
                }
            })
            .collect()
    });
    sample.replace_frames(rotations, coordinates)
}

/// Concatenates frames, frame-major.
pub fn flatten(frames: &[Vec<f64>]) -> Vec<f64> {
    frames.concat()
}

/// Inverse of [`flatten`] for frames of `width` values.
pub fn unflatten(values: &[f64], width: usize) -> Vec<Vec<f64>> {
    if width == 0 {
        return Vec::new();
    }
    values.chunks(width).map(<[f64]>::to_vec).collect()
}

/// Sample resampled to `frames` frames and flattened frame-major; BR drops
/// the root channels.
pub fn raw_vector(sample: &GaitSample, rep: Representation, frames: usize) -> Result<Vec<f64>> {
    let per_frame = sample.frame_vectors(rep)?;
    Ok(flatten(&resample_frames(&per_frame, frames)))
}

pub(crate) fn raw_template(sample: &GaitSample, rep: Representation) -> Result<Template> {
    let method = if rep == Representation::Br {
        Method::RawBr
    } else {
        Method::RawJc
    };
    let v = raw_vector(sample, rep, RAW_FRAMES)?;
    Ok(Template::new(
        method,
        Some(sample.label.clone()),
        TemplateData::Vector(v),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn midpoint() {
        assert_eq!(resample_frames(&[vec![0.0], vec![10.0]], 3), vec![vec![0.0], vec![5.0], vec![10.0]]);
    }

    #[test]
    fn same_length_is_identity() {
        let f = vec![vec![1.0, 2.0], vec![0.3, -1.0], vec![7.0, 7.5]];
        assert_eq!(resample_frames(&f, 3), f);
    }

    #[test]
    fn flatten_round_trip() {
        let f = vec![vec![1.0, 2.0, 3.0], vec![4.0, 5.0, 6.0]];
        assert_eq!(unflatten(&flatten(&f), 3), f);
    }

    // independent piecewise-linear evaluator on a continuous time axis in [0, 1]
    fn pwl(signal: &[f64], u: f64) -> f64 {
        let n = signal.len();
        let x = u * (n - 1) as f64;
        let k = x.floor() as usize;
        if k + 1 >= n {
            return signal[n - 1];
        }
        let w = x - k as f64;
        (1.0 - w) * signal[k] + w * signal[k + 1]
    }

    proptest! {
        #[test]
        fn matches_piecewise_linear_oracle(
            signal in prop::collection::vec(-100.0f64..100.0, 2..40),
            target in 2usize..80,
        ) {
            let out = resample_signal(&signal, target);
            prop_assert_eq!(out.len(), target);
            prop_assert_eq!(out[0], signal[0]);
            prop_assert_eq!(out[target - 1], *signal.last().unwrap());
            for (t, v) in out.iter().enumerate() {
                let u = t as f64 / (target - 1) as f64;
                prop_assert!((v - pwl(&signal, u)).abs() < 1e-9);
            }
        }

        #[test]
        fn up_then_down_error_bounded_by_curvature(
            signal in prop::collection::vec(-10.0f64..10.0, 3..30),
            factor in 2usize..5,
        ) {
            let n = signal.len();
            let up = resample_signal(&signal, n * factor);
            let back = resample_signal(&up, n);
            // second differences bound the interpolation error of a piecewise-linear curve
            let curvature = signal
                .windows(3)
                .map(|w| (w[0] - 2.0 * w[1] + w[2]).abs())
                .fold(0.0, f64::max);
            for (a, b) in signal.iter().zip(&back) {
                prop_assert!((a - b).abs() <= curvature + 1e-9);
            }
        }
    }
}
