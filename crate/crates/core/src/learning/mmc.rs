use nalgebra::{DMatrix, DVector};

use super::linalg::{fix_column_signs, left_singular};
use super::{LabeledDataset, LearningError, LinearTransform, Result, TransformKind};

/// Singular values of `X` below this fraction of the largest are treated as
/// zero when forming `Θ^{-1/2}`.
pub const SPECTRUM_CUTOFF: f64 = 1e-8;

/// Whitened between-class eigenvalues at or above this are kept.
pub const MMC_RETENTION: f64 = 0.5;

/// Intermediate results of the MMC learner, all columns sorted by
/// decreasing eigenvalue.
#[derive(Debug, Clone, PartialEq)]
pub struct MmcDecomposition {
    pub mean: DVector<f64>,
    /// `(1/√N)[g₁−μ ⋯ g_N−μ]`; the total scatter of this path is `XXᵀ`.
    pub x: DMatrix<f64>,
    /// `[μ₁−μ ⋯ μ_C−μ]`.
    pub upsilon: DMatrix<f64>,
    /// Eigenvectors of `XXᵀ` with positive eigenvalue.
    pub omega: DMatrix<f64>,
    /// The matching eigenvalues (squared singular values of `X`).
    pub theta: DVector<f64>,
    /// Eigenvectors of the whitened between-class scatter.
    pub xi: DMatrix<f64>,
    /// `Ω Θ^{-1/2} Ξ`.
    pub psi: DMatrix<f64>,
    /// Diagonal of `Ψᵀ Σ_b Ψ`.
    pub delta: DVector<f64>,
}

pub fn mmc_decomposition(data: &LabeledDataset) -> Result<MmcDecomposition> {
    let classes = data.require_classes()?;
    let n = data.len() as f64;
    let mean = data.mean();
    let upsilon = data.upsilon(&classes, &mean);
    let cols: Vec<DVector<f64>> = data.samples.iter().map(|g| (g - &mean) / n.sqrt()).collect();
    let x = DMatrix::from_columns(&cols);

    let (u, s) = left_singular(&x);
    let smax = s.iter().copied().fold(0.0, f64::max);
    let r = s.iter().filter(|&&v| smax > 0.0 && v >= SPECTRUM_CUTOFF * smax).count();
    if r == 0 {
        return Err(LearningError::DegenerateScatter);
    }
    let omega = u.columns(0, r).into_owned();
    let theta = DVector::from_iterator(r, s.iter().take(r).map(|v| v * v));
    let inv_sqrt = DVector::from_iterator(r, s.iter().take(r).map(|v| 1.0 / v));

    // Θ^{-1/2} Ωᵀ Υ
    let mut m = omega.tr_mul(&upsilon);
    for (i, mut row) in m.row_iter_mut().enumerate() {
        row *= inv_sqrt[i];
    }
    let (mut xi, _) = left_singular(&m);

    let mut whiten = omega.clone();
    for (j, mut col) in whiten.column_iter_mut().enumerate() {
        col *= inv_sqrt[j];
    }
    let mut psi = &whiten * &xi;
    // keep Ξ consistent with the sign fix of Ψ
    let before = psi.clone();
    fix_column_signs(&mut psi);
    for j in 0..psi.ncols() {
        if psi.column(j).dot(&before.column(j)) < 0.0 {
            xi.column_mut(j).neg_mut();
        }
    }
    let pu = psi.tr_mul(&upsilon);
    let delta = DVector::from_iterator(psi.ncols(), pu.row_iter().map(|r| r.norm_squared()));
    Ok(MmcDecomposition {
        mean,
        x,
        upsilon,
        omega,
        theta,
        xi,
        psi,
        delta,
    })
}

/// Learns `Φ` as the columns of `Ψ` with `Δ ≥ ½`.
pub fn learn_mmc(data: &LabeledDataset) -> Result<LinearTransform> {
    let dec = mmc_decomposition(data)?;
    let keep: Vec<usize> = (0..dec.delta.len())
        .filter(|&j| dec.delta[j] >= MMC_RETENTION)
        .collect();
    let matrix = DMatrix::from_fn(dec.psi.nrows(), keep.len(), |r, c| dec.psi[(r, keep[c])]);
    Ok(LinearTransform {
        matrix,
        kind: TransformKind::Mmc,
        eigenvalues: keep.iter().map(|&j| dec.delta[j]).collect(),
    })
}
