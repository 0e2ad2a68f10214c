use nalgebra::{DMatrix, DVector};

use super::linalg::{fix_column_signs, left_singular, sorted_symmetric_eigen};
use super::{LabeledDataset, LearningError, LinearTransform, Result, TransformKind};

/// Relative ridge added to the projected within-class scatter.
const RIDGE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct PcaLdaDecomposition {
    /// Leading eigenvectors of `Σ_t = Σ_b + Σ_w`, one per learning class.
    pub pca: DMatrix<f64>,
    pub pca_eigenvalues: DVector<f64>,
    /// Generalized eigenvectors in the PCA space, unit length.
    pub lda: DMatrix<f64>,
    pub lda_eigenvalues: DVector<f64>,
}

pub fn pcalda_decomposition(data: &LabeledDataset) -> Result<PcaLdaDecomposition> {
    let classes = data.require_classes()?;
    let mu = data.mean();
    let ups = data.upsilon(&classes, &mu);
    let within = data.within_factor(&classes);

    // Σ_t = Y Yᵀ with Y = [Υ | within factor], so its eigenvectors are the
    // left singular vectors of Y
    let y = DMatrix::from_fn(ups.nrows(), ups.ncols() + within.ncols(), |r, c| {
        if c < ups.ncols() {
            ups[(r, c)]
        } else {
            within[(r, c - ups.ncols())]
        }
    });
    let (u, s) = left_singular(&y);
    let k = classes.len().min(u.ncols());
    let mut pca = u.columns(0, k).into_owned();
    fix_column_signs(&mut pca);
    let pca_eigenvalues = DVector::from_iterator(k, s.iter().take(k).map(|v| v * v));

    let bw = pca.tr_mul(&within);
    let bb = pca.tr_mul(&ups);
    let mut sw = &bw * bw.transpose();
    let sb = &bb * bb.transpose();
    let eps = RIDGE * sw.trace() / k as f64;
    for i in 0..k {
        sw[(i, i)] += eps;
    }
    let chol = sw.cholesky().ok_or(LearningError::SingularWithinScatter)?;
    let l = chol.l();
    let l_inv = l
        .clone()
        .try_inverse()
        .ok_or(LearningError::SingularWithinScatter)?;
    // Sw⁻¹Sb v = λv  ⇔  (L⁻¹ Sb L⁻ᵀ) w = λw with v = L⁻ᵀ w
    let a = &l_inv * sb * l_inv.transpose();
    let (values, w) = sorted_symmetric_eigen(&a);
    let mut lda = l_inv.transpose() * w;
    for mut col in lda.column_iter_mut() {
        let n = col.norm();
        if n > 0.0 {
            col /= n;
        }
    }
    fix_column_signs(&mut lda);
    Ok(PcaLdaDecomposition {
        pca,
        pca_eigenvalues,
        lda,
        lda_eigenvalues: values,
    })
}

/// `Φ = Φ_PCA Φ_LDA`, as many columns as learning classes.
pub fn learn_pcalda(data: &LabeledDataset) -> Result<LinearTransform> {
    let dec = pcalda_decomposition(data)?;
    let mut matrix = &dec.pca * &dec.lda;
    fix_column_signs(&mut matrix);
    Ok(LinearTransform {
        matrix,
        kind: TransformKind::PcaLda,
        eigenvalues: dec.lda_eigenvalues.iter().copied().collect(),
    })
}
