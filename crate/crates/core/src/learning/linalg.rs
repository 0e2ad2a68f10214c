use nalgebra::{DMatrix, DVector, SymmetricEigen};

/// Flips each column so that its largest-magnitude entry is positive (the
/// first one on ties).
pub fn fix_column_signs(m: &mut DMatrix<f64>) {
    for mut col in m.column_iter_mut() {
        let mut best = 0.0f64;
        let mut sign = 1.0;
        for v in col.iter() {
            if v.abs() > best {
                best = v.abs();
                sign = v.signum();
            }
        }
        if sign < 0.0 {
            col.neg_mut();
        }
    }
}

/// Thin SVD `A = U S Vᵀ` returning `U` and `S` sorted by decreasing singular
/// value.
pub(crate) fn left_singular(a: &DMatrix<f64>) -> (DMatrix<f64>, DVector<f64>) {
    let k = a.nrows().min(a.ncols());
    if k == 0 {
        return (DMatrix::zeros(a.nrows(), 0), DVector::zeros(0));
    }
    let svd = a.clone().svd(true, false);
    let u = svd.u.expect("requested U");
    let s = svd.singular_values;
    let mut order: Vec<usize> = (0..s.len()).collect();
    order.sort_by(|&i, &j| s[j].total_cmp(&s[i]).then(i.cmp(&j)));
    let u_sorted = DMatrix::from_fn(u.nrows(), order.len(), |r, c| u[(r, order[c])]);
    let s_sorted = DVector::from_iterator(order.len(), order.iter().map(|&i| s[i]));
    (u_sorted, s_sorted)
}

/// Eigenpairs of a symmetric matrix sorted by decreasing eigenvalue.
pub(crate) fn sorted_symmetric_eigen(m: &DMatrix<f64>) -> (DVector<f64>, DMatrix<f64>) {
    let sym = (m + m.transpose()) * 0.5;
    let eig = SymmetricEigen::new(sym);
    let n = eig.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        eig.eigenvalues[j]
            .total_cmp(&eig.eigenvalues[i])
            .then(i.cmp(&j))
    });
    let values = DVector::from_iterator(n, order.iter().map(|&i| eig.eigenvalues[i]));
    let vectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

/// Moore-Penrose inverse of a symmetric positive semidefinite matrix.
/// Eigenvalues below `1e-10 × largest` count as zero.
pub fn symmetric_pseudo_inverse(m: &DMatrix<f64>) -> DMatrix<f64> {
    let n = m.nrows();
    if n == 0 {
        return DMatrix::zeros(0, 0);
    }
    let (values, vectors) = sorted_symmetric_eigen(m);
    let tol = 1e-10 * values.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let mut out = DMatrix::zeros(n, n);
    for (k, &l) in values.iter().enumerate() {
        if l > tol {
            let v = vectors.column(k);
            out += (v * v.transpose()) / l;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signs() {
        let mut m = DMatrix::from_row_slice(2, 2, &[0.5, -1.0, -0.9, 0.2]);
        fix_column_signs(&mut m);
        assert_eq!(m, DMatrix::from_row_slice(2, 2, &[-0.5, 1.0, 0.9, -0.2]));
    }

    #[test]
    fn pseudo_inverse_of_singular() {
        let m = DMatrix::from_row_slice(2, 2, &[4.0, 0.0, 0.0, 0.0]);
        let p = symmetric_pseudo_inverse(&m);
        assert!((p - DMatrix::from_row_slice(2, 2, &[0.25, 0.0, 0.0, 0.0])).norm() < 1e-12);
    }

    #[test]
    fn svd_is_sorted() {
        let a = DMatrix::from_row_slice(3, 2, &[1.0, 0.0, 0.0, 5.0, 0.0, 0.0]);
        let (u, s) = left_singular(&a);
        assert_eq!(s.as_slice(), &[5.0, 1.0]);
        assert!((u[(1, 0)].abs() - 1.0).abs() < 1e-12);
    }
}
