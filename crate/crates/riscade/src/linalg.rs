//! Dense complex linear-algebra helpers used throughout the crate.
//!
//! Everything here reduces to Hermitian eigendecompositions and Cholesky
//! solves; no general complex SVD is required anywhere in the pipeline.

use nalgebra::{Cholesky, DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

pub type CMat = DMatrix<Complex64>;
pub type CVec = DVector<Complex64>;

/// Eigendecomposition of a Hermitian matrix with eigenvalues sorted in
/// descending order. The input is symmetrized first to absorb rounding
/// asymmetry from accumulated products.
pub fn hermitian_eigen_desc(mat: &CMat) -> (DVector<f64>, CMat) {
    let sym = (mat + mat.adjoint()).scale(0.5);
    let eig = SymmetricEigen::new(sym);
    let m = eig.eigenvalues.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[b]
            .partial_cmp(&eig.eigenvalues[a])
            .expect("eigenvalues of a Hermitian matrix are real and finite")
    });
    let vals = DVector::from_iterator(m, order.iter().map(|&i| eig.eigenvalues[i]));
    let mut vecs = CMat::zeros(eig.eigenvectors.nrows(), m);
    for (dst, &src) in order.iter().enumerate() {
        vecs.set_column(dst, &eig.eigenvectors.column(src));
    }
    (vals, vecs)
}

/// Solve `A X = B` for Hermitian positive-definite `A`.
pub fn solve_hpd(a: &CMat, b: &CMat) -> Option<CMat> {
    Cholesky::new(a.clone()).map(|ch| ch.solve(b))
}

/// Solve `A X = B` for Hermitian positive-semidefinite `A`, retrying with a
/// diagonal ridge proportional to the trace when the factorization fails.
/// Returns the solution and whether the ridge path was taken.
pub fn solve_hpd_ridge(a: &CMat, b: &CMat, ridge_scale: f64) -> (CMat, bool) {
    if let Some(x) = solve_hpd(a, b) {
        return (x, false);
    }
    let n = a.nrows();
    let trace: f64 = (0..n).map(|i| a[(i, i)].re).sum();
    let mut ridge = ridge_scale * trace.max(1e-300);
    for _ in 0..8 {
        let mut damped = a.clone();
        for i in 0..n {
            damped[(i, i)] += Complex64::new(ridge, 0.0);
        }
        if let Some(x) = solve_hpd(&damped, b) {
            return (x, true);
        }
        ridge = (ridge * 10.0).max(1e-12);
    }
    // Last resort: the system is numerically hopeless; return zeros so the
    // caller can surface the ridge flag instead of panicking.
    (CMat::zeros(n, b.ncols()), true)
}

/// Least squares `min_X ||A X - B||_F` via the normal equations.
/// Returns the solution and a flag set when a ridge fallback was needed.
pub fn lstsq(a: &CMat, b: &CMat, ridge_scale: f64) -> (CMat, bool) {
    let gram = a.adjoint() * a;
    let rhs = a.adjoint() * b;
    solve_hpd_ridge(&gram, &rhs, ridge_scale)
}

/// Moore-Penrose pseudoinverse of a Hermitian PSD matrix through its
/// eigendecomposition, dropping eigenvalues below `rel_tol * max`.
pub fn pinv_hermitian_psd(a: &CMat, rel_tol: f64) -> CMat {
    let (vals, vecs) = hermitian_eigen_desc(a);
    let n = a.nrows();
    let thresh = vals[0].max(0.0) * rel_tol;
    let mut out = CMat::zeros(n, n);
    for i in 0..n {
        if vals[i] > thresh && vals[i] > 0.0 {
            let v = vecs.column(i);
            out += (v * v.adjoint()).scale(1.0 / vals[i]);
        }
    }
    out
}

/// Minimum-norm pseudoinverse of a general matrix, routed through the
/// Hermitian pseudoinverse of its smaller Gram matrix.
pub fn pinv(a: &CMat, rel_tol: f64) -> CMat {
    if a.nrows() <= a.ncols() {
        // A^+ = A^H (A A^H)^+
        a.adjoint() * pinv_hermitian_psd(&(a * a.adjoint()), rel_tol)
    } else {
        // A^+ = (A^H A)^+ A^H
        pinv_hermitian_psd(&(a.adjoint() * a), rel_tol) * a.adjoint()
    }
}
