//! Small dense helpers shared by the trace kernels. Using one code path for
//! every trace expression keeps the documented bit-for-bit equalities between
//! the alpha-tensor and the cubic-family evaluation honest.

use nalgebra::DMatrix;

/// tr(A B) without forming the product, accumulated in row-major order.
pub(crate) fn trace_prod(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    let n = a.nrows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            acc += a[(i, j)] * b[(j, i)];
        }
    }
    acc
}

pub(crate) fn trace(a: &DMatrix<f64>) -> f64 {
    let mut acc = 0.0;
    for i in 0..a.nrows() {
        acc += a[(i, i)];
    }
    acc
}

pub(crate) fn max_abs(a: &DMatrix<f64>) -> f64 {
    a.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
}
