//! Small dense complex linear algebra on top of nalgebra.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Ratio between consecutive singular values that counts as a rank gap.
pub const RANK_GAP_RATIO: f64 = 1e6;

/// Singular values at or below this are treated as exact zeros.
pub const ZERO_SINGULAR_VALUE: f64 = 1e-14;

/// Singular values in descending order.
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let mut sv: Vec<f64> = m.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Rank from a descending singular-value list: the position of the first
/// consecutive ratio at least [`RANK_GAP_RATIO`], or the full length if there
/// is no such gap.
pub fn numeric_rank(sv: &[f64]) -> usize {
    let Some(&top) = sv.first() else { return 0 };
    if top <= ZERO_SINGULAR_VALUE {
        return 0;
    }
    for k in 0..sv.len() - 1 {
        if sv[k + 1] <= ZERO_SINGULAR_VALUE || sv[k] / sv[k + 1] >= RANK_GAP_RATIO {
            return k + 1;
        }
    }
    sv.len()
}

/// Solves `columns · x ≈ target` in the least-squares sense and fails if the
/// relative residual exceeds `tol`.
pub fn solve_in_span(columns: &CMatrix, target: &CVector, tol: f64) -> Result<CVector> {
    let svd = columns.clone().svd(true, true);
    let x = svd
        .solve(target, ZERO_SINGULAR_VALUE)
        .map_err(|_| Error::NotInSpan(f64::INFINITY))?;
    let residual = (columns * &x - target).norm();
    let scale = 1.0f64.max(target.norm());
    if residual > tol * scale {
        return Err(Error::NotInSpan(residual / scale));
    }
    Ok(x)
}

/// Largest entrywise distance between `m` and its conjugate transpose.
pub fn hermitian_defect(m: &CMatrix) -> f64 {
    if m.nrows() != m.ncols() {
        return f64::INFINITY;
    }
    let mut worst = 0.0f64;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Eigenvalues of a Hermitian matrix, ascending. The input is symmetrized first.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let sym = (m + m.adjoint()).map(|z| z * 0.5);
    let mut ev: Vec<f64> = sym.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|a, b| a.total_cmp(b));
    ev
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn rank_from_gaps() {
        assert_eq!(numeric_rank(&[]), 0);
        assert_eq!(numeric_rank(&[0.0, 0.0]), 0);
        assert_eq!(numeric_rank(&[3.0, 1.0, 1e-3]), 3);
        assert_eq!(numeric_rank(&[3.0, 1.0, 1e-8]), 2);
        assert_eq!(numeric_rank(&[3.0, 0.0]), 1);
    }

    #[test]
    fn rank_of_dependent_columns() {
        let m = CMatrix::from_row_slice(2, 3, &[c(1.0), c(2.0), c(3.0), c(2.0), c(4.0), c(6.0)]);
        assert_eq!(numeric_rank(&singular_values(&m)), 1);
    }

    #[test]
    fn eigenvalues_of_diagonal() {
        let m = CMatrix::from_diagonal(&CVector::from_vec(vec![c(1.0), c(-2.0)]));
        assert_eq!(hermitian_eigenvalues(&m), vec![-2.0, 1.0]);
        assert_eq!(hermitian_defect(&m), 0.0);
    }
}
