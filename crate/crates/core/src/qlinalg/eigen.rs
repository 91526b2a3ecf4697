use crate::error::{Error, Result};

use super::matrix::{ComplexMatrix, C64};
use super::DEFAULT_TOL;

/// Eigenvalues (descending) and matching unit eigenvectors stored as columns.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn vector(&self, k: usize) -> Vec<C64> {
        self.vectors.column(k)
    }

    /// V Λ V†
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.values.len();
        let mut out = ComplexMatrix::zeros(n, n);
        for (k, &lambda) in self.values.iter().enumerate() {
            let v = self.vector(k);
            for i in 0..n {
                let vi = v[i] * lambda;
                for j in 0..n {
                    out[(i, j)] += vi * v[j].conj();
                }
            }
        }
        out
    }
}

fn check_hermitian(m: &ComplexMatrix) -> Result<()> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let defect = m.hermiticity_defect();
    let scale = m.as_slice().iter().map(|z| z.norm()).fold(1.0, f64::max);
    if defect > DEFAULT_TOL * scale {
        return Err(Error::NotHermitian(defect));
    }
    Ok(())
}

/// Real spectrum of a Hermitian matrix, sorted descending.
pub fn eig_hermitian(m: &ComplexMatrix) -> Result<Vec<f64>> {
    check_hermitian(m)?;
    let mut values: Vec<f64> = m
        .hermitian_part()
        .to_nalgebra()
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .collect();
    values.sort_by(|a, b| b.total_cmp(a));
    Ok(values)
}

/// Full eigendecomposition of a Hermitian matrix, eigenpairs sorted by
/// descending eigenvalue.
pub fn eigh(m: &ComplexMatrix) -> Result<HermitianEigen> {
    check_hermitian(m)?;
    let eig = m.hermitian_part().to_nalgebra().symmetric_eigen();
    let n = m.rows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        for i in 0..n {
            vectors[(i, dst)] = eig.eigenvectors[(i, src)];
        }
    }
    Ok(HermitianEigen {
        values: order.iter().map(|&k| eig.eigenvalues[k]).collect(),
        vectors,
    })
}

/// Singular values of an arbitrary matrix, sorted descending.
pub fn singular_values(m: &ComplexMatrix) -> Vec<f64> {
    let mut s: Vec<f64> = m
        .to_nalgebra()
        .singular_values()
        .iter()
        .copied()
        .collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Matrix square root of a positive semidefinite Hermitian matrix; negative
/// eigenvalues from roundoff are clamped to zero.
pub fn psd_sqrt(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let mut eig = eigh(m)?;
    for v in &mut eig.values {
        *v = v.max(0.0).sqrt();
    }
    Ok(eig.reconstruct())
}

/// exp(A) for anti-Hermitian A, computed through the spectrum of the
/// Hermitian matrix −iA. The result is unitary to working precision.
pub fn expm_anti_hermitian(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let h = a.scale(C64::new(0.0, -1.0));
    let eig = eigh(&h)?;
    let n = eig.values.len();
    let mut out = ComplexMatrix::zeros(n, n);
    for (k, &lambda) in eig.values.iter().enumerate() {
        let phase = C64::new(0.0, lambda).exp();
        let v = eig.vector(k);
        for i in 0..n {
            let vi = v[i] * phase;
            for j in 0..n {
                out[(i, j)] += vi * v[j].conj();
            }
        }
    }
    Ok(out)
}
