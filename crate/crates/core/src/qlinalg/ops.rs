use crate::error::{Error, Result};

use super::dims::Dims;
use super::eigen::eig_hermitian;
use super::matrix::ComplexMatrix;
use super::state::DensityMatrix;

/// ρ^{T_side}: transposes the tensor factors listed in `side`.
pub fn partial_transpose(rho: &DensityMatrix, side: &[usize]) -> Result<ComplexMatrix> {
    partial_transpose_raw(rho.matrix(), rho.dims(), side)
}

/// Partial transpose of an arbitrary square operator on `dims`.
pub fn partial_transpose_raw(
    mat: &ComplexMatrix,
    dims: &Dims,
    side: &[usize],
) -> Result<ComplexMatrix> {
    if !mat.is_square() {
        return Err(Error::NotSquare {
            rows: mat.rows(),
            cols: mat.cols(),
        });
    }
    if mat.rows() != dims.total() {
        return Err(Error::DimensionMismatch {
            expected: dims.total(),
            found: mat.rows(),
        });
    }
    let side = dims.subset(side)?;
    let n = dims.total();
    let strides = dims.strides();
    let local = dims.local();

    // For each index, the part of the index living on `side` and the rest.
    let split: Vec<(usize, usize)> = (0..n)
        .map(|idx| {
            let on_side: usize = side
                .iter()
                .map(|&k| ((idx / strides[k]) % local[k]) * strides[k])
                .sum();
            (on_side, idx - on_side)
        })
        .collect();

    let mut out = ComplexMatrix::zeros(n, n);
    for r in 0..n {
        let (rs, rr) = split[r];
        for c in 0..n {
            let (cs, cr) = split[c];
            out[(cs + rr, rs + cr)] = mat[(r, c)];
        }
    }
    Ok(out)
}

/// Traces out every subsystem not listed in `keep`.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let dims = rho.dims();
    let keep = dims.proper_subset(keep)?;
    let traced = dims.complement(&keep);
    let kept_dim = dims.dim_of(&keep);
    let traced_dim = dims.dim_of(&traced);
    let strides = dims.strides();
    let local = dims.local();

    // Full index from (kept multi-index, traced multi-index), both row-major.
    let embed = |subs: &[usize], mut value: usize| -> usize {
        let mut idx = 0;
        for &k in subs.iter().rev() {
            idx += (value % local[k]) * strides[k];
            value /= local[k];
        }
        idx
    };
    let kept_offsets: Vec<usize> = (0..kept_dim).map(|v| embed(&keep, v)).collect();
    let traced_offsets: Vec<usize> = (0..traced_dim).map(|v| embed(&traced, v)).collect();

    let m = rho.matrix();
    let mut out = ComplexMatrix::zeros(kept_dim, kept_dim);
    for (i, &ki) in kept_offsets.iter().enumerate() {
        for (j, &kj) in kept_offsets.iter().enumerate() {
            out[(i, j)] = traced_offsets.iter().map(|&t| m[(ki + t, kj + t)]).sum();
        }
    }
    Ok(DensityMatrix::from_parts(
        out,
        dims.restrict(&keep),
        rho.tol(),
    ))
}

/// Σ|λᵢ| for a Hermitian matrix.
pub fn trace_norm(m: &ComplexMatrix) -> Result<f64> {
    Ok(eig_hermitian(m)?.iter().map(|v| v.abs()).sum())
}
