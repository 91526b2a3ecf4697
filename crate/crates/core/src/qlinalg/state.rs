use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

use super::dims::Dims;
use super::eigen::eig_hermitian;
use super::matrix::{ComplexMatrix, C64};
use super::DEFAULT_TOL;

/// A validated density operator on a multipartite space.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
    dims: Dims,
    tol: f64,
}

/// Outcome of [`validate_density`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DensityDiagnostics {
    pub hermiticity_defect: f64,
    pub trace_defect: f64,
    pub min_eigenvalue: f64,
    pub passed: bool,
}

fn check_shape(mat: &ComplexMatrix, dims: &Dims) -> Result<()> {
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
    Ok(())
}

impl DensityMatrix {
    /// Validates with the default tolerance.
    pub fn new(mat: ComplexMatrix, dims: Dims) -> Result<Self> {
        Self::with_tol(mat, dims, DEFAULT_TOL)
    }

    pub fn with_tol(mat: ComplexMatrix, dims: Dims, tol: f64) -> Result<Self> {
        let rho = Self::unchecked(mat, dims, tol)?;
        let diag = validate_density(&rho);
        if !diag.passed {
            return Err(Error::InvalidDensity(format!(
                "hermiticity defect {:.3e}, trace defect {:.3e}, min eigenvalue {:.3e}",
                diag.hermiticity_defect, diag.trace_defect, diag.min_eigenvalue
            )));
        }
        Ok(rho)
    }

    /// Checks shape only. Used to hold candidate matrices for diagnostics.
    pub fn unchecked(mat: ComplexMatrix, dims: Dims, tol: f64) -> Result<Self> {
        check_shape(&mat, &dims)?;
        if !(tol >= 0.0) {
            return Err(Error::argument("tolerance must be nonnegative"));
        }
        Ok(Self { mat, dims, tol })
    }

    /// Trusted constructor for results of trace- and positivity-preserving maps.
    pub(crate) fn from_parts(mat: ComplexMatrix, dims: Dims, tol: f64) -> Self {
        debug_assert_eq!(mat.rows(), dims.total());
        Self { mat, dims, tol }
    }

    /// (1 − v)·I/d + v·ρ
    pub fn with_white_noise(&self, visibility: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&visibility) {
            return Err(Error::argument(format!(
                "visibility {visibility} outside [0, 1]"
            )));
        }
        let d = self.dim();
        let noise = ComplexMatrix::identity(d).scale_real((1.0 - visibility) / d as f64);
        let mat = &self.mat.scale_real(visibility) + &noise;
        Ok(Self::from_parts(mat, self.dims.clone(), self.tol))
    }

    /// ρ ⊗ σ with subsystems concatenated.
    pub fn kron(&self, other: &Self) -> Result<Self> {
        let mut local = self.dims.local().to_vec();
        local.extend_from_slice(other.dims.local());
        let dims = Dims::new(local)?;
        Ok(Self::from_parts(
            self.mat.kron(&other.mat),
            dims,
            self.tol.max(other.tol),
        ))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn dims(&self) -> &Dims {
        &self.dims
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    /// tr(ρ²)
    pub fn purity(&self) -> f64 {
        let m = &self.mat;
        let mut acc = 0.0;
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                acc += m[(i, j)].norm_sqr();
            }
        }
        acc
    }

    /// Short hex digest of the matrix entries.
    pub fn fingerprint(&self) -> String {
        fingerprint(b'M', self.dims.local(), self.mat.as_slice())
    }
}

/// Reports Hermiticity defect, trace defect and minimum eigenvalue; passes
/// when all three are within `rho.tol()`.
pub fn validate_density(rho: &DensityMatrix) -> DensityDiagnostics {
    let m = &rho.mat;
    let hermiticity_defect = m.hermiticity_defect();
    let trace = m.trace();
    let trace_defect = (trace - C64::new(1.0, 0.0)).norm();
    let min_eigenvalue = eig_hermitian(&m.hermitian_part())
        .ok()
        .and_then(|v| v.last().copied())
        .unwrap_or(f64::NEG_INFINITY);
    let passed = hermiticity_defect <= rho.tol
        && trace_defect <= rho.tol
        && min_eigenvalue >= -rho.tol;
    DensityDiagnostics {
        hermiticity_defect,
        trace_defect,
        min_eigenvalue,
        passed,
    }
}

/// A normalized state vector on a multipartite space.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amps: Vec<C64>,
    dims: Dims,
}

impl PureState {
    /// Requires the Euclidean norm to be within the default tolerance of 1.
    pub fn new(amps: Vec<C64>, dims: Dims) -> Result<Self> {
        if amps.len() != dims.total() {
            return Err(Error::DimensionMismatch {
                expected: dims.total(),
                found: amps.len(),
            });
        }
        if let Some(pos) = amps.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite(pos));
        }
        let norm = norm(&amps);
        if (norm - 1.0).abs() > DEFAULT_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { amps, dims })
    }

    /// Rescales `amps` to unit norm.
    pub fn normalized(mut amps: Vec<C64>, dims: Dims) -> Result<Self> {
        let n = norm(&amps);
        if !(n.is_finite() && n > 1e-150) {
            return Err(Error::argument("amplitudes are not normalizable"));
        }
        for a in &mut amps {
            *a /= n;
        }
        Self::new(amps, dims)
    }

    pub(crate) fn from_parts(amps: Vec<C64>, dims: Dims) -> Self {
        debug_assert_eq!(amps.len(), dims.total());
        Self { amps, dims }
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn dims(&self) -> &Dims {
        &self.dims
    }

    pub fn norm(&self) -> f64 {
        norm(&self.amps)
    }

    /// |ψ⟩⟨ψ|
    pub fn projector(&self) -> DensityMatrix {
        DensityMatrix::from_parts(ComplexMatrix::outer(&self.amps), self.dims.clone(), DEFAULT_TOL)
    }

    /// |ψ⟩ ⊗ |φ⟩ with subsystems concatenated.
    pub fn kron(&self, other: &Self) -> Result<Self> {
        let mut local = self.dims.local().to_vec();
        local.extend_from_slice(other.dims.local());
        let dims = Dims::new(local)?;
        let amps = self
            .amps
            .iter()
            .flat_map(|a| other.amps.iter().map(move |b| a * b))
            .collect();
        Ok(Self::from_parts(amps, dims))
    }

    /// Applies a unitary acting on the full space.
    pub fn evolve(&self, u: &ComplexMatrix) -> Result<Self> {
        if u.rows() != self.amps.len() || u.cols() != self.amps.len() {
            return Err(Error::DimensionMismatch {
                expected: self.amps.len(),
                found: u.rows(),
            });
        }
        Self::normalized(u.mul_vec(&self.amps), self.dims.clone())
    }

    /// Amplitudes reshaped as a `dim(cut) × dim(rest)` matrix.
    pub fn bipartite_matrix(&self, cut: &[usize]) -> Result<ComplexMatrix> {
        let cut = self.dims.proper_subset(cut)?;
        let rows = self.dims.dim_of(&cut);
        let cols = self.amps.len() / rows;
        let mut m = ComplexMatrix::zeros(rows, cols);
        for (idx, (r, c)) in self.dims.bipartite_index_map(&cut).into_iter().enumerate() {
            m[(r, c)] = self.amps[idx];
        }
        Ok(m)
    }

    /// Short hex digest of the amplitudes.
    pub fn fingerprint(&self) -> String {
        fingerprint(b'V', self.dims.local(), &self.amps)
    }
}

fn norm(amps: &[C64]) -> f64 {
    amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn fingerprint(tag: u8, dims: &[usize], entries: &[C64]) -> String {
    let mut h = Sha256::new();
    h.update([tag]);
    for &d in dims {
        h.update((d as u64).to_le_bytes());
    }
    for z in entries {
        h.update(z.re.to_bits().to_le_bytes());
        h.update(z.im.to_bits().to_le_bytes());
    }
    let digest = h.finalize();
    digest[..8].iter().map(|b| format!("{b:02x}")).collect()
}
