use serde::Serialize;

use crate::error::{Error, Result};
use crate::measures::{concurrence_2q, log2_1p, pure_negativity};
use crate::qlinalg::{ComplexMatrix, DensityMatrix, Dims, PureState};
use crate::states::{sample_haar_pure_with, RandomStream};

/// Minimum margin for a certificate to count.
pub const NONCONVEXITY_MARGIN: f64 = 1e-6;

const MAX_ATTEMPTS: usize = 10_000;

/// An ensemble of two-qubit pure states on which LCREN of the mixture
/// exceeds the average LCREN of the members.
#[derive(Debug, Clone, Serialize)]
pub struct NonconvexityCertificate {
    pub weights: Vec<f64>,
    #[serde(skip)]
    pub states: Vec<PureState>,
    /// LCREN of Σ pₖ|φₖ⟩⟨φₖ|.
    pub lhs: f64,
    /// Σ pₖ LCREN(φₖ).
    pub rhs: f64,
    pub margin: f64,
    pub attempts: usize,
}

impl NonconvexityCertificate {
    pub fn is_valid(&self) -> bool {
        self.margin > NONCONVEXITY_MARGIN
    }
}

/// Evaluates both sides exactly for a two-qubit pure ensemble: the mixture
/// through the Wootters closed form, the members through their Schmidt
/// coefficients.
pub fn certify_nonconvexity(weights: &[f64], states: &[PureState]) -> Result<NonconvexityCertificate> {
    if weights.len() != states.len() || states.is_empty() {
        return Err(Error::argument("weights and states must match and be nonempty"));
    }
    let dims = Dims::qubits(2)?;
    let mut mix = ComplexMatrix::zeros(4, 4);
    let mut rhs = 0.0;
    for (&p, s) in weights.iter().zip(states) {
        if s.dims() != &dims {
            return Err(Error::argument("ensemble members must be two-qubit states"));
        }
        mix = &mix + &s.projector().matrix().scale_real(p);
        rhs += p * log2_1p(pure_negativity(s, &[0])?);
    }
    let rho = DensityMatrix::new(mix, dims)?;
    let lhs = log2_1p(concurrence_2q(&rho)?);
    Ok(NonconvexityCertificate {
        weights: weights.to_vec(),
        states: states.to_vec(),
        lhs,
        rhs,
        margin: lhs - rhs,
        attempts: 1,
    })
}

/// Searches equal-weight pairs of Haar-random two-qubit pure states with
/// distinct negativities for a violation of convexity of LCREN.
pub fn nonconvexity_witness(rng: &RandomStream) -> Result<NonconvexityCertificate> {
    let dims = Dims::qubits(2)?;
    let mut gen = rng.rng();
    for attempt in 1..=MAX_ATTEMPTS {
        let a = sample_haar_pure_with(&dims, &mut gen)?;
        let b = sample_haar_pure_with(&dims, &mut gen)?;
        let na = pure_negativity(&a, &[0])?;
        let nb = pure_negativity(&b, &[0])?;
        if (na - nb).abs() < 1e-3 {
            continue;
        }
        let mut cert = certify_nonconvexity(&[0.5, 0.5], &[a, b])?;
        if cert.is_valid() {
            cert.attempts = attempt;
            return Ok(cert);
        }
    }
    Err(Error::argument(format!(
        "no nonconvexity witness found in {MAX_ATTEMPTS} attempts"
    )))
}
