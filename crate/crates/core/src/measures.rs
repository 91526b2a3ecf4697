//! Closed-form entanglement measures.
//!
//! Negativity is `‖ρ^{T_A}‖₁ − 1` (not halved), so a two-qubit pure state
//! has negativity equal to its concurrence. This is what makes the Wootters
//! closed forms exact two-qubit values of the convex and concave roofs of
//! negativity.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qlinalg::{
    eigh, partial_transpose, singular_values, trace_norm, ComplexMatrix, DensityMatrix,
    DimsPartition, PureState, C64, DEFAULT_TOL,
};

/// 4 ln 2, the smallest exponent for which the logarithmic monogamy
/// inequalities are guaranteed.
pub const FOUR_LN_2: f64 = 4.0 * std::f64::consts::LN_2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MeasureKind {
    Negativity,
    LogNegativity,
    Concurrence,
    ConcurrenceAssist,
}

/// A measure evaluated on one bipartition.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasureValue {
    pub value: f64,
    pub kind: MeasureKind,
    pub bipartition: DimsPartition,
}

/// log₂(1 + x)
#[inline]
pub fn log2_1p(x: f64) -> f64 {
    x.ln_1p() / std::f64::consts::LN_2
}

fn clamp_nonneg(x: f64) -> f64 {
    if x < 0.0 {
        0.0
    } else {
        x
    }
}

/// ‖ρ^{T_cut}‖₁ − 1
pub fn negativity(rho: &DensityMatrix, cut: &[usize]) -> Result<f64> {
    let cut = rho.dims().proper_subset(cut)?;
    let pt = partial_transpose(rho, &cut)?;
    Ok(clamp_nonneg(trace_norm(&pt)? - 1.0))
}

/// log₂(1 + N(ρ))
pub fn log_negativity(rho: &DensityMatrix, cut: &[usize]) -> Result<f64> {
    Ok(log2_1p(negativity(rho, cut)?))
}

/// Negativity of a pure state from its Schmidt coefficients:
/// (Σᵢ σᵢ)² − 1 with σᵢ the singular values of the reshaped amplitudes.
pub fn pure_negativity(psi: &PureState, cut: &[usize]) -> Result<f64> {
    let m = psi.bipartite_matrix(cut)?;
    let nuclear: f64 = singular_values(&m).iter().sum();
    Ok(clamp_nonneg(nuclear * nuclear - 1.0))
}

fn require_two_qubits(rho: &DensityMatrix) -> Result<()> {
    if rho.dims().local() != [2, 2] {
        return Err(Error::argument(format!(
            "two-qubit state required, got dims {:?}",
            rho.dims().local()
        )));
    }
    Ok(())
}

/// Descending square roots of the eigenvalues of ρ(σ_y⊗σ_y)ρ*(σ_y⊗σ_y).
///
/// Computed as the singular values of τ = Vᵀ(σ_y⊗σ_y)V, where the columns
/// of V are √pₖ eₖ over the eigenpairs of ρ. No square root of a near-zero
/// eigenvalue is taken, so rank-deficient inputs keep full precision.
/// Eigenvalues of ρ below 1e−14 are dropped as roundoff.
pub fn wootters_lambdas(rho: &DensityMatrix) -> Result<[f64; 4]> {
    require_two_qubits(rho)?;
    let eig = eigh(rho.matrix())?;
    let support: Vec<usize> = (0..4).filter(|&k| eig.values[k] > 1e-14).collect();
    let r = support.len();
    let mut v = ComplexMatrix::zeros(4, r);
    for (c, &k) in support.iter().enumerate() {
        let root = eig.values[k].sqrt();
        for (i, x) in eig.vector(k).into_iter().enumerate() {
            v[(i, c)] = x * root;
        }
    }
    // σ_y ⊗ σ_y is real: anti-diagonal (−1, 1, 1, −1).
    let mut yy = ComplexMatrix::zeros(4, 4);
    yy[(0, 3)] = C64::new(-1.0, 0.0);
    yy[(1, 2)] = C64::new(1.0, 0.0);
    yy[(2, 1)] = C64::new(1.0, 0.0);
    yy[(3, 0)] = C64::new(-1.0, 0.0);
    let tau = v.transpose().matmul(&yy).matmul(&v);
    let mut out = [0.0; 4];
    for (o, s) in out.iter_mut().zip(singular_values(&tau)) {
        *o = s;
    }
    Ok(out)
}

/// Wootters concurrence max(0, λ₁ − λ₂ − λ₃ − λ₄).
pub fn concurrence_2q(rho: &DensityMatrix) -> Result<f64> {
    let l = wootters_lambdas(rho)?;
    Ok(clamp_nonneg(l[0] - l[1] - l[2] - l[3]))
}

/// Concurrence of assistance λ₁ + λ₂ + λ₃ + λ₄.
pub fn concurrence_assist_2q(rho: &DensityMatrix) -> Result<f64> {
    Ok(wootters_lambdas(rho)?.iter().sum())
}

/// Evaluates `kind` on `rho` across `cut`. The concurrence kinds require a
/// two-qubit state and ignore the cut beyond validating it.
pub fn measure(kind: MeasureKind, rho: &DensityMatrix, cut: &[usize]) -> Result<MeasureValue> {
    let bipartition = DimsPartition::new(rho.dims().clone(), cut)?;
    let value = match kind {
        MeasureKind::Negativity => negativity(rho, cut)?,
        MeasureKind::LogNegativity => log_negativity(rho, cut)?,
        MeasureKind::Concurrence => concurrence_2q(rho)?,
        MeasureKind::ConcurrenceAssist => concurrence_assist_2q(rho)?,
    };
    Ok(MeasureValue {
        value,
        kind,
        bipartition,
    })
}

/// True when ρ is numerically rank one.
pub(crate) fn is_numerically_pure(rho: &DensityMatrix) -> bool {
    (rho.purity() - 1.0).abs() <= DEFAULT_TOL
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::{partial_trace, Dims};
    use crate::states::{bell, ghz, w_state};

    fn werner(p: f64) -> DensityMatrix {
        // p|Ψ⁻⟩⟨Ψ⁻| + (1 − p)I/4
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let psi = PureState::new(
            vec![
                C64::new(0.0, 0.0),
                C64::new(s, 0.0),
                C64::new(-s, 0.0),
                C64::new(0.0, 0.0),
            ],
            Dims::qubits(2).unwrap(),
        )
        .unwrap();
        psi.projector().with_white_noise(p).unwrap()
    }

    #[test]
    fn bell_values() {
        let rho = bell().projector();
        assert!((negativity(&rho, &[0]).unwrap() - 1.0).abs() < 1e-12);
        assert!((log_negativity(&rho, &[0]).unwrap() - 1.0).abs() < 1e-12);
        assert!((concurrence_2q(&rho).unwrap() - 1.0).abs() < 1e-9);
        assert!((concurrence_assist_2q(&rho).unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn product_is_zero() {
        let a = crate::states::from_real_amplitudes(&[0.6, 0.8], &[2]).unwrap();
        let b = crate::states::from_real_amplitudes(&[1.0, 2.0, 0.5], &[3]).unwrap();
        let rho = a.kron(&b).unwrap().projector();
        assert!(negativity(&rho, &[0]).unwrap() < 1e-12);
        assert!(log_negativity(&rho, &[1]).unwrap() < 1e-12);
    }

    #[test]
    fn w3_negativity() {
        let want = 2.0 * 2f64.sqrt() / 3.0;
        let w = w_state(3).unwrap();
        assert!((negativity(&w.projector(), &[0]).unwrap() - want).abs() < 1e-10);
        assert!((pure_negativity(&w, &[0]).unwrap() - want).abs() < 1e-12);
        assert!((pure_negativity(&ghz(3).unwrap(), &[0]).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn werner_concurrence() {
        let rho = werner(0.8);
        assert!((concurrence_2q(&rho).unwrap() - 0.7).abs() < 1e-9);
        // Direct λ oracle for Werner: ρ̃ = ρ, so λ = eigenvalues of ρ.
        let l = wootters_lambdas(&rho).unwrap();
        assert!((l[0] - (1.0 + 3.0 * 0.8) / 4.0).abs() < 1e-9);
        assert!((l[1] - 0.05).abs() < 1e-9);
    }

    #[test]
    fn maximally_mixed() {
        let rho = DensityMatrix::new(
            ComplexMatrix::identity(4).scale_real(0.25),
            Dims::qubits(2).unwrap(),
        )
        .unwrap();
        assert!(concurrence_2q(&rho).unwrap() < 1e-12);
        assert!((concurrence_assist_2q(&rho).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn concurrence_requires_two_qubits() {
        let rho = ghz(3).unwrap().projector();
        assert!(concurrence_2q(&rho).is_err());
        assert!(concurrence_assist_2q(&rho).is_err());
    }

    #[test]
    fn w_pair_concurrence() {
        let ab = partial_trace(&w_state(3).unwrap().projector(), &[0, 1]).unwrap();
        assert!((concurrence_2q(&ab).unwrap() - 2.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn measure_records_kind_and_cut() {
        let m = measure(MeasureKind::LogNegativity, &bell().projector(), &[1]).unwrap();
        assert_eq!(m.kind, MeasureKind::LogNegativity);
        assert_eq!(m.bipartition.cut(), &[1]);
        assert!(measure(MeasureKind::Negativity, &bell().projector(), &[0, 1]).is_err());
    }

    #[test]
    fn four_ln_2_constant() {
        assert_eq!(FOUR_LN_2, 2.772588722239781);
    }
}
