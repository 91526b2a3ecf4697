use serde::Serialize;

use crate::error::{Error, Result};
use crate::measures::{concurrence_2q, concurrence_assist_2q, negativity, pure_negativity};
use crate::qlinalg::{partial_trace, DensityMatrix, Dims, PureState};
use crate::roof::{cren, BoundedValue, RoofOptions};
use crate::states::QuantumState;

use super::lemma::{check_exponent, lemma1_residual, log_power, LemmaMode};
use super::report::{InequalityId, InequalityReport, Term};
use super::EXACT_TOL;

fn require_qubits(dims: &Dims, min_n: usize) -> Result<()> {
    if !dims.is_qubits() {
        return Err(Error::argument(format!("expected qubits, got dims {:?}", dims.local())));
    }
    if dims.count() < min_n {
        return Err(Error::argument(format!(
            "expected at least {min_n} qubits, got {}",
            dims.count()
        )));
    }
    Ok(())
}

fn require_pure(state: &QuantumState) -> Result<&PureState> {
    match state {
        QuantumState::Pure(p) => Ok(p),
        QuantumState::Mixed(_) => Err(Error::argument("this inequality is stated for pure states")),
    }
}

fn require_exponent(exponent: f64, expected: f64) -> Result<()> {
    if exponent != expected {
        return Err(Error::argument(format!("exponent is fixed at {expected}, got {exponent}")));
    }
    Ok(())
}

/// Optimizer options on an independent child stream.
fn forked(opts: &RoofOptions, child: u64) -> RoofOptions {
    opts.clone().with_rng(opts.rng.fork(child))
}

/// ρ_{AB_i} for i = 1..n−1.
pub fn pair_reductions(rho: &DensityMatrix) -> Result<Vec<DensityMatrix>> {
    (1..rho.dims().count())
        .map(|i| partial_trace(rho, &[0, i]))
        .collect()
}

/// Family tag for a tripartite 2⊗2⊗d system, d = 3 or a power of two.
pub fn tripartite_family(dims: &Dims) -> Result<&'static str> {
    match dims.local() {
        [2, 2, 3] => Ok("2x2x3"),
        [2, 2, d] if d.is_power_of_two() => Ok("2x2x2^n"),
        other => Err(Error::argument(format!(
            "expected dims [2, 2, 3] or [2, 2, 2^n], got {other:?}"
        ))),
    }
}

/// Report for a single point of the scalar inequality.
pub fn lemma1_report(x: f64, y: f64, exponent: f64, mode: LemmaMode) -> Result<InequalityReport> {
    lemma1_residual(x, y, exponent, mode)?;
    let id = match mode {
        LemmaMode::Mono => InequalityId::Lemma1Mono,
        LemmaMode::Poly => InequalityId::Lemma1Poly,
    };
    let lhs = log_power(x.hypot(y), exponent);
    Ok(InequalityReport::judge(
        id,
        exponent,
        Term::exact(lhs),
        vec![Term::exact(log_power(x, exponent)), Term::exact(log_power(y, exponent))],
    ))
}

/// N²(|ψ⟩_{A|B₁⋯B_{n−1}}) ≥ Σ N²(ρ_{AB_i}) for n ≥ 3 qubits.
pub fn check_eq3(psi: &PureState) -> Result<InequalityReport> {
    require_qubits(psi.dims(), 3)?;
    let lhs = pure_negativity(psi, &[0])?.powi(2);
    let rhs = pair_reductions(&psi.projector())?
        .iter()
        .map(|r| Ok(Term::exact(negativity(r, &[0])?.powi(2))))
        .collect::<Result<_>>()?;
    Ok(InequalityReport::judge(InequalityId::Eq3NegativitySq, 2.0, Term::exact(lhs), rhs))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SquaredMode {
    /// Ñ²(ρ_{A|B₁⋯}) ≥ Σ Ñ²(ρ_{AB_i})
    CrenMono,
    /// N²(|ψ⟩_{A|B₁⋯}) ≤ Σ Ñₐ²(ρ_{AB_i}), pure states only.
    CrenoaPoly,
}

/// Squared CREN monogamy or squared CRENoA polygamy on n ≥ 3 qubits.
pub fn check_eq8_eq9(state: &QuantumState, mode: SquaredMode, opts: &RoofOptions) -> Result<InequalityReport> {
    require_qubits(state.dims(), 3)?;
    match mode {
        SquaredMode::CrenMono => {
            let lhs = match state {
                QuantumState::Pure(p) => Term::exact(pure_negativity(p, &[0])?.powi(2)),
                QuantumState::Mixed(rho) => {
                    let sq = |v: f64| v * v;
                    Term::new(vec![
                        BoundedValue::lower(sq(negativity(rho, &[0])?)),
                        cren(rho, &[0], opts)?.map_increasing(sq),
                    ])
                }
            };
            let rhs = pair_reductions(&state.to_density())?
                .iter()
                .map(|r| Ok(Term::exact(concurrence_2q(r)?.powi(2))))
                .collect::<Result<_>>()?;
            Ok(InequalityReport::judge(InequalityId::Eq8CrenSq, 2.0, lhs, rhs))
        }
        SquaredMode::CrenoaPoly => {
            let psi = require_pure(state)?;
            let lhs = pure_negativity(psi, &[0])?.powi(2);
            let rhs = pair_reductions(&psi.projector())?
                .iter()
                .map(|r| Ok(Term::exact(concurrence_assist_2q(r)?.powi(2))))
                .collect::<Result<_>>()?;
            Ok(InequalityReport::judge(InequalityId::Eq9CrenoaSqPoly, 2.0, Term::exact(lhs), rhs))
        }
    }
}

/// [E_N(|ψ⟩_{A|B₁⋯})]^α ≥ Σ [E_N(ρ_{AB_i})]^α, α ≥ 4 ln 2.
pub fn check_thm1_logneg(psi: &PureState, alpha: f64) -> Result<InequalityReport> {
    check_exponent(alpha, LemmaMode::Mono)?;
    require_qubits(psi.dims(), 3)?;
    let lhs = log_power(pure_negativity(psi, &[0])?, alpha);
    let rhs = pair_reductions(&psi.projector())?
        .iter()
        .map(|r| Ok(Term::exact(log_power(negativity(r, &[0])?, alpha))))
        .collect::<Result<_>>()?;
    Ok(InequalityReport::judge(InequalityId::Thm1LogNeg, alpha, Term::exact(lhs), rhs))
}

/// [E_Ñₐ(|ψ⟩_{A|B₁⋯})]^β ≤ Σ [E_Ñₐ(ρ_{AB_i})]^β, 0 ≤ β ≤ 2, pure input.
pub fn check_thm1_lcrenoa_poly(psi: &PureState, beta: f64) -> Result<InequalityReport> {
    check_exponent(beta, LemmaMode::Poly)?;
    require_qubits(psi.dims(), 3)?;
    let lhs = log_power(pure_negativity(psi, &[0])?, beta);
    let rhs = pair_reductions(&psi.projector())?
        .iter()
        .map(|r| Ok(Term::exact(log_power(concurrence_assist_2q(r)?, beta))))
        .collect::<Result<_>>()?;
    Ok(InequalityReport::judge(InequalityId::Thm1LcrenoaPoly, beta, Term::exact(lhs), rhs))
}

/// Left side of a mixed-state LCREN inequality: the negativity as a
/// certified lower bound plus the optimizer value as the opposite bound.
fn lcren_lhs(rho: &DensityMatrix, alpha: f64, opts: &RoofOptions) -> Result<Term> {
    let lower = BoundedValue::lower(log_power(negativity(rho, &[0])?, alpha));
    let roof = cren(rho, &[0], opts)?.map_increasing(|v| log_power(v, alpha));
    Ok(Term::new(vec![lower, roof]))
}

/// [E_Ñ(ρ_{A|B₁⋯})]^α ≥ Σ [E_Ñ(ρ_{AB_i})]^α for an n-qubit ρ, α ≥ 4 ln 2.
pub fn check_thm1_lcren_mixed(rho: &DensityMatrix, alpha: f64, opts: &RoofOptions) -> Result<InequalityReport> {
    check_exponent(alpha, LemmaMode::Mono)?;
    require_qubits(rho.dims(), 3)?;
    opts.validate()?;
    let lhs = lcren_lhs(rho, alpha, opts)?;
    let rhs = pair_reductions(rho)?
        .iter()
        .map(|r| Ok(Term::exact(log_power(concurrence_2q(r)?, alpha))))
        .collect::<Result<_>>()?;
    Ok(InequalityReport::judge(InequalityId::Thm1LcrenMixed, alpha, lhs, rhs))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Thm2Which {
    /// Log-negativity, pure input.
    LogNegativity,
    /// LCREN, pure input.
    Lcren,
    /// LCREN, mixed input on 2⊗2⊗2ⁿ.
    LcrenMixed,
}

/// LCREN term of a 2⊗d reduced state: the optimizer value on the
/// verifying side and the negativity as the refuting bound.
fn lcren_rhs(rho: &DensityMatrix, alpha: f64, opts: &RoofOptions) -> Result<Term> {
    let roof = cren(rho, &[0], opts)?.map_increasing(|v| log_power(v, alpha));
    let lower = BoundedValue::lower(log_power(negativity(rho, &[0])?, alpha));
    Ok(Term::new(vec![roof, lower]))
}

/// Tripartite monogamy of the α-th power of log-negativity or LCREN on
/// 2⊗2⊗3 and 2⊗2⊗2ⁿ systems.
pub fn check_thm2(
    state: &QuantumState,
    which: Thm2Which,
    alpha: f64,
    opts: &RoofOptions,
) -> Result<InequalityReport> {
    check_exponent(alpha, LemmaMode::Mono)?;
    let family = tripartite_family(state.dims())?;
    let rho = state.to_density();
    let rho_ab = partial_trace(&rho, &[0, 1])?;
    let rho_ac = partial_trace(&rho, &[0, 2])?;
    let report = match which {
        Thm2Which::LogNegativity => {
            let psi = require_pure(state)?;
            let lhs = log_power(pure_negativity(psi, &[0])?, alpha);
            let ab = log_power(negativity(&rho_ab, &[0])?, alpha);
            let ac = log_power(negativity(&rho_ac, &[0])?, alpha);
            InequalityReport::judge(
                InequalityId::Thm2LogNeg,
                alpha,
                Term::exact(lhs),
                vec![Term::exact(ab), Term::exact(ac)],
            )
        }
        Thm2Which::Lcren => {
            opts.validate()?;
            let psi = require_pure(state)?;
            let lhs = log_power(pure_negativity(psi, &[0])?, alpha);
            let ab = log_power(concurrence_2q(&rho_ab)?, alpha);
            InequalityReport::judge(
                InequalityId::Thm2Lcren,
                alpha,
                Term::exact(lhs),
                vec![Term::exact(ab), lcren_rhs(&rho_ac, alpha, opts)?],
            )
        }
        Thm2Which::LcrenMixed => {
            opts.validate()?;
            if family != "2x2x2^n" {
                return Err(Error::argument("the mixed-state form needs dims [2, 2, 2^n]"));
            }
            let lhs = lcren_lhs(&rho, alpha, &forked(opts, 0))?;
            let ab = log_power(concurrence_2q(&rho_ab)?, alpha);
            InequalityReport::judge(
                InequalityId::Thm2LcrenMixed,
                alpha,
                lhs,
                vec![Term::exact(ab), lcren_rhs(&rho_ac, alpha, &forked(opts, 1))?],
            )
        }
    };
    Ok(report.with_family(family))
}

/// N²(|φ⟩_{A|BC}) ≥ N²(ρ_AB) + N²(ρ_AC) on 2⊗2⊗3 or 2⊗2⊗2ⁿ.
pub fn check_lemma2_negativity(phi: &PureState) -> Result<InequalityReport> {
    let family = tripartite_family(phi.dims())?;
    let rho = phi.projector();
    let lhs = pure_negativity(phi, &[0])?.powi(2);
    let ab = negativity(&partial_trace(&rho, &[0, 1])?, &[0])?.powi(2);
    let ac = negativity(&partial_trace(&rho, &[0, 2])?, &[0])?.powi(2);
    Ok(InequalityReport::judge(
        InequalityId::Lemma2N223,
        2.0,
        Term::exact(lhs),
        vec![Term::exact(ab), Term::exact(ac)],
    )
    .with_family(family))
}

/// Ñ²(|φ⟩_{A|BC}) ≥ Ñ²(ρ_AB) + Ñ²(ρ_AC) on 2⊗2⊗3 or 2⊗2⊗2ⁿ.
pub fn check_lemma2_cren(phi: &PureState, opts: &RoofOptions) -> Result<InequalityReport> {
    let family = tripartite_family(phi.dims())?;
    opts.validate()?;
    let rho = phi.projector();
    let sq = |v: f64| v * v;
    let lhs = pure_negativity(phi, &[0])?.powi(2);
    let ab = concurrence_2q(&partial_trace(&rho, &[0, 1])?)?.powi(2);
    let rho_ac = partial_trace(&rho, &[0, 2])?;
    let ac = Term::new(vec![
        cren(&rho_ac, &[0], opts)?.map_increasing(sq),
        BoundedValue::lower(sq(negativity(&rho_ac, &[0])?)),
    ]);
    Ok(InequalityReport::judge(
        InequalityId::Lemma2Cren223,
        2.0,
        Term::exact(lhs),
        vec![Term::exact(ab), ac],
    )
    .with_family(family))
}

/// Both tripartite squared inequalities for one state.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Lemma2Report {
    pub negativity: InequalityReport,
    pub cren: InequalityReport,
}

pub fn check_lemma2(phi: &PureState, opts: &RoofOptions) -> Result<Lemma2Report> {
    Ok(Lemma2Report {
        negativity: check_lemma2_negativity(phi)?,
        cren: check_lemma2_cren(phi, opts)?,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainStep {
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
}

/// The intermediate inequalities linking the log-negativity of the A cut
/// to the sum over pairs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainReport {
    pub exponent: f64,
    /// N(ρ_{AB_i}) in index order.
    pub pair_negativities: Vec<f64>,
    pub steps: Vec<ChainStep>,
}

impl ChainReport {
    pub fn holds(&self) -> bool {
        self.steps.iter().all(|s| s.residual >= -EXACT_TOL)
    }

    pub fn min_residual(&self) -> f64 {
        self.steps.iter().map(|s| s.residual).fold(f64::INFINITY, f64::min)
    }
}

/// Step 0 compares the A cut against the root of the summed squared pair
/// negativities. Step k ≥ 1 splits N_k off that root:
/// `[log₂(1+√Σ_{i≥k}N_i²)]^α ≥ [log₂(1+N_k)]^α + [log₂(1+√Σ_{i>k}N_i²)]^α`.
pub fn chain_decomposition_check(psi: &PureState, alpha: f64) -> Result<ChainReport> {
    check_exponent(alpha, LemmaMode::Mono)?;
    require_qubits(psi.dims(), 3)?;
    let ns: Vec<f64> = pair_reductions(&psi.projector())?
        .iter()
        .map(|r| negativity(r, &[0]))
        .collect::<Result<_>>()?;
    let tail = |k: usize| ns[k..].iter().map(|n| n * n).sum::<f64>().sqrt();
    let mut steps = Vec::with_capacity(ns.len());
    let top = log_power(pure_negativity(psi, &[0])?, alpha);
    let first = log_power(tail(0), alpha);
    steps.push(ChainStep {
        lhs: top,
        rhs: first,
        residual: top - first,
    });
    for k in 0..ns.len() - 1 {
        let lhs = log_power(tail(k), alpha);
        let rhs = log_power(ns[k], alpha) + log_power(tail(k + 1), alpha);
        steps.push(ChainStep {
            lhs,
            rhs,
            residual: lhs - rhs,
        });
    }
    Ok(ChainReport {
        exponent: alpha,
        pair_negativities: ns,
        steps,
    })
}

/// Runs the checker for `id` on one state.
pub fn check(
    id: InequalityId,
    state: &QuantumState,
    exponent: f64,
    opts: &RoofOptions,
) -> Result<InequalityReport> {
    match id {
        InequalityId::Lemma1Mono | InequalityId::Lemma1Poly => Err(Error::argument(
            "the scalar inequality takes points of D, not states",
        )),
        InequalityId::Eq3NegativitySq => {
            require_exponent(exponent, 2.0)?;
            check_eq3(require_pure(state)?)
        }
        InequalityId::Eq8CrenSq => {
            require_exponent(exponent, 2.0)?;
            check_eq8_eq9(state, SquaredMode::CrenMono, opts)
        }
        InequalityId::Eq9CrenoaSqPoly => {
            require_exponent(exponent, 2.0)?;
            check_eq8_eq9(state, SquaredMode::CrenoaPoly, opts)
        }
        InequalityId::Lemma2N223 => {
            require_exponent(exponent, 2.0)?;
            check_lemma2_negativity(require_pure(state)?)
        }
        InequalityId::Lemma2Cren223 => {
            require_exponent(exponent, 2.0)?;
            check_lemma2_cren(require_pure(state)?, opts)
        }
        InequalityId::Thm1LogNeg => check_thm1_logneg(require_pure(state)?, exponent),
        InequalityId::Thm1LcrenoaPoly => check_thm1_lcrenoa_poly(require_pure(state)?, exponent),
        InequalityId::Thm1LcrenMixed => check_thm1_lcren_mixed(&state.to_density(), exponent, opts),
        InequalityId::Thm2LogNeg => check_thm2(state, Thm2Which::LogNegativity, exponent, opts),
        InequalityId::Thm2Lcren => check_thm2(state, Thm2Which::Lcren, exponent, opts),
        InequalityId::Thm2LcrenMixed => check_thm2(state, Thm2Which::LcrenMixed, exponent, opts),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::FOUR_LN_2;
    use crate::monogamy::Verdict;
    use crate::qlinalg::C64;
    use crate::roof::BoundDirection;
    use crate::states::{bell, from_real_amplitudes, ghz, w_state};

    fn fast_opts() -> RoofOptions {
        RoofOptions {
            restarts: 4,
            max_iters: 200,
            ..RoofOptions::default()
        }
    }

    /// ψ ⊗ |0⟩ on dims [2, 2, d].
    fn with_zero(psi: &PureState, d: usize) -> PureState {
        let mut zero = vec![C64::new(0.0, 0.0); d];
        zero[0] = C64::new(1.0, 0.0);
        psi.kron(&PureState::new(zero, Dims::new(vec![d]).unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn eq3_ghz_and_w() {
        let r = check_eq3(&ghz(3).unwrap()).unwrap();
        assert_eq!(r.verdict, Verdict::Verified);
        assert!((r.residual - 1.0).abs() < 1e-12);
        assert!(r.rhs_terms.iter().all(|t| t.value.abs() < 1e-12));

        let r = check_eq3(&w_state(3).unwrap()).unwrap();
        assert!((r.lhs.value - 8.0 / 9.0).abs() < 1e-12);
        // ρ_AB of W₃ has partial-transpose eigenvalues 1/3, 1/3, (1 ± √5)/6.
        let n_ab = (5f64.sqrt() - 1.0) / 3.0;
        for t in &r.rhs_terms {
            assert!((t.value - n_ab * n_ab).abs() < 1e-12);
        }
        assert_eq!(r.verdict, Verdict::Verified);
    }

    #[test]
    fn qubit_and_size_preconditions() {
        let phi = with_zero(&bell(), 3);
        assert!(check_eq3(&phi).is_err());
        assert!(check_thm1_logneg(&bell(), FOUR_LN_2).is_err());
        assert!(check_thm1_logneg(&ghz(3).unwrap(), 2.0).is_err());
        assert!(check_thm1_lcrenoa_poly(&ghz(3).unwrap(), 2.5).is_err());
    }

    #[test]
    fn crenoa_poly_on_w_and_mixed_rejection() {
        let w = QuantumState::Pure(w_state(3).unwrap());
        let r = check_eq8_eq9(&w, SquaredMode::CrenoaPoly, &fast_opts()).unwrap();
        assert!((r.lhs.value - 8.0 / 9.0).abs() < 1e-12);
        // ρ_AB of W₃ has Σλ = 2/3.
        for t in &r.rhs_terms {
            assert!((t.value - 4.0 / 9.0).abs() < 1e-9);
        }
        assert_eq!(r.verdict, Verdict::Verified);
        let mixed = QuantumState::Mixed(ghz(3).unwrap().projector().with_white_noise(0.9).unwrap());
        assert!(check_eq8_eq9(&mixed, SquaredMode::CrenoaPoly, &fast_opts()).is_err());
    }

    #[test]
    fn cren_mono_pure_and_mixed() {
        let g = QuantumState::Pure(ghz(3).unwrap());
        let r = check_eq8_eq9(&g, SquaredMode::CrenMono, &fast_opts()).unwrap();
        assert!((r.residual - 1.0).abs() < 1e-12);
        // W₃ saturates the squared concurrence relation.
        let w = QuantumState::Pure(w_state(3).unwrap());
        let r = check_eq8_eq9(&w, SquaredMode::CrenMono, &fast_opts()).unwrap();
        assert!(r.residual.abs() < 1e-9);
        assert_eq!(r.verdict, Verdict::Verified);
        assert!(r.near_equality);
    }

    #[test]
    fn thm1_logneg_examples() {
        let r = check_thm1_logneg(&ghz(3).unwrap(), FOUR_LN_2).unwrap();
        assert!((r.residual - 1.0).abs() < 1e-12);
        let r = check_thm1_logneg(&w_state(3).unwrap(), FOUR_LN_2).unwrap();
        let n_ab = (5f64.sqrt() - 1.0) / 3.0;
        let want = log_power(2.0 * 2f64.sqrt() / 3.0, FOUR_LN_2) - 2.0 * log_power(n_ab, FOUR_LN_2);
        assert!((r.residual - want).abs() < 1e-12);
        assert!(r.residual > 0.0);
    }

    #[test]
    fn thm1_poly_examples() {
        let g = ghz(3).unwrap();
        // ρ_AB of GHZ₃ is ½(|00⟩⟨00| + |11⟩⟨11|), with Σλ = 1.
        let r = check_thm1_lcrenoa_poly(&g, 2.0).unwrap();
        assert!((r.lhs.value - 1.0).abs() < 1e-12);
        assert!((r.rhs_sum() - 2.0).abs() < 1e-9);
        let r = check_thm1_lcrenoa_poly(&g, 0.0).unwrap();
        assert!((r.residual - 1.0).abs() < 1e-12);
        let r = check_thm1_lcrenoa_poly(&ghz(4).unwrap(), 0.0).unwrap();
        assert!((r.residual - 2.0).abs() < 1e-12);
    }

    #[test]
    fn lcren_mixed_on_rank_one_input() {
        let g = ghz(3).unwrap();
        let r = check_thm1_lcren_mixed(&g.projector(), FOUR_LN_2, &fast_opts()).unwrap();
        assert_eq!(r.lhs.direction, BoundDirection::Exact);
        let pure = check_thm1_logneg(&g, FOUR_LN_2).unwrap();
        assert!((r.lhs.value - pure.lhs.value).abs() < 1e-9);
        assert_eq!(r.verdict, Verdict::Verified);
    }

    #[test]
    fn lcren_mixed_noisy_ghz_never_violated() {
        let rho = ghz(3).unwrap().projector().with_white_noise(0.9).unwrap();
        let r = check_thm1_lcren_mixed(&rho, FOUR_LN_2, &fast_opts()).unwrap();
        assert_ne!(r.verdict, Verdict::Violated);
        assert_eq!(r.lhs.direction, BoundDirection::LowerBound);
        assert_eq!(r.lhs_counter.as_ref().unwrap().direction, BoundDirection::UpperBound);
    }

    #[test]
    fn thm2_saturation_and_unentangled_a() {
        let phi = with_zero(&bell(), 3);
        for which in [Thm2Which::LogNegativity, Thm2Which::Lcren] {
            let r = check_thm2(&QuantumState::Pure(phi.clone()), which, FOUR_LN_2, &fast_opts()).unwrap();
            assert!(r.residual.abs() <= 1e-9, "{which:?}: {}", r.residual);
            assert_eq!(r.family.as_deref(), Some("2x2x3"));
            assert!((r.lhs.value - 1.0).abs() < 1e-12);
        }
        // |0⟩_A ⊗ |Φ⁺⟩ on B and the first two levels of C.
        let amps = [
            1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0,
        ];
        let phi = from_real_amplitudes(
            &amps.map(|a| a / 2f64.sqrt()),
            &[2, 2, 3],
        )
        .unwrap();
        let r = check_thm2(&QuantumState::Pure(phi), Thm2Which::LogNegativity, FOUR_LN_2, &fast_opts()).unwrap();
        assert!(r.residual.abs() < 1e-12);
        assert!(r.lhs.value.abs() < 1e-12);
    }

    #[test]
    fn thm2_dims_and_purity() {
        let g = QuantumState::Pure(ghz(3).unwrap());
        assert!(check_thm2(&g, Thm2Which::LogNegativity, FOUR_LN_2, &fast_opts()).is_ok());
        let bad = QuantumState::Pure(ghz(4).unwrap());
        assert!(check_thm2(&bad, Thm2Which::LogNegativity, FOUR_LN_2, &fast_opts()).is_err());
        let mixed = QuantumState::Mixed(ghz(3).unwrap().projector().with_white_noise(0.8).unwrap());
        assert!(check_thm2(&mixed, Thm2Which::Lcren, FOUR_LN_2, &fast_opts()).is_err());
        let r = check_thm2(&mixed, Thm2Which::LcrenMixed, FOUR_LN_2, &fast_opts()).unwrap();
        assert_ne!(r.verdict, Verdict::Violated);
        let phi = QuantumState::Mixed(with_zero(&bell(), 3).projector());
        assert!(check_thm2(&phi, Thm2Which::LcrenMixed, FOUR_LN_2, &fast_opts()).is_err());
    }

    #[test]
    fn lemma2_examples() {
        // GHZ₃ with C's qubit placed in the first two levels of a 4-level system.
        let mut amps = [0.0; 16];
        amps[0] = 1.0 / 2f64.sqrt();
        amps[13] = 1.0 / 2f64.sqrt();
        let phi = from_real_amplitudes(&amps, &[2, 2, 4]).unwrap();
        let rep = check_lemma2(&phi, &fast_opts()).unwrap();
        assert!((rep.negativity.lhs.value - 1.0).abs() < 1e-12);
        assert!(rep.negativity.rhs_terms.iter().all(|t| t.value.abs() < 1e-9));
        assert_eq!(rep.negativity.family.as_deref(), Some("2x2x2^n"));
        assert_eq!(rep.cren.verdict, Verdict::Verified);

        let prod = with_zero(&from_real_amplitudes(&[1.0, 0.0, 0.0, 0.0], &[2, 2]).unwrap(), 3);
        let rep = check_lemma2(&prod, &fast_opts()).unwrap();
        assert!(rep.negativity.residual.abs() < 1e-12);
        assert!(rep.cren.residual.abs() < 1e-9);
    }

    #[test]
    fn chain_steps() {
        let c = chain_decomposition_check(&ghz(3).unwrap(), FOUR_LN_2).unwrap();
        assert_eq!(c.steps.len(), 2);
        assert!((c.steps[0].residual - 1.0).abs() < 1e-12);
        assert!(c.holds());
        let c = chain_decomposition_check(&w_state(3).unwrap(), FOUR_LN_2).unwrap();
        assert_eq!(c.steps.len(), 2);
        assert!(c.holds());
        assert!(c.min_residual() >= 0.0);
        let c = chain_decomposition_check(&w_state(5).unwrap(), 3.0).unwrap();
        assert_eq!(c.steps.len(), 4);
        assert!(c.holds());
    }

    #[test]
    fn dispatcher_exponent_rules() {
        let g = QuantumState::Pure(ghz(3).unwrap());
        let opts = fast_opts();
        assert!(check(InequalityId::Eq3NegativitySq, &g, 3.0, &opts).is_err());
        assert!(check(InequalityId::Eq3NegativitySq, &g, 2.0, &opts).is_ok());
        assert!(check(InequalityId::Lemma1Mono, &g, 3.0, &opts).is_err());
        let r = check(InequalityId::Thm1LogNeg, &g, 3.0, &opts).unwrap();
        assert_eq!(r.inequality_id, InequalityId::Thm1LogNeg);
    }

    #[test]
    fn lemma1_point_report() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let r = lemma1_report(s, s, FOUR_LN_2, LemmaMode::Mono).unwrap();
        assert_eq!(r.verdict, Verdict::Verified);
        assert!((r.residual - lemma1_residual(s, s, FOUR_LN_2, LemmaMode::Mono).unwrap()).abs() < 1e-15);
    }
}
