//! Convex-roof estimates of the negativity: CREN (minimum average negativity
//! over pure-state decompositions), CRENoA (the maximum) and their
//! logarithmic versions.
//!
//! Values carry a [`BoundDirection`]. A numerical minimum can only
//! overestimate the true roof and a numerical maximum can only underestimate
//! it, so every optimizer result is tagged accordingly. Pure states and
//! two-qubit states take closed-form paths and are tagged exact.

mod decomposition;
mod optimizer;
mod witness;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::{
    concurrence_2q, concurrence_assist_2q, is_numerically_pure, log2_1p, pure_negativity,
};
use crate::qlinalg::{eigh, DensityMatrix, PureState};
use crate::states::RandomStream;

pub use decomposition::{decomposition_from_isometry, Decomposition};
pub use optimizer::{default_ensemble_size, roof_estimate, RoofGoal};
pub use witness::{certify_nonconvexity, nonconvexity_witness, NonconvexityCertificate};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundDirection {
    Exact,
    UpperBound,
    LowerBound,
}

impl BoundDirection {
    /// Whether a value with this tag may be used as a lower bound.
    pub fn bounds_below(self) -> bool {
        matches!(self, BoundDirection::Exact | BoundDirection::LowerBound)
    }

    /// Whether a value with this tag may be used as an upper bound.
    pub fn bounds_above(self) -> bool {
        matches!(self, BoundDirection::Exact | BoundDirection::UpperBound)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            BoundDirection::Exact => "exact",
            BoundDirection::UpperBound => "upper_bound",
            BoundDirection::LowerBound => "lower_bound",
        }
    }
}

/// A numeric value tagged with the direction in which it bounds the truth.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundedValue {
    pub value: f64,
    pub direction: BoundDirection,
    #[serde(skip)]
    pub witness: Option<Decomposition>,
}

impl BoundedValue {
    pub fn exact(value: f64) -> Self {
        Self {
            value,
            direction: BoundDirection::Exact,
            witness: None,
        }
    }

    pub fn upper(value: f64) -> Self {
        Self {
            value,
            direction: BoundDirection::UpperBound,
            witness: None,
        }
    }

    pub fn lower(value: f64) -> Self {
        Self {
            value,
            direction: BoundDirection::LowerBound,
            witness: None,
        }
    }

    /// Applies a nondecreasing map; the direction tag is preserved.
    pub fn map_increasing(&self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            value: f(self.value),
            direction: self.direction,
            witness: self.witness.clone(),
        }
    }

    pub fn without_witness(mut self) -> Self {
        self.witness = None;
        self
    }
}

/// Settings for the roof optimizer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RoofOptions {
    /// Number of decomposition members; `None` picks
    /// [`default_ensemble_size`].
    #[serde(rename = "m")]
    pub ensemble_size: Option<usize>,
    pub restarts: usize,
    pub max_iters: usize,
    pub step_tol: f64,
    pub objective_tol: f64,
    #[serde(skip)]
    pub rng: RandomStream,
}

impl Default for RoofOptions {
    fn default() -> Self {
        Self {
            ensemble_size: None,
            restarts: 16,
            max_iters: 500,
            step_tol: 1e-9,
            objective_tol: 1e-7,
            rng: RandomStream::new(0, 0),
        }
    }
}

impl RoofOptions {
    pub fn with_rng(mut self, rng: RandomStream) -> Self {
        self.rng = rng;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::argument("restarts must be at least 1"));
        }
        if self.max_iters == 0 {
            return Err(Error::argument("max_iters must be at least 1"));
        }
        if !(self.step_tol > 0.0 && self.objective_tol >= 0.0) {
            return Err(Error::argument("step_tol must be positive, objective_tol nonnegative"));
        }
        if self.ensemble_size == Some(0) {
            return Err(Error::argument("ensemble size must be positive"));
        }
        Ok(())
    }
}

fn top_eigenvector(rho: &DensityMatrix) -> Result<PureState> {
    let eig = eigh(rho.matrix())?;
    PureState::normalized(eig.vector(0), rho.dims().clone())
}

/// Exact value for pure or two-qubit inputs, `None` otherwise.
fn closed_form(rho: &DensityMatrix, cut: &[usize], goal: RoofGoal) -> Result<Option<BoundedValue>> {
    if is_numerically_pure(rho) {
        let psi = top_eigenvector(rho)?;
        let value = pure_negativity(&psi, cut)?;
        let witness = Decomposition::new(vec![1.0], vec![psi])?;
        return Ok(Some(BoundedValue {
            value,
            direction: BoundDirection::Exact,
            witness: Some(witness),
        }));
    }
    if rho.dims().local() == [2, 2] {
        let value = match goal {
            RoofGoal::Minimize => concurrence_2q(rho)?,
            RoofGoal::Maximize => concurrence_assist_2q(rho)?,
        };
        return Ok(Some(BoundedValue::exact(value)));
    }
    Ok(None)
}

fn roof(rho: &DensityMatrix, cut: &[usize], opts: &RoofOptions, goal: RoofGoal) -> Result<BoundedValue> {
    let cut = rho.dims().proper_subset(cut)?;
    match closed_form(rho, &cut, goal)? {
        Some(v) => Ok(v),
        None => roof_estimate(rho, &cut, opts, goal),
    }
}

/// Convex-roof extended negativity. Exact for pure and two-qubit states,
/// otherwise an upper bound from the optimizer.
pub fn cren(rho: &DensityMatrix, cut: &[usize], opts: &RoofOptions) -> Result<BoundedValue> {
    roof(rho, cut, opts, RoofGoal::Minimize)
}

/// CREN of assistance. Exact for pure and two-qubit states, otherwise a
/// lower bound from the optimizer.
pub fn crenoa(rho: &DensityMatrix, cut: &[usize], opts: &RoofOptions) -> Result<BoundedValue> {
    roof(rho, cut, opts, RoofGoal::Maximize)
}

/// log₂(1 + CREN), same direction tag.
pub fn lcren(rho: &DensityMatrix, cut: &[usize], opts: &RoofOptions) -> Result<BoundedValue> {
    Ok(cren(rho, cut, opts)?.map_increasing(log2_1p))
}

/// log₂(1 + CRENoA), same direction tag.
pub fn lcrenoa(rho: &DensityMatrix, cut: &[usize], opts: &RoofOptions) -> Result<BoundedValue> {
    Ok(crenoa(rho, cut, opts)?.map_increasing(log2_1p))
}
