//! The scalar inequality on D = {(x, y) | x, y ≥ 0, x² + y² ≤ 1}:
//!
//! ```text
//! mono:  [log₂(1+√(x²+y²))]^α ≥ [log₂(1+x)]^α + [log₂(1+y)]^α,  α ≥ 4 ln 2
//! poly:  [log₂(1+√(x²+y²))]^β ≤ [log₂(1+x)]^β + [log₂(1+y)]^β,  0 ≤ β ≤ 2
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::{log2_1p, FOUR_LN_2};

use super::ZERO_TERM;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LemmaMode {
    Mono,
    Poly,
}

impl std::str::FromStr for LemmaMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "mono" => Ok(LemmaMode::Mono),
            "poly" => Ok(LemmaMode::Poly),
            other => Err(format!("mode must be mono or poly, got `{other}`")),
        }
    }
}

/// [log₂(1 + x)]^e, with a zero-valued measure contributing 0 even when
/// e = 0. Values at or below 1e−9 count as zero for that purpose.
pub fn log_power(x: f64, exponent: f64) -> f64 {
    let x = x.max(0.0);
    if exponent == 0.0 {
        return if x <= ZERO_TERM { 0.0 } else { 1.0 };
    }
    log2_1p(x).powf(exponent)
}

/// Rejects an exponent outside the range where the inequality is claimed.
pub fn check_exponent(exponent: f64, mode: LemmaMode) -> Result<()> {
    let ok = match mode {
        LemmaMode::Mono => exponent >= FOUR_LN_2,
        LemmaMode::Poly => (0.0..=2.0).contains(&exponent),
    };
    if ok {
        Ok(())
    } else {
        Err(Error::argument(match mode {
            LemmaMode::Mono => format!("monogamy exponent {exponent} is below 4 ln 2"),
            LemmaMode::Poly => format!("polygamy exponent {exponent} is outside [0, 2]"),
        }))
    }
}

fn check_domain(x: f64, y: f64) -> Result<()> {
    if !(x >= 0.0 && y >= 0.0 && x * x + y * y <= 1.0 + 1e-12) {
        return Err(Error::argument(format!("({x}, {y}) lies outside D")));
    }
    Ok(())
}

/// Residual with any nonnegative exponent; only the domain is checked.
/// Nonnegative exactly when the inequality holds at (x, y).
pub fn lemma1_value(x: f64, y: f64, exponent: f64, mode: LemmaMode) -> Result<f64> {
    check_domain(x, y)?;
    if !(exponent >= 0.0) {
        return Err(Error::argument("exponent must be nonnegative"));
    }
    let joint = log_power(x.hypot(y), exponent);
    let split = log_power(x, exponent) + log_power(y, exponent);
    Ok(match mode {
        LemmaMode::Mono => joint - split,
        LemmaMode::Poly => split - joint,
    })
}

/// As [`lemma1_value`], additionally requiring the exponent to lie in the
/// mode's admissible range.
pub fn lemma1_residual(x: f64, y: f64, exponent: f64, mode: LemmaMode) -> Result<f64> {
    check_exponent(exponent, mode)?;
    lemma1_value(x, y, exponent, mode)
}

/// Grid points (i·step, j·step) inside D, row by row.
pub fn lemma1_grid(step: f64) -> Result<impl Iterator<Item = (f64, f64)>> {
    if !(step > 0.0 && step <= 0.1) {
        return Err(Error::argument(format!("step {step} outside (0, 0.1]")));
    }
    let n = (1.0 / step).floor() as usize + 1;
    Ok((0..n).flat_map(move |i| {
        let x = i as f64 * step;
        (0..n).filter_map(move |j| {
            let y = j as f64 * step;
            (x * x + y * y <= 1.0 + 1e-12).then_some((x, y))
        })
    }))
}

/// Smallest residual found on a grid, with its location.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridMinimum {
    pub exponent: f64,
    pub x: f64,
    pub y: f64,
    pub residual: f64,
    pub points: usize,
}

/// Scans the grid for one exponent. Any nonnegative exponent is accepted so
/// that below-threshold exponents can be probed.
pub fn lemma1_scan(step: f64, exponent: f64, mode: LemmaMode) -> Result<GridMinimum> {
    let mut best = GridMinimum {
        exponent,
        x: f64::NAN,
        y: f64::NAN,
        residual: f64::INFINITY,
        points: 0,
    };
    for (x, y) in lemma1_grid(step)? {
        let r = lemma1_value(x, y, exponent, mode)?;
        best.points += 1;
        if r < best.residual {
            best.residual = r;
            best.x = x;
            best.y = y;
        }
    }
    Ok(best)
}

/// Searches the grid for a point where the monogamy form fails at
/// `exponent`, returning the most negative one found.
pub fn find_threshold_violation(exponent: f64, step: f64) -> Result<Option<GridMinimum>> {
    let min = lemma1_scan(step, exponent, LemmaMode::Mono)?;
    Ok((min.residual < 0.0).then_some(min))
}
