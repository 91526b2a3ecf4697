use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use monogamy_core::monogamy::{lemma1_grid, lemma1_scan as scan_one, lemma1_value, GridMinimum, LemmaMode};

use crate::error::{LabError, Result};
use crate::fmt_f64;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanReport {
    pub mode: LemmaMode,
    pub step: f64,
    /// One entry per exponent, in the order given.
    pub minima: Vec<GridMinimum>,
}

impl ScanReport {
    /// The smallest residual over all exponents.
    pub fn global_minimum(&self) -> Option<&GridMinimum> {
        self.minima.iter().min_by(|a, b| a.residual.total_cmp(&b.residual))
    }
}

fn check_exponents(exponents: &[f64]) -> Result<()> {
    if exponents.is_empty() {
        return Err(LabError::Usage("at least one exponent is required".into()));
    }
    if let Some(e) = exponents.iter().find(|e| !(**e >= 0.0)) {
        return Err(LabError::Usage(format!("exponent {e} must be nonnegative")));
    }
    Ok(())
}

/// Minimum residual per exponent over the grid {(i·step, j·step)} ∩ D.
/// Exponents below the mode's threshold are allowed so the threshold itself
/// can be probed.
pub fn lemma1_scan(step: f64, exponents: &[f64], mode: LemmaMode) -> Result<ScanReport> {
    check_exponents(exponents)?;
    let minima = exponents
        .par_iter()
        .map(|&e| scan_one(step, e, mode))
        .collect::<monogamy_core::Result<_>>()?;
    Ok(ScanReport { mode, step, minima })
}

/// Writes `x,y,exponent,residual` for every grid point and exponent.
pub fn write_scan_csv<W: Write>(out: &mut W, step: f64, exponents: &[f64], mode: LemmaMode) -> Result<()> {
    check_exponents(exponents)?;
    let io = |e| LabError::io("<scan output>", e);
    writeln!(out, "x,y,exponent,residual").map_err(io)?;
    for &e in exponents {
        for (x, y) in lemma1_grid(step)? {
            let r = lemma1_value(x, y, e, mode)?;
            writeln!(out, "{},{},{},{}", fmt_f64(x), fmt_f64(y), fmt_f64(e), fmt_f64(r)).map_err(io)?;
        }
    }
    Ok(())
}
