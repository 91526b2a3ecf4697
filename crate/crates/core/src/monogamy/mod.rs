//! Residual evaluators for the monogamy and polygamy inequalities of the
//! negativity family, with verdicts that respect bound directions.
//!
//! Subsystem 0 is always A; the B_i are the remaining subsystems in index
//! order.

mod checks;
mod lemma;
mod report;

use crate::measures::FOUR_LN_2;

pub use checks::{
    chain_decomposition_check, check, check_eq3, check_eq8_eq9, check_lemma2, check_lemma2_cren,
    check_lemma2_negativity, check_thm1_lcren_mixed, check_thm1_lcrenoa_poly, check_thm1_logneg,
    check_thm2, lemma1_report, pair_reductions, tripartite_family, ChainReport, ChainStep,
    SquaredMode, Lemma2Report, Thm2Which,
};
pub use lemma::{
    check_exponent, find_threshold_violation, lemma1_grid, lemma1_residual, lemma1_scan,
    lemma1_value, log_power, GridMinimum, LemmaMode,
};
pub use report::{InequalityId, InequalityReport, Sense, Term, Verdict};

/// Residual tolerance when every quantity is exact.
pub const EXACT_TOL: f64 = 1e-9;
/// Residual tolerance when a roof-optimizer bound participates.
pub const ROOF_TOL: f64 = 1e-6;
/// Verified instances with a residual below this are flagged.
pub const NEAR_EQUALITY: f64 = 1e-4;
/// Smallest monogamy exponent covered by the theorems.
pub const ALPHA_THRESHOLD: f64 = FOUR_LN_2;
/// Measure values at or below this contribute 0 under a zero exponent.
pub const ZERO_TERM: f64 = 1e-9;
