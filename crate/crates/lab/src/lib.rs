//! Batch runner for monogamy and polygamy inequality campaigns, plus the
//! grid scan of the scalar inequality and a per-state measure table.

pub mod campaign;
pub mod config;
pub mod describe;
pub mod error;
pub mod scan;

pub use campaign::{run_campaign, run_campaign_with, CampaignSummary, RunOverrides, SuiteSummary};
pub use config::{CampaignConfig, Exponent, OutputFormat, SuiteConfig};
pub use error::{LabError, Result, EXIT_ERROR, EXIT_OK, EXIT_VIOLATION};

/// Formats a float with 17 significant digits so it round-trips.
pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}
