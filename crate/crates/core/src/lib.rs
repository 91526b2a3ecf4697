//! Negativity-family entanglement measures and monogamy/polygamy residuals.
//!
//! The crate is organised bottom-up:
//!
//! - [`qlinalg`]: partial transpose, partial trace, Hermitian spectra.
//! - [`states`]: named states and seeded Haar / Ginibre samplers.
//! - [`measures`]: negativity, logarithmic negativity, two-qubit
//!   concurrence and concurrence of assistance.
//! - [`roof`]: convex-roof estimates (CREN, CRENoA and their logarithms)
//!   with bound-direction tags.
//! - [`monogamy`]: residual evaluators and sound verdicts for every
//!   inequality in the suite.

pub mod error;
pub mod measures;
pub mod monogamy;
pub mod qlinalg;
pub mod roof;
pub mod states;

pub use error::{Error, Result};
