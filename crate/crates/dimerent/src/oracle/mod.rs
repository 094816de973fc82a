//! Brute-force verifiers and the check harness built on them.
//!
//! The point of this module is redundancy: everything here recomputes
//! quantities the library already exposes in closed form, through routes
//! that share as little arithmetic as possible with those closed forms.
//! [`grid_min_distance`] minimizes the state distance by blind scanning,
//! [`concurrence`] runs the general spin-flip eigenvalue construction on
//! the raw matrix, and [`run_all_checks`] sweeps a parameter grid comparing
//! every redundant pair of routes.

mod brute;
mod checks;

pub use brute::{concurrence, grid_min_distance, OracleError};
pub use checks::{run_all_checks, OracleReport, VerifyGrid};
