//! Simulation and asymptotic diagnostics for neutral difference equations
//!
//! ```text
//! Δ^m(x_n + u_n·x_{n+k}) = a_n·f(n, x_{σ(n)}) + b_n
//! ```
//!
//! The crate simulates such equations from seeds, bounds solutions with a
//! discrete Bihari inequality, splits solutions into a polynomial part plus a
//! small remainder, and checks the hypotheses under which that split is
//! guaranteed. All asymptotic statements are finite-horizon diagnostics with
//! explicit thresholds.

pub mod bihari;
pub mod catalog;
pub mod config;
pub mod decomp;
pub mod error;
pub mod fixtures;
pub mod hypotheses;
pub mod neutral;
pub mod quadrature;
pub mod runner;
pub mod seqcore;

pub use error::{Error, Result};
