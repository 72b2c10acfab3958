use serde::{Deserialize, Serialize};

use super::Seq;
use crate::error::Result;

/// A polynomial sequence `n ↦ Σ coeffs[j]·n^j`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PolyCoeffs {
    coeffs: Vec<f64>,
}

impl PolyCoeffs {
    pub fn new(coeffs: Vec<f64>) -> Self {
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Coefficient of `n^j` (zero beyond the stored length).
    pub fn coeff(&self, j: usize) -> f64 {
        self.coeffs.get(j).copied().unwrap_or(0.0)
    }

    /// Highest index with a nonzero coefficient; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|&c| c != 0.0)
    }

    /// Horner evaluation, highest degree first.
    pub fn eval(&self, n: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * n + c)
    }

    pub fn sample(&self, start: i64, end: i64) -> Result<Seq> {
        Seq::from_fn(start, end, |n| self.eval(n as f64))
    }
}

impl From<Vec<f64>> for PolyCoeffs {
    fn from(coeffs: Vec<f64>) -> Self {
        Self::new(coeffs)
    }
}

/// Free-function form of [`PolyCoeffs::eval`] at an integer index.
pub fn poly_eval(p: &PolyCoeffs, n: i64) -> f64 {
    p.eval(n as f64)
}
