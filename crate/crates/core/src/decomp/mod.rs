//! Polynomial part plus small remainder.

mod extract;
mod regularity;
mod transfer;

use serde::Serialize;

use crate::error::Result;
use crate::neutral::{EquationSpec, SolutionTrace};
use crate::seqcore::{PolyCoeffs, Thresholds};

pub use extract::{
    decay_exponent_fit, extract_polynomial, fit_polynomial, lowest_kept_degree,
    DecompositionReport, DECAY_FIT_FLOOR, MIN_EXTRACT_WINDOW,
};
pub use regularity::{regularity_check, RegularityReport};
pub use transfer::{transfer_polynomial, TRANSFER_TOLERANCE};

/// Relative agreement required between the transferred and the directly
/// extracted polynomial of `x`.
pub const TRANSFER_AGREEMENT: f64 = 0.02;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoefficientMatch {
    pub degree: usize,
    pub transferred: f64,
    pub extracted: f64,
    pub relative_difference: f64,
    pub agree: bool,
}

/// Both decompositions of a trace and the cross-check between them.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolutionDecomposition {
    pub z: DecompositionReport,
    pub x: DecompositionReport,
    /// `x`'s polynomial predicted from `z`'s through `ψ(n) + cψ(n+k) = φ(n)`.
    pub transferred_psi: PolyCoeffs,
    /// Degrees `max(1, ⌈s⌉) ..= m − 1`.
    pub coefficient_matches: Vec<CoefficientMatch>,
    pub transfer_agrees: bool,
}

/// Decomposes `z` and `x` of a trace independently and transfers `z`'s
/// polynomial to `x` for comparison.
///
/// When `spec.q` is set, both remainders also get a regularity check.
pub fn decompose_solution(
    trace: &SolutionTrace,
    spec: &EquationSpec,
    th: &Thresholds,
) -> Result<SolutionDecomposition> {
    let mut z = extract_polynomial(&trace.z, spec.m, spec.s, th)?;
    let mut x = extract_polynomial(&trace.x, spec.m, spec.s, th)?;
    let lowest = z.lowest_kept_degree;
    let mut transferred = transfer_polynomial(&z.psi, spec.c, spec.k)?.coeffs().to_vec();
    transferred.resize(spec.m, 0.0);
    for c in transferred.iter_mut().take(lowest) {
        *c = 0.0;
    }
    let transferred_psi = PolyCoeffs::new(transferred);

    let n_end = trace.x.end() as f64;
    let coefficient_matches: Vec<CoefficientMatch> = (lowest.max(1)..spec.m)
        .map(|d| {
            let t = transferred_psi.coeff(d);
            let e = x.psi.coeff(d);
            let size = t.abs().max(e.abs());
            // coefficients whose whole contribution sits below resolution
            let negligible = size * n_end.powi(d as i32) <= x.resolution_floor;
            let relative_difference = if size == 0.0 || negligible {
                0.0
            } else {
                (t - e).abs() / size
            };
            CoefficientMatch {
                degree: d,
                transferred: t,
                extracted: e,
                relative_difference,
                agree: relative_difference <= TRANSFER_AGREEMENT,
            }
        })
        .collect();
    let transfer_agrees = coefficient_matches.iter().all(|c| c.agree);

    if let Some(q) = spec.q {
        for report in [&mut z, &mut x] {
            let floored = Thresholds {
                zero_floor: report.resolution_floor,
                ..th.clone()
            };
            report.regularity = Some(regularity_check(&report.remainder, q, &floored)?);
        }
    }
    Ok(SolutionDecomposition {
        z,
        x,
        transferred_psi,
        coefficient_matches,
        transfer_agrees,
    })
}
