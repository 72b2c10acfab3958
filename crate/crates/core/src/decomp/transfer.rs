use crate::error::{Error, Result};
use crate::neutral::C_MARGIN;
use crate::seqcore::{binomial, PolyCoeffs, MAX_ORDER};

/// Relative residual accepted by [`transfer_polynomial`].
pub const TRANSFER_TOLERANCE: f64 = 1e-10;

/// The polynomial `ψ` with `ψ(n) + c·ψ(n+k) = φ(n)` for all `n`.
///
/// Matching coefficients of `n^i` gives the upper-triangular system
/// `(1+c)ψ_i + c·Σ_{j>i} C(j,i)·k^{j−i}·ψ_j = φ_i`, solved from the top
/// degree down. The identity is re-checked at `n = 0, …, deg + 2`.
pub fn transfer_polynomial(phi: &PolyCoeffs, c: f64, k: i64) -> Result<PolyCoeffs> {
    if !c.is_finite() || (c.abs() - 1.0).abs() <= C_MARGIN {
        return Err(Error::IllConditioned { c });
    }
    let Some(deg) = phi.degree() else {
        return Ok(PolyCoeffs::zero());
    };
    if deg > MAX_ORDER {
        return Err(Error::OrderTooLarge(deg));
    }
    let kf = k as f64;
    let mut psi = vec![0.0; deg + 1];
    for i in (0..=deg).rev() {
        let mut shifted = 0.0;
        for j in (i + 1..=deg).rev() {
            shifted += binomial(j, i)? as f64 * kf.powi((j - i) as i32) * psi[j];
        }
        psi[i] = (phi.coeff(i) - c * shifted) / (1.0 + c);
    }
    let psi = PolyCoeffs::new(psi);

    let samples = 0..=(deg as i64 + 2);
    let scale = 1.0 + samples.clone().map(|n| phi.eval(n as f64).abs()).fold(0.0, f64::max);
    for n in samples {
        let nf = n as f64;
        let lhs = psi.eval(nf) + c * psi.eval(nf + kf);
        let gap = (lhs - phi.eval(nf)).abs();
        if gap > TRANSFER_TOLERANCE * scale {
            return Err(Error::Consistency(format!(
                "transferred polynomial misses the identity at n={n} by {gap:e}"
            )));
        }
    }
    Ok(psi)
}
