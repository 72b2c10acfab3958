use serde::Serialize;

use super::Seq;
use crate::error::{Error, Result};

/// Sign-pattern classes of a sequence relative to a shift `k` and weight `u`.
///
/// "For large n" means every index of the trailing half of the usable window.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OscillationClass {
    /// `x_n·x_{n+1} ≥ 0`
    pub nonoscillatory: bool,
    /// `x_n·x_{n+k} ≥ 0`
    pub k_nonoscillatory: bool,
    /// `x_n·u_n·x_{n+k} ≥ 0`
    pub uk_nonoscillatory: bool,
    /// Negation of `nonoscillatory`.
    pub oscillatory: bool,
}

impl OscillationClass {
    pub fn labels(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.nonoscillatory {
            out.push("nonoscillatory");
        }
        if self.k_nonoscillatory {
            out.push("k_nonoscillatory");
        }
        if self.uk_nonoscillatory {
            out.push("uk_nonoscillatory");
        }
        if self.oscillatory {
            out.push("oscillatory");
        }
        out
    }
}

pub fn classify_oscillation(x: &Seq, u: &Seq, k: i64) -> Result<OscillationClass> {
    // indices n with x_n, x_{n+1}, x_{n+k} and u_n all available
    let lo = x.start().max(x.start() - k).max(u.start());
    let hi = (x.end() - 1).min(x.end() - k).min(u.end());
    if hi - lo + 1 < 2 {
        return Err(Error::TooShort {
            what: "oscillation classification (window overlap for shift k)",
            len: (hi - lo + 1).max(0) as usize,
            needed: 2,
        });
    }
    let from = hi - (hi - lo + 1) / 2 + 1;
    let mut class = OscillationClass {
        nonoscillatory: true,
        k_nonoscillatory: true,
        uk_nonoscillatory: true,
        oscillatory: false,
    };
    for n in from..=hi {
        let xn = x.get(n)?;
        let xk = x.get(n + k)?;
        class.nonoscillatory &= xn * x.get(n + 1)? >= 0.0;
        class.k_nonoscillatory &= xn * xk >= 0.0;
        class.uk_nonoscillatory &= xn * u.get(n)? * xk >= 0.0;
    }
    class.oscillatory = !class.nonoscillatory;
    Ok(class)
}
