//! Closed-form building blocks for equation instances.
//!
//! Every coefficient sequence, right-hand side `f`, majorant `g` and delay
//! `σ` used by the solver comes from this fixed catalog. Identifiers are the
//! exact strings accepted in experiment configs.

use std::f64::consts::FRAC_PI_2;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seqcore::Seq;

/// Generator for the coefficient sequences `u`, `a` and `b`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "id", rename_all = "snake_case", deny_unknown_fields)]
pub enum SeqGen {
    /// `value`
    Constant { value: f64 },
    /// `c + amp·n^{-rho}`
    PowerOffset { c: f64, amp: f64, rho: f64 },
    /// `amp·n^{-rho}`
    Power { amp: f64, rho: f64 },
    /// `amp·(-1)^n·n^{-rho}`
    AltPower { amp: f64, rho: f64 },
    /// `amp·ratio^n`
    Geometric { amp: f64, ratio: f64 },
}

impl SeqGen {
    pub fn eval(&self, n: i64) -> f64 {
        let nf = n as f64;
        match *self {
            SeqGen::Constant { value } => value,
            SeqGen::PowerOffset { c, amp, rho } => c + amp * nf.powf(-rho),
            SeqGen::Power { amp, rho } => amp * nf.powf(-rho),
            SeqGen::AltPower { amp, rho } => {
                let sign = if n.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
                sign * amp * nf.powf(-rho)
            }
            SeqGen::Geometric { amp, ratio } => amp * ratio.powf(nf),
        }
    }

    pub fn sample(&self, start: i64, end: i64) -> Result<Seq> {
        Seq::from_fn(start, end, |n| self.eval(n))
    }

    /// `lim_{n→∞}` of the generated sequence, when it exists.
    pub fn limit(&self) -> Option<f64> {
        match *self {
            SeqGen::Constant { value } => Some(value),
            SeqGen::PowerOffset { c, amp, rho } => match rho {
                _ if amp == 0.0 || rho > 0.0 => Some(c),
                r if r == 0.0 => Some(c + amp),
                _ => None,
            },
            SeqGen::Power { amp, rho } => match rho {
                _ if amp == 0.0 || rho > 0.0 => Some(0.0),
                r if r == 0.0 => Some(amp),
                _ => None,
            },
            SeqGen::AltPower { amp, rho } => (amp == 0.0 || rho > 0.0).then_some(0.0),
            SeqGen::Geometric { amp, ratio } => match ratio.abs() {
                _ if amp == 0.0 => Some(0.0),
                r if r < 1.0 => Some(0.0),
                _ if ratio == 1.0 => Some(amp),
                _ => None,
            },
        }
    }

    pub fn validate(&self, field: &str) -> Result<()> {
        let params: &[(&str, f64)] = match self {
            SeqGen::Constant { value } => &[("value", *value)],
            SeqGen::PowerOffset { c, amp, rho } => &[("c", *c), ("amp", *amp), ("rho", *rho)],
            SeqGen::Power { amp, rho } | SeqGen::AltPower { amp, rho } => {
                &[("amp", *amp), ("rho", *rho)]
            }
            SeqGen::Geometric { amp, ratio } => &[("amp", *amp), ("ratio", *ratio)],
        };
        for (name, v) in params {
            if !v.is_finite() {
                return Err(Error::invalid(format!("{field}.{name}"), "must be finite"));
            }
        }
        if let SeqGen::Geometric { ratio, .. } = self {
            if *ratio <= 0.0 {
                return Err(Error::invalid(format!("{field}.ratio"), "must be positive"));
            }
        }
        Ok(())
    }
}

/// Right-hand side nonlinearity `f(n, t)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "id", rename_all = "snake_case", deny_unknown_fields)]
pub enum RhsSpec {
    /// `t/(1+t²)`
    Sigmoid {},
    /// `arctan t`
    Arctan {},
    /// `sgn(t)·|t|^gamma`, `0 < gamma ≤ 1`
    PowerSgn { gamma: f64 },
    /// `t`
    Linear {},
    /// `sin t`
    BoundedSin {},
}

impl RhsSpec {
    pub fn eval(&self, _n: i64, t: f64) -> f64 {
        match *self {
            RhsSpec::Sigmoid {} => t / (1.0 + t * t),
            RhsSpec::Arctan {} => t.atan(),
            RhsSpec::PowerSgn { gamma } => t.signum() * t.abs().powf(gamma),
            RhsSpec::Linear {} => t,
            RhsSpec::BoundedSin {} => t.sin(),
        }
    }

    /// `sup |f|` for the bounded entries.
    pub fn sup_abs(&self) -> Option<f64> {
        match self {
            RhsSpec::Sigmoid {} => Some(0.5),
            RhsSpec::Arctan {} => Some(FRAC_PI_2),
            RhsSpec::BoundedSin {} => Some(1.0),
            RhsSpec::PowerSgn { .. } | RhsSpec::Linear {} => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let RhsSpec::PowerSgn { gamma } = *self {
            if !(gamma > 0.0 && gamma <= 1.0) {
                return Err(Error::invalid("f.gamma", format!("{gamma} is outside (0, 1]")));
            }
        }
        Ok(())
    }
}

/// A majorant `g: [0, ∞) → [0, ∞)` as used by the Bihari-type bound.
pub trait Majorant {
    fn eval(&self, t: f64) -> f64;

    /// `∫_λ^t ds/g(s)` in closed form, if known.
    fn recip_integral(&self, _lambda: f64, _t: f64) -> Option<f64> {
        None
    }

    /// Whether `∫_1^∞ ds/g(s)` diverges, if known analytically.
    fn recip_integral_diverges(&self) -> Option<bool> {
        None
    }
}

/// Adapts a plain function into a [`Majorant`] with no closed forms.
#[derive(Clone, Copy, Debug)]
pub struct MajorantFn<F>(pub F);

impl<F: Fn(f64) -> f64> Majorant for MajorantFn<F> {
    fn eval(&self, t: f64) -> f64 {
        (self.0)(t)
    }
}

impl<M: Majorant + ?Sized> Majorant for &M {
    fn eval(&self, t: f64) -> f64 {
        (**self).eval(t)
    }
    fn recip_integral(&self, lambda: f64, t: f64) -> Option<f64> {
        (**self).recip_integral(lambda, t)
    }
    fn recip_integral_diverges(&self) -> Option<bool> {
        (**self).recip_integral_diverges()
    }
}

/// Catalog majorants. All are nondecreasing and locally bounded on `[0, ∞)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "id", rename_all = "snake_case", deny_unknown_fields)]
pub enum MajorantSpec {
    /// `t`
    Identity {},
    /// `t^gamma`, `gamma > 0`
    Power { gamma: f64 },
    /// `alpha·t + beta`, `alpha, beta ≥ 0`
    Affine { alpha: f64, beta: f64 },
    /// `value > 0`
    Constant { value: f64 },
}

impl MajorantSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            MajorantSpec::Identity {} => Ok(()),
            MajorantSpec::Power { gamma } if gamma.is_finite() && gamma > 0.0 => Ok(()),
            MajorantSpec::Power { gamma } => {
                Err(Error::invalid("g.gamma", format!("{gamma} must be positive")))
            }
            MajorantSpec::Affine { alpha, beta } => {
                if !(alpha.is_finite() && beta.is_finite() && alpha >= 0.0 && beta >= 0.0) {
                    Err(Error::invalid("g", "affine needs finite alpha, beta ≥ 0"))
                } else if alpha == 0.0 && beta == 0.0 {
                    Err(Error::invalid("g", "affine with alpha = beta = 0 is identically zero"))
                } else {
                    Ok(())
                }
            }
            MajorantSpec::Constant { value } if value.is_finite() && value > 0.0 => Ok(()),
            MajorantSpec::Constant { value } => {
                Err(Error::invalid("g.value", format!("{value} must be positive")))
            }
        }
    }
}

impl Majorant for MajorantSpec {
    fn eval(&self, t: f64) -> f64 {
        match *self {
            MajorantSpec::Identity {} => t,
            MajorantSpec::Power { gamma } => t.powf(gamma),
            MajorantSpec::Affine { alpha, beta } => alpha * t + beta,
            MajorantSpec::Constant { value } => value,
        }
    }

    fn recip_integral(&self, lambda: f64, t: f64) -> Option<f64> {
        Some(match *self {
            MajorantSpec::Identity {} => (t / lambda).ln(),
            MajorantSpec::Power { gamma } if gamma == 1.0 => (t / lambda).ln(),
            MajorantSpec::Power { gamma } => {
                let e = 1.0 - gamma;
                (t.powf(e) - lambda.powf(e)) / e
            }
            MajorantSpec::Affine { alpha, beta } if alpha == 0.0 => (t - lambda) / beta,
            MajorantSpec::Affine { alpha, beta } => {
                ((alpha * t + beta) / (alpha * lambda + beta)).ln() / alpha
            }
            MajorantSpec::Constant { value } => (t - lambda) / value,
        })
    }

    fn recip_integral_diverges(&self) -> Option<bool> {
        Some(match *self {
            MajorantSpec::Power { gamma } => gamma <= 1.0,
            MajorantSpec::Identity {} | MajorantSpec::Affine { .. } | MajorantSpec::Constant { .. } => {
                true
            }
        })
    }
}

/// Delay `σ(n)`. Every entry tends to infinity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "id", rename_all = "snake_case", deny_unknown_fields)]
pub enum DelaySpec {
    /// `n`
    Identity {},
    /// `n − d` (a negative `d` reads ahead)
    DelayD { d: i64 },
    /// `⌊n/2⌋`
    Half {},
    /// `⌊ln n⌋`
    FloorLog {},
}

impl DelaySpec {
    pub fn eval(&self, n: i64) -> i64 {
        match *self {
            DelaySpec::Identity {} => n,
            DelaySpec::DelayD { d } => n - d,
            DelaySpec::Half {} => n.div_euclid(2),
            DelaySpec::FloorLog {} => (n as f64).ln().floor() as i64,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub family: &'static str,
    pub id: &'static str,
    pub params: &'static [&'static str],
    pub formula: &'static str,
}

impl fmt::Display for CatalogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params = if self.params.is_empty() {
            "-".to_string()
        } else {
            self.params.join(",")
        };
        write!(f, "{:<9} {:<13} {:<16} {}", self.family, self.id, params, self.formula)
    }
}

/// Every catalog identifier with its parameter names, in a fixed order.
pub fn listing() -> Vec<CatalogEntry> {
    const fn e(
        family: &'static str,
        id: &'static str,
        params: &'static [&'static str],
        formula: &'static str,
    ) -> CatalogEntry {
        CatalogEntry {
            family,
            id,
            params,
            formula,
        }
    }
    vec![
        e("f", "sigmoid", &[], "f(n,t) = t/(1+t^2)"),
        e("f", "arctan", &[], "f(n,t) = arctan(t)"),
        e("f", "power_sgn", &["gamma"], "f(n,t) = sgn(t)|t|^gamma, 0<gamma<=1"),
        e("f", "linear", &[], "f(n,t) = t"),
        e("f", "bounded_sin", &[], "f(n,t) = sin(t)"),
        e("g", "identity", &[], "g(t) = t"),
        e("g", "power", &["gamma"], "g(t) = t^gamma, gamma>0"),
        e("g", "affine", &["alpha", "beta"], "g(t) = alpha*t + beta, alpha,beta>=0"),
        e("g", "constant", &["value"], "g(t) = value > 0"),
        e("sigma", "identity", &[], "sigma(n) = n"),
        e("sigma", "delay_d", &["d"], "sigma(n) = n - d"),
        e("sigma", "half", &[], "sigma(n) = floor(n/2)"),
        e("sigma", "floor_log", &[], "sigma(n) = floor(ln n)"),
        e("sequence", "constant", &["value"], "value"),
        e("sequence", "power_offset", &["c", "amp", "rho"], "c + amp*n^(-rho)"),
        e("sequence", "power", &["amp", "rho"], "amp*n^(-rho)"),
        e("sequence", "alt_power", &["amp", "rho"], "amp*(-1)^n*n^(-rho)"),
        e("sequence", "geometric", &["amp", "ratio"], "amp*ratio^n"),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn listing_contains_every_identifier() {
        let ids: Vec<_> = listing().iter().map(|e| e.id).collect();
        for id in ["sigmoid", "floor_log", "delay_d", "power_offset", "alt_power", "affine"] {
            assert!(ids.contains(&id), "{id}");
        }
        assert_eq!(listing(), listing());
    }

    #[test]
    fn generators_evaluate() {
        let g = SeqGen::PowerOffset {
            c: 0.5,
            amp: 2.0,
            rho: 2.0,
        };
        assert_eq!(g.eval(2), 1.0);
        assert_eq!(g.limit(), Some(0.5));
        let alt = SeqGen::AltPower { amp: 1.0, rho: 1.0 };
        assert_eq!(alt.eval(3), -1.0 / 3.0);
        assert_eq!(alt.eval(4), 0.25);
        let geo = SeqGen::Geometric {
            amp: 1.0,
            ratio: 0.5,
        };
        assert_eq!(geo.eval(3), 0.125);
        assert_eq!(geo.limit(), Some(0.0));
        assert_eq!(SeqGen::Power { amp: 1.0, rho: -1.0 }.limit(), None);
    }

    #[test]
    fn delays() {
        assert_eq!(DelaySpec::Half {}.eval(7), 3);
        assert_eq!(DelaySpec::DelayD { d: -5 }.eval(10), 15);
        assert_eq!(DelaySpec::FloorLog {}.eval(1), 0);
        assert_eq!(DelaySpec::FloorLog {}.eval(3), 1);
        assert_eq!(DelaySpec::FloorLog {}.eval(10_000), 9);
    }

    #[test]
    fn rhs_bounds_hold_on_samples() {
        for f in [RhsSpec::Sigmoid {}, RhsSpec::Arctan {}, RhsSpec::BoundedSin {}] {
            let sup = f.sup_abs().unwrap();
            for i in -2000..=2000 {
                let t = i as f64 * 0.01;
                assert!(f.eval(1, t).abs() <= sup);
            }
        }
        assert!(RhsSpec::PowerSgn { gamma: 1.5 }.validate().is_err());
        assert_eq!(RhsSpec::PowerSgn { gamma: 0.5 }.eval(1, -4.0), -2.0);
    }

    #[test]
    fn serde_uses_exact_ids_and_rejects_unknown_fields() {
        let g: SeqGen =
            serde_json::from_str(r#"{"id":"power_offset","c":0.5,"amp":1.0,"rho":2.0}"#).unwrap();
        assert_eq!(
            g,
            SeqGen::PowerOffset {
                c: 0.5,
                amp: 1.0,
                rho: 2.0
            }
        );
        let err = serde_json::from_str::<SeqGen>(r#"{"id":"power","amp":1.0,"rho":2.0,"x":1}"#);
        assert!(err.is_err());
        let err = serde_json::from_str::<RhsSpec>(r#"{"id":"sigmoid","gamma":1}"#);
        assert!(err.is_err());
        let d: DelaySpec = serde_json::from_str(r#"{"id":"floor_log"}"#).unwrap();
        assert_eq!(d, DelaySpec::FloorLog {});
    }

    #[test]
    fn closed_form_recip_integrals() {
        let e = std::f64::consts::E;
        let id = MajorantSpec::Identity {};
        assert!((id.recip_integral(1.0, e).unwrap() - 1.0).abs() < 1e-15);
        let sq = MajorantSpec::Power { gamma: 2.0 };
        assert!((sq.recip_integral(1.0, 2.0).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(sq.recip_integral(1.0, f64::INFINITY), Some(1.0));
        assert_eq!(sq.recip_integral_diverges(), Some(false));
        let c = MajorantSpec::Constant { value: 4.0 };
        assert_eq!(c.recip_integral(0.0, 10.0), Some(2.5));
        let aff = MajorantSpec::Affine {
            alpha: 0.0,
            beta: 2.0,
        };
        assert_eq!(aff.recip_integral(1.0, 5.0), Some(2.0));
    }
}
