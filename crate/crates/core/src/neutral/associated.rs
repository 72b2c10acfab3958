use crate::error::{Error, Result};
use crate::seqcore::Seq;

use super::{DIVERGENCE_LIMIT, SINGULAR_LIMIT};

/// `z_n = x_n + u_n·x_{n+k}` on the largest window where all three terms
/// exist and `n ≥ max(0, −k)`.
pub fn z_from_x(x: &Seq, u: &Seq, k: i64) -> Result<Seq> {
    let from = x.start().max(x.start() - k).max(u.start()).max((-k).max(0));
    let to = x.end().min(x.end() - k).min(u.end());
    if to < from {
        return Err(Error::TooShort {
            what: "z from x (window overlap for shift k)",
            len: 0,
            needed: 1,
        });
    }
    Seq::from_fn(from, to, |n| {
        x.values()[(n - x.start()) as usize]
            + u.values()[(n - u.start()) as usize] * x.values()[(n + k - x.start()) as usize]
    })
}

/// Recovers `x` from `z` by forward recursion.
///
/// For `k ≠ 0` the seed holds the first `|k|` terms of `x`, i.e. the indices
/// `[z.start + min(k, 0), z.start + min(k, 0) + |k| − 1]`; for `k = 0` it is
/// ignored. The result covers `[z.start − |k|, z.end]` for `k < 0`,
/// `[z.start, z.end + k]` for `k > 0` and the window of `z` for `k = 0`.
pub fn x_from_z(z: &Seq, u: &Seq, k: i64, seed: Option<&Seq>) -> Result<Seq> {
    if !(u.contains(z.start()) && u.contains(z.end())) {
        return Err(Error::invalid(
            "u",
            format!("window [{}, {}] does not cover z's window", u.start(), u.end()),
        ));
    }
    let zv = |n: i64| z.values()[(n - z.start()) as usize];
    let uv = |n: i64| u.values()[(n - u.start()) as usize];
    let r = k.unsigned_abs() as usize;
    let xs = z.start() + k.min(0);
    let mut x: Vec<f64> = Vec::with_capacity(z.len() + r);
    if k != 0 {
        let seed = seed.ok_or_else(|| Error::Seed(format!("shift k={k} needs {r} seed terms")))?;
        for n in xs..xs + r as i64 {
            let v = seed.at(n).ok_or_else(|| {
                Error::Seed(format!(
                    "seed [{}, {}] does not cover index {n}",
                    seed.start(),
                    seed.end()
                ))
            })?;
            x.push(v);
        }
    }
    let guard = |x: &[f64], v: f64| -> Result<f64> {
        if v.is_finite() && v.abs() <= DIVERGENCE_LIMIT {
            Ok(v)
        } else {
            let index = xs + x.len() as i64;
            Err(Error::Divergence {
                index,
                last_valid: index - 1,
            })
        }
    };
    for n in z.start()..=z.end() {
        let v = match k {
            0 => {
                let d = 1.0 + uv(n);
                if d.abs() <= SINGULAR_LIMIT {
                    return Err(Error::SingularRecovery {
                        index: n,
                        divisor: d,
                    });
                }
                zv(n) / d
            }
            k if k < 0 => zv(n) - uv(n) * x[(n + k - xs) as usize],
            _ => {
                let d = uv(n);
                if d.abs() <= SINGULAR_LIMIT {
                    return Err(Error::SingularRecovery {
                        index: n,
                        divisor: d,
                    });
                }
                (zv(n) - x[(n - xs) as usize]) / d
            }
        };
        let v = guard(&x, v)?;
        x.push(v);
    }
    Seq::new(xs, x)
}
