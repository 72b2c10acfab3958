use serde::Serialize;

use crate::error::{Error, Result};

/// A finite, materialized window of a real sequence.
///
/// `values[i]` is the term with index `start + i`. Windows are never empty
/// and never hold NaN or infinities.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Seq {
    start: i64,
    values: Vec<f64>,
}

impl Seq {
    pub fn new(start: i64, values: Vec<f64>) -> Result<Self> {
        if start < 0 {
            return Err(Error::invalid("start_index", format!("{start} is negative")));
        }
        if values.is_empty() {
            return Err(Error::EmptyWindow);
        }
        if let Some((i, &value)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFinite {
                index: start + i as i64,
                value,
            });
        }
        Ok(Self { start, values })
    }

    /// Samples `f` on the indices `start..=end`.
    pub fn from_fn(start: i64, end: i64, f: impl FnMut(i64) -> f64) -> Result<Self> {
        if end < start {
            return Err(Error::EmptyWindow);
        }
        Self::new(start, (start..=end).map(f).collect())
    }

    pub fn zeros(start: i64, len: usize) -> Result<Self> {
        Self::new(start, vec![0.0; len])
    }

    #[inline]
    pub fn start(&self) -> i64 {
        self.start
    }

    /// Index of the last term (inclusive).
    #[inline]
    pub fn end(&self) -> i64 {
        self.start + self.values.len() as i64 - 1
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always false; kept for API symmetry with collections.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    #[inline]
    pub fn contains(&self, n: i64) -> bool {
        n >= self.start && n <= self.end()
    }

    pub fn get(&self, n: i64) -> Result<f64> {
        self.at(n).ok_or(Error::OutOfRange {
            index: n,
            start: self.start,
            end: self.end(),
        })
    }

    #[inline]
    pub fn at(&self, n: i64) -> Option<f64> {
        if self.contains(n) {
            Some(self.values[(n - self.start) as usize])
        } else {
            None
        }
    }

    /// `(index, value)` pairs in order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(move |(i, &v)| (self.start + i as i64, v))
    }

    /// Sub-window `[from, to]` (inclusive); both ends must lie in the window.
    pub fn slice(&self, from: i64, to: i64) -> Result<Seq> {
        self.get(from)?;
        self.get(to)?;
        if to < from {
            return Err(Error::EmptyWindow);
        }
        let lo = (from - self.start) as usize;
        let hi = (to - self.start) as usize;
        Ok(Seq {
            start: from,
            values: self.values[lo..=hi].to_vec(),
        })
    }

    /// The last `ceil(fraction * len)` terms (at least one).
    pub fn trailing(&self, fraction: f64) -> Seq {
        let keep = ((self.len() as f64 * fraction).ceil() as usize).clamp(1, self.len());
        let from = self.end() - keep as i64 + 1;
        Seq {
            start: from,
            values: self.values[self.len() - keep..].to_vec(),
        }
    }

    /// Applies `f(n, x_n)` termwise.
    pub fn map(&self, mut f: impl FnMut(i64, f64) -> f64) -> Result<Seq> {
        Seq::new(self.start, self.iter().map(|(n, v)| f(n, v)).collect())
    }

    /// Combines two windows on their index overlap.
    pub fn zip_with(&self, other: &Seq, mut f: impl FnMut(i64, f64, f64) -> f64) -> Result<Seq> {
        let from = self.start.max(other.start);
        let to = self.end().min(other.end());
        if to < from {
            return Err(Error::TooShort {
                what: "overlap of two windows",
                len: 0,
                needed: 1,
            });
        }
        Seq::from_fn(from, to, |n| {
            f(n, self.values[(n - self.start) as usize], other.values[(n - other.start) as usize])
        })
    }

    pub fn sub(&self, other: &Seq) -> Result<Seq> {
        self.zip_with(other, |_, a, b| a - b)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }
}
