use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Sampled spin expectations and internal-level populations.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SpinTimeSeries {
    pub times: Vec<f64>,
    pub spin: Vec<[f64; 3]>,
    /// Populations of levels a, b, c, d.
    pub populations: Vec<[f64; 4]>,
    pub norms: Vec<f64>,
}

impl SpinTimeSeries {
    pub fn with_capacity(n: usize) -> Self {
        SpinTimeSeries {
            times: Vec::with_capacity(n),
            spin: Vec::with_capacity(n),
            populations: Vec::with_capacity(n),
            norms: Vec::with_capacity(n),
        }
    }

    pub fn push(&mut self, t: f64, spin: [f64; 3], populations: [f64; 4], norm: f64) {
        self.times.push(t);
        self.spin.push(spin);
        self.populations.push(populations);
        self.norms.push(norm);
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn channel(&self, channel: Channel) -> Vec<f64> {
        match channel {
            Channel::Spin(j) => self.spin.iter().map(|s| s[j]).collect(),
            Channel::Population(k) => self.populations.iter().map(|p| p[k]).collect(),
        }
    }
}

/// A scalar observable of a [`SpinTimeSeries`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Channel {
    /// ⟨S_x⟩, ⟨S_y⟩, ⟨S_z⟩ for 0, 1, 2.
    Spin(usize),
    /// Population of level a, b, c, d for 0..4.
    Population(usize),
}

impl FromStr for Channel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sx" => Ok(Channel::Spin(0)),
            "sy" => Ok(Channel::Spin(1)),
            "sz" => Ok(Channel::Spin(2)),
            "pa" => Ok(Channel::Population(0)),
            "pb" => Ok(Channel::Population(1)),
            "pc" => Ok(Channel::Population(2)),
            "pd" => Ok(Channel::Population(3)),
            other => Err(Error::Invalid(format!(
                "unknown channel {other:?} (expected sx, sy, sz, pa, pb, pc or pd)"
            ))),
        }
    }
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Channel::Spin(j) => write!(f, "s{}", ["x", "y", "z"][*j]),
            Channel::Population(k) => write!(f, "p{}", ["a", "b", "c", "d"][*k]),
        }
    }
}

/// Non-empty, finite and strictly increasing.
pub fn validate_time_grid(times: &[f64]) -> Result<()> {
    if times.is_empty() {
        return Err(Error::Invalid("time grid is empty".into()));
    }
    if let Some(t) = times.iter().find(|t| !t.is_finite()) {
        return Err(Error::Invalid(format!(
            "time grid contains non-finite value {t}"
        )));
    }
    if let Some(w) = times.windows(2).find(|w| w[1] <= w[0]) {
        return Err(Error::Invalid(format!(
            "time grid must be strictly increasing ({} followed by {})",
            w[0], w[1]
        )));
    }
    Ok(())
}

/// `count` equally spaced samples from `start` to `stop` inclusive.
pub fn uniform_grid(start: f64, stop: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![start];
    }
    let step = (stop - start) / (count - 1) as f64;
    (0..count).map(|k| start + step * k as f64).collect()
}
