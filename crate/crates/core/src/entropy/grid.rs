use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Closed uniform grid `lo, lo + step, …` up to `hi`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TGrid {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl Default for TGrid {
    fn default() -> Self {
        TGrid {
            lo: -1.0,
            hi: 1.0,
            step: 0.25,
        }
    }
}

impl TGrid {
    pub fn new(lo: f64, hi: f64, step: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && step.is_finite()) || step <= 0.0 {
            return Err(Error::Input(format!("bad t-grid {lo}:{hi}:{step}; step must be positive")));
        }
        Ok(TGrid { lo, hi, step })
    }

    pub fn single(t: f64) -> Self {
        TGrid { lo: t, hi: t, step: 1.0 }
    }

    /// Grid points; empty when `lo > hi`.
    pub fn values(&self) -> Vec<f64> {
        let mut out = Vec::new();
        let mut k = 0u32;
        loop {
            let t = self.lo + f64::from(k) * self.step;
            if t > self.hi + self.step * 1e-9 {
                return out;
            }
            // snap values like 1e−17 to zero so they print and compare cleanly
            out.push(if t.abs() < self.step * 1e-9 { 0.0 } else { t });
            k += 1;
        }
    }
}

impl FromStr for TGrid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let nums = match parts.as_slice() {
            [a, b, c] => [a, b, c].map(|x| x.trim().parse::<f64>()),
            _ => return Err(Error::Input(format!("t-grid {s:?} is not lo:hi:step"))),
        };
        match nums {
            [Ok(lo), Ok(hi), Ok(step)] => TGrid::new(lo, hi, step),
            _ => Err(Error::Input(format!("t-grid {s:?} has a non-numeric bound"))),
        }
    }
}

impl fmt::Display for TGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.lo, self.hi, self.step)
    }
}
