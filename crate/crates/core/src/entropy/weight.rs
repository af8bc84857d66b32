use std::collections::BTreeMap;
use std::fmt;

use crate::complex::TwistedComplex;

/// The shift exponents of a tower, kept exactly as a Laurent polynomial
/// `Σ c_n q^n` in `q = e^t`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TowerCertificate {
    counts: BTreeMap<i64, usize>,
}

impl TowerCertificate {
    /// One step per slot of `x`, with exponent the slot's shift.
    pub fn of(x: &TwistedComplex) -> Self {
        Self::from_exponents(x.slots().iter().map(|s| s.shift))
    }

    pub fn from_exponents(exponents: impl IntoIterator<Item = i64>) -> Self {
        let mut counts = BTreeMap::new();
        for n in exponents {
            *counts.entry(n).or_insert(0) += 1;
        }
        TowerCertificate { counts }
    }

    pub fn steps(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn exponents(&self) -> impl Iterator<Item = (i64, usize)> + '_ {
        self.counts.iter().map(|(&n, &c)| (n, c))
    }

    /// `Σ_i e^{n_i t}`.
    pub fn weight(&self, t: f64) -> f64 {
        self.counts.iter().map(|(&n, &c)| c as f64 * (n as f64 * t).exp()).sum()
    }

    /// Multiplication by `q^n`.
    pub fn shifted(&self, n: i64) -> Self {
        TowerCertificate {
            counts: self.counts.iter().map(|(&e, &c)| (e + n, c)).collect(),
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut counts = self.counts.clone();
        for (&e, &c) in &other.counts {
            *counts.entry(e).or_insert(0) += c;
        }
        TowerCertificate { counts }
    }
}

impl fmt::Display for TowerCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.counts.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self.counts.iter().map(|(n, c)| format!("{c}·e^({n}t)")).collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// `Σ e^{n_i t}` over the slots of `x`; an upper bound for `δ_t(G, X)` when
/// `x` is reduced and `G` is the sum of all generators.
pub fn slot_weight(x: &TwistedComplex, t: f64) -> f64 {
    TowerCertificate::of(x).weight(t)
}
