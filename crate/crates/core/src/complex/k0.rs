use std::fmt;

use super::{sign, TwistedComplex};
use crate::presentation::GradedCategoryPresentation;

/// Class in the lattice spanned by the generators: `[g[n]] = (−1)^n [g]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct K0Class(pub Vec<i64>);

impl K0Class {
    pub fn zero(objects: usize) -> Self {
        K0Class(vec![0; objects])
    }

    pub fn plus(&self, other: &K0Class) -> K0Class {
        K0Class(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn minus(&self, other: &K0Class) -> K0Class {
        K0Class(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn display(&self, p: &GradedCategoryPresentation) -> String {
        let parts: Vec<String> = p
            .objects()
            .zip(&self.0)
            .filter(|(_, &c)| c != 0)
            .map(|(o, c)| format!("{c}[{}]", p.object_name(o)))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Display for K0Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

pub fn k0_class(x: &TwistedComplex) -> K0Class {
    let mut c = K0Class::zero(x.pres.object_count());
    for s in &x.slots {
        c.0[s.object.0] += sign(s.shift);
    }
    c
}
