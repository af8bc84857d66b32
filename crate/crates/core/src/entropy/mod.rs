//! Categorical entropy: Hom-growth estimates over a grid of `t`, slot
//! weights of reduced complexes, the tower bound for ℙ-twists and the
//! Gromov–Yomdin comparison.

mod grid;
mod spectral;
mod weight;

use crate::complex::{hom_complex, minimal_model, TwistedComplex};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::linalg::GradedDims;
use crate::twists::{p_twist_a, TwistFunctor};

pub use grid::TGrid;
pub use spectral::spectral_radius;
pub use weight::{slot_weight, TowerCertificate};

/// `log Σ_m dims[m]·e^{−mt}`, or `None` when `dims` is empty.
pub fn log_weighted_dims(dims: &GradedDims, t: f64) -> Option<f64> {
    let terms: Vec<f64> = dims.iter().map(|(m, d)| (d as f64).ln() - m as f64 * t).collect();
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if terms.is_empty() {
        return None;
    }
    Some(max + terms.iter().map(|x| (x - max).exp()).sum::<f64>().ln())
}

/// Both forms of the tower bound at one `(n, t)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TowerBound {
    /// `1 + δA(t)·Σ_{k=0}^{n−1} e^{(−2dk+1)t}`.
    pub sum: f64,
    /// `1 + δA(t)(e^t + n − 1)`, only for `t > 0`.
    pub majorant: Option<f64>,
}

pub fn tower_bound(delta_a: f64, d: u32, n: usize, t: f64) -> Result<TowerBound> {
    if n < 1 {
        return Err(Error::Input("tower bound needs n ≥ 1".into()));
    }
    let d = f64::from(d);
    let sum = 1.0 + delta_a * (0..n).map(|k| ((-2.0 * d * k as f64 + 1.0) * t).exp()).sum::<f64>();
    let majorant = (t > 0.0).then(|| 1.0 + delta_a * (t.exp() + n as f64 - 1.0));
    if let Some(m) = majorant {
        if sum > m * (1.0 + 1e-12) {
            return Err(Error::Invariant(format!("tower sum {sum} exceeds its majorant {m}")));
        }
    }
    Ok(TowerBound { sum, majorant })
}

/// One iterate `Φ^n G` and its Hom-cohomology against `G`.
#[derive(Clone, Debug)]
pub struct IterateData {
    pub n: usize,
    pub complex: TwistedComplex,
    pub hom_dims: GradedDims,
    pub weights: TowerCertificate,
}

impl IterateData {
    pub fn slot_count(&self) -> usize {
        self.complex.len()
    }

    pub fn is_degenerate(&self) -> bool {
        self.hom_dims.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct EntropyReport {
    pub grid: Vec<f64>,
    pub iterates: Vec<IterateData>,
    /// `a[n][k] = a_n(grid[k])`, `None` when `Φ^n G` is contractible.
    pub a: Vec<Vec<Option<f64>>>,
    /// `tower[n][k]`, present for ℙ-twists and `n ≥ 1`.
    pub tower: Option<Vec<Vec<Option<TowerBound>>>>,
}

impl EntropyReport {
    pub fn n_max(&self) -> usize {
        self.iterates.len() - 1
    }

    pub fn a(&self, n: usize, k: usize) -> Option<f64> {
        self.a[n][k]
    }

    /// `a_n − a_{n−1}`, the slope estimator of record.
    pub fn slope_diff(&self, n: usize, k: usize) -> Option<f64> {
        if n == 0 {
            return None;
        }
        Some(self.a[n][k]? - self.a[n - 1][k]?)
    }

    /// `a_n / n`, reported as a cross-check.
    pub fn slope_ratio(&self, n: usize, k: usize) -> Option<f64> {
        if n == 0 {
            return None;
        }
        Some(self.a[n][k]? / n as f64)
    }

    /// Slope estimate at `n = N` for grid point `k`.
    pub fn slope(&self, k: usize) -> Option<f64> {
        self.slope_diff(self.n_max(), k)
    }

    pub fn tower_bound(&self, n: usize, k: usize) -> Option<TowerBound> {
        self.tower.as_ref()?[n][k]
    }

    pub fn degenerate(&self) -> Vec<usize> {
        self.iterates.iter().filter(|i| i.is_degenerate()).map(|i| i.n).collect()
    }

    /// Grid index of `t`, matched to within `1e−9`.
    pub fn grid_index(&self, t: f64) -> Option<usize> {
        self.grid.iter().position(|&g| (g - t).abs() < 1e-9)
    }
}

/// Checks that `g` contains a shifted copy of every generator, so that it
/// split-generates. Returns the reduced `g`.
fn split_generator(g: &TwistedComplex) -> Result<TwistedComplex> {
    let r = minimal_model(g)?;
    let p = r.presentation();
    for o in p.objects() {
        if !r.slots().iter().any(|s| s.object == o) {
            return Err(Error::Contract(format!(
                "generator {} is missing from G; G must cover every generator",
                p.object_name(o)
            )));
        }
    }
    Ok(r)
}

/// `G, Φ(G), …, Φ^N(G)` with their Hom-cohomology against `G`.
///
/// The iterates are computed in order; the Hom-cohomology of each is
/// independent and evaluated under `exec`.
pub fn iterate_data(phi: &TwistFunctor, g: &TwistedComplex, n: usize, exec: Execution) -> Result<Vec<IterateData>> {
    let g = split_generator(g)?;
    let mut xs = vec![g.clone()];
    xs.extend(phi.iterate(&g, n)?);
    let indexed: Vec<(usize, TwistedComplex)> = xs.into_iter().enumerate().collect();
    exec.map(&indexed, |(k, x)| {
        Ok(IterateData {
            n: *k,
            hom_dims: hom_complex(&g, x)?.cohomology_dims()?,
            weights: TowerCertificate::of(x),
            complex: x.clone(),
        })
    })
    .into_iter()
    .collect()
}

pub fn entropy_estimate(
    phi: &TwistFunctor,
    g: &TwistedComplex,
    n: usize,
    grid: &TGrid,
    exec: Execution,
) -> Result<EntropyReport> {
    if n < 2 {
        return Err(Error::Input("entropy estimates need N ≥ 2".into()));
    }
    let iterates = iterate_data(phi, g, n, exec)?;
    let ts = grid.values();
    let a: Vec<Vec<Option<f64>>> = exec.map(&iterates, |it| {
        ts.iter().map(|&t| log_weighted_dims(&it.hom_dims, t)).collect()
    });
    let tower = match phi {
        TwistFunctor::PTwist { cert, .. } => {
            let qa = minimal_model(&p_twist_a(cert, &iterates[0].complex)?)?;
            let wa = TowerCertificate::of(&qa);
            let rows: Vec<usize> = (0..=n).collect();
            let cells = exec.map(&rows, |&k| {
                ts.iter()
                    .map(|&t| match k {
                        0 => Ok(None),
                        _ => tower_bound(wa.weight(t), cert.dim, k, t).map(Some),
                    })
                    .collect::<Result<Vec<_>>>()
            });
            Some(cells.into_iter().collect::<Result<Vec<_>>>()?)
        }
        _ => None,
    };
    Ok(EntropyReport {
        grid: ts,
        iterates,
        a,
        tower,
    })
}

/// One row of the certification table.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CertificationRow {
    pub n: usize,
    pub t: f64,
    /// `slot_weight(reduce(Φ^n G), t)`.
    pub weight: f64,
    pub bound: f64,
    pub holds: bool,
}

/// Slack allowed when comparing a slot weight against the tower bound.
pub const CERTIFICATION_SLACK: f64 = 1e-9;

/// Compares slot weights of the iterates against the tower bound.
pub fn certify(report: &EntropyReport) -> Result<Vec<CertificationRow>> {
    if report.tower.is_none() {
        return Err(Error::Contract("tower bounds exist only for ℙ-twists".into()));
    }
    let mut rows = Vec::new();
    for it in &report.iterates[1..] {
        for (k, &t) in report.grid.iter().enumerate() {
            let weight = it.weights.weight(t);
            let bound = report.tower_bound(it.n, k).expect("tower bound for n ≥ 1").sum;
            rows.push(CertificationRow {
                n: it.n,
                t,
                weight,
                bound,
                holds: weight <= bound + CERTIFICATION_SLACK,
            });
        }
    }
    Ok(rows)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GyReport {
    pub h0_estimate: f64,
    pub rho: f64,
    pub log_rho: f64,
    pub gap: f64,
}

/// Compares the `t = 0` slope with the log spectral radius on K₀.
pub fn gy_check(phi: &TwistFunctor, g: &TwistedComplex, n: usize, tol: f64, exec: Execution) -> Result<GyReport> {
    let report = entropy_estimate(phi, g, n, &TGrid::single(0.0), exec)?;
    let h0_estimate = report
        .slope(0)
        .ok_or_else(|| Error::Contract("Φ^N G is contractible; no slope at t = 0".into()))?;
    let rho = spectral_radius(&phi.k0_matrix(g.presentation())?, tol)?;
    let log_rho = rho.ln();
    Ok(GyReport {
        h0_estimate,
        rho,
        log_rho,
        gap: (h0_estimate - log_rho).abs(),
    })
}

#[cfg(test)]
mod tests;
