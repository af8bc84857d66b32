use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::twists::K0Matrix;

/// Largest power of two tried, `M^{2^MAX_SQUARINGS}`.
const MAX_SQUARINGS: u32 = 24;

/// `M^{2^k}`, held in `i64` until a product overflows.
#[derive(Clone)]
enum Power {
    Small(Vec<Vec<i64>>),
    Big(Vec<Vec<BigInt>>),
}

impl Power {
    fn square(&self) -> Power {
        match self {
            Power::Small(m) => match square_checked(m) {
                Some(s) => Power::Small(s),
                None => Power::Big(square_big(&to_big(m))),
            },
            Power::Big(m) => Power::Big(square_big(m)),
        }
    }

    /// `ln ‖M^{2^k}‖_max`, `−∞` for the zero matrix.
    fn ln_max_norm(&self) -> f64 {
        match self {
            Power::Small(m) => {
                let max = m.iter().flatten().map(|x| x.unsigned_abs()).max().unwrap_or(0);
                if max == 0 {
                    f64::NEG_INFINITY
                } else {
                    (max as f64).ln()
                }
            }
            Power::Big(m) => m
                .iter()
                .flatten()
                .map(|x| x.abs())
                .max()
                .filter(|x| !x.is_zero())
                .map_or(f64::NEG_INFINITY, |x| ln_big(&x)),
        }
    }
}

fn square_checked(m: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let n = m.len();
    let mut out = vec![vec![0i64; n]; n];
    for i in 0..n {
        for k in 0..n {
            if m[i][k] == 0 {
                continue;
            }
            for j in 0..n {
                let p = m[i][k].checked_mul(m[k][j])?;
                out[i][j] = out[i][j].checked_add(p)?;
            }
        }
    }
    Some(out)
}

fn to_big(m: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

fn square_big(m: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = m.len();
    let mut out = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if m[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                out[i][j] += &m[i][k] * &m[k][j];
            }
        }
    }
    out
}

/// Natural log of a positive integer of any size, from its top 64 bits.
fn ln_big(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 64 {
        let v: u64 = x.magnitude().iter_u64_digits().next().unwrap_or(0);
        return (v as f64).ln();
    }
    let drop = bits - 64;
    let top: u64 = (x.magnitude() >> drop).iter_u64_digits().next().unwrap_or(0);
    (top as f64).ln() + drop as f64 * std::f64::consts::LN_2
}

fn is_signed_identity(m: &[Vec<i64>]) -> bool {
    let n = m.len();
    [1i64, -1].iter().any(|&s| {
        (0..n).all(|i| (0..n).all(|j| m[i][j] == if i == j { s } else { 0 }))
    })
}

/// Spectral radius by repeated squaring, `ρ = lim ‖M^{2^k}‖_max^{1/2^k}`.
///
/// Stops once successive estimates differ by less than `tol` on two
/// consecutive squarings, or after `2^24`-th powers. A single agreement is
/// not enough: for `[[1, 1], [0, 1]]` the estimates at `k = 1, 2` coincide
/// at `√2`. Returns exactly `1` when `M = ±I` or `M² = I`. Entries
/// move to arbitrary precision on overflow, so cost grows with `ρ`.
pub fn spectral_radius(m: &K0Matrix, tol: f64) -> Result<f64> {
    let rows = &m.0;
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch("spectral radius of a non-square matrix".into()));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Input(format!("tolerance must be positive, got {tol}")));
    }
    if n == 0 {
        return Ok(0.0);
    }
    if is_signed_identity(rows) {
        return Ok(1.0);
    }
    let mut power = Power::Small(rows.clone());
    let mut estimate = power.ln_max_norm().exp();
    let mut settled = false;
    for k in 1..=MAX_SQUARINGS {
        power = power.square();
        if k == 1 {
            if let Power::Small(sq) = &power {
                if is_signed_identity(sq) && sq[0][0] == 1 {
                    return Ok(1.0);
                }
            }
        }
        let next = (power.ln_max_norm() / f64::from(1u32 << k)).exp();
        let small = (next - estimate).abs() < tol;
        if small && settled {
            return Ok(next);
        }
        settled = small;
        estimate = next;
    }
    Ok(estimate)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rho(rows: Vec<Vec<i64>>) -> f64 {
        spectral_radius(&K0Matrix(rows), 1e-9).unwrap()
    }

    #[test]
    fn exact_cases() {
        assert_eq!(rho(vec![vec![1, 0], vec![0, 1]]), 1.0);
        assert_eq!(rho(vec![vec![-1, 0], vec![0, -1]]), 1.0);
        assert_eq!(rho(vec![vec![0, 1], vec![1, 0]]), 1.0);
        assert_eq!(rho(vec![vec![0, 0], vec![0, 0]]), 0.0);
    }

    #[test]
    fn diagonal_and_fibonacci() {
        assert!((rho(vec![vec![2, 0], vec![0, 1]]) - 2.0).abs() < 1e-9);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        // slow 2^{−k} convergence; the cap at k = 24 leaves ~1e−8
        assert!((rho(vec![vec![1, 1], vec![1, 0]]) - phi).abs() < 1e-7);
    }

    #[test]
    fn jordan_block_tends_to_one() {
        let r = rho(vec![vec![1, 1], vec![0, 1]]);
        assert!((r - 1.0).abs() < 1e-5, "{r}");
    }

    #[test]
    fn overflow_escalates() {
        let r = rho(vec![vec![3, 1], vec![0, 2]]);
        assert!((r - 3.0).abs() < 1e-6, "{r}");
        let big = BigInt::from(3).pow(200u32);
        assert!((ln_big(&big) - 200.0 * 3f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(spectral_radius(&K0Matrix(vec![vec![1, 2]]), 1e-9).is_err());
        assert!(spectral_radius(&K0Matrix(vec![vec![1]]), 0.0).is_err());
    }
}
