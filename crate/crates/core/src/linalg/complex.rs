use std::collections::BTreeMap;
use std::fmt;

use super::matrix::ExactMatrix;
use super::scalar::Field;
use crate::error::{Error, Result};

/// Dimension per degree; only nonzero degrees are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GradedDims(BTreeMap<i64, usize>);

impl GradedDims {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: &[(i64, usize)]) -> Self {
        let mut g = Self::new();
        for &(m, d) in pairs {
            g.add(m, d);
        }
        g
    }

    pub fn add(&mut self, degree: i64, dim: usize) {
        if dim > 0 {
            *self.0.entry(degree).or_insert(0) += dim;
        }
    }

    pub fn get(&self, degree: i64) -> usize {
        self.0.get(&degree).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, usize)> + '_ {
        self.0.iter().map(|(&m, &d)| (m, d))
    }

    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.iter()
            .map(|(m, d)| if m.rem_euclid(2) == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }

    /// `result[m] = self[m + n]`.
    pub fn shifted(&self, n: i64) -> Self {
        GradedDims(self.0.iter().map(|(&m, &d)| (m - n, d)).collect())
    }

    pub fn merged(&self, other: &GradedDims) -> Self {
        let mut g = self.clone();
        for (m, d) in other.iter() {
            g.add(m, d);
        }
        g
    }
}

impl fmt::Display for GradedDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(m, d)| format!("{m}:{d}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Bounded cochain complex of finite-dimensional vector spaces,
/// `C^lo → C^{lo+1} → … `. `differentials[k]` maps degree `lo + k` to
/// `lo + k + 1` and has shape `dims[k + 1] × dims[k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorSpaceComplex {
    field: Field,
    lo: i64,
    dims: Vec<usize>,
    differentials: Vec<ExactMatrix>,
}

impl VectorSpaceComplex {
    pub fn new(
        field: Field,
        lo: i64,
        dims: Vec<usize>,
        differentials: Vec<ExactMatrix>,
    ) -> Result<Self> {
        if differentials.len() != dims.len().saturating_sub(1) {
            return Err(Error::DimensionMismatch(format!(
                "{} degrees need {} differentials, got {}",
                dims.len(),
                dims.len().saturating_sub(1),
                differentials.len()
            )));
        }
        for (k, d) in differentials.iter().enumerate() {
            if d.rows() != dims[k + 1] || d.cols() != dims[k] || d.field() != field {
                return Err(Error::DimensionMismatch(format!(
                    "differential out of degree {} has shape {}x{}, expected {}x{}",
                    lo + k as i64,
                    d.rows(),
                    d.cols(),
                    dims[k + 1],
                    dims[k]
                )));
            }
        }
        Ok(VectorSpaceComplex {
            field,
            lo,
            dims,
            differentials,
        })
    }

    /// Complex with zero differential and the given graded dimensions.
    pub fn with_zero_differential(field: Field, dims: &GradedDims) -> Self {
        let (lo, hi) = match (dims.iter().next(), dims.iter().last()) {
            (Some((lo, _)), Some((hi, _))) => (lo, hi),
            _ => return Self::zero(field),
        };
        let dims: Vec<usize> = (lo..=hi).map(|m| dims.get(m)).collect();
        let differentials = dims
            .windows(2)
            .map(|w| ExactMatrix::zeros(field, w[1], w[0]))
            .collect();
        VectorSpaceComplex {
            field,
            lo,
            dims,
            differentials,
        }
    }

    pub fn zero(field: Field) -> Self {
        VectorSpaceComplex {
            field,
            lo: 0,
            dims: Vec::new(),
            differentials: Vec::new(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Highest degree, exclusive.
    pub fn hi(&self) -> i64 {
        self.lo + self.dims.len() as i64
    }

    pub fn dim(&self, degree: i64) -> usize {
        if degree < self.lo || degree >= self.hi() {
            0
        } else {
            self.dims[(degree - self.lo) as usize]
        }
    }

    pub fn dims(&self) -> GradedDims {
        let mut g = GradedDims::new();
        for (k, &d) in self.dims.iter().enumerate() {
            g.add(self.lo + k as i64, d);
        }
        g
    }

    /// Differential out of `degree`, or `None` if it maps between zero spaces
    /// outside the stored range.
    pub fn differential(&self, degree: i64) -> Option<&ExactMatrix> {
        if degree < self.lo {
            return None;
        }
        self.differentials.get((degree - self.lo) as usize)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn check_square_zero(&self) -> Result<()> {
        for (k, pair) in self.differentials.windows(2).enumerate() {
            if !pair[1].mul(&pair[0])?.is_zero() {
                return Err(Error::NotAComplex {
                    degree: self.lo + k as i64,
                });
            }
        }
        Ok(())
    }

    /// `dim H^m = dim ker d_m − rank d_{m−1}`.
    pub fn cohomology_dims(&self) -> Result<GradedDims> {
        self.check_square_zero()?;
        let ranks: Vec<usize> = self.differentials.iter().map(ExactMatrix::rank).collect();
        let mut out = GradedDims::new();
        for (k, &d) in self.dims.iter().enumerate() {
            let out_rank = ranks.get(k).copied().unwrap_or(0);
            let in_rank = if k > 0 { ranks[k - 1] } else { 0 };
            out.add(self.lo + k as i64, d - out_rank - in_rank);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const Q: Field = Field::Rational;

    #[test]
    fn zero_differential_cohomology_is_the_space() {
        let c = VectorSpaceComplex::with_zero_differential(Q, &GradedDims::from_pairs(&[(0, 1), (2, 1)]));
        assert_eq!(c.dims().get(1), 0);
        assert_eq!(c.cohomology_dims().unwrap(), GradedDims::from_pairs(&[(0, 1), (2, 1)]));
    }

    #[test]
    fn identity_differential_is_acyclic() {
        let c = VectorSpaceComplex::new(Q, 0, vec![2, 2], vec![ExactMatrix::identity(Q, 2)]).unwrap();
        assert!(c.cohomology_dims().unwrap().is_empty());
    }

    #[test]
    fn rejects_non_complex() {
        let one = ExactMatrix::identity(Q, 1);
        let c = VectorSpaceComplex::new(Q, 3, vec![1, 1, 1], vec![one.clone(), one]).unwrap();
        assert!(matches!(c.cohomology_dims(), Err(Error::NotAComplex { degree: 3 })));
    }

    #[test]
    fn rejects_bad_shapes() {
        let r = VectorSpaceComplex::new(Q, 0, vec![1, 2], vec![ExactMatrix::identity(Q, 1)]);
        assert!(r.is_err());
    }

    #[test]
    fn shifted_dims() {
        let g = GradedDims::from_pairs(&[(2, 1), (4, 1)]);
        assert_eq!(g.shifted(2), GradedDims::from_pairs(&[(0, 1), (2, 1)]));
        assert_eq!(g.to_string(), "{2:1, 4:1}");
    }

    // d_m = R K K^T where the columns of K span ker(d_{m-1}^T), so
    // K^T d_{m-1} = 0 and d_m d_{m-1} = 0.
    fn random_complex(seed: Vec<i64>, dims: Vec<usize>) -> VectorSpaceComplex {
        let mut it = seed.into_iter().cycle();
        let mut diffs: Vec<ExactMatrix> = Vec::new();
        for k in 0..dims.len() - 1 {
            let (src, dst) = (dims[k], dims[k + 1]);
            let mut raw = ExactMatrix::zeros(Q, dst, src);
            for r in 0..dst {
                for c in 0..src {
                    raw.set(r, c, Q.from_i64(it.next().unwrap()));
                }
            }
            let d = if let Some(prev) = diffs.last() {
                let ker = prev.transpose().nullspace_basis();
                if ker.is_empty() {
                    ExactMatrix::zeros(Q, dst, src)
                } else {
                    let kmat = ExactMatrix::from_rows(Q, (0..src).map(|r| ker.iter().map(|v| v[r].clone()).collect()).collect()).unwrap();
                    raw.mul(&kmat).unwrap().mul(&kmat.transpose()).unwrap()
                }
            } else {
                raw
            };
            diffs.push(d);
        }
        VectorSpaceComplex::new(Q, -1, dims, diffs).unwrap()
    }

    proptest! {
        #[test]
        fn euler_characteristic_is_preserved(
            seed in proptest::collection::vec(-2i64..=2, 1..40),
            dims in proptest::collection::vec(0usize..4, 2..5),
        ) {
            let c = random_complex(seed, dims);
            let h = c.cohomology_dims().unwrap();
            prop_assert_eq!(c.dims().euler_characteristic(), h.euler_characteristic());
        }
    }
}
