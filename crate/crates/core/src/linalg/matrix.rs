use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// Dense row-major matrix over an exact field.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        if rows.iter().flatten().any(|s| s.field() != field) {
            return Err(Error::Input("entry from a different field".into()));
        }
        Ok(ExactMatrix {
            field,
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        ExactMatrix {
            field,
            rows: rows.len(),
            cols,
            data: rows.iter().flat_map(|r| r.iter().map(|&v| field.from_i64(v))).collect(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.field, self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if !b.is_zero() {
                        let v = out.get(r, c) + &(a * b);
                        out.set(r, c, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect())
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn augment(&self, rhs: &ExactMatrix) -> Result<ExactMatrix> {
        if self.rows != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "augmenting {} rows with {} rows",
                self.rows, rhs.rows
            )));
        }
        let cols = self.cols + rhs.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(rhs.row(r));
        }
        Ok(ExactMatrix {
            field: self.field,
            rows: self.rows,
            cols,
            data,
        })
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of the right kernel `{v : M v = 0}`.
    pub fn nullspace_basis(&self) -> Vec<Vec<Scalar>> {
        let ech = self.echelon();
        let mut is_pivot = vec![false; self.cols];
        for &p in &ech.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut x = vec![self.field.zero(); self.cols];
                x[free] = self.field.one();
                ech.back_substitute(&mut x, None);
                x
            })
            .collect()
    }

    /// Some `x` with `M x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "{} equations, right-hand side of length {}",
                self.rows,
                b.len()
            )));
        }
        let rhs = ExactMatrix {
            field: self.field,
            rows: self.rows,
            cols: 1,
            data: b.to_vec(),
        };
        let ech = self.augment(&rhs)?.echelon();
        if ech.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![self.field.zero(); self.cols];
        ech.back_substitute(&mut x, Some(self.cols));
        debug_assert_eq!(self.mul_vec(&x)?, b);
        Ok(Some(x))
    }

    fn echelon(&self) -> Echelon {
        match self.field {
            Field::Rational => self.echelon_fraction_free(),
            Field::Prime(_) => self.echelon_field(),
        }
    }

    fn echelon_field(&self) -> Echelon {
        let mut a: Vec<Vec<Scalar>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let mut pivots = Vec::new();
        let mut k = 0;
        for c in 0..self.cols {
            let Some(p) = (k..self.rows).find(|&r| !a[r][c].is_zero()) else {
                continue;
            };
            a.swap(k, p);
            let inv = a[k][c].inv().unwrap();
            for r in k + 1..self.rows {
                if a[r][c].is_zero() {
                    continue;
                }
                let factor = &a[r][c] * &inv;
                for j in c..self.cols {
                    let v = &a[r][j] - &(&factor * &a[k][j]);
                    a[r][j] = v;
                }
            }
            pivots.push(c);
            k += 1;
            if k == self.rows {
                break;
            }
        }
        a.truncate(k);
        Echelon { rows: a, pivots }
    }

    /// Bareiss elimination on the row-wise integer scaling of the matrix.
    fn echelon_fraction_free(&self) -> Echelon {
        let mut a: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let lcm = row.iter().fold(BigInt::one(), |acc, s| acc.lcm(&s.to_ratio().1));
                row.iter()
                    .map(|s| {
                        let (n, d) = s.to_ratio();
                        n * (&lcm / d)
                    })
                    .collect()
            })
            .collect();
        let mut pivots = Vec::new();
        let mut prev = BigInt::one();
        let mut k = 0;
        for c in 0..self.cols {
            let Some(p) = (k..self.rows).find(|&r| !a[r][c].is_zero()) else {
                continue;
            };
            a.swap(k, p);
            for r in k + 1..self.rows {
                for j in c + 1..self.cols {
                    let num = &a[k][c] * &a[r][j] - &a[r][c] * &a[k][j];
                    debug_assert!((&num % &prev).is_zero(), "Bareiss division not exact");
                    a[r][j] = num / &prev;
                }
                a[r][c] = BigInt::zero();
            }
            prev = a[k][c].clone();
            pivots.push(c);
            k += 1;
            if k == self.rows {
                break;
            }
        }
        a.truncate(k);
        let rows = a
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|v| Scalar::Q(BigRational::from_integer(v)))
                    .collect()
            })
            .collect();
        Echelon { rows, pivots }
    }
}

/// Row echelon form: nonzero rows only, `pivots[i]` is the pivot column of
/// row `i`.
struct Echelon {
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Echelon {
    /// Fills pivot variables of `x` from the (already set) free variables.
    /// When `rhs_col` is given that column holds the right-hand side.
    fn back_substitute(&self, x: &mut [Scalar], rhs_col: Option<usize>) {
        for (row, &p) in self.rows.iter().zip(&self.pivots).rev() {
            let mut acc = match rhs_col {
                Some(c) => row[c].clone(),
                None => x[p].field().zero(),
            };
            for (c, xc) in x.iter().enumerate().skip(p + 1) {
                if !row[c].is_zero() && !xc.is_zero() {
                    acc -= &(&row[c] * xc);
                }
            }
            x[p] = &acc * &row[p].inv().unwrap();
        }
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(|s| s.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const Q: Field = Field::Rational;

    #[test]
    fn rank_examples() {
        assert_eq!(ExactMatrix::identity(Q, 2).rank(), 2);
        assert_eq!(ExactMatrix::zeros(Q, 3, 4).rank(), 0);
        assert_eq!(ExactMatrix::from_i64(Q, &[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(ExactMatrix::from_i64(Field::Prime(2), &[&[1, 1], &[1, -1]]).rank(), 1);
        assert_eq!(ExactMatrix::from_i64(Q, &[&[1, 1], &[1, -1]]).rank(), 2);
    }

    #[test]
    fn nullspace_examples() {
        assert!(ExactMatrix::identity(Q, 3).nullspace_basis().is_empty());
        assert_eq!(ExactMatrix::zeros(Q, 2, 2).nullspace_basis().len(), 2);
        let ns = ExactMatrix::from_i64(Q, &[&[1, 1]]).nullspace_basis();
        assert_eq!(ns.len(), 1);
        assert!(!ns[0][0].is_zero());
        assert_eq!(ns[0][0], -&ns[0][1]);
    }

    #[test]
    fn solve_examples() {
        let b = vec![Q.from_i64(3), Q.from_i64(-4)];
        assert_eq!(ExactMatrix::identity(Q, 2).solve(&b).unwrap(), Some(b));
        let x = ExactMatrix::from_i64(Q, &[&[1, 1]])
            .solve(&[Q.from_i64(2)])
            .unwrap()
            .unwrap();
        assert_eq!(&x[0] + &x[1], Q.from_i64(2));
        let m = ExactMatrix::from_i64(Q, &[&[1], &[1]]);
        assert_eq!(m.solve(&[Q.from_i64(0), Q.from_i64(1)]).unwrap(), None);
        assert!(matches!(m.solve(&[Q.from_i64(0)]), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn mul_dimension_mismatch() {
        let a = ExactMatrix::zeros(Q, 2, 3);
        assert!(a.mul(&a).is_err());
        assert!(a.augment(&ExactMatrix::zeros(Q, 3, 1)).is_err());
    }

    fn matrix_strategy() -> impl Strategy<Value = (Field, Vec<Vec<i64>>)> {
        (1usize..6, 1usize..6, prop_oneof![Just(Field::Rational), Just(Field::Prime(5))])
            .prop_flat_map(|(r, c, f)| {
                (
                    Just(f),
                    proptest::collection::vec(proptest::collection::vec(-3i64..=3, c), r),
                )
            })
    }

    fn build(f: Field, rows: &[Vec<i64>]) -> ExactMatrix {
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        ExactMatrix::from_i64(f, &refs)
    }

    proptest! {
        #[test]
        fn rank_equals_transpose_rank((f, rows) in matrix_strategy()) {
            let m = build(f, &rows);
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn nullspace_is_kernel((f, rows) in matrix_strategy()) {
            let m = build(f, &rows);
            let ns = m.nullspace_basis();
            prop_assert_eq!(ns.len(), m.cols() - m.rank());
            for v in &ns {
                prop_assert!(m.mul_vec(v).unwrap().iter().all(Scalar::is_zero));
            }
        }

        #[test]
        fn solve_is_verified_by_substitution((f, rows) in matrix_strategy(), seed in proptest::collection::vec(-3i64..=3, 6)) {
            let m = build(f, &rows);
            let b: Vec<Scalar> = (0..m.rows()).map(|i| f.from_i64(seed[i % seed.len()])).collect();
            if let Some(x) = m.solve(&b).unwrap() {
                prop_assert_eq!(m.mul_vec(&x).unwrap(), b);
            } else {
                // inconsistent: b is not in the column span
                let bm = ExactMatrix::from_rows(f, b.iter().map(|s| vec![s.clone()]).collect()).unwrap();
                prop_assert_eq!(m.augment(&bm).unwrap().rank(), m.rank() + 1);
            }
        }
    }
}
