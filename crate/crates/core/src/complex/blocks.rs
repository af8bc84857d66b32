use crate::linalg::Scalar;
use crate::presentation::{GradedCategoryPresentation, LinComb};

/// Slot-indexed matrix of Hom combinations; `get(i, j)` is the component
/// from source slot `i` to target slot `j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Blocks {
    rows: usize,
    cols: usize,
    data: Vec<LinComb>,
}

impl Blocks {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Blocks {
            rows,
            cols,
            data: vec![LinComb::zero(); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &LinComb {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: LinComb) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: &LinComb, c: &Scalar) {
        self.data[i * self.cols + j].add_scaled(v, c);
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(LinComb::is_zero)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, &LinComb)> {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, v)| (k / self.cols, k % self.cols, v))
    }

    pub fn scaled(&self, c: &Scalar) -> Blocks {
        Blocks {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v.scaled(c)).collect(),
        }
    }

    pub fn plus(&self, other: &Blocks, c: &Scalar) -> Blocks {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            a.add_scaled(b, c);
        }
        out
    }

    /// `g ∘ f` for `f: a → b` (`|a| × |b|`) and `g: b → c`.
    pub fn compose(p: &GradedCategoryPresentation, g: &Blocks, f: &Blocks) -> Blocks {
        debug_assert_eq!(f.cols, g.rows);
        let mut out = Blocks::zeros(f.rows, g.cols);
        let one = p.field().one();
        for (i, j, fv) in f.nonzero() {
            for k in 0..g.cols {
                let gv = g.get(j, k);
                if !gv.is_zero() {
                    out.add_at(i, k, &p.compose(gv, fv), &one);
                }
            }
        }
        out
    }

    /// Keeps the listed rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Blocks {
        let mut out = Blocks::zeros(rows.len(), cols.len());
        for (ni, &i) in rows.iter().enumerate() {
            for (nj, &j) in cols.iter().enumerate() {
                out.set(ni, nj, self.get(i, j).clone());
            }
        }
        out
    }

    /// Places `self` at offset `(r0, c0)` inside `out`.
    pub fn paste_into(&self, out: &mut Blocks, r0: usize, c0: usize) {
        for (i, j, v) in self.nonzero() {
            out.set(r0 + i, c0 + j, v.clone());
        }
    }
}
