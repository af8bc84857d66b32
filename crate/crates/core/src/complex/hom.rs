use std::collections::HashMap;

use super::{same_presentation, sign, Blocks, TwistedComplex};
use super::morphism::GradedMorphism;
use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, GradedDims, Scalar, VectorSpaceComplex};
use crate::presentation::{HomId, LinComb};

/// The Hom complex between two twisted complexes, together with the basis
/// that identifies its vectors with graded morphisms.
///
/// The degree-`m` basis consists of triples `(i, j, b)`: source slot `i`,
/// target slot `j`, and a basis morphism `b` of degree `m + n_j − n_i`,
/// ordered lexicographically. The differential is
/// `D(f) = δ_Y∘f − (−1)^m f∘δ_X`.
#[derive(Clone, Debug)]
pub struct HomComplex {
    source: TwistedComplex,
    target: TwistedComplex,
    lo: i64,
    basis: Vec<Vec<(usize, usize, HomId)>>,
    index: HashMap<(usize, usize, HomId), usize>,
    complex: VectorSpaceComplex,
}

impl HomComplex {
    pub fn new(x: &TwistedComplex, y: &TwistedComplex) -> Result<Self> {
        if !same_presentation(&x.pres, &y.pres) {
            return Err(Error::PresentationMismatch);
        }
        let p = &x.pres;
        let mut elems: Vec<(i64, usize, usize, HomId)> = Vec::new();
        for (i, si) in x.slots.iter().enumerate() {
            for (j, sj) in y.slots.iter().enumerate() {
                for deg in p.hom_degrees(si.object, sj.object) {
                    let m = deg - sj.shift + si.shift;
                    for &b in p.hom_basis(si.object, sj.object, deg) {
                        elems.push((m, i, j, b));
                    }
                }
            }
        }
        elems.sort();
        let field = p.field();
        let (lo, hi) = match (elems.first(), elems.last()) {
            (Some(a), Some(b)) => (a.0, b.0),
            _ => {
                return Ok(HomComplex {
                    source: x.clone(),
                    target: y.clone(),
                    lo: 0,
                    basis: Vec::new(),
                    index: HashMap::new(),
                    complex: VectorSpaceComplex::zero(field),
                })
            }
        };
        let mut basis = vec![Vec::new(); (hi - lo + 1) as usize];
        let mut index = HashMap::with_capacity(elems.len());
        for (m, i, j, b) in elems {
            let slot = &mut basis[(m - lo) as usize];
            index.insert((i, j, b), slot.len());
            slot.push((i, j, b));
        }

        let mut diffs = Vec::new();
        for k in 0..basis.len().saturating_sub(1) {
            let m = lo + k as i64;
            let mut d = ExactMatrix::zeros(field, basis[k + 1].len(), basis[k].len());
            let koszul = field.from_i64(-sign(m));
            for (col, &(i, j, b)) in basis[k].iter().enumerate() {
                let bl = LinComb::basis(b, field);
                let add = |src: usize, tgt: usize, v: &LinComb, c: &Scalar, d: &mut ExactMatrix| {
                    for (h, coeff) in v.terms() {
                        let row = index[&(src, tgt, h)];
                        let cur = d.get(row, col) + &(coeff * c);
                        d.set(row, col, cur);
                    }
                };
                let one = field.one();
                for kk in 0..y.len() {
                    let dy = y.diff.get(j, kk);
                    if !dy.is_zero() {
                        add(i, kk, &p.compose(dy, &bl), &one, &mut d);
                    }
                }
                for l in 0..x.len() {
                    let dx = x.diff.get(l, i);
                    if !dx.is_zero() {
                        add(l, j, &p.compose(&bl, dx), &koszul, &mut d);
                    }
                }
            }
            diffs.push(d);
        }
        let dims = basis.iter().map(Vec::len).collect();
        let complex = VectorSpaceComplex::new(field, lo, dims, diffs)?;
        Ok(HomComplex {
            source: x.clone(),
            target: y.clone(),
            lo,
            basis,
            index,
            complex,
        })
    }

    pub fn complex(&self) -> &VectorSpaceComplex {
        &self.complex
    }

    pub fn into_complex(self) -> VectorSpaceComplex {
        self.complex
    }

    pub fn cohomology_dims(&self) -> Result<GradedDims> {
        self.complex.cohomology_dims()
    }

    pub fn basis(&self, degree: i64) -> &[(usize, usize, HomId)] {
        if degree < self.lo {
            return &[];
        }
        self.basis.get((degree - self.lo) as usize).map_or(&[], Vec::as_slice)
    }

    /// The degree-`m` morphism with coordinates `v`.
    pub fn morphism(&self, degree: i64, v: &[Scalar]) -> Result<GradedMorphism> {
        let basis = self.basis(degree);
        if v.len() != basis.len() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in a degree with {} basis elements",
                v.len(),
                basis.len()
            )));
        }
        let mut b = Blocks::zeros(self.source.len(), self.target.len());
        for (&(i, j, h), c) in basis.iter().zip(v) {
            b.add_at(i, j, &LinComb::basis(h, c.field()), c);
        }
        GradedMorphism::from_blocks(self.source.clone(), self.target.clone(), degree, b)
    }

    /// Coordinates of `f` in this basis.
    pub fn vector(&self, f: &GradedMorphism) -> Result<Vec<Scalar>> {
        let field = self.source.pres.field();
        let mut v = vec![field.zero(); self.basis(f.degree()).len()];
        for (i, j, e) in f.blocks().nonzero() {
            for (h, c) in e.terms() {
                let k = *self.index.get(&(i, j, h)).ok_or_else(|| {
                    Error::Contract("morphism does not belong to this Hom complex".into())
                })?;
                v[k] = c.clone();
            }
        }
        Ok(v)
    }

    /// Basis of the closed degree-`m` morphisms.
    pub fn cycles(&self, degree: i64) -> Vec<Vec<Scalar>> {
        let n = self.basis(degree).len();
        if n == 0 {
            return Vec::new();
        }
        match self.complex.differential(degree) {
            Some(d) => d.nullspace_basis(),
            None => {
                let field = self.source.pres.field();
                (0..n)
                    .map(|k| {
                        let mut v = vec![field.zero(); n];
                        v[k] = field.one();
                        v
                    })
                    .collect()
            }
        }
    }
}

/// Hom complex as a bare vector-space complex.
pub fn hom_complex(x: &TwistedComplex, y: &TwistedComplex) -> Result<VectorSpaceComplex> {
    Ok(HomComplex::new(x, y)?.into_complex())
}
