//! Twisted complexes over a presentation: the engine's model of objects of a
//! triangulated category, with shifts, sums, cones, Hom complexes, minimal
//! models and K₀ classes.
//!
//! Conventions: `Hom^m(X[p], Y[q]) = Hom^{m+q−p}(X, Y)`, so a differential
//! entry from slot `(g_i, n_i)` to slot `(g_j, n_j)` is a combination of
//! basis morphisms `g_i → g_j` of degree `1 + n_j − n_i`. Compositions are
//! the raw table compositions; all signs live in [`shift`], [`cone`], the
//! Hom differential and [`tensor_cochain`].

mod blocks;
mod equivalence;
mod hom;
mod k0;
mod morphism;
mod reduce;

use std::collections::VecDeque;
use std::fmt;
use std::sync::Arc;

pub(crate) use blocks::Blocks;
pub use equivalence::{fingerprint, is_homotopy_equivalent, EquivalenceSearch, Fingerprint, Verdict};
pub use hom::{hom_complex, HomComplex};
pub use k0::{k0_class, K0Class};
pub use morphism::{cone, cone_inclusion, cone_projection, GradedMorphism};
pub use reduce::{is_contractible, minimal_model, reduce, Reduction};

use crate::error::{Error, Result};
use crate::linalg::VectorSpaceComplex;
use crate::presentation::{GradedCategoryPresentation, LinComb, ObjectId};

pub type Presentation = Arc<GradedCategoryPresentation>;

/// A shifted copy `object[shift]` of a presentation generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slot {
    pub object: ObjectId,
    pub shift: i64,
}

/// `(−1)^n`.
pub(crate) fn sign(n: i64) -> i64 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

#[derive(Clone)]
pub struct TwistedComplex {
    pres: Presentation,
    slots: Vec<Slot>,
    diff: Blocks,
}

impl PartialEq for TwistedComplex {
    fn eq(&self, other: &Self) -> bool {
        same_presentation(&self.pres, &other.pres) && self.slots == other.slots && self.diff == other.diff
    }
}

impl Eq for TwistedComplex {}

pub(crate) fn same_presentation(a: &Presentation, b: &Presentation) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl TwistedComplex {
    /// Builds and validates a complex from its nonzero differential entries.
    pub fn new(
        pres: Presentation,
        slots: Vec<Slot>,
        entries: Vec<((usize, usize), LinComb)>,
    ) -> Result<Self> {
        let mut diff = Blocks::zeros(slots.len(), slots.len());
        for ((i, j), v) in entries {
            if i >= slots.len() || j >= slots.len() {
                return Err(Error::Input(format!("differential entry ({i}, {j}) out of range")));
            }
            diff.set(i, j, v);
        }
        Self::from_blocks(pres, slots, diff)
    }

    pub(crate) fn from_blocks(pres: Presentation, slots: Vec<Slot>, diff: Blocks) -> Result<Self> {
        let x = TwistedComplex { pres, slots, diff };
        x.check_invariants()?;
        Ok(x)
    }

    /// The zero object.
    pub fn zero(pres: Presentation) -> Self {
        TwistedComplex {
            pres,
            slots: Vec::new(),
            diff: Blocks::zeros(0, 0),
        }
    }

    /// The generator `object[shift]` as a one-slot complex.
    pub fn generator(pres: Presentation, object: ObjectId, shift: i64) -> Self {
        TwistedComplex {
            pres,
            slots: vec![Slot { object, shift }],
            diff: Blocks::zeros(1, 1),
        }
    }

    pub fn generator_by_name(pres: Presentation, name: &str, shift: i64) -> Result<Self> {
        let o = pres.object_by_name(name)?;
        Ok(Self::generator(pres, o, shift))
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    /// Differential component from slot `i` to slot `j`.
    pub fn differential(&self, i: usize, j: usize) -> &LinComb {
        self.diff.get(i, j)
    }

    pub fn differential_entries(&self) -> impl Iterator<Item = (usize, usize, &LinComb)> {
        self.diff.nonzero()
    }

    /// Slots sorted, for multiset comparisons.
    pub fn slot_multiset(&self) -> Vec<Slot> {
        let mut s = self.slots.clone();
        s.sort();
        s
    }

    /// Degree discipline, one-sidedness and `δ∘δ = 0`.
    pub fn check_invariants(&self) -> Result<()> {
        self.check_degrees()?;
        if !is_one_sided(&self.diff) {
            return Err(Error::Invariant("differential is not one-sided (has a cycle)".into()));
        }
        let sq = Blocks::compose(&self.pres, &self.diff, &self.diff);
        if let Some((i, j, _)) = sq.nonzero().next() {
            return Err(Error::Invariant(format!(
                "δ∘δ ≠ 0 (component from slot {i} to slot {j})"
            )));
        }
        Ok(())
    }

    fn check_degrees(&self) -> Result<()> {
        check_entry_degrees(&self.pres, &self.slots, &self.slots, &self.diff, 1)
    }

    pub fn display_slots(&self) -> String {
        let parts: Vec<String> = self
            .slots
            .iter()
            .map(|s| format!("({},{})", self.pres.object_name(s.object), s.shift))
            .collect();
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" ")
        }
    }
}

impl fmt::Debug for TwistedComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TwistedComplex[{}", self.display_slots())?;
        for (i, j, v) in self.diff.nonzero() {
            let terms: Vec<String> = v
                .terms()
                .map(|(h, c)| format!("{c}·{}", self.pres.hom(h).name))
                .collect();
            write!(f, "; {i}→{j}: {}", terms.join("+"))?;
        }
        write!(f, "]")
    }
}

/// Every term of entry `(i, j)` must be a basis morphism
/// `src_i → tgt_j` of degree `degree + n_j − n_i`.
pub(crate) fn check_entry_degrees(
    p: &GradedCategoryPresentation,
    src: &[Slot],
    tgt: &[Slot],
    entries: &Blocks,
    degree: i64,
) -> Result<()> {
    for (i, j, v) in entries.nonzero() {
        let want = degree + tgt[j].shift - src[i].shift;
        for (h, c) in v.terms() {
            let b = p.hom(h);
            if b.src != src[i].object || b.dst != tgt[j].object || b.degree != want {
                return Err(Error::Invariant(format!(
                    "entry {i}→{j} uses {} of degree {}, expected a map {}→{} of degree {want}",
                    b.name,
                    b.degree,
                    p.object_name(src[i].object),
                    p.object_name(tgt[j].object)
                )));
            }
            if c.field() != p.field() {
                return Err(Error::Invariant("coefficient from another field".into()));
            }
        }
    }
    Ok(())
}

/// Kahn's algorithm on the graph of nonzero entries.
pub(crate) fn is_one_sided(diff: &Blocks) -> bool {
    let n = diff.rows();
    let mut indeg = vec![0usize; n];
    for (i, j, _) in diff.nonzero() {
        if i == j {
            return false;
        }
        indeg[j] += 1;
    }
    let mut queue: VecDeque<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
    let mut seen = 0;
    while let Some(i) = queue.pop_front() {
        seen += 1;
        for j in 0..n {
            if !diff.get(i, j).is_zero() {
                indeg[j] -= 1;
                if indeg[j] == 0 {
                    queue.push_back(j);
                }
            }
        }
    }
    seen == n
}

/// `X[n]`: every slot shifted by `n`, differential multiplied by `(−1)^n`.
pub fn shift(x: &TwistedComplex, n: i64) -> TwistedComplex {
    let c = x.pres.field().from_i64(sign(n));
    TwistedComplex {
        pres: x.pres.clone(),
        slots: x
            .slots
            .iter()
            .map(|s| Slot {
                object: s.object,
                shift: s.shift + n,
            })
            .collect(),
        diff: x.diff.scaled(&c),
    }
}

pub fn direct_sum(x: &TwistedComplex, y: &TwistedComplex) -> Result<TwistedComplex> {
    if !same_presentation(&x.pres, &y.pres) {
        return Err(Error::PresentationMismatch);
    }
    let n = x.len() + y.len();
    let mut diff = Blocks::zeros(n, n);
    x.diff.paste_into(&mut diff, 0, 0);
    y.diff.paste_into(&mut diff, x.len(), x.len());
    Ok(TwistedComplex {
        pres: x.pres.clone(),
        slots: x.slots.iter().chain(&y.slots).copied().collect(),
        diff,
    })
}

pub fn direct_sum_all<'a>(
    pres: Presentation,
    items: impl IntoIterator<Item = &'a TwistedComplex>,
) -> Result<TwistedComplex> {
    items
        .into_iter()
        .try_fold(TwistedComplex::zero(pres), |acc, x| direct_sum(&acc, x))
}

/// `V ⊗ X`: one copy of `X[−p]` per degree-`p` basis vector `v` of `V`, with
/// `d(v⊗x) = (dv)⊗x + (−1)^p v⊗δx`. Slots are ordered by basis vector
/// (degree-major), then by slot of `X`.
pub fn tensor_cochain(v: &VectorSpaceComplex, x: &TwistedComplex) -> Result<TwistedComplex> {
    let p = &x.pres;
    if v.field() != p.field() {
        return Err(Error::Input("vector-space complex over a different field".into()));
    }
    let n = x.len();
    // (degree, index within degree) for every basis vector, in order
    let mut vectors = Vec::new();
    for m in v.lo()..v.hi() {
        for k in 0..v.dim(m) {
            vectors.push((m, k));
        }
    }
    let offset = |m: i64, k: usize| -> usize {
        let before: usize = (v.lo()..m).map(|d| v.dim(d)).sum();
        (before + k) * n
    };
    let mut slots = Vec::with_capacity(vectors.len() * n);
    for &(m, _) in &vectors {
        slots.extend(x.slots.iter().map(|s| Slot {
            object: s.object,
            shift: s.shift - m,
        }));
    }
    let total = slots.len();
    let mut diff = Blocks::zeros(total, total);
    for &(m, k) in &vectors {
        let base = offset(m, k);
        x.diff
            .scaled(&p.field().from_i64(sign(m)))
            .paste_into(&mut diff, base, base);
        if let Some(d) = v.differential(m) {
            for r in 0..d.rows() {
                let c = d.get(r, k);
                if c.is_zero() {
                    continue;
                }
                let tbase = offset(m + 1, r);
                for (i, s) in x.slots.iter().enumerate() {
                    diff.set(base + i, tbase + i, LinComb::term(p.identity(s.object), c.clone()));
                }
            }
        }
    }
    TwistedComplex::from_blocks(p.clone(), slots, diff)
}
