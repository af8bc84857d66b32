use std::fmt;

use super::{check_entry_degrees, same_presentation, shift, sign, Blocks, Slot, TwistedComplex};
use crate::error::{Error, Result};
use crate::presentation::LinComb;

/// A degree-`m` map of twisted complexes. Entry `(i, j)` goes from source
/// slot `i` to target slot `j` and has degree `m + n^tgt_j − n^src_i`.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedMorphism {
    source: TwistedComplex,
    target: TwistedComplex,
    degree: i64,
    entries: Blocks,
    closed: bool,
}

impl GradedMorphism {
    pub fn new(
        source: TwistedComplex,
        target: TwistedComplex,
        degree: i64,
        entries: Vec<((usize, usize), LinComb)>,
    ) -> Result<Self> {
        let mut b = Blocks::zeros(source.len(), target.len());
        for ((i, j), v) in entries {
            if i >= source.len() || j >= target.len() {
                return Err(Error::Input(format!("morphism entry ({i}, {j}) out of range")));
            }
            b.set(i, j, v);
        }
        Self::from_blocks(source, target, degree, b)
    }

    pub(crate) fn from_blocks(
        source: TwistedComplex,
        target: TwistedComplex,
        degree: i64,
        entries: Blocks,
    ) -> Result<Self> {
        if !same_presentation(&source.pres, &target.pres) {
            return Err(Error::PresentationMismatch);
        }
        check_entry_degrees(&source.pres, &source.slots, &target.slots, &entries, degree)?;
        let mut f = GradedMorphism {
            source,
            target,
            degree,
            entries,
            closed: false,
        };
        f.closed = f.differential_blocks().is_zero();
        Ok(f)
    }

    pub fn identity(x: &TwistedComplex) -> Self {
        let mut b = Blocks::zeros(x.len(), x.len());
        let one = x.pres.field().one();
        for (i, s) in x.slots.iter().enumerate() {
            b.set(i, i, LinComb::term(x.pres.identity(s.object), one.clone()));
        }
        GradedMorphism {
            source: x.clone(),
            target: x.clone(),
            degree: 0,
            entries: b,
            closed: true,
        }
    }

    pub fn zero(source: &TwistedComplex, target: &TwistedComplex, degree: i64) -> Result<Self> {
        Self::from_blocks(
            source.clone(),
            target.clone(),
            degree,
            Blocks::zeros(source.len(), target.len()),
        )
    }

    pub fn source(&self) -> &TwistedComplex {
        &self.source
    }

    pub fn target(&self) -> &TwistedComplex {
        &self.target
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn entry(&self, i: usize, j: usize) -> &LinComb {
        self.entries.get(i, j)
    }

    pub(crate) fn blocks(&self) -> &Blocks {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_zero()
    }

    fn differential_blocks(&self) -> Blocks {
        let p = &self.source.pres;
        let left = Blocks::compose(p, &self.target.diff, &self.entries);
        let right = Blocks::compose(p, &self.entries, &self.source.diff);
        left.plus(&right, &p.field().from_i64(-sign(self.degree)))
    }

    /// `D(f) = δ_tgt∘f − (−1)^m f∘δ_src`, a map of degree `m + 1`.
    pub fn differential(&self) -> GradedMorphism {
        let b = self.differential_blocks();
        // D∘D = 0, so the result is always closed
        GradedMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            degree: self.degree + 1,
            entries: b,
            closed: true,
        }
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &GradedMorphism) -> Result<GradedMorphism> {
        if f.target.slots != self.source.slots || !same_presentation(&f.target.pres, &self.source.pres) {
            return Err(Error::Contract("composing morphisms with mismatched ends".into()));
        }
        let b = Blocks::compose(&self.source.pres, &self.entries, &f.entries);
        Self::from_blocks(f.source.clone(), self.target.clone(), f.degree + self.degree, b)
    }

    /// `self + c·other`.
    pub fn plus(&self, other: &GradedMorphism, c: i64) -> Result<GradedMorphism> {
        if self.source != other.source || self.target != other.target || self.degree != other.degree {
            return Err(Error::Contract("adding morphisms with different ends or degrees".into()));
        }
        let c = self.source.pres.field().from_i64(c);
        Self::from_blocks(
            self.source.clone(),
            self.target.clone(),
            self.degree,
            self.entries.plus(&other.entries, &c),
        )
    }
}

impl fmt::Debug for GradedMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.source.pres;
        write!(
            f,
            "GradedMorphism[deg {}, {} → {}",
            self.degree,
            self.source.display_slots(),
            self.target.display_slots()
        )?;
        for (i, j, v) in self.entries.nonzero() {
            let terms: Vec<String> = v.terms().map(|(h, c)| format!("{c}·{}", p.hom(h).name)).collect();
            write!(f, "; {i}→{j}: {}", terms.join("+"))?;
        }
        write!(f, "]")
    }
}

fn require_cone_input(f: &GradedMorphism) -> Result<()> {
    if f.degree != 0 {
        return Err(Error::Contract(format!("cone of a degree-{} map", f.degree)));
    }
    if !f.closed {
        return Err(Error::Contract("cone of a map that is not closed".into()));
    }
    Ok(())
}

/// `Cone(f: X → Y)`: slots of `X[1]` followed by slots of `Y`, with
/// differential `[[−δ_X, f], [0, δ_Y]]`.
pub fn cone(f: &GradedMorphism) -> Result<TwistedComplex> {
    require_cone_input(f)?;
    let x1 = shift(&f.source, 1);
    let (nx, ny) = (f.source.len(), f.target.len());
    let mut diff = Blocks::zeros(nx + ny, nx + ny);
    x1.diff.paste_into(&mut diff, 0, 0);
    f.entries.paste_into(&mut diff, 0, nx);
    f.target.diff.paste_into(&mut diff, nx, nx);
    let slots: Vec<Slot> = x1.slots.iter().chain(&f.target.slots).copied().collect();
    TwistedComplex::from_blocks(f.source.pres.clone(), slots, diff)
}

/// `Y → Cone(f)`.
pub fn cone_inclusion(f: &GradedMorphism) -> Result<GradedMorphism> {
    let c = cone(f)?;
    let nx = f.source.len();
    let id = GradedMorphism::identity(&f.target);
    let mut b = Blocks::zeros(f.target.len(), c.len());
    id.entries.paste_into(&mut b, 0, nx);
    GradedMorphism::from_blocks(f.target.clone(), c, 0, b)
}

/// `Cone(f) → X[1]`.
pub fn cone_projection(f: &GradedMorphism) -> Result<GradedMorphism> {
    let c = cone(f)?;
    let x1 = shift(&f.source, 1);
    let id = GradedMorphism::identity(&x1);
    let mut b = Blocks::zeros(c.len(), x1.len());
    id.entries.paste_into(&mut b, 0, 0);
    GradedMorphism::from_blocks(c, x1, 0, b)
}
