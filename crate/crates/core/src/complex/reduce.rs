use super::morphism::GradedMorphism;
use super::{is_one_sided, Blocks, Slot, TwistedComplex};
use crate::error::{Error, Result};
use crate::linalg::ExactMatrix;
use crate::presentation::{GradedCategoryPresentation, LinComb, ObjectId};

/// A minimal model together with mutually inverse homotopy equivalences.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub minimal: TwistedComplex,
    /// `X → minimal`
    pub to_minimal: GradedMorphism,
    /// `minimal → X`
    pub from_minimal: GradedMorphism,
}

/// Gaussian elimination of invertible degree-0 differential entries.
///
/// Pairs are eliminated lowest source index first, then lowest target index.
/// Removing `φ = δ(a → b)` replaces every other entry `δ(i → j)` by
/// `δ(i → j) − δ(a → j)∘φ⁻¹∘δ(i → b)`.
pub fn reduce(x: &TwistedComplex) -> Result<Reduction> {
    let (minimal, track) = eliminate(x, true)?;
    let (pi, iota) = track.unwrap();
    let to_minimal = GradedMorphism::from_blocks(x.clone(), minimal.clone(), 0, pi)?;
    let from_minimal = GradedMorphism::from_blocks(minimal.clone(), x.clone(), 0, iota)?;
    if !to_minimal.is_closed() || !from_minimal.is_closed() {
        return Err(Error::Invariant("reduction witness is not closed".into()));
    }
    Ok(Reduction {
        minimal,
        to_minimal,
        from_minimal,
    })
}

/// [`reduce`] without the witnesses.
pub fn minimal_model(x: &TwistedComplex) -> Result<TwistedComplex> {
    Ok(eliminate(x, false)?.0)
}

pub fn is_contractible(x: &TwistedComplex) -> Result<bool> {
    Ok(minimal_model(x)?.is_empty())
}

type Witnesses = (Blocks, Blocks);

fn eliminate(x: &TwistedComplex, track: bool) -> Result<(TwistedComplex, Option<Witnesses>)> {
    let p = x.pres.clone();
    let field = p.field();
    let mut slots = x.slots.clone();
    let mut diff = x.diff.clone();
    let mut witnesses = track.then(|| {
        let id = GradedMorphism::identity(x);
        (id.blocks().clone(), id.blocks().clone())
    });
    let minus_one = field.from_i64(-1);

    while let Some((a, b, inv)) = find_invertible(&p, &slots, &diff) {
        let keep: Vec<usize> = (0..slots.len()).filter(|&k| k != a && k != b).collect();
        let mut next = diff.select(&keep, &keep);
        // t_i = φ⁻¹∘δ(i → b)
        let through: Vec<(usize, LinComb)> = keep
            .iter()
            .enumerate()
            .filter(|(_, &i)| !diff.get(i, b).is_zero())
            .map(|(ni, &i)| (ni, p.compose(&inv, diff.get(i, b))))
            .collect();
        for (ni, t) in &through {
            for (nj, &j) in keep.iter().enumerate() {
                let out = diff.get(a, j);
                if !out.is_zero() {
                    next.add_at(*ni, nj, &p.compose(out, t), &minus_one);
                }
            }
        }
        if !is_one_sided(&next) {
            return Err(Error::Invariant("one-sidedness lost during reduction".into()));
        }

        if let Some((pi, iota)) = witnesses.as_mut() {
            let n = slots.len();
            let mut pi_step = Blocks::zeros(n, keep.len());
            let mut iota_step = Blocks::zeros(keep.len(), n);
            for (nk, &k) in keep.iter().enumerate() {
                let id = LinComb::basis(p.identity(slots[k].object), field);
                pi_step.set(k, nk, id.clone());
                iota_step.set(nk, k, id);
            }
            for (nj, &j) in keep.iter().enumerate() {
                let out = diff.get(a, j);
                if !out.is_zero() {
                    pi_step.set(b, nj, p.compose(out, &inv).neg());
                }
            }
            for (ni, t) in &through {
                iota_step.set(*ni, a, t.neg());
            }
            *pi = Blocks::compose(&p, &pi_step, pi);
            *iota = Blocks::compose(&p, iota, &iota_step);
        }

        slots = keep.iter().map(|&k| slots[k]).collect();
        diff = next;
    }
    let minimal = TwistedComplex::from_blocks(p, slots, diff)?;
    Ok((minimal, witnesses))
}

fn find_invertible(
    p: &GradedCategoryPresentation,
    slots: &[Slot],
    diff: &Blocks,
) -> Option<(usize, usize, LinComb)> {
    for a in 0..slots.len() {
        for b in 0..slots.len() {
            if slots[b].shift + 1 != slots[a].shift {
                continue;
            }
            let phi = diff.get(a, b);
            if phi.is_zero() {
                continue;
            }
            if let Some(inv) = degree_zero_inverse(p, phi, slots[a].object, slots[b].object) {
                return Some((a, b, inv));
            }
        }
    }
    None
}

/// Two-sided inverse of `φ ∈ Hom^0(a, b)`, if any.
pub(crate) fn degree_zero_inverse(
    p: &GradedCategoryPresentation,
    phi: &LinComb,
    a: ObjectId,
    b: ObjectId,
) -> Option<LinComb> {
    let field = p.field();
    let id_a = p.identity(a);
    if a == b && p.hom_basis(a, a, 0) == [id_a] {
        let c = phi.coeff(id_a)?;
        return Some(LinComb::term(id_a, c.inv()?));
    }
    let candidates = p.hom_basis(b, a, 0);
    if candidates.is_empty() {
        return None;
    }
    let (end_a, end_b) = (p.hom_basis(a, a, 0), p.hom_basis(b, b, 0));
    let rows = end_a.len() + end_b.len();
    let mut m = ExactMatrix::zeros(field, rows, candidates.len());
    for (col, &psi) in candidates.iter().enumerate() {
        let psi = LinComb::basis(psi, field);
        for (h, c) in p.compose(&psi, phi).terms() {
            m.set(p.position_in_space(h), col, c.clone());
        }
        for (h, c) in p.compose(phi, &psi).terms() {
            m.set(end_a.len() + p.position_in_space(h), col, c.clone());
        }
    }
    let mut rhs = vec![field.zero(); rows];
    rhs[p.position_in_space(id_a)] = field.one();
    rhs[end_a.len() + p.position_in_space(p.identity(b))] = field.one();
    let x = m.solve(&rhs).ok()??;
    let mut inv = LinComb::zero();
    for (&psi, c) in candidates.iter().zip(&x) {
        inv.add_term(psi, c);
    }
    Some(inv)
}
