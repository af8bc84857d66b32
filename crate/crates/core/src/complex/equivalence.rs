use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::hom::HomComplex;
use super::morphism::{cone, GradedMorphism};
use super::reduce::{is_contractible, reduce};
use super::{same_presentation, TwistedComplex};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::linalg::{GradedDims, Scalar};

/// Hom-cohomology of a complex against every generator, in both directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fingerprint {
    /// `(H^*(hom(g, X)), H^*(hom(X, g)))` per presentation object `g`.
    pub per_generator: Vec<(GradedDims, GradedDims)>,
}

pub fn fingerprint(x: &TwistedComplex) -> Result<Fingerprint> {
    let p = x.presentation();
    let per_generator = p
        .objects()
        .map(|o| {
            let g = TwistedComplex::generator(p.clone(), o, 0);
            Ok((
                HomComplex::new(&g, x)?.cohomology_dims()?,
                HomComplex::new(x, &g)?.cohomology_dims()?,
            ))
        })
        .collect::<Result<_>>()?;
    Ok(Fingerprint { per_generator })
}

#[derive(Clone, Debug)]
pub enum Verdict {
    /// A closed degree-0 map `X → Y` whose cone is contractible.
    Equivalent(GradedMorphism),
    /// Description of an invariant that separates the two complexes.
    Distinct(String),
    Inconclusive,
}

impl Verdict {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Verdict::Equivalent(_))
    }

    pub fn is_distinct(&self) -> bool {
        matches!(self, Verdict::Distinct(_))
    }
}

#[derive(Clone, Copy, Debug)]
pub struct EquivalenceSearch {
    pub seed: u64,
    pub trials: usize,
    pub execution: Execution,
}

impl Default for EquivalenceSearch {
    fn default() -> Self {
        EquivalenceSearch {
            seed: 0x7717_57ed,
            trials: 64,
            execution: Execution::default(),
        }
    }
}

/// Searches for a homotopy equivalence `X → Y`.
///
/// Differing Hom-cohomology fingerprints prove the complexes distinct.
/// Otherwise the closed degree-0 maps between the minimal models are tried:
/// first a basis of them, then `trials` random combinations with small
/// integer coefficients drawn from a seeded generator.
pub fn is_homotopy_equivalent(
    x: &TwistedComplex,
    y: &TwistedComplex,
    search: &EquivalenceSearch,
) -> Result<Verdict> {
    if !same_presentation(x.presentation(), y.presentation()) {
        return Err(Error::PresentationMismatch);
    }
    let (rx, ry) = (reduce(x)?, reduce(y)?);
    let (fx, fy) = (fingerprint(&rx.minimal)?, fingerprint(&ry.minimal)?);
    if fx != fy {
        let p = x.presentation();
        let (o, (a, b)) = fx
            .per_generator
            .iter()
            .zip(&fy.per_generator)
            .enumerate()
            .find(|(_, (a, b))| a != b)
            .unwrap();
        let name = p.object_name(crate::presentation::ObjectId(o));
        let what = if a.0 != b.0 {
            format!("H^*(hom({name}, -)) is {} vs {}", a.0, b.0)
        } else {
            format!("H^*(hom(-, {name})) is {} vs {}", a.1, b.1)
        };
        return Ok(Verdict::Distinct(what));
    }

    let hom = HomComplex::new(&rx.minimal, &ry.minimal)?;
    let cycles = hom.cycles(0);
    let field = x.presentation().field();
    let mut candidates: Vec<Vec<Scalar>> = cycles.clone();
    if !cycles.is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(search.seed);
        for _ in 0..search.trials {
            let mut v = vec![field.zero(); cycles[0].len()];
            for c in &cycles {
                let k = field.from_i64(rng.random_range(-3..=3));
                for (a, b) in v.iter_mut().zip(c) {
                    *a += &(&k * b);
                }
            }
            candidates.push(v);
        }
    } else if rx.minimal.is_empty() && ry.minimal.is_empty() {
        candidates.push(Vec::new());
    }

    let found = search.execution.find_first(&candidates, |v| {
        let f = hom.morphism(0, v).ok()?;
        let c = cone(&f).ok()?;
        is_contractible(&c).ok()?.then_some(f)
    });
    let Some((_, f)) = found else {
        return Ok(Verdict::Inconclusive);
    };
    let witness = ry.from_minimal.after(&f)?.after(&rx.to_minimal)?;
    if !witness.is_closed() || !is_contractible(&cone(&witness)?)? {
        return Err(Error::Invariant("composed equivalence witness failed its check".into()));
    }
    Ok(Verdict::Equivalent(witness))
}
