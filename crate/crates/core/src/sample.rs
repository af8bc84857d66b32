//! Seeded random twisted complexes, for property tests and benchmarks.

use rand::Rng;

use crate::complex::{cone, direct_sum, shift, GradedMorphism, HomComplex, Presentation, TwistedComplex};
use crate::error::Result;

/// Largest slot count [`random_complex`] lets a cone reach.
pub const MAX_SLOTS: usize = 8;

/// A random closed morphism `X → Y` of the given degree: a combination of
/// a cycle basis with coefficients in `−2..=2`.
pub fn random_closed_morphism<R: Rng>(
    x: &TwistedComplex,
    y: &TwistedComplex,
    degree: i64,
    rng: &mut R,
) -> Result<GradedMorphism> {
    let hom = HomComplex::new(x, y)?;
    let field = x.presentation().field();
    let cycles = hom.cycles(degree);
    let mut v = vec![field.zero(); hom.basis(degree).len()];
    for c in &cycles {
        let k = field.from_i64(rng.random_range(-2..=2));
        for (vi, ci) in v.iter_mut().zip(c) {
            *vi = &*vi + &(&k * ci);
        }
    }
    hom.morphism(degree, &v)
}

/// A random complex built from `depth` rounds of shifts, sums and cones of
/// closed degree-0 maps, starting from shifted generators.
pub fn random_complex<R: Rng>(p: &Presentation, depth: usize, rng: &mut R) -> Result<TwistedComplex> {
    let objects: Vec<_> = p.objects().collect();
    let gen = |rng: &mut R| {
        let o = objects[rng.random_range(0..objects.len())];
        TwistedComplex::generator(p.clone(), o, rng.random_range(-3..=3))
    };
    let mut x = gen(rng);
    for _ in 0..depth {
        let y = match rng.random_range(0..3) {
            0 => gen(rng),
            _ => random_complex(p, 0, rng)?,
        };
        x = match rng.random_range(0..4) {
            0 => shift(&x, rng.random_range(-2..=2)),
            1 if x.len() + y.len() <= MAX_SLOTS => direct_sum(&x, &y)?,
            _ if x.len() + y.len() <= MAX_SLOTS => {
                let (a, b) = if rng.random_bool(0.5) { (&x, &y) } else { (&y, &x) };
                cone(&random_closed_morphism(a, b, 0, rng)?)?
            }
            _ => x,
        };
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{builtin_model, BUILTIN_MODELS};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samples_are_valid_and_reproducible() {
        for name in BUILTIN_MODELS {
            let p = builtin_model(name).unwrap();
            let mut a = ChaCha8Rng::seed_from_u64(7);
            let mut b = ChaCha8Rng::seed_from_u64(7);
            for _ in 0..20 {
                let x = random_complex(&p, 4, &mut a).unwrap();
                x.check_invariants().unwrap();
                assert!(x.len() <= MAX_SLOTS);
                assert_eq!(x, random_complex(&p, 4, &mut b).unwrap());
            }
        }
    }

    #[test]
    fn random_morphisms_are_closed() {
        let p = builtin_model("local-p2").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let x = random_complex(&p, 3, &mut rng).unwrap();
            let y = random_complex(&p, 3, &mut rng).unwrap();
            for deg in -2..=2 {
                assert!(random_closed_morphism(&x, &y, deg, &mut rng).unwrap().is_closed());
            }
        }
    }
}
