use std::fmt;

use super::{GradedCategoryPresentation, HomId, LinComb, ObjectId};
use crate::error::{Error, Result};
use crate::linalg::GradedDims;

/// Evidence that `End^*(E) ≅ k[h]/(h^{d+1})` with `deg h = 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PObjectCertificate {
    pub object: ObjectId,
    pub dim: u32,
    pub generator: HomId,
    /// `powers[k] = h^k` for `k = 0..=d+1`.
    pub powers: Vec<LinComb>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PObjectFailure {
    WrongGradedDimensions { expected: GradedDims, found: GradedDims },
    PowerVanishes { k: u32 },
    TopPowerNonzero { k: u32 },
}

impl fmt::Display for PObjectFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PObjectFailure::WrongGradedDimensions { expected, found } => {
                write!(f, "End^* has graded dimensions {found}, expected {expected}")
            }
            PObjectFailure::PowerVanishes { k } => write!(f, "h^{k} = 0"),
            PObjectFailure::TopPowerNonzero { k } => write!(f, "h^{k} ≠ 0"),
        }
    }
}

/// Graded dimensions of the endomorphism algebra read off the basis.
pub(crate) fn end_dims(p: &GradedCategoryPresentation, e: ObjectId) -> GradedDims {
    let mut g = GradedDims::new();
    for deg in p.hom_degrees(e, e) {
        g.add(deg, p.hom_basis(e, e, deg).len());
    }
    g
}

/// Decides whether `object` is a ℙ^d-object of the presentation.
///
/// The outer `Result` reports input errors; the inner one is the verdict.
pub fn p_object_check(
    p: &GradedCategoryPresentation,
    object: &str,
    d: u32,
) -> Result<Result<PObjectCertificate, PObjectFailure>> {
    let e = p.object_by_name(object)?;
    if d == 0 {
        return Err(Error::Input("ℙ^d-objects need d ≥ 1".into()));
    }
    let expected = GradedDims::from_pairs(&(0..=d as i64).map(|k| (2 * k, 1)).collect::<Vec<_>>());
    let found = end_dims(p, e);
    if found != expected {
        return Ok(Err(PObjectFailure::WrongGradedDimensions { expected, found }));
    }
    let h = p.hom_basis(e, e, 2)[0];
    let hl = LinComb::basis(h, p.field());
    let mut powers = vec![LinComb::basis(p.identity(e), p.field())];
    for k in 1..=d + 1 {
        let next = p.compose(&hl, powers.last().unwrap());
        if k <= d && next.is_zero() {
            return Ok(Err(PObjectFailure::PowerVanishes { k }));
        }
        if k == d + 1 && !next.is_zero() {
            return Ok(Err(PObjectFailure::TopPowerNonzero { k }));
        }
        powers.push(next);
    }
    Ok(Ok(PObjectCertificate {
        object: e,
        dim: d,
        generator: h,
        powers,
    }))
}

/// Reads `d` off the top degree of `End^*(E)` and runs [`p_object_check`].
pub fn infer_p_object(
    p: &GradedCategoryPresentation,
    object: &str,
) -> Result<Result<PObjectCertificate, PObjectFailure>> {
    let e = p.object_by_name(object)?;
    let top = end_dims(p, e).iter().last().map_or(0, |(m, _)| m);
    let d = (top / 2).max(1) as u32;
    p_object_check(p, object, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Field;
    use crate::presentation::{builtin_model, PresentationBuilder};

    #[test]
    fn local_models_are_p_objects() {
        for d in 1..=3u32 {
            let p = builtin_model(&format!("local-p{d}")).unwrap();
            let cert = p_object_check(&p, "E", d).unwrap().unwrap();
            assert_eq!(p.hom(cert.generator).degree, 2);
            assert_eq!(cert.powers.len(), d as usize + 2);
            assert!(cert.powers[d as usize].len() == 1);
            assert!(cert.powers[d as usize + 1].is_zero());
            for other in (1..=4u32).filter(|&x| x != d) {
                assert!(p_object_check(&p, "E", other).unwrap().is_err(), "d={d} d'={other}");
            }
            assert_eq!(infer_p_object(&p, "E").unwrap().unwrap(), cert);
        }
    }

    #[test]
    fn scalar_object_is_not_a_p_object() {
        let p = builtin_model("orthogonal-p1").unwrap();
        assert!(matches!(
            p_object_check(&p, "B", 1).unwrap(),
            Err(PObjectFailure::WrongGradedDimensions { .. })
        ));
        assert!(matches!(p_object_check(&p, "X", 1), Err(Error::UnknownObject(_))));
    }

    #[test]
    fn nilpotent_too_early_fails() {
        // dims match P^2 but h∘h = 0
        let mut b = PresentationBuilder::new(Field::Rational);
        let e = b.object_with_identity("E").unwrap();
        b.hom("h", e, e, 2).unwrap();
        b.hom("g", e, e, 4).unwrap();
        let p = b.build_validated().unwrap();
        assert_eq!(
            p_object_check(&p, "E", 2).unwrap(),
            Err(PObjectFailure::PowerVanishes { k: 2 })
        );
    }
}
