use std::sync::Arc;

use super::{GradedCategoryPresentation, LinComb, PresentationBuilder};
use crate::error::{Error, Result};
use crate::linalg::Field;

pub const BUILTIN_MODELS: [&str; 6] = [
    "local-p1",
    "local-p2",
    "local-p3",
    "orthogonal-p1",
    "orthogonal-p2",
    "nonortho-p1",
];

/// Built-in presentations over ℚ.
///
/// * `local-pd`: one object `E` with `End(E) = k[h]/(h^{d+1})`, `deg h = 2`;
///   the powers are named `h`, `h2`, `h3`.
/// * `orthogonal-pd`: adds `B` with `End(B) = k` and no maps to or from `E`.
/// * `nonortho-p1`: adds `F` with `End(F) = k`, `Hom(E, F) = k·u` in degree 0
///   and `Hom(F, E) = 0`.
pub fn builtin_model(name: &str) -> Result<Arc<GradedCategoryPresentation>> {
    let unknown = || Error::Input(format!("unknown built-in model `{name}`"));
    let (family, d) = name.rsplit_once("-p").ok_or_else(unknown)?;
    let d: usize = d.parse().map_err(|_| unknown())?;
    let mut b = match (family, d) {
        ("local" | "orthogonal", 1..=3) | ("nonortho", 1) => local(d)?,
        _ => return Err(unknown()),
    };
    if family == "orthogonal" && d <= 2 {
        b.object_with_identity("B")?;
    } else if family == "orthogonal" {
        return Err(unknown());
    }
    if family == "nonortho" {
        let e = b.object_id("E")?;
        let f = b.object_with_identity("F")?;
        // u∘h lands in Hom^2(E, F) = 0, so the table needs no extra entries
        b.hom("u", e, f, 0)?;
    }
    Ok(Arc::new(b.build_validated()?))
}

fn local(d: usize) -> Result<PresentationBuilder> {
    let field = Field::Rational;
    let mut b = PresentationBuilder::new(field);
    let e = b.object_with_identity("E")?;
    let mut powers = Vec::new();
    for k in 1..=d {
        let name = if k == 1 { "h".to_string() } else { format!("h{k}") };
        powers.push(b.hom(&name, e, e, 2 * k as i64)?);
    }
    for i in 1..=d {
        for j in 1..=d {
            if i + j <= d {
                b.compose(powers[i - 1], powers[j - 1], LinComb::basis(powers[i + j - 1], field))?;
            }
        }
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_builtin_is_valid() {
        for name in BUILTIN_MODELS {
            let p = builtin_model(name).unwrap();
            assert!(p.validate().is_valid(), "{name}");
        }
    }

    #[test]
    fn unknown_names_are_rejected() {
        for name in ["local-p4", "orthogonal-p3", "nonortho-p2", "local", "x-p1", "local-p0"] {
            assert!(builtin_model(name).is_err(), "{name}");
        }
    }

    #[test]
    fn degree_zero_endomorphisms_are_scalars() {
        for name in BUILTIN_MODELS {
            let p = builtin_model(name).unwrap();
            for o in p.objects() {
                assert_eq!(p.hom_basis(o, o, 0), &[p.identity(o)], "{name}");
            }
        }
    }

    #[test]
    fn local_p2_endomorphisms() {
        let p = builtin_model("local-p2").unwrap();
        assert_eq!(p.object_count(), 1);
        let e = p.object_by_name("E").unwrap();
        let names: Vec<&str> = p
            .homs()
            .iter()
            .filter(|h| h.src == e && h.dst == e)
            .map(|h| h.name.as_str())
            .collect();
        assert_eq!(names, ["id_E", "h", "h2"]);
    }

    #[test]
    fn orthogonal_object_has_no_maps_to_e() {
        let p = builtin_model("orthogonal-p1").unwrap();
        let (e, b) = (p.object_by_name("E").unwrap(), p.object_by_name("B").unwrap());
        assert!(p.hom_degrees(e, b).is_empty());
        assert!(p.hom_degrees(b, e).is_empty());
    }

    #[test]
    fn nonortho_structure() {
        let p = builtin_model("nonortho-p1").unwrap();
        let (e, f) = (p.object_by_name("E").unwrap(), p.object_by_name("F").unwrap());
        assert_eq!(p.hom_degrees(e, f), [0]);
        assert!(p.hom_degrees(f, e).is_empty());
        let u = LinComb::basis(p.hom_by_name("u").unwrap(), p.field());
        let h = LinComb::basis(p.hom_by_name("h").unwrap(), p.field());
        assert!(p.compose(&u, &h).is_zero());
    }
}
