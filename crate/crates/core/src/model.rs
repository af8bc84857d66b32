//! JSON model files.
//!
//! ```json
//! {
//!   "field": "Q",
//!   "objects": ["E"],
//!   "homs": [{"src": "E", "dst": "E", "name": "id_E", "degree": 0},
//!            {"src": "E", "dst": "E", "name": "h", "degree": 2}],
//!   "identities": {"E": "id_E"},
//!   "compositions": [{"g": "h", "f": "h", "result": []}]
//! }
//! ```
//!
//! `field` is `"Q"` or `"Fp:<prime>"`. Coefficients are JSON integers or
//! `"a/b"` strings. Hom names are global. Products with an identity follow
//! from the identity laws and every other unlisted product is zero; the
//! completed table is validated before it is returned.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Field, Scalar};
use crate::presentation::{builtin_model, GradedCategoryPresentation, LinComb, PresentationBuilder};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub field: String,
    pub objects: Vec<String>,
    pub homs: Vec<HomEntry>,
    pub identities: BTreeMap<String, String>,
    #[serde(default)]
    pub compositions: Vec<CompositionEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomEntry {
    pub src: String,
    pub dst: String,
    pub name: String,
    pub degree: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompositionEntry {
    pub g: String,
    pub f: String,
    pub result: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub hom: String,
    pub coeff: Coeff,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coeff {
    Int(i64),
    Text(String),
}

impl Coeff {
    fn to_scalar(&self, field: Field) -> Result<Scalar> {
        match self {
            Coeff::Int(v) => Ok(field.from_i64(*v)),
            Coeff::Text(s) => field.parse_scalar(s),
        }
    }

    fn from_scalar(c: &Scalar) -> Coeff {
        let (num, den) = c.to_ratio();
        match (i64::try_from(&num), den == 1.into()) {
            (Ok(v), true) => Coeff::Int(v),
            _ if den == 1.into() => Coeff::Text(num.to_string()),
            _ => Coeff::Text(format!("{num}/{den}")),
        }
    }
}

impl ModelFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| {
            let (line, column) = (e.line(), e.column());
            let msg = e.to_string();
            let msg = msg.trim_end_matches(&format!(" at line {line} column {column}")).to_string();
            Error::Model(format!("line {line}, column {column}: {msg}"))
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("model files always serialize");
        s.push('\n');
        s
    }

    /// Builds and validates the presentation.
    pub fn to_presentation(&self) -> Result<GradedCategoryPresentation> {
        let field = Field::parse_spec(&self.field).map_err(|e| Error::Model(e.to_string()))?;
        let mut b = PresentationBuilder::new(field);
        for o in &self.objects {
            b.object(o)?;
        }
        for h in &self.homs {
            let (src, dst) = (b.object_id(&h.src)?, b.object_id(&h.dst)?);
            b.hom(&h.name, src, dst, h.degree)?;
        }
        for (o, h) in &self.identities {
            let (o, h) = (b.object_id(o)?, b.hom_id(h)?);
            b.identity(o, h)?;
        }
        for c in &self.compositions {
            let mut result = LinComb::zero();
            for t in &c.result {
                result.add_term(b.hom_id(&t.hom)?, &t.coeff.to_scalar(field)?);
            }
            let (g, f) = (b.hom_id(&c.g)?, b.hom_id(&c.f)?);
            b.compose(g, f, result)?;
        }
        b.build_validated()
    }

    /// The file for `p`, listing only products that do not involve an
    /// identity.
    pub fn from_presentation(p: &GradedCategoryPresentation) -> Self {
        let name = |o| p.object_name(o).to_string();
        let homs = p
            .homs()
            .iter()
            .map(|h| HomEntry {
                src: name(h.src),
                dst: name(h.dst),
                name: h.name.clone(),
                degree: h.degree,
            })
            .collect();
        let identities = p.objects().map(|o| (name(o), p.hom(p.identity(o)).name.clone())).collect();
        let is_identity = |h| p.objects().any(|o| p.identity(o) == h);
        let compositions = p
            .compositions()
            .filter(|((g, f), _)| !is_identity(*g) && !is_identity(*f))
            .map(|((g, f), v)| CompositionEntry {
                g: p.hom(g).name.clone(),
                f: p.hom(f).name.clone(),
                result: v
                    .terms()
                    .map(|(h, c)| Term {
                        hom: p.hom(h).name.clone(),
                        coeff: Coeff::from_scalar(c),
                    })
                    .collect(),
            })
            .collect();
        ModelFile {
            field: p.field().spec_string(),
            objects: p.objects().map(name).collect(),
            homs,
            identities,
            compositions,
        }
    }
}

pub fn parse_model_str(text: &str) -> Result<GradedCategoryPresentation> {
    ModelFile::from_json(text)?.to_presentation()
}

pub fn parse_model(path: &Path) -> Result<GradedCategoryPresentation> {
    parse_model_str(&std::fs::read_to_string(path)?)
}

pub fn emit_model(p: &GradedCategoryPresentation) -> String {
    ModelFile::from_presentation(p).to_json()
}

/// A built-in model name or a path to a model file.
pub fn load_model(name_or_path: &str) -> Result<Arc<GradedCategoryPresentation>> {
    match builtin_model(name_or_path) {
        Ok(p) => Ok(p),
        Err(_) if Path::new(name_or_path).exists() => Ok(Arc::new(parse_model(Path::new(name_or_path))?)),
        Err(_) => Err(Error::Input(format!("`{name_or_path}` is neither a built-in model nor a file"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::BUILTIN_MODELS;

    #[test]
    fn builtins_round_trip() {
        for name in BUILTIN_MODELS {
            let p = builtin_model(name).unwrap();
            let text = emit_model(&p);
            assert_eq!(parse_model_str(&text).unwrap(), *p, "{name}");
            assert_eq!(emit_model(&parse_model_str(&text).unwrap()), text);
        }
    }

    #[test]
    fn coefficients_and_fields() {
        let text = r#"{"field": "Fp:7", "objects": ["E"],
            "homs": [{"src": "E", "dst": "E", "name": "i", "degree": 0},
                     {"src": "E", "dst": "E", "name": "h", "degree": 2},
                     {"src": "E", "dst": "E", "name": "k", "degree": 4}],
            "identities": {"E": "i"},
            "compositions": [{"g": "h", "f": "h", "result": [{"hom": "k", "coeff": "3/2"}]}]}"#;
        let p = parse_model_str(text).unwrap();
        let (h, k) = (p.hom_by_name("h").unwrap(), p.hom_by_name("k").unwrap());
        let hh = p.compose_basis(h, h).unwrap();
        // 3/2 = 3·4 = 5 mod 7
        assert_eq!(hh.coeff(k), Some(&p.field().from_i64(5)));
        assert!(matches!(parse_model_str(&text.replace("Fp:7", "Fp:4")), Err(Error::Model(_))));
        assert!(matches!(parse_model_str(&text.replace("Fp:7", "R")), Err(Error::Model(_))));
    }

    #[test]
    fn diagnostics() {
        let bad_degree = r#"{"field": "Q", "objects": ["E"],
            "homs": [{"src": "E", "dst": "E", "name": "id_E", "degree": 0},
                     {"src": "E", "dst": "E", "name": "h", "degree": 2},
                     {"src": "E", "dst": "E", "name": "k", "degree": 3}],
            "identities": {"E": "id_E"},
            "compositions": [{"g": "h", "f": "h", "result": [{"hom": "k", "coeff": 1}]}]}"#;
        match parse_model_str(bad_degree) {
            Err(Error::InvalidPresentation(m)) => assert!(m.contains("degree additivity") && m.contains("h∘h"), "{m}"),
            other => panic!("{other:?}"),
        }
        match parse_model_str("{\n  \"field\": \"Q\",\n  \"objects\": [\"E\"\n}") {
            Err(Error::Model(m)) => assert_eq!(m, "line 4, column 1: expected `,` or `]`"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_model_str(&bad_degree.replace("\"k\", \"coeff\": 1", "\"zz\", \"coeff\": 1")),
            Err(Error::UnknownHom(_))
        ));
    }
}
