//! Finite graded-category presentations: objects, graded Hom bases and a
//! composition table over an exact field.

mod builtin;
pub(crate) mod pobject;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{Field, Scalar};

pub use builtin::{builtin_model, BUILTIN_MODELS};
pub use pobject::{infer_p_object, p_object_check, PObjectCertificate, PObjectFailure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObjectId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HomId(pub usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomBasisElement {
    pub name: String,
    pub src: ObjectId,
    pub dst: ObjectId,
    pub degree: i64,
}

/// A linear combination of Hom basis elements. Zero coefficients are never
/// stored, so the empty combination is the zero morphism.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LinComb(BTreeMap<HomId, Scalar>);

impl LinComb {
    pub fn zero() -> Self {
        LinComb(BTreeMap::new())
    }

    pub fn basis(h: HomId, field: Field) -> Self {
        Self::term(h, field.one())
    }

    pub fn term(h: HomId, c: Scalar) -> Self {
        let mut l = Self::zero();
        l.add_term(h, &c);
        l
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (HomId, &Scalar)> {
        self.0.iter().map(|(&h, c)| (h, c))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, h: HomId) -> Option<&Scalar> {
        self.0.get(&h)
    }

    pub fn add_term(&mut self, h: HomId, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.0.get_mut(&h) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.0.remove(&h);
                }
            }
            None => {
                self.0.insert(h, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, other: &LinComb, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (h, v) in other.terms() {
            self.add_term(h, &(v * c));
        }
    }

    pub fn add(&mut self, other: &LinComb) {
        for (h, v) in other.terms() {
            self.add_term(h, v);
        }
    }

    pub fn scaled(&self, c: &Scalar) -> LinComb {
        if c.is_zero() {
            return LinComb::zero();
        }
        LinComb(self.0.iter().map(|(&h, v)| (h, v * c)).collect())
    }

    pub fn neg(&self) -> LinComb {
        LinComb(self.0.iter().map(|(&h, v)| (h, -v)).collect())
    }
}

/// A finite graded category presented by generators: the stand-in for a
/// derived category at desk scale.
#[derive(Clone, Debug)]
pub struct GradedCategoryPresentation {
    field: Field,
    objects: Vec<String>,
    homs: Vec<HomBasisElement>,
    identities: Vec<HomId>,
    /// `(g, f) ↦ g∘f`, only nonzero products.
    compositions: BTreeMap<(HomId, HomId), LinComb>,
    spaces: HashMap<(ObjectId, ObjectId, i64), Vec<HomId>>,
    position: Vec<usize>,
}

impl PartialEq for GradedCategoryPresentation {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.objects == other.objects
            && self.homs == other.homs
            && self.identities == other.identities
            && self.compositions == other.compositions
    }
}

impl Eq for GradedCategoryPresentation {}

impl GradedCategoryPresentation {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjectId> {
        (0..self.objects.len()).map(ObjectId)
    }

    pub fn object_name(&self, o: ObjectId) -> &str {
        &self.objects[o.0]
    }

    pub fn object_by_name(&self, name: &str) -> Result<ObjectId> {
        self.objects
            .iter()
            .position(|n| n == name)
            .map(ObjectId)
            .ok_or_else(|| Error::UnknownObject(name.to_string()))
    }

    pub fn homs(&self) -> &[HomBasisElement] {
        &self.homs
    }

    pub fn hom(&self, h: HomId) -> &HomBasisElement {
        &self.homs[h.0]
    }

    pub fn hom_by_name(&self, name: &str) -> Result<HomId> {
        self.homs
            .iter()
            .position(|h| h.name == name)
            .map(HomId)
            .ok_or_else(|| Error::UnknownHom(name.to_string()))
    }

    pub fn identity(&self, o: ObjectId) -> HomId {
        self.identities[o.0]
    }

    /// Basis of `Hom^degree(src, dst)`.
    pub fn hom_basis(&self, src: ObjectId, dst: ObjectId, degree: i64) -> &[HomId] {
        self.spaces
            .get(&(src, dst, degree))
            .map_or(&[], Vec::as_slice)
    }

    /// Index of `h` inside its `Hom^deg(src, dst)` basis.
    pub fn position_in_space(&self, h: HomId) -> usize {
        self.position[h.0]
    }

    /// Every `(src, dst, degree)` with a nonempty basis.
    pub fn hom_degrees(&self, src: ObjectId, dst: ObjectId) -> Vec<i64> {
        let mut d: Vec<i64> = self
            .homs
            .iter()
            .filter(|h| h.src == src && h.dst == dst)
            .map(|h| h.degree)
            .collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Raw table entry for basis elements; zero when not listed.
    pub fn compose_basis(&self, g: HomId, f: HomId) -> Option<&LinComb> {
        self.compositions.get(&(g, f))
    }

    pub fn compositions(&self) -> impl Iterator<Item = ((HomId, HomId), &LinComb)> {
        self.compositions.iter().map(|(&k, v)| (k, v))
    }

    /// `g ∘ f`, extended bilinearly from the table.
    pub fn compose(&self, g: &LinComb, f: &LinComb) -> LinComb {
        let mut out = LinComb::zero();
        for (gh, gc) in g.terms() {
            for (fh, fc) in f.terms() {
                if let Some(prod) = self.compositions.get(&(gh, fh)) {
                    out.add_scaled(prod, &(gc * fc));
                }
            }
        }
        out
    }

    /// Checks degree additivity, the identity laws and associativity.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let name = |h: HomId| self.homs[h.0].name.clone();

        for (&(g, f), result) in &self.compositions {
            let (hg, hf) = (&self.homs[g.0], &self.homs[f.0]);
            if hf.dst != hg.src {
                violations.push(Violation::NotComposable { g: name(g), f: name(f) });
                continue;
            }
            for (t, _) in result.terms() {
                let ht = &self.homs[t.0];
                if ht.src != hf.src || ht.dst != hg.dst || ht.degree != hg.degree + hf.degree {
                    violations.push(Violation::DegreeAdditivity {
                        g: name(g),
                        f: name(f),
                        term: name(t),
                    });
                }
            }
        }

        for (i, &id) in self.identities.iter().enumerate() {
            let h = &self.homs[id.0];
            if h.src.0 != i || h.dst.0 != i || h.degree != 0 {
                violations.push(Violation::BadIdentity {
                    object: self.objects[i].clone(),
                    hom: h.name.clone(),
                });
            }
        }

        let one = self.field.one();
        for (fi, f) in self.homs.iter().enumerate() {
            let fl = LinComb::basis(HomId(fi), self.field);
            let left = self.compose(&LinComb::basis(self.identities[f.dst.0], self.field), &fl);
            let right = self.compose(&fl, &LinComb::basis(self.identities[f.src.0], self.field));
            if left != LinComb::term(HomId(fi), one.clone()) {
                violations.push(Violation::LeftIdentity { f: f.name.clone() });
            }
            if right != LinComb::term(HomId(fi), one.clone()) {
                violations.push(Violation::RightIdentity { f: f.name.clone() });
            }
        }

        for (fi, f) in self.homs.iter().enumerate() {
            for (gi, g) in self.homs.iter().enumerate() {
                if g.src != f.dst {
                    continue;
                }
                for (hi, h) in self.homs.iter().enumerate() {
                    if h.src != g.dst {
                        continue;
                    }
                    let (fl, gl, hl) = (
                        LinComb::basis(HomId(fi), self.field),
                        LinComb::basis(HomId(gi), self.field),
                        LinComb::basis(HomId(hi), self.field),
                    );
                    let lhs = self.compose(&self.compose(&hl, &gl), &fl);
                    let rhs = self.compose(&hl, &self.compose(&gl, &fl));
                    if lhs != rhs {
                        violations.push(Violation::Associativity {
                            h: h.name.clone(),
                            g: g.name.clone(),
                            f: f.name.clone(),
                        });
                    }
                }
            }
        }
        ValidationReport { violations }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NotComposable { g: String, f: String },
    DegreeAdditivity { g: String, f: String, term: String },
    BadIdentity { object: String, hom: String },
    LeftIdentity { f: String },
    RightIdentity { f: String },
    Associativity { h: String, g: String, f: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotComposable { g, f } => {
                write!(fm, "composition {g}∘{f} listed but {f} does not end where {g} starts")
            }
            Violation::DegreeAdditivity { g, f, term } => {
                write!(fm, "degree additivity: {g}∘{f} has term {term} of the wrong degree or endpoints")
            }
            Violation::BadIdentity { object, hom } => {
                write!(fm, "identity of {object} is {hom}, which is not a degree-0 endomorphism")
            }
            Violation::LeftIdentity { f } => write!(fm, "identity law: id∘{f} ≠ {f}"),
            Violation::RightIdentity { f } => write!(fm, "identity law: {f}∘id ≠ {f}"),
            Violation::Associativity { h, g, f } => {
                write!(fm, "associativity: ({h}∘{g})∘{f} ≠ {h}∘({g}∘{f})")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        match self.violations.first() {
            None => Ok(()),
            Some(v) => Err(Error::InvalidPresentation(format!(
                "{v} ({} violation(s) in total)",
                self.violations.len()
            ))),
        }
    }
}

/// Incremental construction of a presentation.
///
/// Products with an identity that are not listed explicitly are filled in
/// from the identity laws; every other unlisted product is zero.
#[derive(Clone, Debug)]
pub struct PresentationBuilder {
    field: Field,
    objects: Vec<String>,
    homs: Vec<HomBasisElement>,
    identities: Vec<Option<HomId>>,
    compositions: BTreeMap<(HomId, HomId), LinComb>,
}

impl PresentationBuilder {
    pub fn new(field: Field) -> Self {
        PresentationBuilder {
            field,
            objects: Vec::new(),
            homs: Vec::new(),
            identities: Vec::new(),
            compositions: BTreeMap::new(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn object(&mut self, name: &str) -> Result<ObjectId> {
        if self.objects.iter().any(|o| o == name) {
            return Err(Error::InvalidPresentation(format!("duplicate object `{name}`")));
        }
        self.objects.push(name.to_string());
        self.identities.push(None);
        Ok(ObjectId(self.objects.len() - 1))
    }

    pub fn object_id(&self, name: &str) -> Result<ObjectId> {
        self.objects
            .iter()
            .position(|o| o == name)
            .map(ObjectId)
            .ok_or_else(|| Error::UnknownObject(name.to_string()))
    }

    pub fn hom_id(&self, name: &str) -> Result<HomId> {
        self.homs
            .iter()
            .position(|h| h.name == name)
            .map(HomId)
            .ok_or_else(|| Error::UnknownHom(name.to_string()))
    }

    pub fn hom(&mut self, name: &str, src: ObjectId, dst: ObjectId, degree: i64) -> Result<HomId> {
        if self.homs.iter().any(|h| h.name == name) {
            return Err(Error::InvalidPresentation(format!("duplicate morphism `{name}`")));
        }
        if src.0 >= self.objects.len() || dst.0 >= self.objects.len() {
            return Err(Error::InvalidPresentation(format!("morphism `{name}` has an unknown endpoint")));
        }
        self.homs.push(HomBasisElement {
            name: name.to_string(),
            src,
            dst,
            degree,
        });
        Ok(HomId(self.homs.len() - 1))
    }

    /// Declares `hom` to be the identity of `object`.
    pub fn identity(&mut self, object: ObjectId, hom: HomId) -> Result<()> {
        if object.0 >= self.objects.len() || hom.0 >= self.homs.len() {
            return Err(Error::InvalidPresentation("identity refers to unknown entries".into()));
        }
        self.identities[object.0] = Some(hom);
        Ok(())
    }

    /// Adds an object together with a degree-0 identity named `id_<name>`.
    pub fn object_with_identity(&mut self, name: &str) -> Result<ObjectId> {
        let o = self.object(name)?;
        let id = self.hom(&format!("id_{name}"), o, o, 0)?;
        self.identity(o, id)?;
        Ok(o)
    }

    /// Records `g ∘ f = result`.
    pub fn compose(&mut self, g: HomId, f: HomId, result: LinComb) -> Result<()> {
        if g.0 >= self.homs.len() || f.0 >= self.homs.len() || result.terms().any(|(h, _)| h.0 >= self.homs.len()) {
            return Err(Error::InvalidPresentation("composition refers to unknown morphisms".into()));
        }
        if result.terms().any(|(_, c)| c.field() != self.field) {
            return Err(Error::InvalidPresentation("composition coefficient from another field".into()));
        }
        if self.compositions.insert((g, f), result).is_some() {
            return Err(Error::InvalidPresentation(format!(
                "composition {}∘{} listed twice",
                self.homs[g.0].name, self.homs[f.0].name
            )));
        }
        Ok(())
    }

    pub fn build(self) -> Result<GradedCategoryPresentation> {
        let mut identities = Vec::with_capacity(self.objects.len());
        for (i, id) in self.identities.iter().enumerate() {
            identities.push(id.ok_or_else(|| {
                Error::InvalidPresentation(format!("object `{}` has no identity", self.objects[i]))
            })?);
        }
        let mut compositions = self.compositions;
        for (fi, f) in self.homs.iter().enumerate() {
            let fl = LinComb::basis(HomId(fi), self.field);
            compositions.entry((identities[f.dst.0], HomId(fi))).or_insert_with(|| fl.clone());
            compositions.entry((HomId(fi), identities[f.src.0])).or_insert(fl);
        }
        compositions.retain(|_, v| !v.is_zero());

        let mut spaces: HashMap<(ObjectId, ObjectId, i64), Vec<HomId>> = HashMap::new();
        let mut position = Vec::with_capacity(self.homs.len());
        for (i, h) in self.homs.iter().enumerate() {
            let space = spaces.entry((h.src, h.dst, h.degree)).or_default();
            position.push(space.len());
            space.push(HomId(i));
        }
        Ok(GradedCategoryPresentation {
            field: self.field,
            objects: self.objects,
            homs: self.homs,
            identities,
            compositions,
            spaces,
            position,
        })
    }

    pub fn build_validated(self) -> Result<GradedCategoryPresentation> {
        let p = self.build()?;
        p.validate().into_result()?;
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn local_p1_builder() -> (PresentationBuilder, HomId) {
        let mut b = PresentationBuilder::new(Field::Rational);
        let e = b.object_with_identity("E").unwrap();
        let h = b.hom("h", e, e, 2).unwrap();
        (b, h)
    }

    #[test]
    fn degree_violation_is_reported() {
        let mut b = PresentationBuilder::new(Field::Rational);
        let e = b.object_with_identity("E").unwrap();
        let h = b.hom("h", e, e, 2).unwrap();
        let k = b.hom("k", e, e, 3).unwrap();
        // h∘h should have degree 4, k has degree 3
        b.compose(h, h, LinComb::basis(k, Field::Rational)).unwrap();
        let report = b.build().unwrap().validate();
        assert!(report.violations.contains(&Violation::DegreeAdditivity {
            g: "h".into(),
            f: "h".into(),
            term: "k".into()
        }));
    }

    #[test]
    fn associativity_violation_is_reported() {
        // E with h (deg 2), a (deg 4), b (deg 6): h∘h = a, h∘a = 0 but a∘h = b,
        // so (h∘h)∘h = b while h∘(h∘h) = 0.
        let (mut b, h) = local_p1_builder();
        let e = b.object_id("E").unwrap();
        let a = b.hom("a", e, e, 4).unwrap();
        let c = b.hom("b", e, e, 6).unwrap();
        let q = Field::Rational;
        b.compose(h, h, LinComb::basis(a, q)).unwrap();
        b.compose(a, h, LinComb::basis(c, q)).unwrap();
        let report = b.build().unwrap().validate();
        assert!(report.violations.contains(&Violation::Associativity {
            h: "h".into(),
            g: "h".into(),
            f: "h".into()
        }));
        assert!(report.clone().into_result().is_err());
    }

    #[test]
    fn identity_laws_are_filled_in() {
        let (b, h) = local_p1_builder();
        let p = b.build_validated().unwrap();
        let e = p.object_by_name("E").unwrap();
        let id = LinComb::basis(p.identity(e), p.field());
        let hl = LinComb::basis(h, p.field());
        assert_eq!(p.compose(&id, &hl), hl);
        assert!(p.compose(&hl, &hl).is_zero());
    }

    #[test]
    fn wrong_identity_law_is_reported() {
        let (mut b, h) = local_p1_builder();
        let id = b.hom_id("id_E").unwrap();
        b.compose(id, h, LinComb::term(h, Field::Rational.from_i64(2))).unwrap();
        let report = b.build().unwrap().validate();
        assert!(report.violations.contains(&Violation::LeftIdentity { f: "h".into() }));
    }

    #[test]
    fn builder_rejects_duplicates_and_missing_identities() {
        let mut b = PresentationBuilder::new(Field::Rational);
        b.object("E").unwrap();
        assert!(b.object("E").is_err());
        assert!(b.clone().build().is_err());
        let e = b.object_id("E").unwrap();
        b.hom("x", e, e, 0).unwrap();
        assert!(b.hom("x", e, e, 1).is_err());
    }

    #[test]
    fn lincomb_cancellation() {
        let q = Field::Rational;
        let mut l = LinComb::basis(HomId(0), q);
        l.add_term(HomId(0), &q.from_i64(-1));
        assert!(l.is_zero());
        assert!(LinComb::basis(HomId(1), q).scaled(&q.zero()).is_zero());
    }
}
