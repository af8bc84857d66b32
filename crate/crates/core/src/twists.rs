//! ℙ-twists, spherical twists and shifts acting on twisted complexes.

use std::fmt;

use crate::complex::{
    cone, direct_sum, hom_complex, k0_class, minimal_model, shift, tensor_cochain, GradedMorphism,
    HomComplex, K0Class, Presentation, TwistedComplex,
};
use crate::error::{Error, Result};
use crate::linalg::GradedDims;
use crate::presentation::pobject::end_dims;
use crate::presentation::{infer_p_object, p_object_check, LinComb, ObjectId, PObjectCertificate};

#[derive(Clone, Debug)]
pub enum TwistFunctor {
    /// `P_E` for a ℙ^d-object, using the certificate's degree-2 generator `h`.
    PTwist { pres: Presentation, cert: PObjectCertificate },
    /// `T_E` for an object with `End^*(E) = k ⊕ k[−sphere_dim]`.
    Spherical { pres: Presentation, object: ObjectId, sphere_dim: i64 },
    Shift(i64),
}

impl TwistFunctor {
    /// `P_E`; `dim = None` reads `d` off `End^*(E)`.
    pub fn p_twist(pres: Presentation, object: &str, dim: Option<u32>) -> Result<Self> {
        let verdict = match dim {
            Some(d) => p_object_check(&pres, object, d)?,
            None => infer_p_object(&pres, object)?,
        };
        let cert = verdict.map_err(|f| Error::Contract(format!("{object} is not a ℙ-object: {f}")))?;
        Ok(TwistFunctor::PTwist { pres, cert })
    }

    pub fn spherical(pres: Presentation, object: &str) -> Result<Self> {
        let e = pres.object_by_name(object)?;
        let dims = end_dims(&pres, e);
        let top = dims.iter().last().map_or(0, |(m, _)| m);
        if top <= 0 || dims != GradedDims::from_pairs(&[(0, 1), (top, 1)]) {
            return Err(Error::Contract(format!(
                "{object} is not spherical: End^* has graded dimensions {dims}"
            )));
        }
        Ok(TwistFunctor::Spherical {
            pres,
            object: e,
            sphere_dim: top,
        })
    }

    /// Applies the functor and returns the reduced result.
    pub fn apply(&self, x: &TwistedComplex) -> Result<TwistedComplex> {
        match self {
            TwistFunctor::PTwist { cert, .. } => {
                let c = PTwistConstruction::new(cert, x)?;
                minimal_model(&c.unreduced)
            }
            TwistFunctor::Spherical { object, .. } => {
                let ev = eval_map(*object, x)?;
                minimal_model(&cone(&ev)?)
            }
            TwistFunctor::Shift(n) => Ok(shift(x, *n)),
        }
    }

    /// `Φ(X), Φ²(X), …, Φ^n(X)`, each reduced before the next step.
    pub fn iterate(&self, x: &TwistedComplex, n: usize) -> Result<Vec<TwistedComplex>> {
        if n == 0 {
            return Err(Error::Input("iteration count must be at least 1".into()));
        }
        let mut out: Vec<TwistedComplex> = Vec::with_capacity(n);
        for _ in 0..n {
            let next = self.apply(out.last().unwrap_or(x))?;
            out.push(next);
        }
        Ok(out)
    }

    /// Action on the lattice of generator classes, one column per generator.
    pub fn k0_matrix(&self, pres: &Presentation) -> Result<K0Matrix> {
        let n = pres.object_count();
        let mut m = vec![vec![0; n]; n];
        for o in pres.objects() {
            let img = self.apply(&TwistedComplex::generator(pres.clone(), o, 0))?;
            for (r, c) in k0_class(&img).0.into_iter().enumerate() {
                m[r][o.0] = c;
            }
        }
        Ok(K0Matrix(m))
    }

    /// `d` for ℙ-twists, `None` otherwise.
    pub fn p_dim(&self) -> Option<u32> {
        match self {
            TwistFunctor::PTwist { cert, .. } => Some(cert.dim),
            _ => None,
        }
    }
}

impl fmt::Display for TwistFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TwistFunctor::PTwist { pres, cert } => {
                write!(f, "P_{} (d = {})", pres.object_name(cert.object), cert.dim)
            }
            TwistFunctor::Spherical { pres, object, sphere_dim } => {
                write!(f, "T_{} ({sphere_dim}-spherical)", pres.object_name(*object))
            }
            TwistFunctor::Shift(n) => write!(f, "[{n}]"),
        }
    }
}

/// Square integer matrix; `0[r][c]` is row `r`, column `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K0Matrix(pub Vec<Vec<i64>>);

impl K0Matrix {
    pub fn identity(n: usize) -> Self {
        K0Matrix((0..n).map(|r| (0..n).map(|c| i64::from(r == c)).collect()).collect())
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, v: &K0Class) -> K0Class {
        K0Class(self.0.iter().map(|row| row.iter().zip(&v.0).map(|(a, b)| a * b).sum()).collect())
    }
}

impl fmt::Display for K0Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .0
            .iter()
            .map(|r| r.iter().map(i64::to_string).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

/// The evaluation `hom(E, X) ⊗ E → X`, `f ⊗ e ↦ f(e)`.
///
/// The copy of `E` attached to the basis vector `(0, j, b)` of degree `m`
/// maps to slot `j` of `X` by `b`.
pub fn eval_map(e: ObjectId, x: &TwistedComplex) -> Result<GradedMorphism> {
    let p = x.presentation();
    let eg = TwistedComplex::generator(p.clone(), e, 0);
    let v = HomComplex::new(&eg, x)?;
    let w = tensor_cochain(v.complex(), &eg)?;
    let field = p.field();
    let mut entries = Vec::new();
    let mut row = 0;
    for m in v.complex().lo()..v.complex().hi() {
        for &(_, j, b) in v.basis(m) {
            entries.push(((row, j), LinComb::basis(b, field)));
            row += 1;
        }
    }
    let ev = GradedMorphism::new(w, x.clone(), 0, entries)?;
    if !ev.is_closed() {
        return Err(Error::Invariant("evaluation map is not closed".into()));
    }
    Ok(ev)
}

/// The two maps `hom(E, X)[−2] ⊗ E → hom(E, X) ⊗ E` of the double cone,
/// together with the evaluation out of their common target.
#[derive(Clone, Debug)]
pub struct PTwistMaps {
    /// `f ↦ f∘h` on the Hom factor.
    pub map1: GradedMorphism,
    /// `h` on the `E` factor.
    pub map2: GradedMorphism,
    pub ev: GradedMorphism,
}

pub fn p_twist_maps(e: ObjectId, h: &LinComb, x: &TwistedComplex) -> Result<PTwistMaps> {
    let p = x.presentation();
    let field = p.field();
    if h.terms().any(|(b, _)| {
        let hb = p.hom(b);
        hb.src != e || hb.dst != e || hb.degree != 2
    }) {
        return Err(Error::Contract("h must be a degree-2 endomorphism of E".into()));
    }
    let eg = TwistedComplex::generator(p.clone(), e, 0);
    let v = HomComplex::new(&eg, x)?;
    let ev = eval_map(e, x)?;
    let w = ev.source().clone();
    let s = shift(&w, -2);

    // position of each Hom basis vector among the slots of W
    let (lo, hi) = (v.complex().lo(), v.complex().hi());
    let mut offsets = Vec::new();
    let mut acc = 0;
    for m in lo..hi {
        offsets.push(acc);
        acc += v.basis(m).len();
    }
    let slot_of = |m: i64, k: usize| offsets[(m - lo) as usize] + k;

    let mut e1 = Vec::new();
    let mut e2 = Vec::new();
    for m in lo..hi {
        for (k, &(_, j, b)) in v.basis(m).iter().enumerate() {
            let src = slot_of(m, k);
            e2.push(((src, src), h.clone()));
            let bh = p.compose(&LinComb::basis(b, field), h);
            for (b2, c) in bh.terms() {
                let k2 = v
                    .basis(m + 2)
                    .iter()
                    .position(|&(_, j2, x2)| j2 == j && x2 == b2)
                    .ok_or_else(|| Error::Invariant("f∘h left the Hom basis".into()))?;
                e1.push(((src, slot_of(m + 2, k2)), LinComb::term(p.identity(e), c.clone())));
            }
        }
    }
    let map1 = GradedMorphism::new(s.clone(), w.clone(), 0, e1)?;
    let map2 = GradedMorphism::new(s, w, 0, e2)?;
    if !map1.is_closed() || !map2.is_closed() {
        return Err(Error::Invariant("double-cone maps are not closed".into()));
    }
    if ev.after(&map1)? != ev.after(&map2)? {
        return Err(Error::Invariant("ev∘map1 ≠ ev∘map2".into()));
    }
    Ok(PTwistMaps { map1, map2, ev })
}

/// Every stage of `P_E(X) = cone(cone(map1 − map2) → X)` before reduction.
#[derive(Clone, Debug)]
pub struct PTwistConstruction {
    pub maps: PTwistMaps,
    /// `cone(map1 − map2)`.
    pub q: TwistedComplex,
    /// `Q → X`, zero on the shifted source block and `ev` on the rest.
    pub ev_ext: GradedMorphism,
    /// `cone(ev_ext)`, sitting in `X → P_E(X) → Q[1]`.
    pub unreduced: TwistedComplex,
}

impl PTwistConstruction {
    pub fn new(cert: &PObjectCertificate, x: &TwistedComplex) -> Result<Self> {
        let p = x.presentation();
        let h = LinComb::basis(cert.generator, p.field());
        let maps = p_twist_maps(cert.object, &h, x)?;
        let q = cone(&maps.map1.plus(&maps.map2, -1)?)?;
        let offset = maps.map1.source().len();
        let entries = (0..maps.ev.source().len())
            .flat_map(|i| (0..x.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| !maps.ev.entry(i, j).is_zero())
            .map(|(i, j)| ((offset + i, j), maps.ev.entry(i, j).clone()))
            .collect();
        let ev_ext = GradedMorphism::new(q.clone(), x.clone(), 0, entries)?;
        if !ev_ext.is_closed() {
            return Err(Error::Invariant("extended evaluation is not closed".into()));
        }
        let unreduced = cone(&ev_ext)?;
        Ok(PTwistConstruction {
            maps,
            q,
            ev_ext,
            unreduced,
        })
    }
}

/// `A = cone(hom(E, G)[−2] ⊗ E → hom(E, G) ⊗ E)`, the object the tower
/// bound is built from.
pub fn p_twist_a(cert: &PObjectCertificate, g: &TwistedComplex) -> Result<TwistedComplex> {
    Ok(PTwistConstruction::new(cert, g)?.q)
}

/// `E^⊥` membership: `hom(E, X)` is acyclic.
pub fn is_right_orthogonal(e: ObjectId, x: &TwistedComplex) -> Result<bool> {
    let eg = TwistedComplex::generator(x.presentation().clone(), e, 0);
    Ok(hom_complex(&eg, x)?.cohomology_dims()?.is_empty())
}

/// `⊕_g g` over every generator of the presentation.
pub fn full_generator(pres: &Presentation) -> Result<TwistedComplex> {
    pres.objects().try_fold(TwistedComplex::zero(pres.clone()), |acc, o| {
        direct_sum(&acc, &TwistedComplex::generator(pres.clone(), o, 0))
    })
}
