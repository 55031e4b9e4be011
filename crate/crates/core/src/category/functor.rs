//! Functors between finite categories and natural transformations.

use std::sync::Arc;

use super::error::{CategoryError, Result};
use super::finite::{FiniteCategory, Mor, Obj};

pub(crate) fn same_category(a: &Arc<FiniteCategory>, b: &Arc<FiniteCategory>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A functor given by its action on object and morphism indices.
#[derive(Clone, Debug)]
pub struct FunctorData {
    source: Arc<FiniteCategory>,
    target: Arc<FiniteCategory>,
    objects: Vec<Obj>,
    morphisms: Vec<Mor>,
}

impl PartialEq for FunctorData {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.morphisms == other.morphisms
            && same_category(&self.source, &other.source)
            && same_category(&self.target, &other.target)
    }
}

impl Eq for FunctorData {}

impl FunctorData {
    /// Checks that sources, targets, identities and composites are preserved.
    pub fn new(
        source: Arc<FiniteCategory>,
        target: Arc<FiniteCategory>,
        objects: Vec<Obj>,
        morphisms: Vec<Mor>,
    ) -> Result<Self> {
        let bad = |s: String| Err(CategoryError::FunctorLawViolation(s));
        if objects.len() != source.num_objects() || morphisms.len() != source.num_morphisms() {
            return bad("object or morphism map has the wrong length".into());
        }
        if objects.iter().any(|&o| o >= target.num_objects()) || morphisms.iter().any(|&m| m >= target.num_morphisms())
        {
            return bad("map leaves the target category".into());
        }
        for m in source.morphisms() {
            let fm = morphisms[m];
            if target.source(fm) != objects[source.source(m)] || target.target(fm) != objects[source.target(m)] {
                return bad(format!(
                    "{} is sent to a morphism with the wrong ends",
                    source.morphism_name(m)
                ));
            }
        }
        for o in source.objects() {
            if morphisms[source.identity(o)] != target.identity(objects[o]) {
                return bad(format!("identity of {} is not preserved", source.object_name(o)));
            }
        }
        for f in source.morphisms() {
            for g in source.out_of(source.target(f)) {
                if morphisms[source.comp(g, f)] != target.comp(morphisms[g], morphisms[f]) {
                    return bad(format!(
                        "composite {}∘{} is not preserved",
                        source.morphism_name(g),
                        source.morphism_name(f)
                    ));
                }
            }
        }
        Ok(FunctorData {
            source,
            target,
            objects,
            morphisms,
        })
    }

    pub fn identity(c: &Arc<FiniteCategory>) -> Self {
        FunctorData {
            source: c.clone(),
            target: c.clone(),
            objects: c.objects().collect(),
            morphisms: c.morphisms().collect(),
        }
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &FunctorData) -> Result<FunctorData> {
        if !same_category(&self.target, &next.source) {
            return Err(CategoryError::FunctorLawViolation(
                "composed functors do not match".into(),
            ));
        }
        Ok(FunctorData {
            source: self.source.clone(),
            target: next.target.clone(),
            objects: self.objects.iter().map(|&o| next.objects[o]).collect(),
            morphisms: self.morphisms.iter().map(|&m| next.morphisms[m]).collect(),
        })
    }

    pub fn source(&self) -> &Arc<FiniteCategory> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteCategory> {
        &self.target
    }

    pub fn obj(&self, o: Obj) -> Obj {
        self.objects[o]
    }

    pub fn mor(&self, m: Mor) -> Mor {
        self.morphisms[m]
    }

    pub fn object_map(&self) -> &[Obj] {
        &self.objects
    }

    pub fn morphism_map(&self) -> &[Mor] {
        &self.morphisms
    }

    /// Whether `m` is sent to an identity.
    pub fn over_identity(&self, m: Mor) -> bool {
        self.target.is_identity(self.morphisms[m])
    }
}

/// A natural transformation `from ⇒ to` given by its components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaturalTransformation {
    from: FunctorData,
    to: FunctorData,
    components: Vec<Mor>,
}

impl NaturalTransformation {
    pub fn new(from: FunctorData, to: FunctorData, components: Vec<Mor>) -> Result<Self> {
        let bad = |s: String| Err(CategoryError::NaturalityViolation(s));
        if !same_category(from.source(), to.source()) || !same_category(from.target(), to.target()) {
            return bad("functors have different source or target".into());
        }
        let (c, d) = (from.source().clone(), from.target().clone());
        if components.len() != c.num_objects() {
            return bad("wrong number of components".into());
        }
        for o in c.objects() {
            let t = components[o];
            if t >= d.num_morphisms() || d.source(t) != from.obj(o) || d.target(t) != to.obj(o) {
                return bad(format!("component at {} has the wrong ends", c.object_name(o)));
            }
        }
        for m in c.morphisms() {
            let (a, b) = (c.source(m), c.target(m));
            if d.comp(to.mor(m), components[a]) != d.comp(components[b], from.mor(m)) {
                return bad(format!("square at {} does not commute", c.morphism_name(m)));
            }
        }
        Ok(NaturalTransformation { from, to, components })
    }

    pub fn component(&self, o: Obj) -> Mor {
        self.components[o]
    }

    pub fn components(&self) -> &[Mor] {
        &self.components
    }

    pub fn from(&self) -> &FunctorData {
        &self.from
    }

    pub fn to(&self) -> &FunctorData {
        &self.to
    }

    pub fn is_isomorphism(&self) -> bool {
        let d = self.from.target();
        self.components.iter().all(|&m| d.is_isomorphism(m))
    }
}
