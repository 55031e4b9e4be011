//! Cartesian morphisms, fibered categories and groupoid fibrations.

use std::sync::Arc;

use rayon::prelude::*;

use super::constructions::subcategory;
use super::error::{CategoryError, Result};
use super::finite::{FiniteCategory, Mor, Obj};
use super::functor::FunctorData;

/// Whether `f: c' -> c` is cartesian for `F`: for every `g: c'' -> c`,
/// `h ↦ F h` is a bijection from `{h : f∘h = g}` to `{u : F f∘u = F g}`.
pub fn is_cartesian(functor: &FunctorData, f: Mor) -> bool {
    let c = functor.source();
    let d = functor.target();
    let (c1, c0) = (c.source(f), c.target(f));
    let ff = functor.mor(f);
    c.into_obj(c0).all(|g| {
        let c2 = c.source(g);
        let fg = functor.mor(g);
        let lifts: Vec<Mor> = c.hom(c2, c1).iter().copied().filter(|&h| c.comp(f, h) == g).collect();
        let below: Vec<Mor> = d
            .hom(functor.obj(c2), functor.obj(c1))
            .iter()
            .copied()
            .filter(|&u| d.comp(ff, u) == fg)
            .collect();
        if lifts.len() != below.len() {
            return false;
        }
        let mut images: Vec<Mor> = lifts.iter().map(|&h| functor.mor(h)).collect();
        images.sort_unstable();
        images.dedup();
        images.len() == below.len()
    })
}

/// Cartesianness of every morphism, by index.
pub fn cartesian_table(functor: &FunctorData) -> Vec<bool> {
    functor
        .source()
        .morphisms()
        .into_par_iter()
        .map(|m| is_cartesian(functor, m))
        .collect()
}

/// A morphism `f: d -> d'` and an object `c'` over `d'` with no cartesian lift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MissingLift {
    pub base: Mor,
    pub object: Obj,
}

fn missing_lift(functor: &FunctorData, cartesian: &[bool]) -> Option<MissingLift> {
    let c = functor.source();
    let d = functor.target();
    for f in d.morphisms() {
        for c1 in c.objects().filter(|&o| functor.obj(o) == d.target(f)) {
            let lifted = c.into_obj(c1).any(|m| cartesian[m] && functor.mor(m) == f);
            if !lifted {
                return Some(MissingLift { base: f, object: c1 });
            }
        }
    }
    None
}

/// Every base morphism into `F c'` has a cartesian lift with target `c'`.
pub fn is_fibered(functor: &FunctorData) -> bool {
    missing_lift(functor, &cartesian_table(functor)).is_none()
}

/// Fibered, with every morphism cartesian.
pub fn is_groupoid_fibration(functor: &FunctorData) -> bool {
    let cart = cartesian_table(functor);
    cart.iter().all(|&b| b) && missing_lift(functor, &cart).is_none()
}

/// Explains why `functor` is not a groupoid fibration, if it is not.
pub fn groupoid_fibration_defect(functor: &FunctorData) -> Option<String> {
    let c = functor.source();
    let d = functor.target();
    let cart = cartesian_table(functor);
    if let Some(m) = c.morphisms().find(|&m| !cart[m]) {
        return Some(format!("{} is not cartesian", c.morphism_name(m)));
    }
    missing_lift(functor, &cart).map(|w| {
        format!(
            "{} has no cartesian lift ending at {}",
            d.morphism_name(w.base),
            c.object_name(w.object)
        )
    })
}

/// The subcategory of cartesian morphisms, its inclusion, and the
/// restriction of `F` to it. Requires `F` to be fibered.
#[derive(Clone, Debug)]
pub struct AssociatedGroupoidFibration {
    pub category: Arc<FiniteCategory>,
    pub inclusion: FunctorData,
    pub projection: FunctorData,
}

pub fn associated_groupoid_fibration(functor: &FunctorData) -> Result<AssociatedGroupoidFibration> {
    let cart = cartesian_table(functor);
    if let Some(w) = missing_lift(functor, &cart) {
        return Err(CategoryError::NotFibered(format!(
            "{} has no cartesian lift ending at {}",
            functor.target().morphism_name(w.base),
            functor.source().object_name(w.object)
        )));
    }
    let (category, inclusion) = subcategory(functor.source(), |_| true, |m| cart[m])?;
    let projection = inclusion.then(functor)?;
    Ok(AssociatedGroupoidFibration {
        category,
        inclusion,
        projection,
    })
}

/// The fiber over `d`: objects over `d` and morphisms over its identity.
pub fn fiber_category(functor: &FunctorData, d: Obj) -> Result<(Arc<FiniteCategory>, FunctorData)> {
    let base = functor.target();
    if d >= base.num_objects() {
        return Err(CategoryError::UnknownObject(format!("#{d}")));
    }
    let id = base.identity(d);
    subcategory(functor.source(), |o| functor.obj(o) == d, |m| functor.mor(m) == id)
}
