//! Log configurations `(X, M)` and the category `Φ(X, M)` over `LogSch`.

use std::collections::HashMap;
use std::sync::Arc;

use super::error::{CategoryError, Result};
use super::fibration::{associated_groupoid_fibration, groupoid_fibration_defect, AssociatedGroupoidFibration};
use super::finite::{FiniteCategory, Mor, MorphismDecl, Obj};
use super::functor::{same_category, FunctorData};
use super::tower::Tower;

/// A functor `M: X -> LogSch` sending every morphism to a cartesian one
/// (so that it factors through `Log`), with `u̲M` a groupoid fibration.
#[derive(Clone, Debug)]
pub struct LogCfg {
    m: FunctorData,
    forget: FunctorData,
    log: AssociatedGroupoidFibration,
}

impl LogCfg {
    pub fn new(m: FunctorData, forget: FunctorData) -> Result<Self> {
        if !same_category(m.target(), forget.source()) {
            return Err(CategoryError::ValidationFailure(
                "M does not land in the source of the forgetful functor".into(),
            ));
        }
        let log = associated_groupoid_fibration(&forget)?;
        let x = m.source();
        let on_log: Vec<bool> = {
            let mut v = vec![false; forget.source().num_morphisms()];
            for &k in log.inclusion.morphism_map() {
                v[k] = true;
            }
            v
        };
        if let Some(a) = x.morphisms().find(|&a| !on_log[m.mor(a)]) {
            return Err(CategoryError::ValidationFailure(format!(
                "M sends {} to a non-cartesian morphism",
                x.morphism_name(a)
            )));
        }
        if let Some(why) = groupoid_fibration_defect(&m.then(&forget)?) {
            return Err(CategoryError::NotGroupoidFibration(format!("u̲M: {why}")));
        }
        Ok(LogCfg { m, forget, log })
    }

    pub fn x(&self) -> &Arc<FiniteCategory> {
        self.m.source()
    }

    pub fn m(&self) -> &FunctorData {
        &self.m
    }

    pub fn forget(&self) -> &FunctorData {
        &self.forget
    }

    pub fn logsch(&self) -> &Arc<FiniteCategory> {
        self.forget.source()
    }

    pub fn sch(&self) -> &Arc<FiniteCategory> {
        self.forget.target()
    }

    /// The associated groupoid fibration `Log -> Sch`.
    pub fn log(&self) -> &AssociatedGroupoidFibration {
        &self.log
    }

    /// `M` as a functor into `Log`.
    pub fn m_into_log(&self) -> Result<FunctorData> {
        let inc = &self.log.inclusion;
        let back = |target: &[usize], n: usize| {
            let mut v = vec![usize::MAX; n];
            for (i, &t) in target.iter().enumerate() {
                v[t] = i;
            }
            v
        };
        let obj_back = back(inc.object_map(), self.logsch().num_objects());
        let mor_back = back(inc.morphism_map(), self.logsch().num_morphisms());
        FunctorData::new(
            self.x().clone(),
            self.log.category.clone(),
            self.m.object_map().iter().map(|&o| obj_back[o]).collect(),
            self.m.morphism_map().iter().map(|&a| mor_back[a]).collect(),
        )
    }
}

/// `Φ(X, M)`: objects `(x, f: X -> M x)` with `u̲f = Id`, morphisms `(a, b)`
/// with `M a∘f = g∘b`, projected to `LogSch` by `(x, f) ↦ X`.
#[derive(Clone, Debug)]
pub struct Phi {
    pub cfg: LogCfg,
    pub tower: Tower,
    objects: Vec<(Obj, Mor)>,
    morphisms: Vec<(Mor, Mor)>,
    object_index: HashMap<(Obj, Mor), Obj>,
    morphism_index: HashMap<(Obj, Obj, Mor, Mor), Mor>,
}

pub fn phi(cfg: &LogCfg) -> Result<Phi> {
    let x = cfg.x();
    let ls = cfg.logsch();
    let m = cfg.m();
    let forget = cfg.forget();
    let mut objects: Vec<(Obj, Mor)> = Vec::new();
    for xo in x.objects() {
        for f in ls.into_obj(m.obj(xo)).filter(|&f| forget.over_identity(f)) {
            objects.push((xo, f));
        }
    }
    let object_index: HashMap<(Obj, Mor), Obj> = objects.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let object_names: Vec<String> = objects
        .iter()
        .map(|&(xo, f)| format!("({},{})", x.object_name(xo), ls.morphism_name(f)))
        .collect();
    let mut decls = Vec::new();
    let mut morphisms = Vec::new();
    let mut morphism_index = HashMap::new();
    for (s, &(xo, f)) in objects.iter().enumerate() {
        for (t, &(yo, g)) in objects.iter().enumerate() {
            for &a in x.hom(xo, yo) {
                let maf = ls.comp(m.mor(a), f);
                for &b in ls.hom(ls.source(f), ls.source(g)) {
                    if ls.comp(g, b) == maf {
                        morphism_index.insert((s, t, a, b), morphisms.len());
                        morphisms.push((a, b));
                        decls.push(MorphismDecl::new(
                            format!(
                                "({},{}):{}->{}",
                                x.morphism_name(a),
                                ls.morphism_name(b),
                                object_names[s],
                                object_names[t]
                            ),
                            s,
                            t,
                        ));
                    }
                }
            }
        }
    }
    let identities: Vec<Mor> = objects
        .iter()
        .enumerate()
        .map(|(s, &(xo, f))| morphism_index[&(s, s, x.identity(xo), ls.identity(ls.source(f)))])
        .collect();
    let sources: Vec<Obj> = decls.iter().map(|d| d.source).collect();
    let targets: Vec<Obj> = decls.iter().map(|d| d.target).collect();
    let z = Arc::new(FiniteCategory::from_fn(object_names, decls, identities, |g, f| {
        let (a2, b2) = morphisms[g];
        let (a1, b1) = morphisms[f];
        morphism_index
            .get(&(sources[f], targets[g], x.comp(a2, a1), ls.comp(b2, b1)))
            .copied()
    })?);
    let projection = FunctorData::new(
        z,
        ls.clone(),
        objects.iter().map(|&(_, f)| ls.source(f)).collect(),
        morphisms.iter().map(|&(_, b)| b).collect(),
    )?;
    let tower = Tower::new(projection, forget.clone())?;
    Ok(Phi {
        cfg: cfg.clone(),
        tower,
        objects,
        morphisms,
        object_index,
        morphism_index,
    })
}

impl Phi {
    pub fn category(&self) -> &Arc<FiniteCategory> {
        self.tower.z()
    }

    /// The pair `(x, f)` of an object.
    pub fn object(&self, o: Obj) -> (Obj, Mor) {
        self.objects[o]
    }

    /// The pair `(a, b)` of a morphism.
    pub fn morphism(&self, m: Mor) -> (Mor, Mor) {
        self.morphisms[m]
    }

    pub fn find_object(&self, x: Obj, f: Mor) -> Option<Obj> {
        self.object_index.get(&(x, f)).copied()
    }

    pub fn find_morphism(&self, source: Obj, target: Obj, a: Mor, b: Mor) -> Option<Mor> {
        self.morphism_index.get(&(source, target, a, b)).copied()
    }

    /// `(x, f)` with `f` an isomorphism.
    pub fn has_iso_structure(&self, o: Obj) -> bool {
        self.cfg.logsch().is_isomorphism(self.objects[o].1)
    }
}
