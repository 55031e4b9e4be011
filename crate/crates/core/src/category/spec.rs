//! JSON fixture dialect for categories, functors, towers and log configurations.
//!
//! Objects and morphisms are named by strings; composition is a list of
//! `[g, f, g∘f]` triples (composites with identities may be omitted).
//! Towers and configurations may reference category files by path,
//! resolved relative to the referencing file.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::error::{CategoryError, Result};
use super::finite::{FiniteCategory, MorphismDecl};
use super::functor::FunctorData;
use super::phi::LogCfg;
use super::tower::Tower;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismSpec {
    pub name: String,
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategorySpec {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismSpec>,
    pub identities: BTreeMap<String, String>,
    #[serde(default)]
    pub composition: Vec<[String; 3]>,
    /// Free-form note, e.g. the orientation convention of generated fixtures.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub convention: Option<String>,
}

impl CategorySpec {
    pub fn build(&self) -> Result<FiniteCategory> {
        let obj = |n: &str| {
            self.objects
                .iter()
                .position(|o| o == n)
                .ok_or_else(|| CategoryError::UnknownObject(n.to_string()))
        };
        let mor = |n: &str| {
            self.morphisms
                .iter()
                .position(|m| m.name == n)
                .ok_or_else(|| CategoryError::UnknownMorphism(n.to_string()))
        };
        let decls = self
            .morphisms
            .iter()
            .map(|m| Ok(MorphismDecl::new(m.name.clone(), obj(&m.source)?, obj(&m.target)?)))
            .collect::<Result<Vec<_>>>()?;
        let identities = self
            .objects
            .iter()
            .map(|o| {
                let name = self.identities.get(o).ok_or_else(|| CategoryError::IdentityViolation {
                    morphism: o.clone(),
                    detail: "no identity declared".into(),
                })?;
                mor(name)
            })
            .collect::<Result<Vec<_>>>()?;
        for o in self.identities.keys() {
            obj(o)?;
        }
        let table = self
            .composition
            .iter()
            .map(|[g, f, gf]| Ok((mor(g)?, mor(f)?, mor(gf)?)))
            .collect::<Result<Vec<_>>>()?;
        FiniteCategory::from_table(self.objects.clone(), decls, identities, &table)
    }

    /// The spec of a category, listing composites of non-identity pairs.
    pub fn from_category(c: &FiniteCategory) -> Self {
        let name = |m| c.morphism_name(m).to_string();
        let mut composition = Vec::new();
        for f in c.morphisms().filter(|&f| !c.is_identity(f)) {
            for g in c.out_of(c.target(f)).filter(|&g| !c.is_identity(g)) {
                composition.push([name(g), name(f), name(c.comp(g, f))]);
            }
        }
        CategorySpec {
            objects: c.object_names().to_vec(),
            morphisms: c
                .morphisms()
                .map(|m| MorphismSpec {
                    name: name(m),
                    source: c.object_name(c.source(m)).to_string(),
                    target: c.object_name(c.target(m)).to_string(),
                })
                .collect(),
            identities: c
                .objects()
                .map(|o| (c.object_name(o).to_string(), name(c.identity(o))))
                .collect(),
            composition,
            convention: None,
        }
    }
}

/// Object and morphism maps of a functor, by name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorMapSpec {
    pub objects: BTreeMap<String, String>,
    pub morphisms: BTreeMap<String, String>,
}

impl FunctorMapSpec {
    pub fn build(&self, source: &Arc<FiniteCategory>, target: &Arc<FiniteCategory>) -> Result<FunctorData> {
        let missing = |what: &str, n: &str| CategoryError::FunctorLawViolation(format!("{what} {n} is not mapped"));
        let objects = source
            .object_names()
            .iter()
            .map(|o| target.find_object(self.objects.get(o).ok_or_else(|| missing("object", o))?))
            .collect::<Result<Vec<_>>>()?;
        let morphisms = source
            .morphism_names()
            .iter()
            .map(|m| target.find_morphism(self.morphisms.get(m).ok_or_else(|| missing("morphism", m))?))
            .collect::<Result<Vec<_>>>()?;
        for o in self.objects.keys() {
            source.find_object(o)?;
        }
        for m in self.morphisms.keys() {
            source.find_morphism(m)?;
        }
        FunctorData::new(source.clone(), target.clone(), objects, morphisms)
    }

    pub fn from_functor(f: &FunctorData) -> Self {
        let (s, t) = (f.source(), f.target());
        FunctorMapSpec {
            objects: s
                .objects()
                .map(|o| (s.object_name(o).to_string(), t.object_name(f.obj(o)).to_string()))
                .collect(),
            morphisms: s
                .morphisms()
                .map(|m| (s.morphism_name(m).to_string(), t.morphism_name(f.mor(m)).to_string()))
                .collect(),
        }
    }
}

/// A category given inline or by a path to a category file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CategoryRef {
    Path(PathBuf),
    Inline(CategorySpec),
}

fn fixture_error(path: &Path, reason: impl ToString) -> CategoryError {
    CategoryError::Fixture {
        path: path.display().to_string(),
        reason: reason.to_string(),
    }
}

/// Reads and parses a JSON fixture.
pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| fixture_error(path, e))?;
    serde_json::from_str(&text).map_err(|e| fixture_error(path, e))
}

impl CategoryRef {
    pub fn load(&self, base: &Path) -> Result<Arc<FiniteCategory>> {
        match self {
            CategoryRef::Inline(spec) => Ok(Arc::new(spec.build()?)),
            CategoryRef::Path(p) => {
                let path = base.join(p);
                let spec: CategorySpec = read_json(&path)?;
                Ok(Arc::new(spec.build()?))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerSpec {
    pub z: CategoryRef,
    pub logsch: CategoryRef,
    pub sch: CategoryRef,
    pub f: FunctorMapSpec,
    pub forget: FunctorMapSpec,
}

impl TowerSpec {
    pub fn build(&self, base: &Path) -> Result<Tower> {
        let z = self.z.load(base)?;
        let ls = self.logsch.load(base)?;
        let sch = self.sch.load(base)?;
        Tower::new(self.f.build(&z, &ls)?, self.forget.build(&ls, &sch)?)
    }

    pub fn from_tower(t: &Tower) -> Self {
        TowerSpec {
            z: CategoryRef::Inline(CategorySpec::from_category(t.z())),
            logsch: CategoryRef::Inline(CategorySpec::from_category(t.logsch())),
            sch: CategoryRef::Inline(CategorySpec::from_category(t.sch())),
            f: FunctorMapSpec::from_functor(t.f()),
            forget: FunctorMapSpec::from_functor(t.forget()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LogCfgSpec {
    pub x: CategoryRef,
    pub logsch: CategoryRef,
    pub sch: CategoryRef,
    pub m: FunctorMapSpec,
    pub forget: FunctorMapSpec,
}

impl LogCfgSpec {
    pub fn build(&self, base: &Path) -> Result<LogCfg> {
        let x = self.x.load(base)?;
        let ls = self.logsch.load(base)?;
        let sch = self.sch.load(base)?;
        LogCfg::new(self.m.build(&x, &ls)?, self.forget.build(&ls, &sch)?)
    }

    pub fn from_cfg(c: &LogCfg) -> Self {
        LogCfgSpec {
            x: CategoryRef::Inline(CategorySpec::from_category(c.x())),
            logsch: CategoryRef::Inline(CategorySpec::from_category(c.logsch())),
            sch: CategoryRef::Inline(CategorySpec::from_category(c.sch())),
            m: FunctorMapSpec::from_functor(c.m()),
            forget: FunctorMapSpec::from_functor(c.forget()),
        }
    }
}
