//! Finite categories with an explicit composition table.

use std::collections::HashMap;

use super::error::{CategoryError, Result};

pub type Obj = usize;
pub type Mor = usize;

const NONE: u32 = u32::MAX;

/// Size limits on constructed categories.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub max_objects: usize,
    pub max_morphisms: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_objects: 40,
            max_morphisms: 400,
        }
    }
}

impl Bounds {
    /// Parses `"objects=N,morphisms=M"` or `"N,M"`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || CategoryError::InvalidBounds(s.to_string());
        let mut b = Bounds::default();
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 2 {
            return Err(bad());
        }
        for (i, part) in parts.iter().enumerate() {
            let (key, value) = match part.split_once('=') {
                Some((k, v)) => (k.trim(), v.trim()),
                None => (if i == 0 { "objects" } else { "morphisms" }, *part),
            };
            let v: usize = value.parse().map_err(|_| bad())?;
            match key {
                "objects" => b.max_objects = v,
                "morphisms" => b.max_morphisms = v,
                _ => return Err(bad()),
            }
        }
        Ok(b)
    }

    /// Defaults, overridden by `LOGMIN_BOUNDS` when it is set and valid.
    pub fn from_env() -> Self {
        std::env::var("LOGMIN_BOUNDS")
            .ok()
            .and_then(|s| Bounds::parse(&s).ok())
            .unwrap_or_default()
    }

    pub fn check(&self, objects: usize, morphisms: usize) -> Result<()> {
        if objects > self.max_objects || morphisms > self.max_morphisms {
            return Err(CategoryError::TooLarge {
                objects,
                morphisms,
                max_objects: self.max_objects,
                max_morphisms: self.max_morphisms,
            });
        }
        Ok(())
    }
}

/// A validated finite category. Objects and morphisms are indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCategory {
    objects: Vec<String>,
    morphisms: Vec<String>,
    source: Vec<Obj>,
    target: Vec<Obj>,
    identity: Vec<Mor>,
    /// `comp[g * n + f] = g∘f`, or `NONE` when not composable.
    comp: Vec<u32>,
    hom: Vec<Vec<Mor>>,
}

/// A morphism declaration `name: source -> target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismDecl {
    pub name: String,
    pub source: Obj,
    pub target: Obj,
}

impl MorphismDecl {
    pub fn new(name: impl Into<String>, source: Obj, target: Obj) -> Self {
        MorphismDecl {
            name: name.into(),
            source,
            target,
        }
    }
}

impl FiniteCategory {
    /// Builds and validates a category, using [`Bounds::from_env`].
    pub fn from_fn(
        objects: Vec<String>,
        morphisms: Vec<MorphismDecl>,
        identities: Vec<Mor>,
        compose: impl Fn(Mor, Mor) -> Option<Mor>,
    ) -> Result<Self> {
        Self::from_fn_bounded(objects, morphisms, identities, compose, Bounds::from_env())
    }

    pub fn from_fn_bounded(
        objects: Vec<String>,
        morphisms: Vec<MorphismDecl>,
        identities: Vec<Mor>,
        compose: impl Fn(Mor, Mor) -> Option<Mor>,
        bounds: Bounds,
    ) -> Result<Self> {
        bounds.check(objects.len(), morphisms.len())?;
        let (no, nm) = (objects.len(), morphisms.len());
        unique(&objects)?;
        unique(&morphisms.iter().map(|m| m.name.clone()).collect::<Vec<_>>())?;
        for m in &morphisms {
            for o in [m.source, m.target] {
                if o >= no {
                    return Err(CategoryError::UnknownObject(format!("#{o} in {}", m.name)));
                }
            }
        }
        if identities.len() != no {
            return Err(CategoryError::IdentityViolation {
                morphism: "-".into(),
                detail: format!("{} identities for {no} objects", identities.len()),
            });
        }
        let mut cat = FiniteCategory {
            objects,
            source: morphisms.iter().map(|m| m.source).collect(),
            target: morphisms.iter().map(|m| m.target).collect(),
            morphisms: morphisms.into_iter().map(|m| m.name).collect(),
            identity: identities,
            comp: vec![NONE; nm * nm],
            hom: vec![Vec::new(); no * no],
        };
        for (o, &i) in cat.identity.iter().enumerate() {
            if i >= nm || cat.source[i] != o || cat.target[i] != o {
                return Err(CategoryError::IdentityViolation {
                    morphism: cat.objects[o].clone(),
                    detail: "declared identity is not an endomorphism of its object".into(),
                });
            }
        }
        for m in 0..nm {
            cat.hom[cat.source[m] * no + cat.target[m]].push(m);
        }
        for g in 0..nm {
            for f in 0..nm {
                if cat.target[f] != cat.source[g] {
                    continue;
                }
                let gf = compose(g, f).ok_or_else(|| CategoryError::MissingComposite {
                    g: cat.morphisms[g].clone(),
                    f: cat.morphisms[f].clone(),
                })?;
                if gf >= nm || cat.source[gf] != cat.source[f] || cat.target[gf] != cat.target[g] {
                    return Err(CategoryError::BadComposite {
                        g: cat.morphisms[g].clone(),
                        f: cat.morphisms[f].clone(),
                        gf: cat.morphisms.get(gf).cloned().unwrap_or_else(|| format!("#{gf}")),
                    });
                }
                cat.comp[g * nm + f] = gf as u32;
            }
        }
        cat.validate_laws()?;
        Ok(cat)
    }

    /// Builds from an explicit table of `(g, f, g∘f)` triples. Composites
    /// with an identity may be omitted.
    pub fn from_table(
        objects: Vec<String>,
        morphisms: Vec<MorphismDecl>,
        identities: Vec<Mor>,
        table: &[(Mor, Mor, Mor)],
    ) -> Result<Self> {
        let mut map: HashMap<(Mor, Mor), Mor> = HashMap::new();
        for &(g, f, gf) in table {
            if let Some(&old) = map.get(&(g, f)) {
                if old != gf {
                    let name = |m: Mor| morphisms.get(m).map(|d| d.name.clone()).unwrap_or_default();
                    return Err(CategoryError::BadComposite {
                        g: name(g),
                        f: name(f),
                        gf: format!("both {} and {}", name(old), name(gf)),
                    });
                }
            }
            map.insert((g, f), gf);
        }
        let ids = identities.clone();
        FiniteCategory::from_fn(objects, morphisms, identities, |g, f| {
            map.get(&(g, f)).copied().or_else(|| {
                if ids.contains(&g) {
                    Some(f)
                } else if ids.contains(&f) {
                    Some(g)
                } else {
                    None
                }
            })
        })
    }

    fn validate_laws(&self) -> Result<()> {
        for f in self.morphisms() {
            let (s, t) = (self.source[f], self.target[f]);
            if self.comp(self.identity[t], f) != f || self.comp(f, self.identity[s]) != f {
                return Err(CategoryError::IdentityViolation {
                    morphism: self.morphisms[f].clone(),
                    detail: "composite with an identity differs".into(),
                });
            }
        }
        for f in self.morphisms() {
            for g in self.out_of(self.target[f]) {
                let gf = self.comp(g, f);
                for h in self.out_of(self.target[g]) {
                    let left = self.comp(h, gf);
                    let right = self.comp(self.comp(h, g), f);
                    if left != right {
                        return Err(CategoryError::AssociativityViolation {
                            h: self.morphisms[h].clone(),
                            g: self.morphisms[g].clone(),
                            f: self.morphisms[f].clone(),
                            left: self.morphisms[left].clone(),
                            right: self.morphisms[right].clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> std::ops::Range<Obj> {
        0..self.objects.len()
    }

    pub fn morphisms(&self) -> std::ops::Range<Mor> {
        0..self.morphisms.len()
    }

    pub fn object_name(&self, o: Obj) -> &str {
        &self.objects[o]
    }

    pub fn morphism_name(&self, m: Mor) -> &str {
        &self.morphisms[m]
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn morphism_names(&self) -> &[String] {
        &self.morphisms
    }

    pub fn find_object(&self, name: &str) -> Result<Obj> {
        self.objects
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| CategoryError::UnknownObject(name.to_string()))
    }

    pub fn find_morphism(&self, name: &str) -> Result<Mor> {
        self.morphisms
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| CategoryError::UnknownMorphism(name.to_string()))
    }

    pub fn source(&self, m: Mor) -> Obj {
        self.source[m]
    }

    pub fn target(&self, m: Mor) -> Obj {
        self.target[m]
    }

    pub fn identity(&self, o: Obj) -> Mor {
        self.identity[o]
    }

    pub fn is_identity(&self, m: Mor) -> bool {
        self.identity[self.source[m]] == m
    }

    /// `g∘f`, if `target(f) = source(g)`.
    pub fn compose(&self, g: Mor, f: Mor) -> Option<Mor> {
        match self.comp[g * self.morphisms.len() + f] {
            NONE => None,
            v => Some(v as Mor),
        }
    }

    /// `g∘f`; panics when not composable.
    pub fn comp(&self, g: Mor, f: Mor) -> Mor {
        self.compose(g, f)
            .unwrap_or_else(|| panic!("{} and {} are not composable", self.morphisms[g], self.morphisms[f]))
    }

    /// Morphisms `a -> b`, in index order.
    pub fn hom(&self, a: Obj, b: Obj) -> &[Mor] {
        &self.hom[a * self.objects.len() + b]
    }

    /// Morphisms with source `a`.
    pub fn out_of(&self, a: Obj) -> impl Iterator<Item = Mor> + '_ {
        self.objects().flat_map(move |b| self.hom(a, b).iter().copied())
    }

    /// Morphisms with target `b`.
    pub fn into_obj(&self, b: Obj) -> impl Iterator<Item = Mor> + '_ {
        self.objects().flat_map(move |a| self.hom(a, b).iter().copied())
    }

    pub fn inverse(&self, m: Mor) -> Option<Mor> {
        let (s, t) = (self.source[m], self.target[m]);
        self.hom(t, s)
            .iter()
            .copied()
            .find(|&n| self.comp(n, m) == self.identity[s] && self.comp(m, n) == self.identity[t])
    }

    pub fn is_isomorphism(&self, m: Mor) -> bool {
        self.inverse(m).is_some()
    }

    /// Automorphisms of `o`.
    pub fn automorphisms(&self, o: Obj) -> Vec<Mor> {
        self.hom(o, o)
            .iter()
            .copied()
            .filter(|&m| self.is_isomorphism(m))
            .collect()
    }

    pub fn is_groupoid(&self) -> bool {
        self.morphisms().all(|m| self.is_isomorphism(m))
    }

    /// Morphism declarations in index order.
    pub fn declarations(&self) -> Vec<MorphismDecl> {
        self.morphisms()
            .map(|m| MorphismDecl::new(self.morphisms[m].clone(), self.source[m], self.target[m]))
            .collect()
    }
}

fn unique(names: &[String]) -> Result<()> {
    let mut seen = std::collections::HashSet::new();
    for n in names {
        if !seen.insert(n) {
            return Err(CategoryError::DuplicateName(n.clone()));
        }
    }
    Ok(())
}

/// Small named categories: the walking arrow, cyclic groups, the terminal
/// category and codiscrete groupoids.
pub mod examples {
    use super::*;

    pub fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    /// `0 -> 1`.
    pub fn arrow() -> FiniteCategory {
        FiniteCategory::from_table(
            names(&["0", "1"]),
            vec![
                MorphismDecl::new("id0", 0, 0),
                MorphismDecl::new("id1", 1, 1),
                MorphismDecl::new("a", 0, 1),
            ],
            vec![0, 1],
            &[],
        )
        .expect("arrow category")
    }

    /// The cyclic group of order `n` as a one-object category.
    pub fn cyclic(n: usize) -> FiniteCategory {
        FiniteCategory::from_fn(
            names(&["*"]),
            (0..n).map(|k| MorphismDecl::new(format!("t{k}"), 0, 0)).collect(),
            vec![0],
            |g, f| Some((g + f) % n),
        )
        .expect("cyclic group")
    }

    pub fn terminal() -> FiniteCategory {
        cyclic(1)
    }

    /// Objects `prefix0 .. prefix{n-1}` with exactly one arrow between any two.
    pub fn codiscrete(prefix: &str, n: usize) -> FiniteCategory {
        let objects = (0..n).map(|i| format!("{prefix}{i}")).collect();
        let decls = (0..n * n)
            .map(|k| MorphismDecl::new(format!("{prefix}{}>{}", k / n, k % n), k / n, k % n))
            .collect();
        FiniteCategory::from_fn(objects, decls, (0..n).map(|i| i * n + i).collect(), |g, f| {
            (f % n == g / n).then_some((f / n) * n + g % n)
        })
        .expect("codiscrete groupoid")
    }
}
