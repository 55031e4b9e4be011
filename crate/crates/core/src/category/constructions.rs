//! Subcategories, products and object duplication.

use std::sync::Arc;

use super::error::{CategoryError, Result};
use super::finite::{FiniteCategory, Mor, MorphismDecl, Obj};
use super::functor::FunctorData;

/// The subcategory on the kept objects and the kept morphisms between them,
/// with its inclusion functor. Identities of kept objects must be kept and
/// the kept morphisms must be closed under composition.
pub fn subcategory(
    c: &Arc<FiniteCategory>,
    keep_obj: impl Fn(Obj) -> bool,
    keep_mor: impl Fn(Mor) -> bool,
) -> Result<(Arc<FiniteCategory>, FunctorData)> {
    let objs: Vec<Obj> = c.objects().filter(|&o| keep_obj(o)).collect();
    let mut obj_index = vec![usize::MAX; c.num_objects()];
    for (i, &o) in objs.iter().enumerate() {
        obj_index[o] = i;
    }
    let mors: Vec<Mor> = c
        .morphisms()
        .filter(|&m| keep_obj(c.source(m)) && keep_obj(c.target(m)) && keep_mor(m))
        .collect();
    let mut mor_index = vec![usize::MAX; c.num_morphisms()];
    for (i, &m) in mors.iter().enumerate() {
        mor_index[m] = i;
    }
    let mut identities = Vec::new();
    for &o in &objs {
        let i = mor_index[c.identity(o)];
        if i == usize::MAX {
            return Err(CategoryError::ConstructionFailure(format!(
                "identity of {} is not kept",
                c.object_name(o)
            )));
        }
        identities.push(i);
    }
    let decls = mors
        .iter()
        .map(|&m| MorphismDecl::new(c.morphism_name(m), obj_index[c.source(m)], obj_index[c.target(m)]))
        .collect();
    let sub = FiniteCategory::from_fn(
        objs.iter().map(|&o| c.object_name(o).to_string()).collect(),
        decls,
        identities,
        |g, f| {
            let gf = mor_index[c.comp(mors[g], mors[f])];
            (gf != usize::MAX).then_some(gf)
        },
    )
    .map_err(|e| match e {
        CategoryError::MissingComposite { g, f } => {
            CategoryError::ConstructionFailure(format!("kept morphisms not closed: {g}∘{f}"))
        }
        e => e,
    })?;
    let sub = Arc::new(sub);
    let inc = FunctorData::new(sub.clone(), c.clone(), objs, mors)?;
    Ok((sub, inc))
}

/// The full subcategory on the kept objects.
pub fn full_subcategory(
    c: &Arc<FiniteCategory>,
    keep_obj: impl Fn(Obj) -> bool,
) -> Result<(Arc<FiniteCategory>, FunctorData)> {
    subcategory(c, keep_obj, |_| true)
}

/// `A × B` with its two projections. Names are `(a,b)`.
pub fn product(
    a: &Arc<FiniteCategory>,
    b: &Arc<FiniteCategory>,
) -> Result<(Arc<FiniteCategory>, FunctorData, FunctorData)> {
    let (na, nb) = (a.num_objects(), b.num_objects());
    let (ma, mb) = (a.num_morphisms(), b.num_morphisms());
    let objects = (0..na * nb)
        .map(|i| format!("({},{})", a.object_name(i / nb), b.object_name(i % nb)))
        .collect();
    let decls = (0..ma * mb)
        .map(|i| {
            let (f, g) = (i / mb, i % mb);
            MorphismDecl::new(
                format!("({},{})", a.morphism_name(f), b.morphism_name(g)),
                a.source(f) * nb + b.source(g),
                a.target(f) * nb + b.target(g),
            )
        })
        .collect();
    let identities = (0..na * nb)
        .map(|i| a.identity(i / nb) * mb + b.identity(i % nb))
        .collect();
    let p = Arc::new(FiniteCategory::from_fn(objects, decls, identities, |x, y| {
        let f = a.compose(x / mb, y / mb)?;
        let g = b.compose(x % mb, y % mb)?;
        Some(f * mb + g)
    })?);
    let pa = FunctorData::new(
        p.clone(),
        a.clone(),
        (0..na * nb).map(|i| i / nb).collect(),
        (0..ma * mb).map(|i| i / mb).collect(),
    )?;
    let pb = FunctorData::new(
        p.clone(),
        b.clone(),
        (0..na * nb).map(|i| i % nb).collect(),
        (0..ma * mb).map(|i| i % mb).collect(),
    )?;
    Ok((p, pa, pb))
}

/// The disjoint union of `parts`. Objects and morphisms of part `k` are
/// renamed `k.name`; part `k` occupies a contiguous index range.
pub fn coproduct(parts: &[FiniteCategory]) -> Result<FiniteCategory> {
    let mut objects = Vec::new();
    let mut decls = Vec::new();
    let mut identities = Vec::new();
    // (part, first object, first morphism) for each morphism.
    let mut owner = Vec::new();
    for (k, c) in parts.iter().enumerate() {
        let (o0, m0) = (objects.len(), decls.len());
        objects.extend(c.objects().map(|o| format!("{k}.{}", c.object_name(o))));
        identities.extend(c.objects().map(|o| m0 + c.identity(o)));
        for m in c.morphisms() {
            decls.push(MorphismDecl::new(
                format!("{k}.{}", c.morphism_name(m)),
                o0 + c.source(m),
                o0 + c.target(m),
            ));
            owner.push((k, m0));
        }
    }
    FiniteCategory::from_fn(objects, decls, identities, |g, f| {
        let ((kg, m0), (kf, _)) = (owner[g], owner[f]);
        if kg != kf {
            return None;
        }
        parts[kg].compose(g - m0, f - m0).map(|h| h + m0)
    })
}

/// An equivalent category in which object `o` appears `copies[o] >= 1` times,
/// with the equivalence collapsing the copies. Copy `k > 0` of `x` is named `x#k`.
pub fn inflate(c: &Arc<FiniteCategory>, copies: &[usize]) -> Result<(Arc<FiniteCategory>, FunctorData)> {
    if copies.len() != c.num_objects() || copies.contains(&0) {
        return Err(CategoryError::ConstructionFailure(
            "every object needs at least one copy".into(),
        ));
    }
    let tag = |name: &str, k: usize| {
        if k == 0 {
            name.to_string()
        } else {
            format!("{name}#{k}")
        }
    };
    let objs: Vec<(Obj, usize)> = c.objects().flat_map(|o| (0..copies[o]).map(move |k| (o, k))).collect();
    let index = |o: Obj, k: usize| objs.iter().position(|&p| p == (o, k)).expect("copy");
    let mut mors: Vec<(Mor, usize, usize)> = Vec::new();
    for m in c.morphisms() {
        for i in 0..copies[c.source(m)] {
            for j in 0..copies[c.target(m)] {
                mors.push((m, i, j));
            }
        }
    }
    let decls = mors
        .iter()
        .map(|&(m, i, j)| {
            let name = if i == 0 && j == 0 {
                c.morphism_name(m).to_string()
            } else {
                format!("{}#{i}.{j}", c.morphism_name(m))
            };
            MorphismDecl::new(name, index(c.source(m), i), index(c.target(m), j))
        })
        .collect();
    let mor_index = |m: Mor, i: usize, j: usize| mors.iter().position(|&p| p == (m, i, j)).expect("copy");
    let identities = objs.iter().map(|&(o, k)| mor_index(c.identity(o), k, k)).collect();
    let table: Vec<Vec<Option<Mor>>> = mors
        .iter()
        .map(|&(g, gi, gj)| {
            mors.iter()
                .map(|&(f, fi, fj)| (fj == gi && c.target(f) == c.source(g)).then(|| mor_index(c.comp(g, f), fi, gj)))
                .collect()
        })
        .collect();
    let big = Arc::new(FiniteCategory::from_fn(
        objs.iter().map(|&(o, k)| tag(c.object_name(o), k)).collect(),
        decls,
        identities,
        |g, f| table[g][f],
    )?);
    let collapse = FunctorData::new(
        big.clone(),
        c.clone(),
        objs.iter().map(|p| p.0).collect(),
        mors.iter().map(|p| p.0).collect(),
    )?;
    Ok((big, collapse))
}
