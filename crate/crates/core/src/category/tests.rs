//! Tests of towers, Φ and descent on small hand-built categories.

use std::sync::Arc;

use super::constructions::{inflate, product};
use super::finite::examples::*;
use super::finite::{FiniteCategory, MorphismDecl};
use super::*;

/// Log points over a point: `pt` (trivial monoid) and `log` (monoid N).
/// An arrow `X -> Y` is a monoid map `M_Y -> M_X`: `z` is the zero
/// endomorphism of N, `c: pt -> log` and `r: log -> pt` are zero maps.
fn log_points() -> Arc<FiniteCategory> {
    Arc::new(
        FiniteCategory::from_table(
            names(&["pt", "log"]),
            vec![
                MorphismDecl::new("id_pt", 0, 0),
                MorphismDecl::new("id_log", 1, 1),
                MorphismDecl::new("z", 1, 1),
                MorphismDecl::new("c", 0, 1),
                MorphismDecl::new("r", 1, 0),
            ],
            vec![0, 1],
            &[(2, 2, 2), (2, 3, 3), (3, 4, 2), (4, 3, 0), (4, 2, 4)],
        )
        .unwrap(),
    )
}

fn forget_to_point(ls: &Arc<FiniteCategory>) -> FunctorData {
    let t = Arc::new(terminal());
    FunctorData::new(ls.clone(), t, vec![0; ls.num_objects()], vec![0; ls.num_morphisms()]).unwrap()
}

/// `X = *` with `M(*) = log`.
fn single_log_point() -> LogCfg {
    let ls = log_points();
    let forget = forget_to_point(&ls);
    let x = Arc::new(terminal());
    let m = FunctorData::new(x, ls, vec![1], vec![1]).unwrap();
    LogCfg::new(m, forget).unwrap()
}

#[test]
fn phi_of_single_log_point() {
    let p = phi(&single_log_point()).unwrap();
    let z = p.category();
    assert_eq!(z.num_objects(), 3);
    let minimal = p.tower.minimal_objects();
    for o in z.objects() {
        assert_eq!(minimal[o], p.has_iso_structure(o), "{}", z.object_name(o));
    }
    assert_eq!(minimal.iter().filter(|&&b| b).count(), 1);
    let (b1, b2) = p.tower.check_conditions().unwrap();
    assert!(b1.holds && b2.holds);
    assert!(check_lifting_lemmas(&p.tower).passed());
}

#[test]
fn minimal_objects_are_pseudo_terminal_in_fibers() {
    let p = phi(&single_log_point()).unwrap();
    let t = &p.tower;
    let minimal = t.minimal_objects();
    let (fib, inc) = fiber_category(t.under(), 0).unwrap();
    let in_fiber: Vec<usize> = fib.objects().filter(|&o| minimal[inc.obj(o)]).collect();
    for &o in &in_fiber {
        assert!(is_pseudo_terminal(&fib, o));
    }
    assert!(weakly_terminal(&fib, &in_fiber).holds());
}

#[test]
fn descent_on_phi_output() {
    let p = phi(&single_log_point()).unwrap();
    let d = descent_construct(&p.tower).unwrap();
    assert!(d.verify(&p.tower).passed());
    assert_eq!(d.minimal.category.num_objects(), 1);
}

#[test]
fn identity_tower_over_point() {
    let ls = log_points();
    let t = Tower::new(FunctorData::identity(&ls), forget_to_point(&ls)).unwrap();
    assert_eq!(t.minimal_objects(), vec![true, false]);
    let (b1, b2) = t.check_conditions().unwrap();
    assert!(b1.holds && b2.holds);
    let d = descent_construct(&t).unwrap();
    assert!(d.verify(&t).passed());
}

#[test]
fn descent_on_inflated_tower() {
    let p = phi(&single_log_point()).unwrap();
    let z = p.category().clone();
    let copies: Vec<usize> = z.objects().map(|o| 1 + o % 2).collect();
    let (big, collapse) = inflate(&z, &copies).unwrap();
    let t = Tower::new(collapse.then(p.tower.f()).unwrap(), p.tower.forget().clone()).unwrap();
    assert!(t.is_groupoid_fibration());
    let d = descent_construct(&t).unwrap();
    assert!(d.verify(&t).passed());
    assert_eq!(big.num_objects(), d.psi.target().num_objects());
}

#[test]
fn non_groupoid_fibration_is_rejected() {
    // Z = LogSch × arrow projected to LogSch: the fiber arrow is not cartesian.
    let ls = log_points();
    let (z, pl, _) = product(&ls, &Arc::new(arrow())).unwrap();
    let t = Tower::new(pl, forget_to_point(&ls)).unwrap();
    assert!(matches!(t.check_b1(), Err(CategoryError::NotGroupoidFibration(_))));
    assert!(descent_construct(&t).is_err());
    assert!(check_lifting_lemmas(&t).skipped.is_some());
    assert_eq!(z.num_objects(), 4);
}

#[test]
fn groupoid_core_is_not_fibered_over_logsch() {
    // Only isomorphisms are kept, so c: pt -> log has no lift.
    let ls = log_points();
    let (core, inc) = subcategory(&ls, |_| true, |m| ls.is_isomorphism(m)).unwrap();
    assert_eq!(core.num_morphisms(), 2);
    let t = Tower::new(inc, forget_to_point(&ls)).unwrap();
    assert!(!t.is_groupoid_fibration());
    assert!(matches!(t.check_b2(), Err(CategoryError::NotGroupoidFibration(_))));
}

#[test]
fn log_cfg_rejects_non_cartesian_m() {
    let ls = log_points();
    let forget = forget_to_point(&ls);
    let c = Arc::new(cyclic(2));
    // t1 ↦ z is not even a functor; t1 ↦ id is fine.
    assert!(FunctorData::new(c.clone(), ls.clone(), vec![1], vec![1, 2]).is_err());
    let arrow_cat = Arc::new(arrow());
    let m = FunctorData::new(arrow_cat, ls, vec![0, 1], vec![0, 1, 3]).unwrap();
    assert!(matches!(
        LogCfg::new(m, forget),
        Err(CategoryError::ValidationFailure(_))
    ));
}

/// Category of elements of a presheaf `S` on `base`: `action[m][t] = S(m)(t)`.
fn elements(base: &Arc<FiniteCategory>, sizes: &[usize], action: &[Vec<usize>]) -> FunctorData {
    let objs: Vec<(usize, usize)> = base
        .objects()
        .flat_map(|o| (0..sizes[o]).map(move |s| (o, s)))
        .collect();
    let idx = |o: usize, s: usize| objs.iter().position(|&p| p == (o, s)).unwrap();
    let mut mors: Vec<(usize, usize)> = Vec::new();
    for m in base.morphisms() {
        for t in 0..sizes[base.target(m)] {
            mors.push((m, t));
        }
    }
    let decls = mors
        .iter()
        .map(|&(m, t)| {
            MorphismDecl::new(
                format!("{}.{t}", base.morphism_name(m)),
                idx(base.source(m), action[m][t]),
                idx(base.target(m), t),
            )
        })
        .collect();
    let ids = objs
        .iter()
        .map(|&(o, s)| mors.iter().position(|&p| p == (base.identity(o), s)).unwrap())
        .collect();
    let cat = Arc::new(
        FiniteCategory::from_fn(
            objs.iter()
                .map(|&(o, s)| format!("{}.{s}", base.object_name(o)))
                .collect(),
            decls,
            ids,
            |g, f| {
                let ((gm, u), (fm, t)) = (mors[g], mors[f]);
                (action[gm][u] == t && base.target(fm) == base.source(gm))
                    .then(|| mors.iter().position(|&p| p == (base.comp(gm, fm), u)).unwrap())
            },
        )
        .unwrap(),
    );
    FunctorData::new(
        cat,
        base.clone(),
        objs.iter().map(|p| p.0).collect(),
        mors.iter().map(|p| p.0).collect(),
    )
    .unwrap()
}

#[test]
fn descent_on_discrete_fibration() {
    // S(pt) = {a}, S(log) = {b0, b1}; S(r)(a) = b0, S(c) = const a, S(z) = const b0.
    let ls = log_points();
    let action = vec![vec![0], vec![0, 1], vec![0, 0], vec![0, 0], vec![0]];
    let f = elements(&ls, &[1, 2], &action);
    let t = Tower::new(f, forget_to_point(&ls)).unwrap();
    assert!(t.is_groupoid_fibration());
    let z = t.z().clone();
    let minimal = t.minimal_objects();
    let names: Vec<&str> = z.objects().filter(|&o| minimal[o]).map(|o| z.object_name(o)).collect();
    assert_eq!(names, vec!["log.1"]);
    let (b1, b2) = t.check_conditions().unwrap();
    assert!(b1.holds && b2.holds);
    assert!(check_lifting_lemmas(&t).passed());
    let d = descent_construct(&t).unwrap();
    assert!(d.verify(&t).passed());
}

#[test]
fn minimal_free_fiber_fails_b1() {
    // One log point whose only non-identity endomorphism z is idempotent.
    let ls = Arc::new(
        FiniteCategory::from_table(
            names(&["log"]),
            vec![MorphismDecl::new("id", 0, 0), MorphismDecl::new("z", 0, 0)],
            vec![0],
            &[(1, 1, 1)],
        )
        .unwrap(),
    );
    let t = Tower::new(FunctorData::identity(&ls), forget_to_point(&ls)).unwrap();
    assert_eq!(t.minimal_objects(), vec![false]);
    let b1 = t.check_b1().unwrap();
    assert!(!b1.holds);
    assert!(b1.witness.unwrap().starts_with("log"));
    assert!(matches!(
        descent_construct(&t),
        Err(CategoryError::ConditionsNotSatisfied(_))
    ));
}

/// A discrete fibration over `arrow × log points` violating B2: every fiber
/// is a point except over `(1,log)`, which has two elements, and every
/// non-identity restriction map is constant.
fn b2_violator() -> Tower {
    let sch = Arc::new(arrow());
    let (ls, forget, _) = product(&sch, &log_points()).unwrap();
    let sizes: Vec<usize> = ls
        .objects()
        .map(|o| if ls.object_name(o) == "(1,log)" { 2 } else { 1 })
        .collect();
    let action: Vec<Vec<usize>> = ls
        .morphisms()
        .map(|m| {
            let n = sizes[ls.target(m)];
            if ls.is_identity(m) {
                (0..n).collect()
            } else {
                vec![0; n]
            }
        })
        .collect();
    Tower::new(elements(&ls, &sizes, &action), forget).unwrap()
}

#[test]
fn b2_violation_has_witness_and_skips_lemmas() {
    let t = b2_violator();
    assert!(t.is_groupoid_fibration());
    let (b1, b2) = t.check_conditions().unwrap();
    assert!(b1.holds);
    assert!(!b2.holds);
    assert!(b2.witness.is_some());
    let r = check_lifting_lemmas(&t);
    assert_eq!(r.skipped.as_deref(), Some("B2 does not hold"));
    assert!(descent_construct(&t).is_err());
}
