//! The checks behind each subcommand. Every function returns a [`Report`];
//! an `Err` means the input itself was unusable.

use serde::Serialize;
use serde_json::{json, Value};

use super::error::Result;
use super::fixture::{CatInput, CurveInput, Fixture, MonoidInput, TowerInput};
use super::oracle;
use super::report::{Check, Report, Status};
use crate::category::{
    cartesian_table, check_lifting_lemmas, descent_construct, is_fibered, is_groupoid_fibration, phi, CategoryRef,
    LogCfg, Tower,
};
use crate::models::{basify_curve, char_log_point_basic, is_basic_curve, structure_classify, CurveStructure};
use crate::monoid::{
    cokernel, is_integral_morphism, is_saturated, monoid_pushout, pushout_z_presentation, saturate, split_n,
    verify_split, verify_z_presentation, CheckOutcome, CokernelClass, IntegralMono, MonoidError, MonoidHom, Nilpotence,
    ZPresentation,
};

/// Word-length bound for the bounded bijectivity and normal-form checks.
pub const VERIFY_BOUND: usize = 4;

pub(crate) fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

/// A check that errored: bound exhaustion is inconclusive, anything else fails.
pub(crate) fn errored(name: &str, e: &MonoidError) -> Check {
    let status = match e {
        MonoidError::BoundExceeded(_) => Status::Inconclusive,
        _ => Status::Fail,
    };
    Check::new(name, status, json!({ "error": e.to_string() }))
}

fn outcome(name: &str, o: &CheckOutcome, extra: Value) -> Check {
    Check::from_bool(
        name,
        o.passed(),
        json!({ "checked": o.checked, "failures": o.failures, "data": extra }),
    )
}

/// The precondition shared by `split`, `cokernel` and `pushout`.
fn require_integral(h: &MonoidHom) -> std::result::Result<IntegralMono, Check> {
    IntegralMono::new(h.clone()).map_err(|e| match e {
        MonoidError::BoundExceeded(_) => errored("integral_mono", &e),
        _ => Check::from_bool("integral_mono", false, json!({ "error": e.to_string() })),
    })
}

fn finish(command: &str, fx: &Fixture, checks: Vec<Check>) -> Report {
    let checks = checks
        .into_iter()
        .map(|c| c.with_counterexample(command, fx.value.clone()))
        .collect();
    Report::new(command, checks)
}

pub fn hom_checks(h: &MonoidHom) -> Vec<Check> {
    let sharp = h.domain().is_sharp() && h.codomain().is_sharp();
    let mut checks = vec![
        Check::from_bool("sharp", sharp, Value::Null),
        Check::from_bool("monomorphism", h.is_monomorphism(), Value::Null),
    ];
    if !sharp {
        return checks;
    }
    checks.push(match is_integral_morphism(h) {
        Ok(b) => Check::from_bool("integral", b, Value::Null),
        Err(e) => errored("integral", &e),
    });
    if let Some(Ok(claimed)) = checks.last().map(|c| match c.status {
        Status::Pass => Ok(true),
        Status::Fail => Ok(false),
        Status::Inconclusive => Err(()),
    }) {
        checks.push(integral_oracle_check(h, claimed));
    }
    if checks.iter().all(|c| c.status == Status::Pass) {
        if let Ok(im) = IntegralMono::new(h.clone()) {
            checks.push(decomposition_check(&im, VERIFY_BOUND));
            let nil = im.nilpotents();
            let c = cokernel(&im);
            let saturated = is_saturated(im.p());
            match (nil, c, saturated) {
                (Ok(n), Ok(c), Ok(sat)) => {
                    let nil_free = n == Nilpotence::NilpotentFree;
                    checks.push(Check::pass(
                        "structure",
                        json!({
                            "nilpotence": to_value(&n),
                            "cokernel": to_value(&c.class),
                            "cokernel_group": to_value(&c.group),
                            "codomain_saturated": sat,
                        }),
                    ));
                    if sat && nil_free && c.group.rank == 1 {
                        let ok = !matches!(c.class, CokernelClass::Other { .. }) && c.group.is_torsion_free();
                        checks.push(Check::from_bool(
                            "trichotomy",
                            ok,
                            json!({ "class": c.class.name(), "torsion_free": c.group.is_torsion_free() }),
                        ));
                    }
                }
                (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => checks.push(errored("structure", &e)),
            }
        }
    }
    checks
}

/// Degree bound (under the codomain grading) for the integrality search.
pub const INTEGRAL_SEARCH_DEGREE: i64 = 4;

/// Compares the exact integrality decision with [`oracle::integral_by_search`].
pub fn integral_oracle_check(h: &MonoidHom, claimed: bool) -> Check {
    let Some(grading) = h.codomain().grading() else {
        return Check::new(
            "integral_oracle",
            Status::Inconclusive,
            json!({ "error": "codomain has no grading" }),
        );
    };
    let found = oracle::integral_by_search(h, grading, INTEGRAL_SEARCH_DEGREE);
    Check::from_bool(
        "integral_oracle",
        found == claimed,
        json!({ "exact": claimed, "search": found }),
    )
}

/// Compares `primitive_decompose` with exhaustive enumeration on every
/// element of `P` of word length at most `degree`.
pub fn decomposition_check(im: &IntegralMono, degree: usize) -> Check {
    let grading = im.p().grading().expect("sharp codomain").to_vec();
    let elements = im.p().elements_up_to(degree);
    let pa = im.p().ambient();
    let bound = elements
        .iter()
        .map(|x| grading.iter().zip(pa.free_part(x)).map(|(a, b)| a * b).sum())
        .max()
        .unwrap_or(0);
    let enumerated = oracle::DecompositionOracle::new(im.hom(), &grading, bound);
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for x in elements {
        checked += 1;
        let found = enumerated.decompositions(&x);
        let ours = im.primitive_decompose(&x);
        let agree = matches!((&ours, found.as_slice()), (Ok(d), [o]) if d == o);
        if !agree && mismatches.len() < 5 {
            mismatches.push(json!({
                "element": x,
                "decomposition": ours.as_ref().ok(),
                "enumerated": found,
            }));
        }
    }
    Check::from_bool(
        "decomposition_oracle",
        mismatches.is_empty(),
        json!({ "checked": checked, "mismatches": mismatches }),
    )
}

pub fn monoid_check(fx: &Fixture) -> Result<Report> {
    let checks = match MonoidInput::from_fixture(fx)? {
        MonoidInput::Hom(h) => hom_checks(&h),
        MonoidInput::Monoid(m) => vec![Check::from_bool(
            "sharp",
            m.is_sharp(),
            json!({
                "saturated": is_saturated(&m).ok(),
                "generators": m.generators().len(),
                "groupification": to_value(m.groupify().group()),
            }),
        )],
        MonoidInput::Pushout { h, f } => {
            let mut checks = hom_checks(&h);
            checks.push(Check::from_bool(
                "f_codomain_sharp",
                f.codomain().is_sharp(),
                Value::Null,
            ));
            checks
        }
    };
    Ok(finish("monoid check", fx, checks))
}

fn expect_hom(fx: &Fixture, what: &str) -> Result<MonoidHom> {
    match MonoidInput::from_fixture(fx)? {
        MonoidInput::Hom(h) => Ok(h),
        _ => Err(super::HarnessError::input(
            fx.path.display().to_string(),
            format!("{what} expects a hom"),
        )),
    }
}

pub fn split_checks(im: &IntegralMono) -> Vec<Check> {
    match split_n(im) {
        Ok(p) => vec![match verify_split(im, &p, VERIFY_BOUND) {
            Ok(o) => outcome("split_n", &o, json!({ "p": p })),
            Err(e) => errored("split_n", &e),
        }],
        Err(e) => vec![errored("split_n", &e)],
    }
}

pub fn z_presentation_checks(im: &IntegralMono) -> Vec<Check> {
    match pushout_z_presentation(im) {
        Ok(z) => vec![match verify_z_presentation(im, &z, VERIFY_BOUND) {
            Ok(o) => outcome("z_presentation", &o, to_value(&z)),
            Err(e) => errored("z_presentation", &e),
        }],
        Err(e) => vec![errored("z_presentation", &e)],
    }
}

pub fn monoid_split(fx: &Fixture) -> Result<Report> {
    let h = expect_hom(fx, "monoid split")?;
    let checks = match require_integral(&h) {
        Ok(im) => split_checks(&im),
        Err(c) => vec![c],
    };
    Ok(finish("monoid split", fx, checks))
}

pub fn monoid_cokernel(fx: &Fixture) -> Result<Report> {
    let h = expect_hom(fx, "monoid cokernel")?;
    let checks = match require_integral(&h) {
        Ok(im) => vec![match cokernel(&im) {
            Ok(c) => Check::pass(
                "cokernel",
                json!({
                    "class": to_value(&c.class),
                    "group": to_value(&c.group),
                    "monoid": to_value(&c.monoid),
                    "torsion_free": c.torsion_free,
                }),
            ),
            Err(e) => errored("cokernel", &e),
        }],
        Err(c) => vec![c],
    };
    Ok(finish("monoid cokernel", fx, checks))
}

pub fn monoid_pushout_cmd(fx: &Fixture) -> Result<Report> {
    let checks = match MonoidInput::from_fixture(fx)? {
        MonoidInput::Hom(h) => match require_integral(&h) {
            Ok(im) => z_presentation_checks(&im),
            Err(c) => vec![c],
        },
        MonoidInput::Pushout { h, f } => match require_integral(&h) {
            Ok(im) => vec![match monoid_pushout(&im, &f) {
                Ok(s) => Check::pass(
                    "pushout",
                    json!({
                        "monoid": to_value(&s.monoid),
                        "in_p": s.in_p.matrix(),
                        "in_r": s.in_r.matrix(),
                        "sharp": s.monoid.is_sharp(),
                    }),
                ),
                Err(e) => errored("pushout", &e),
            }],
            Err(c) => vec![c],
        },
        MonoidInput::Monoid(_) => {
            return Err(super::HarnessError::input(
                fx.path.display().to_string(),
                "monoid pushout expects a hom or {\"h\", \"f\"}",
            ))
        }
    };
    Ok(finish("monoid pushout", fx, checks))
}

pub fn monoid_saturate(fx: &Fixture) -> Result<Report> {
    let m = match MonoidInput::from_fixture(fx)? {
        MonoidInput::Monoid(m) => m,
        _ => {
            return Err(super::HarnessError::input(
                fx.path.display().to_string(),
                "monoid saturate expects a monoid",
            ))
        }
    };
    let check = match (saturate(&m), is_saturated(&m)) {
        (Ok(s), Ok(was)) => Check::pass("saturate", json!({ "saturation": to_value(&s), "was_saturated": was })),
        (Err(e), _) | (_, Err(e)) => errored("saturate", &e),
    };
    Ok(finish("monoid saturate", fx, vec![check]))
}

fn input_err(fx: &Fixture, e: impl ToString) -> super::HarnessError {
    super::HarnessError::input(fx.path.display().to_string(), e)
}

/// The tower described by a fixture; LogCfg fixtures go through `phi`.
pub fn build_tower(fx: &Fixture, input: &TowerInput) -> Result<(Tower, Option<crate::category::Phi>)> {
    match input {
        TowerInput::Tower(spec) => Ok((spec.build(fx.base()).map_err(|e| input_err(fx, e))?, None)),
        TowerInput::LogCfg(spec) => {
            let cfg = spec.build(fx.base()).map_err(|e| input_err(fx, e))?;
            let p = phi(&cfg).map_err(|e| input_err(fx, e))?;
            Ok((p.tower.clone(), Some(p)))
        }
    }
}

fn names(c: &crate::category::FiniteCategory, keep: impl Fn(usize) -> bool) -> Vec<String> {
    c.objects()
        .filter(|&o| keep(o))
        .map(|o| c.object_name(o).to_string())
        .collect()
}

/// Minimal objects of `Φ` are exactly those with an invertible structure arrow.
pub fn minimal_iff_iso_check(p: &crate::category::Phi) -> Check {
    let minimal = p.tower.minimal_objects();
    let z = p.tower.z();
    let mismatched = names(z, |o| minimal[o] != p.has_iso_structure(o));
    Check::from_bool(
        "minimal_iff_iso_structure",
        mismatched.is_empty(),
        json!({ "minimal": names(z, |o| minimal[o]), "mismatched": mismatched }),
    )
}

/// Groupoid fibration, B1, B2, the descent equivalence and the lifting lemmas.
pub fn tower_checks(t: &Tower) -> Vec<Check> {
    let gf = t.is_groupoid_fibration();
    let mut checks = vec![Check::from_bool("groupoid_fibration", gf, Value::Null)];
    if !gf {
        return checks;
    }
    for (name, r) in [("b1", t.check_b1()), ("b2", t.check_b2())] {
        checks.push(match r {
            Ok(r) => Check::from_bool(name, r.holds, to_value(&r)),
            Err(e) => Check::from_bool(name, false, json!({ "error": e.to_string() })),
        });
    }
    checks.push(match descent_construct(t) {
        Ok(d) => {
            let v = d.verify(t);
            Check::from_bool(
                "descent",
                v.passed(),
                json!({ "checked": v.checked, "failures": v.failures, "minimal_objects": d.minimal.category.num_objects() }),
            )
        }
        Err(e) => Check::from_bool("descent", false, json!({ "error": e.to_string() })),
    });
    let lifting = check_lifting_lemmas(t);
    let ok = lifting.lemma1_failures == 0 && lifting.lemma2_failures == 0;
    checks.push(Check::from_bool("lifting_lemmas", ok, to_value(&lifting)));
    checks
}

/// The full round trip on a LogCfg: `phi`, then [`tower_checks`] and the
/// minimality criterion.
pub fn logcfg_checks(cfg: &LogCfg) -> Vec<Check> {
    match phi(cfg) {
        Ok(p) => {
            let c = p.category();
            let mut checks = vec![Check::pass(
                "phi",
                json!({ "objects": c.num_objects(), "morphisms": c.num_morphisms() }),
            )];
            checks.push(minimal_iff_iso_check(&p));
            checks.extend(tower_checks(&p.tower));
            checks
        }
        Err(e) => vec![Check::from_bool("phi", false, json!({ "error": e.to_string() }))],
    }
}

pub fn cat_validate(fx: &Fixture) -> Result<Report> {
    let check = match CatInput::from_fixture(fx)? {
        CatInput::Category(spec) => {
            let c = spec.build().map_err(|e| input_err(fx, e))?;
            Check::pass(
                "category",
                json!({ "objects": c.num_objects(), "morphisms": c.num_morphisms(), "groupoid": c.is_groupoid() }),
            )
        }
        CatInput::Functor(f) => {
            let f = load_functor(fx, &f.source, &f.target, &f.functor)?;
            Check::pass(
                "functor",
                json!({ "fibered": is_fibered(&f), "groupoid_fibration": is_groupoid_fibration(&f) }),
            )
        }
        CatInput::Tower(t) => {
            let (t, _) = build_tower(fx, &t)?;
            Check::pass(
                "tower",
                json!({ "objects": t.z().num_objects(), "morphisms": t.z().num_morphisms() }),
            )
        }
    };
    Ok(finish("cat validate", fx, vec![check]))
}

fn load_functor(
    fx: &Fixture,
    source: &CategoryRef,
    target: &CategoryRef,
    map: &crate::category::FunctorMapSpec,
) -> Result<crate::category::FunctorData> {
    let s = source.load(fx.base()).map_err(|e| input_err(fx, e))?;
    let t = target.load(fx.base()).map_err(|e| input_err(fx, e))?;
    map.build(&s, &t).map_err(|e| input_err(fx, e))
}

pub fn cat_cartesian(fx: &Fixture) -> Result<Report> {
    let f = match CatInput::from_fixture(fx)? {
        CatInput::Functor(f) => load_functor(fx, &f.source, &f.target, &f.functor)?,
        CatInput::Tower(t) => build_tower(fx, &t)?.0.f().clone(),
        CatInput::Category(_) => return Err(input_err(fx, "cat cartesian expects a functor or a tower")),
    };
    let table = cartesian_table(&f);
    let c = f.source();
    let non_cartesian: Vec<&str> = c
        .morphisms()
        .filter(|&m| !table[m])
        .map(|m| c.morphism_name(m))
        .collect();
    let check = Check::from_bool(
        "fibered",
        is_fibered(&f),
        json!({ "non_cartesian": non_cartesian, "groupoid_fibration": is_groupoid_fibration(&f) }),
    );
    Ok(finish("cat cartesian", fx, vec![check]))
}

fn expect_tower(fx: &Fixture, what: &str) -> Result<(Tower, Option<crate::category::Phi>)> {
    match CatInput::from_fixture(fx)? {
        CatInput::Tower(t) => build_tower(fx, &t),
        _ => Err(input_err(fx, format!("{what} expects a tower or a LogCfg"))),
    }
}

pub fn cat_minimal(fx: &Fixture) -> Result<Report> {
    let (t, p) = expect_tower(fx, "cat minimal")?;
    let minimal = t.minimal_objects();
    let mut checks = vec![Check::pass(
        "minimal",
        json!({ "minimal": names(t.z(), |o| minimal[o]) }),
    )];
    if let Some(p) = &p {
        checks.push(minimal_iff_iso_check(p));
    }
    Ok(finish("cat minimal", fx, checks))
}

pub fn cat_b1b2(fx: &Fixture) -> Result<Report> {
    let (t, _) = expect_tower(fx, "cat b1b2")?;
    let mut checks = tower_checks(&t);
    checks.retain(|c| matches!(c.name.as_str(), "groupoid_fibration" | "b1" | "b2"));
    Ok(finish("cat b1b2", fx, checks))
}

pub fn descent_run(fx: &Fixture) -> Result<Report> {
    let (t, p) = expect_tower(fx, "descent run")?;
    let mut checks = Vec::new();
    if let Some(p) = &p {
        checks.push(minimal_iff_iso_check(p));
    }
    checks.extend(tower_checks(&t));
    Ok(finish("descent run", fx, checks))
}

pub fn curve_point_checks(d: &crate::models::CurvePointDatum) -> Vec<Check> {
    let im = d.point_map();
    match structure_classify(d) {
        Ok(s) => {
            let mut checks = vec![Check::pass("structure", to_value(&s))];
            match &s {
                CurveStructure::Smooth => {}
                CurveStructure::Marked { p } => checks.push(match verify_split(im, p, VERIFY_BOUND) {
                    Ok(o) => outcome("marked_split", &o, Value::Null),
                    Err(e) => errored("marked_split", &e),
                }),
                CurveStructure::Node { q0, p1, pm1 } => {
                    let z = ZPresentation {
                        q0: q0.clone(),
                        p1: p1.clone(),
                        pm1: pm1.clone(),
                    };
                    checks.push(match verify_z_presentation(im, &z, VERIFY_BOUND) {
                        Ok(o) => outcome("node_presentation", &o, Value::Null),
                        Err(e) => errored("node_presentation", &e),
                    })
                }
            }
            checks
        }
        Err(e) => vec![Check::from_bool("structure", false, json!({ "error": e.to_string() }))],
    }
}

pub fn curve_classify(fx: &Fixture) -> Result<Report> {
    let checks = match CurveInput::from_fixture(fx)? {
        CurveInput::Point(d) => curve_point_checks(&d),
        CurveInput::Fiber(d) => {
            let (b, cmp) = basify_curve(&d);
            vec![
                Check::pass(
                    "basic_curve",
                    json!({ "basic": is_basic_curve(&d), "basic_base": to_value(b.base_char()), "comparison": cmp.matrix() }),
                ),
                Check::from_bool("basified_is_basic", is_basic_curve(&b), Value::Null),
            ]
        }
    };
    Ok(finish("curve classify", fx, checks))
}

pub fn point_checks(d: &crate::models::CharLogPointDatum) -> Vec<Check> {
    match char_log_point_basic(d) {
        Ok(b) => {
            let mut checks = vec![Check::pass(
                "point_basic",
                json!({ "ny": to_value(&b.ny), "z": b.z.matrix(), "basic": b.basic }),
            )];
            // Replacing M_Y by N_Y must give a basic datum.
            let face = crate::monoid::kernel_face(d.a());
            let again = crate::monoid::quotient_by_face(d.mx(), &face)
                .map_err(crate::models::ModelError::from)
                .and_then(|(_, proj)| crate::models::CharLogPointDatum::new(proj, d.h().clone()))
                .and_then(|d2| char_log_point_basic(&d2));
            checks.push(match again {
                Ok(b2) => Check::from_bool("basified_is_basic", b2.basic, Value::Null),
                Err(e) => Check::from_bool("basified_is_basic", false, json!({ "error": e.to_string() })),
            });
            checks
        }
        Err(e) => vec![Check::from_bool(
            "point_basic",
            false,
            json!({ "error": e.to_string() }),
        )],
    }
}

pub fn point_basic(fx: &Fixture) -> Result<Report> {
    let d: crate::models::CharLogPointDatum = fx.parse()?;
    Ok(finish("point basic", fx, point_checks(&d)))
}
