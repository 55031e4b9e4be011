//! Acceptance criteria. Prints one line per criterion and exits nonzero if
//! any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use logmin::category::{phi, LogCfg};
use logmin::harness::oracle::{congruence_classes, integral_by_search, DecompositionOracle};
use logmin::harness::{
    candidate_hom, cli, commands, generate_instances, integral_mono_where, rng_for, GenBounds, Instance, Kind, Status,
};
use logmin::models::{char_log_point_basic, CharLogPointDatum};
use logmin::monoid::{
    cokernel, is_integral_morphism, is_saturated, kernel_face, pushout_z_presentation, quotient_by_face, saturate,
    split_n, verify_split, verify_z_presentation, CokernelClass, FgAbelianGroup, FgMonoid, GroupElement, IntegralMono,
    MonoidError, MonoidHom, Nilpotence,
};
use serde_json::Value;

const SPLIT_DEGREE: usize = 6;
const SPLIT_LIMIT: Duration = Duration::from_secs(30);
const TRICHOTOMY_LIMIT: Duration = Duration::from_secs(30);
const DESCENT_LIMIT: Duration = Duration::from_secs(120);
const ORACLE_ENUMERATION_CAP: usize = 50;
const VERIFY_BOUND: usize = 4;
/// Word length covered by the brute-force integrality search.
const SEARCH_WORDS: i64 = 4;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn e(v: &[i64]) -> GroupElement {
    GroupElement::new(v.to_vec())
}

fn hom(d: FgMonoid, c: FgMonoid, m: Vec<Vec<i64>>) -> MonoidHom {
    MonoidHom::new(d, c, m).unwrap()
}

fn diagonal() -> IntegralMono {
    IntegralMono::new(hom(FgMonoid::free(1), FgMonoid::free(2), vec![vec![1], vec![1]])).unwrap()
}

fn integral_monos() -> Vec<IntegralMono> {
    generate_instances(Kind::IntegralMono, 0, 200, &GenBounds::default())
        .unwrap()
        .into_iter()
        .map(|i| match i {
            Instance::IntegralMono(h) => h,
            _ => unreachable!(),
        })
        .collect()
}

fn criterion1(monos: &[IntegralMono]) -> Outcome {
    let start = Instant::now();
    let (mut elements, mut mismatches, mut max_rank) = (0usize, 0usize, 0usize);
    for h in monos {
        max_rank = max_rank.max(h.p().dim());
        let grading = h.p().grading().unwrap().to_vec();
        let xs = h.p().elements_up_to(SPLIT_DEGREE);
        let deg = |x: &GroupElement| -> i64 {
            grading
                .iter()
                .zip(h.p().ambient().free_part(x))
                .map(|(a, b)| a * b)
                .sum()
        };
        let bound = xs.iter().map(deg).max().unwrap_or(0);
        let oracle = DecompositionOracle::new(h.hom(), &grading, bound);
        for x in &xs {
            elements += 1;
            let found = oracle.decompositions(x);
            match (h.primitive_decompose(x), found.as_slice()) {
                (Ok(d), [o]) if &d == o => {}
                _ => mismatches += 1,
            }
        }
    }
    let t = start.elapsed();
    outcome(
        monos.len() == 200 && max_rank <= 4 && mismatches == 0 && t < SPLIT_LIMIT,
        format!(
            "{} monos (ambient rank <= {max_rank}), {elements} elements of degree <= {SPLIT_DEGREE}, {mismatches} mismatches, {:.1}s (limit {}s)",
            monos.len(),
            t.as_secs_f64(),
            SPLIT_LIMIT.as_secs()
        ),
    )
}

fn trichotomy_instance(h: &IntegralMono) -> bool {
    matches!(h.nilpotents(), Ok(Nilpotence::NilpotentFree))
        && is_saturated(h.p()).unwrap_or(false)
        && cokernel(h).map(|c| c.group.rank == 1).unwrap_or(false)
}

fn trichotomy_monos() -> Vec<IntegralMono> {
    (0..100)
        .map(|id| integral_mono_where(1, id, &GenBounds::default(), trichotomy_instance).unwrap())
        .collect()
}

fn criterion2() -> (Outcome, Vec<IntegralMono>) {
    let start = Instant::now();
    let monos = trichotomy_monos();
    let mut counts = [0usize; 3];
    let mut bad = 0;
    for h in &monos {
        let c = cokernel(h).unwrap();
        match c.class {
            CokernelClass::Zero => counts[0] += 1,
            CokernelClass::FreeRankOne { .. } => counts[1] += 1,
            CokernelClass::GroupZ { .. } => counts[2] += 1,
            CokernelClass::Other { .. } => bad += 1,
        }
        if !c.group.is_torsion_free() {
            bad += 1;
        }
    }
    let t = start.elapsed();
    (
        outcome(
            monos.len() == 100 && bad == 0 && t < TRICHOTOMY_LIMIT,
            format!(
                "{} monos: zero {}, free_rank_one {}, group_z {}, violations {bad}, {:.1}s (limit {}s)",
                monos.len(),
                counts[0],
                counts[1],
                counts[2],
                t.as_secs_f64(),
                TRICHOTOMY_LIMIT.as_secs()
            ),
        ),
        monos,
    )
}

/// For `Δ` the cokernel class of `(x, y)` is `x - y`; the distinguished
/// elements are the primitive elements over `±1`, found by enumeration.
fn diagonal_oracle() -> (GroupElement, GroupElement, GroupElement) {
    let d = diagonal();
    let oracle = DecompositionOracle::new(d.hom(), &[1, 1], 4);
    let primitive: Vec<GroupElement> = FgMonoid::free(2)
        .elements_up_to(2)
        .into_iter()
        .filter(|x| {
            oracle
                .decompositions(x)
                .first()
                .map(|(r, q)| r == x && q.is_zero())
                .unwrap_or(false)
        })
        .collect();
    let over = |c: i64| primitive.iter().find(|x| x[0] - x[1] == c).unwrap().clone();
    let (p1, pm1) = (over(1), over(-1));
    let sum = FgMonoid::free(2).ambient().add(&p1, &pm1);
    let q0 = e(&[sum[0]]);
    assert_eq!(sum, e(&[q0[0], q0[0]]));
    (q0, p1, pm1)
}

fn criterion3(monos: &[IntegralMono]) -> Outcome {
    let (mut split, mut z, mut failures) = (0usize, 0usize, Vec::new());
    for h in monos.iter().chain(std::iter::once(&diagonal())) {
        if !matches!(h.nilpotents(), Ok(Nilpotence::NilpotentFree)) {
            continue;
        }
        match cokernel(h).unwrap().class {
            CokernelClass::FreeRankOne { .. } => {
                split += 1;
                let p = split_n(h).unwrap();
                if !verify_split(h, &p, VERIFY_BOUND).unwrap().passed() {
                    failures.push(format!("split {}", serde_json::to_string(h).unwrap()));
                }
            }
            CokernelClass::GroupZ { .. } => {
                z += 1;
                let zp = pushout_z_presentation(h).unwrap();
                if !verify_z_presentation(h, &zp, VERIFY_BOUND).unwrap().passed() {
                    failures.push(format!("z {}", serde_json::to_string(h).unwrap()));
                }
            }
            _ => {}
        }
    }
    let zp = pushout_z_presentation(&diagonal()).unwrap();
    let expected = diagonal_oracle();
    let delta_ok = (zp.q0.clone(), zp.p1.clone(), zp.pm1.clone()) == expected;
    if !delta_ok {
        failures.push(format!("delta gave {zp:?}, oracle {expected:?}"));
    }
    outcome(
        failures.is_empty() && split > 0 && z > 0,
        format!(
            "{split} split_N and {z} Z-presentation fixtures verified to word length {VERIFY_BOUND}; delta (q0,p1,pm1) = ({},{},{}); failures {:?}",
            zp.q0, zp.p1, zp.pm1, failures
        ),
    )
}

fn logcfgs() -> Vec<Arc<LogCfg>> {
    generate_instances(Kind::LogcfgTower, 0, 100, &GenBounds::default())
        .unwrap()
        .into_iter()
        .map(|i| match i {
            Instance::LogCfg(c) => c,
            _ => unreachable!(),
        })
        .collect()
}

fn criterion4_5() -> (Outcome, Outcome) {
    let start = Instant::now();
    let cfgs = logcfgs();
    let (mut failures, mut oversized) = (Vec::new(), 0usize);
    let (mut lifting_bad, mut diagrams) = (Vec::new(), 0usize);
    for (id, cfg) in cfgs.iter().enumerate() {
        let p = phi(cfg).unwrap();
        let fits = |c: &logmin::category::FiniteCategory| c.num_objects() <= 20 && c.num_morphisms() <= 120;
        if ![cfg.x(), cfg.logsch(), cfg.sch(), p.category()]
            .into_iter()
            .all(|c| fits(c))
        {
            oversized += 1;
        }
        for c in commands::logcfg_checks(cfg) {
            if c.name == "lifting_lemmas" {
                let d = &c.detail;
                let n1 = d["lemma1_diagrams"].as_u64().unwrap_or(0) as usize;
                let n2 = d["lemma2_diagrams"].as_u64().unwrap_or(0) as usize;
                diagrams += n1 + n2;
                if c.status != Status::Pass || d.get("skipped").is_some() {
                    lifting_bad.push(id);
                }
            } else if c.status != Status::Pass {
                failures.push(format!("{id}:{}", c.name));
            }
        }
    }
    let t = start.elapsed();
    (
        outcome(
            cfgs.len() == 100 && failures.is_empty() && oversized == 0 && t < DESCENT_LIMIT,
            format!(
                "{} LogCfg fixtures (<= 20 objects, <= 120 morphisms; {oversized} oversized): phi, groupoid fibration, B1, B2, minimal iff invertible, descent eta/theta; failures {failures:?}; {:.1}s (limit {}s)",
                cfgs.len(),
                t.as_secs_f64(),
                DESCENT_LIMIT.as_secs()
            ),
        ),
        outcome(
            lifting_bad.is_empty(),
            format!("{diagrams} lifting diagrams over {} fixtures, failing or skipped fixtures {lifting_bad:?}", cfgs.len()),
        ),
    )
}

fn fixtures_dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn run_cli(args: &[&str]) -> (i32, Value) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["logmin".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    let code = cli::run(argv, &mut out, &mut err);
    (code, serde_json::from_slice(&out).unwrap())
}

fn criterion6() -> Outcome {
    let dir = fixtures_dir();
    let path = |f: &str| dir.join(f).display().to_string();
    // (a) saturation of <2,3> is N.
    let (code, r) = run_cli(&["monoid", "saturate", "--input", &path("cusp.json")]);
    let sat = &r["checks"][0]["detail"]["saturation"];
    let a = code == 0
        && sat["generators"] == serde_json::json!([[1]])
        && sat["ambient"] == serde_json::json!({"rank": 1, "torsion": []});
    let direct = saturate(&FgMonoid::in_lattice(1, &[vec![2], vec![3]]).unwrap()).unwrap();
    let a = a && direct.same_monoid(&FgMonoid::free(1));
    // (b) <(1,0),(1,1)> in Z + Z/n has P^gp = Z + Z/n.
    let b = [2, 3, 4].iter().all(|&n| {
        let (code, r) = run_cli(&["monoid", "check", "--input", &path(&format!("torsion_n{n}.json"))]);
        let g = &r["checks"][0]["detail"]["groupification"];
        let m = FgMonoid::new(FgAbelianGroup::new(1, vec![n]).unwrap(), vec![e(&[1, 0]), e(&[1, 1])]).unwrap();
        code == 0
            && g == &serde_json::json!({"rank": 1, "torsion": [n]})
            && m.groupify().group() == &FgAbelianGroup::new(1, vec![n]).unwrap()
    });
    // (c) the point datum ((1,1),(0,0)).
    let (code, r) = run_cli(&["point", "basic", "--input", &path("collapsed_point.json")]);
    let d = &r["checks"][0]["detail"];
    let c = code == 0
        && d["ny"] == serde_json::json!({"ambient": {"rank": 2, "torsion": []}, "generators": [[1, 0], [0, 1]]})
        && d["z"] == serde_json::json!([[1, 1]])
        && d["basic"] == Value::Bool(false);
    let datum = CharLogPointDatum::new(
        hom(FgMonoid::free(2), FgMonoid::free(1), vec![vec![1, 1]]),
        hom(FgMonoid::free(2), FgMonoid::free(1), vec![vec![0, 0]]),
    )
    .unwrap();
    let c = c && !char_log_point_basic(&datum).unwrap().basic;
    // (d) ×2: N -> N has the nilpotent p = 1, n = 2. Oracle: smallest
    // primitive p > 0 and smallest n with n p not primitive.
    let double = IntegralMono::new(hom(FgMonoid::free(1), FgMonoid::free(1), vec![vec![2]])).unwrap();
    let oracle = DecompositionOracle::new(double.hom(), &[1], 16);
    let primitive = |x: i64| {
        oracle
            .decompositions(&e(&[x]))
            .first()
            .map(|(_, q)| q.is_zero())
            .unwrap_or(false)
    };
    let p = (1..=8).find(|&x| primitive(x)).unwrap();
    let n = (2..=8).find(|&k| !primitive(k * p)).unwrap();
    let d_ok = double.nilpotents().unwrap()
        == Nilpotence::Nilpotent {
            p: e(&[p]),
            n: n as u32,
        }
        && (p, n) == (1, 2);
    outcome(
        a && b && c && d_ok,
        format!("(a) saturation <2,3> = N: {a}; (b) P^gp = Z + Z/n for n = 2,3,4: {b}; (c) NY = N^2, z = (1,1), basic = false: {c}; (d) nilpotent (p, n) = ({p}, {n}): {d_ok}"),
    )
}

fn criterion7() -> Outcome {
    let bounds = GenBounds::default();
    let (mut faces, mut face_pairs, mut face_disagree) = (0usize, 0usize, 0usize);
    for id in 0..80 {
        let mut rng = rng_for(Kind::PointDatum, 7, id);
        let Some(h) = candidate_hom(&mut rng, &bounds) else {
            continue;
        };
        let m = h.codomain().clone();
        let Some(d) = (0..=4)
            .rev()
            .find(|&d| m.elements_up_to(d).len() <= ORACLE_ENUMERATION_CAP)
        else {
            continue;
        };
        let cols = 1 + (id as usize % 2);
        let a_matrix: Vec<Vec<i64>> = (0..cols)
            .map(|r| {
                (0..m.dim())
                    .map(|c| i64::from((c + r + id as usize).is_multiple_of(3)))
                    .collect()
            })
            .collect();
        let Ok(a) = MonoidHom::new(m.clone(), FgMonoid::free(cols), a_matrix) else {
            continue;
        };
        let face = kernel_face(&a);
        let (_, proj) = quotient_by_face(&m, &face).unwrap();
        let classes = congruence_classes(&m, &face, d, d + 4);
        faces += 1;
        let xs: Vec<&GroupElement> = classes.keys().collect();
        for x in &xs {
            for y in &xs {
                face_pairs += 1;
                if (proj.apply(x) == proj.apply(y)) != (classes[*x] == classes[*y]) {
                    face_disagree += 1;
                }
            }
        }
    }
    let (mut homs, mut non_integral, mut inconclusive, mut int_disagree) = (0usize, 0usize, 0usize, 0usize);
    let mut candidates: Vec<MonoidHom> = (0..600)
        .filter_map(|id| candidate_hom(&mut rng_for(Kind::IntegralMono, 3, id), &bounds))
        .collect();
    candidates.push(hom(FgMonoid::free(2), FgMonoid::free(1), vec![vec![1, 1]]));
    candidates.push(hom(FgMonoid::free(2), FgMonoid::free(2), vec![vec![1, 1], vec![0, 1]]));
    for (q, p, m) in [
        (2, 1, vec![vec![2, 3]]),
        (2, 1, vec![vec![4, 1]]),
        (3, 2, vec![vec![1, 0, 1], vec![0, 1, 1]]),
        (3, 1, vec![vec![1, 1, 1]]),
        (2, 2, vec![vec![2, 1], vec![0, 1]]),
    ] {
        candidates.push(hom(FgMonoid::free(q), FgMonoid::free(p), m));
    }
    for h in &candidates {
        let Some(grading) = h.codomain().grading().map(|g| g.to_vec()) else {
            continue;
        };
        let degs: Vec<i64> = h
            .codomain()
            .generators()
            .iter()
            .map(|g| {
                grading
                    .iter()
                    .zip(h.codomain().ambient().free_part(g))
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect();
        // Degrees are in grading units, so scale the window to a word length.
        let image_degs = h
            .generator_images()
            .iter()
            .map(|y| {
                grading
                    .iter()
                    .zip(h.codomain().ambient().free_part(y))
                    .map(|(a, b)| a * b)
                    .sum::<i64>()
            })
            .collect::<Vec<_>>();
        let bound = SEARCH_WORDS * degs.iter().chain(&image_degs).copied().max().unwrap_or(1).max(1);
        let enumerated =
            logmin::harness::oracle::weighted_elements(h.codomain().ambient(), h.codomain().generators(), &degs, bound);
        if enumerated.len() > ORACLE_ENUMERATION_CAP || !h.domain().is_sharp() {
            continue;
        }
        match is_integral_morphism(h) {
            Ok(b) => {
                homs += 1;
                non_integral += usize::from(!b);
                if b != integral_by_search(h, &grading, bound) {
                    int_disagree += 1;
                }
            }
            Err(MonoidError::BoundExceeded(_)) => inconclusive += 1,
            Err(e) => panic!("{e}"),
        }
    }
    outcome(
        face_disagree == 0 && int_disagree == 0 && faces >= 20 && homs >= 100 && non_integral >= 5,
        format!(
            "quotient_by_face: {faces} fixtures, {face_pairs} pairs, {face_disagree} disagreements; integrality: {homs} homs ({non_integral} non-integral, {inconclusive} inconclusive excluded), {int_disagree} disagreements; enumeration cap {ORACLE_ENUMERATION_CAP}"
        ),
    )
}

fn criterion8() -> Outcome {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_logmin"))
            .args(["suite", "run", "--seed", "0", "--count", "10", "--threads", threads])
            .output()
            .unwrap()
    };
    let (a, b, one) = (run("4"), run("4"), run("1"));
    let ok = a.status.code() == Some(0) && a.stdout == b.stdout && a.stdout == one.stdout;
    outcome(
        ok,
        format!(
            "suite run --seed 0 --count 10: {} bytes; two runs identical: {}; 1 vs 4 threads identical: {}",
            a.stdout.len(),
            a.stdout == b.stdout,
            a.stdout == one.stdout
        ),
    )
}

fn guarded(f: impl FnOnce() -> Outcome) -> Outcome {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        outcome(false, format!("panicked: {msg}"))
    })
}

fn main() {
    let monos = integral_monos();
    let mut results = vec![("splitting lemma", guarded(|| criterion1(&monos)))];
    let (c2, tri) = criterion2();
    results.push(("structure trichotomy", c2));
    let all: Vec<IntegralMono> = monos.iter().chain(&tri).cloned().collect();
    results.push(("construction verification", guarded(|| criterion3(&all))));
    let (c4, c5) = catch_unwind(criterion4_5)
        .unwrap_or_else(|_| (outcome(false, "panicked".into()), outcome(false, "panicked".into())));
    results.push(("descent round trip", c4));
    results.push(("lifting lemmas", c5));
    results.push(("worked examples", guarded(criterion6)));
    results.push(("oracle agreement", guarded(criterion7)));
    results.push(("determinism", guarded(criterion8)));
    let mut failed = 0;
    for (i, (name, o)) in results.iter().enumerate() {
        println!(
            "[{}] criterion {} {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            i + 1,
            o.detail
        );
        failed += usize::from(!o.pass);
    }
    println!(
        "acceptance: {} of {} criteria passed",
        results.len() - failed,
        results.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
