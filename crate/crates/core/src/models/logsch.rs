//! Finite categories of log points at the level of characteristic monoids.

use std::collections::HashMap;
use std::sync::Arc;

use super::error::{ModelError, Result};
use crate::category::{is_fibered, Bounds, CategoryError, CategorySpec, FiniteCategory, FunctorData, MorphismDecl};
use crate::monoid::{FgMonoid, GroupElement, MonoidError, MonoidHom};

/// Orientation note attached to generated fixtures.
pub const CONVENTION: &str = "an arrow X -> Y carries a monoid map M_Y -> M_X";

/// `LogSch` over a one-object `Sch`, with the monoid map of every arrow.
#[derive(Clone, Debug)]
pub struct FiniteLogSch {
    pub chars: Vec<FgMonoid>,
    pub logsch: Arc<FiniteCategory>,
    pub sch: Arc<FiniteCategory>,
    pub forget: FunctorData,
    /// `homs[m]: M_target -> M_source` for each arrow `m`.
    pub homs: Vec<MonoidHom>,
}

impl FiniteLogSch {
    /// The category as a fixture, with the orientation convention recorded.
    pub fn spec(&self) -> CategorySpec {
        let mut s = CategorySpec::from_category(&self.logsch);
        s.convention = Some(CONVENTION.to_string());
        s
    }
}

/// The monoid in coordinates of its own groupification, so that its
/// generators generate the ambient group.
fn normalize(m: &FgMonoid) -> Result<FgMonoid> {
    let sub = m.groupify();
    let gens = m
        .generators()
        .iter()
        .map(|g| sub.coords(g).expect("generator in its groupification"))
        .collect();
    Ok(FgMonoid::new(sub.group().clone(), gens)?)
}

fn format_images(h: &MonoidHom) -> String {
    h.generator_images()
        .iter()
        .map(|g| g.to_string())
        .collect::<Vec<_>>()
        .join("")
}

/// All homs `source -> target` sending each generator to an element of
/// word length at most `bound`.
fn bounded_homs(source: &FgMonoid, target: &FgMonoid, bound: usize, cap: usize) -> Result<Vec<MonoidHom>> {
    let choices: Vec<GroupElement> = target.elements_up_to(bound).into_iter().collect();
    let k = source.generators().len();
    let total = (choices.len() as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if total > cap as u128 * 64 {
        return Err(ModelError::Monoid(MonoidError::BoundExceeded(format!(
            "{total} candidate homs between characteristic monoids"
        ))));
    }
    let mut out: Vec<MonoidHom> = Vec::new();
    let mut idx = vec![0usize; k];
    loop {
        let images: Vec<GroupElement> = idx.iter().map(|&i| choices[i].clone()).collect();
        if let Ok(h) = MonoidHom::from_generator_images(source, target, &images) {
            if !out.iter().any(|o| o.matrix() == h.matrix()) {
                out.push(h);
            }
        }
        let mut i = 0;
        loop {
            if i == k {
                return Ok(out);
            }
            idx[i] += 1;
            if idx[i] < choices.len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

/// Objects are the given monoids (named `names[i]`), over one scheme. There
/// is an arrow `X_i -> X_j` for each hom `M_j -> M_i` whose generator images
/// have word length at most `hom_bound`. The arrows must be closed under
/// composition.
pub fn build_finite_logsch(names: &[String], chars: &[FgMonoid], hom_bound: usize) -> Result<FiniteLogSch> {
    let chars = prepare(names, chars)?;
    let bounds = Bounds::from_env();
    let mut arrows = Vec::new();
    for (i, mi) in chars.iter().enumerate() {
        for (j, mj) in chars.iter().enumerate() {
            for h in bounded_homs(mj, mi, hom_bound, bounds.max_morphisms)? {
                arrows.push((i, j, h));
                if arrows.len() > bounds.max_morphisms {
                    return Err(ModelError::Monoid(MonoidError::BoundExceeded(format!(
                        "more than {} arrows",
                        bounds.max_morphisms
                    ))));
                }
            }
        }
    }
    assemble(names, chars, arrows).map_err(|e| match e {
        ModelError::Category(CategoryError::MissingComposite { g, f }) => ModelError::Monoid(
            MonoidError::BoundExceeded(format!("composite {g}∘{f} exceeds the degree bound {hom_bound}")),
        ),
        e => e,
    })
}

/// Matrix entries beyond this mean the generated category is (very likely) infinite.
const MAX_ENTRY: i64 = 1 << 16;

/// The category generated by the given arrows `(i, j, h)`, where
/// `h: M_j -> M_i` gives an arrow `X_i -> X_j`, and the identities.
pub fn build_logsch_from_homs(
    names: &[String],
    chars: &[FgMonoid],
    generators: &[(usize, usize, MonoidHom)],
) -> Result<FiniteLogSch> {
    let originals = chars.to_vec();
    let chars = prepare(names, chars)?;
    let bounds = Bounds::from_env();
    let mut arrows: Vec<(usize, usize, MonoidHom)> = Vec::new();
    let push = |arrows: &mut Vec<(usize, usize, MonoidHom)>, a: (usize, usize, MonoidHom)| {
        if !arrows
            .iter()
            .any(|b| b.0 == a.0 && b.1 == a.1 && b.2.matrix() == a.2.matrix())
        {
            arrows.push(a);
        }
    };
    for (i, m) in chars.iter().enumerate() {
        push(&mut arrows, (i, i, MonoidHom::identity(m)));
    }
    for (i, j, h) in generators {
        if *i >= chars.len() || *j >= chars.len() || h.domain() != &originals[*j] || h.codomain() != &originals[*i] {
            return Err(ModelError::InvalidDatum(
                "arrow hom does not match its endpoints".into(),
            ));
        }
        let images: Vec<GroupElement> = chars[*j]
            .generators()
            .iter()
            .zip(originals[*j].generators())
            .map(|(_, g)| {
                let y = h.apply(g);
                originals[*i].groupify().coords(&y).expect("image in groupification")
            })
            .collect();
        let h = MonoidHom::from_generator_images(&chars[*j], &chars[*i], &images)?;
        push(&mut arrows, (*i, *j, h));
    }
    let mut done = 0;
    while done < arrows.len() {
        let n = arrows.len();
        for a in 0..n {
            for b in 0..n {
                if a < done && b < done {
                    continue;
                }
                // arrows[a]: X_i -> X_j followed by arrows[b]: X_j -> X_k.
                let (fa, fb) = (&arrows[a], &arrows[b]);
                if fa.1 == fb.0 {
                    let c = (fa.0, fb.1, fb.2.then(&fa.2)?);
                    if c.2.matrix().iter().flatten().any(|x| x.abs() > MAX_ENTRY) {
                        return Err(ModelError::Monoid(MonoidError::BoundExceeded(
                            "generated arrows have unbounded matrix entries".into(),
                        )));
                    }
                    push(&mut arrows, c);
                }
            }
        }
        done = n;
        if arrows.len() > bounds.max_morphisms {
            return Err(ModelError::Monoid(MonoidError::BoundExceeded(format!(
                "generated category has more than {} arrows",
                bounds.max_morphisms
            ))));
        }
    }
    arrows.sort_by_key(|a| (a.0, a.1));
    assemble(names, chars, arrows)
}

fn prepare(names: &[String], chars: &[FgMonoid]) -> Result<Vec<FgMonoid>> {
    if names.len() != chars.len() {
        return Err(ModelError::InvalidDatum("one name per monoid is required".into()));
    }
    if chars.iter().any(|m| !m.is_sharp()) {
        return Err(ModelError::Monoid(MonoidError::NotSharp));
    }
    chars.iter().map(normalize).collect()
}

fn assemble(names: &[String], chars: Vec<FgMonoid>, arrows: Vec<(usize, usize, MonoidHom)>) -> Result<FiniteLogSch> {
    let decls = arrows
        .iter()
        .map(|(i, j, h)| {
            let name = if i == j && *h == MonoidHom::identity(&chars[*i]) {
                format!("id_{}", names[*i])
            } else {
                format!("{}->{}{}", names[*i], names[*j], format_images(h))
            };
            MorphismDecl::new(name, *i, *j)
        })
        .collect();
    let index: HashMap<(usize, usize, Vec<Vec<i64>>), usize> = arrows
        .iter()
        .enumerate()
        .map(|(m, (i, j, h))| ((*i, *j, h.matrix().to_vec()), m))
        .collect();
    let identities = chars
        .iter()
        .enumerate()
        .map(|(i, m)| index[&(i, i, MonoidHom::identity(m).matrix().to_vec())])
        .collect();
    // g∘f for f: X_i -> X_j, g: X_j -> X_k carries homs[f] ∘ homs[g].
    let logsch = Arc::new(FiniteCategory::from_fn(names.to_vec(), decls, identities, |g, f| {
        let composite = arrows[g].2.then(&arrows[f].2).ok()?;
        index
            .get(&(arrows[f].0, arrows[g].1, composite.matrix().to_vec()))
            .copied()
    })?);
    let sch = Arc::new(FiniteCategory::from_fn(
        vec!["pt".to_string()],
        vec![MorphismDecl::new("id_pt", 0, 0)],
        vec![0],
        |_, _| Some(0),
    )?);
    let forget = FunctorData::new(
        logsch.clone(),
        sch.clone(),
        vec![0; logsch.num_objects()],
        vec![0; logsch.num_morphisms()],
    )?;
    if !is_fibered(&forget) {
        return Err(ModelError::InvalidDatum("forgetful functor is not fibered".into()));
    }
    Ok(FiniteLogSch {
        chars,
        logsch,
        sch,
        forget,
        homs: arrows.into_iter().map(|a| a.2).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{associated_groupoid_fibration, cartesian_table};

    fn names(n: &[&str]) -> Vec<String> {
        n.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn trivial_monoid_gives_terminal_category() {
        let l = build_finite_logsch(&names(&["pt"]), &[FgMonoid::zero()], 1).unwrap();
        assert_eq!(l.logsch.num_morphisms(), 1);
        assert!(cartesian_table(&l.forget).iter().all(|&b| b));
    }

    #[test]
    fn point_and_log_point() {
        let l = build_finite_logsch(&names(&["pt", "log"]), &[FgMonoid::zero(), FgMonoid::free(1)], 1).unwrap();
        let c = &l.logsch;
        // pt->pt, log->log (id, zero), pt->log, log->pt.
        assert_eq!(c.num_morphisms(), 5);
        let cart = cartesian_table(&l.forget);
        for m in c.morphisms() {
            assert_eq!(cart[m], l.homs[m].is_isomorphism(), "{}", c.morphism_name(m));
        }
        // The arrow pt -> log carries N -> 0.
        let m = c.find_morphism("pt->log()").unwrap();
        assert!(!cart[m]);
        let agf = associated_groupoid_fibration(&l.forget).unwrap();
        assert_eq!(agf.category.num_morphisms(), 2);
    }

    #[test]
    fn n_and_n2_contain_diagonal() {
        let l = build_finite_logsch(&names(&["N", "N2"]), &[FgMonoid::free(1), FgMonoid::free(2)], 1).unwrap();
        // The arrow N2 -> N carrying Δ: N -> N^2, 1 ↦ (1,1), needs degree 2.
        assert!(l.logsch.find_morphism("N2->N(1,1)").is_err());
        let swap = l.logsch.find_morphism("N2->N2(0,1)(1,0)").unwrap();
        assert!(l.logsch.is_isomorphism(swap));
    }

    #[test]
    fn diagonal_fixture_from_homs() {
        let delta = MonoidHom::new(FgMonoid::free(1), FgMonoid::free(2), vec![vec![1], vec![1]]).unwrap();
        let l = build_logsch_from_homs(
            &names(&["N", "N2"]),
            &[FgMonoid::free(1), FgMonoid::free(2)],
            &[(1, 0, delta)],
        )
        .unwrap();
        assert_eq!(l.logsch.num_morphisms(), 3);
        let m = l.logsch.find_morphism("N2->N(1,1)").unwrap();
        assert!(!cartesian_table(&l.forget)[m]);
    }

    #[test]
    fn generated_closure() {
        let double = MonoidHom::new(FgMonoid::free(1), FgMonoid::free(1), vec![vec![2]]).unwrap();
        let err = build_logsch_from_homs(&names(&["N"]), &[FgMonoid::free(1)], &[(0, 0, double)]).unwrap_err();
        // ×2 generates the infinite monoid of powers of 2.
        assert!(matches!(err, ModelError::Monoid(MonoidError::BoundExceeded(_))));
        let zero = MonoidHom::new(FgMonoid::free(1), FgMonoid::free(1), vec![vec![0]]).unwrap();
        let l = build_logsch_from_homs(&names(&["N"]), &[FgMonoid::free(1)], &[(0, 0, zero)]).unwrap();
        assert_eq!(l.logsch.num_morphisms(), 2);
    }

    #[test]
    fn unclosed_bound_is_reported() {
        let err = build_finite_logsch(&names(&["N"]), &[FgMonoid::free(1)], 2).unwrap_err();
        assert!(matches!(err, ModelError::Monoid(MonoidError::BoundExceeded(_))));
    }

    #[test]
    fn non_sharp_rejected() {
        let z = FgMonoid::in_lattice(1, &[vec![1], vec![-1]]).unwrap();
        assert!(build_finite_logsch(&names(&["Z"]), &[z], 1).is_err());
    }
}
