//! Integral morphisms, Q-primitive decomposition, and nilpotents.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use super::error::{MonoidError, Result};
use super::fgmonoid::{dot, FgMonoid};
use super::group::{FgAbelianGroup, GroupElement, QuotientMap};
use super::hilbert::combinations;
use super::hom::MonoidHom;
use super::lp;

/// Node budget for the minimal-solution enumeration.
pub const SOLUTION_NODE_CAP: usize = 400_000;

/// Per-generator cap on kernel generators tried during witness search.
const KERNEL_WITNESS_CAP: usize = 3;

/// Minimal nonzero solutions `y ∈ N^k` of `Σ y_j columns[j] = 0`
/// (Contejean–Devie completion).
pub fn minimal_solutions(columns: &[Vec<i64>], rows: usize, cap: usize) -> Result<Vec<Vec<u32>>> {
    let k = columns.len();
    let mut found: Vec<Vec<u32>> = Vec::new();
    let mut frontier: Vec<(Vec<u32>, Vec<i64>)> = (0..k)
        .map(|j| {
            let mut y = vec![0u32; k];
            y[j] = 1;
            (y, columns[j].clone())
        })
        .collect();
    let mut visited = 0usize;
    while !frontier.is_empty() {
        visited += frontier.len();
        if visited > cap {
            return Err(MonoidError::BoundExceeded(format!(
                "minimal solution search visited more than {cap} nodes"
            )));
        }
        let mut rest = Vec::new();
        for (y, ay) in frontier {
            if ay.iter().all(|&v| v == 0) {
                found.push(y);
            } else {
                rest.push((y, ay));
            }
        }
        let mut next = Vec::new();
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        for (y, ay) in &rest {
            for j in 0..k {
                if dot(ay, &columns[j]) >= 0 {
                    continue;
                }
                let mut z = y.clone();
                z[j] += 1;
                if found.iter().any(|m| m.iter().zip(&z).all(|(a, b)| a <= b)) {
                    continue;
                }
                if seen.insert(z.clone()) {
                    let az: Vec<i64> = ay.iter().zip(&columns[j]).map(|(a, b)| a + b).collect();
                    next.push((z, az));
                }
            }
        }
        debug_assert!(rows == 0 || next.iter().all(|(_, a)| a.len() == rows));
        frontier = next;
    }
    found.sort();
    Ok(found)
}

/// Columns `-m e_i` and `+m e_i` for each torsion coordinate, turning
/// congruences into equations over `N`.
fn torsion_slack_columns(g: &FgAbelianGroup) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for (i, &m) in g.torsion.iter().enumerate() {
        let mut plus = vec![0; g.dim()];
        plus[g.rank + i] = m;
        let minus: Vec<i64> = plus.iter().map(|x| -x).collect();
        out.push(minus);
        out.push(plus);
    }
    out
}

/// Elements `y` of `m` with `phi(y) <= bound`, where `phi` is positive on
/// every generator in `gens` (all lying in `group`).
fn bounded_elements(group: &FgAbelianGroup, gens: &[GroupElement], phi: &[i64], bound: i64) -> Vec<GroupElement> {
    let mut all = BTreeSet::new();
    all.insert(group.zero());
    let mut layer = vec![group.zero()];
    while !layer.is_empty() {
        let mut next = Vec::new();
        for x in &layer {
            for g in gens {
                let y = group.add(x, g);
                if dot(phi, group.free_part(&y)) <= bound && all.insert(y.clone()) {
                    next.push(y);
                }
            }
        }
        layer = next;
    }
    all.into_iter().collect()
}

fn counts_to_element(group: &FgAbelianGroup, counts: &[u32], gens: &[GroupElement]) -> GroupElement {
    let c: Vec<i64> = counts.iter().map(|&x| x as i64).collect();
    group.combination(&c, gens)
}

/// The integrality condition for homs of sharp monoids, checked on the
/// generators of the monoid of relations `h(q1) + p1 = h(q2) + p2`.
pub fn is_integral_morphism(h: &MonoidHom) -> Result<bool> {
    let (q, p) = (h.domain(), h.codomain());
    if !q.is_sharp() || !p.is_sharp() {
        return Err(MonoidError::NotSharp);
    }
    if h.is_monomorphism() {
        integral_mono_case(h)
    } else {
        integral_general_case(h)
    }
}

fn integral_mono_case(h: &MonoidHom) -> Result<bool> {
    let p = h.codomain();
    let pa = p.ambient();
    let images = h.generator_images();
    let image = h.image();
    let quot = QuotientMap::new(pa, &images)?;
    let k = quot.target().clone();
    let classes: Vec<Vec<i64>> = p.generators().iter().map(|g| quot.apply(g).into_coords()).collect();
    let b = classes.len();
    let mut cols: Vec<Vec<i64>> = classes.clone();
    cols.extend(classes.iter().map(|c| c.iter().map(|x| -x).collect::<Vec<_>>()));
    cols.extend(torsion_slack_columns(&k));
    let sols = minimal_solutions(&cols, k.dim(), SOLUTION_NODE_CAP)?;
    let phi = p.grading().expect("sharp codomain").to_vec();
    for s in sols {
        let p1 = counts_to_element(pa, &s[..b], p.generators());
        let p2 = counts_to_element(pa, &s[b..2 * b], p.generators());
        if p1 == p2 {
            continue;
        }
        let bound = dot(&phi, pa.free_part(&p1));
        let found = bounded_elements(pa, &images, &phi, bound).iter().any(|y| {
            let rest = pa.sub(&p1, y);
            p.contains_unchecked(&rest) && image.contains_unchecked(&pa.sub(&p2, &rest))
        });
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}

fn integral_general_case(h: &MonoidHom) -> Result<bool> {
    let (q, p) = (h.domain(), h.codomain());
    let (qa, pa) = (q.ambient(), p.ambient());
    let images = h.generator_images();
    let a = images.len();
    let b = p.generators().len();
    let neg = |v: &GroupElement| v.iter().map(|x| -x).collect::<Vec<i64>>();
    let mut cols: Vec<Vec<i64>> = images.iter().map(|v| v.to_vec()).collect();
    cols.extend(images.iter().map(neg));
    cols.extend(p.generators().iter().map(|v| v.to_vec()));
    cols.extend(p.generators().iter().map(neg));
    cols.extend(torsion_slack_columns(pa));
    let sols = minimal_solutions(&cols, pa.dim(), SOLUTION_NODE_CAP)?;
    let phi = p.grading().expect("sharp codomain").to_vec();
    let kernel_gens: Vec<usize> = (0..a).filter(|&j| images[j].is_zero()).collect();
    let live_gens: Vec<usize> = (0..a).filter(|&j| !images[j].is_zero()).collect();
    for s in sols {
        let q1 = counts_to_element(qa, &s[..a], q.generators());
        let q2 = counts_to_element(qa, &s[a..2 * a], q.generators());
        let p1 = counts_to_element(pa, &s[2 * a..2 * a + b], p.generators());
        let p2 = counts_to_element(pa, &s[2 * a + b..2 * a + 2 * b], p.generators());
        let bound = dot(&phi, pa.free_part(&p1));
        let mut witness = false;
        let live: Vec<GroupElement> = live_gens.iter().map(|&j| q.generators()[j].clone()).collect();
        let live_phi: Vec<i64> = live_gens.iter().map(|&j| dot(&phi, pa.free_part(&images[j]))).collect();
        'search: for q3 in bounded_domain_elements(qa, &live, &live_phi, bound) {
            for extra in kernel_offsets(qa, q, &kernel_gens) {
                let q3 = qa.add(&q3, &extra);
                let pr = pa.sub(&p1, &h.apply(&q3));
                if !p.contains_unchecked(&pr) {
                    continue;
                }
                let q4 = qa.sub(&qa.add(&q1, &q3), &q2);
                if q.contains_unchecked(&q4) && pa.add(&h.apply(&q4), &pr) == p2 {
                    witness = true;
                    break 'search;
                }
            }
        }
        if !witness {
            if kernel_gens.is_empty() {
                return Ok(false);
            }
            return Err(MonoidError::BoundExceeded(
                "no integrality witness within the kernel search bound".into(),
            ));
        }
    }
    Ok(true)
}

/// Domain elements built from `gens` whose weighted count is at most `bound`.
fn bounded_domain_elements(
    group: &FgAbelianGroup,
    gens: &[GroupElement],
    weights: &[i64],
    bound: i64,
) -> Vec<GroupElement> {
    let mut out = BTreeSet::new();
    let mut stack = vec![(0usize, group.zero(), 0i64)];
    while let Some((i, x, w)) = stack.pop() {
        if i == gens.len() {
            out.insert(x);
            continue;
        }
        let mut y = x;
        let mut wt = w;
        while wt <= bound {
            stack.push((i + 1, y.clone(), wt));
            y = group.add(&y, &gens[i]);
            wt += weights[i];
        }
    }
    out.into_iter().collect()
}

fn kernel_offsets(group: &FgAbelianGroup, q: &FgMonoid, kernel: &[usize]) -> Vec<GroupElement> {
    let gens: Vec<GroupElement> = kernel.iter().map(|&j| q.generators()[j].clone()).collect();
    let ones = vec![1i64; gens.len()];
    let bound = if gens.is_empty() { 0 } else { KERNEL_WITNESS_CAP as i64 };
    bounded_domain_elements(group, &gens, &ones, bound)
}

/// A validated integral monomorphism `h: Q -> P` of sharp monoids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MonoidHom", into = "MonoidHom")]
pub struct IntegralMono {
    hom: MonoidHom,
}

impl TryFrom<MonoidHom> for IntegralMono {
    type Error = MonoidError;
    fn try_from(h: MonoidHom) -> Result<Self> {
        IntegralMono::new(h)
    }
}

impl From<IntegralMono> for MonoidHom {
    fn from(h: IntegralMono) -> Self {
        h.hom
    }
}

/// Outcome of the nilpotent search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Nilpotence {
    /// `p` is Q-primitive and `n p` lies in the ideal generated by `Q \ {0}`.
    Nilpotent {
        p: GroupElement,
        n: u32,
    },
    NilpotentFree,
}

/// Safety cap on the multiple tried when confirming a nilpotent.
const NILPOTENT_MULTIPLE_CAP: u32 = 1 << 16;

impl IntegralMono {
    pub fn new(hom: MonoidHom) -> Result<Self> {
        if !hom.domain().is_sharp() || !hom.codomain().is_sharp() {
            return Err(MonoidError::NotIntegralMono("monoids must be sharp".into()));
        }
        if !hom.is_monomorphism() {
            return Err(MonoidError::NotIntegralMono("not injective".into()));
        }
        match is_integral_morphism(&hom) {
            Ok(true) => Ok(IntegralMono { hom }),
            Ok(false) => Err(MonoidError::NotIntegralMono("not integral".into())),
            Err(e) => Err(e),
        }
    }

    pub fn hom(&self) -> &MonoidHom {
        &self.hom
    }

    pub fn q(&self) -> &FgMonoid {
        self.hom.domain()
    }

    pub fn p(&self) -> &FgMonoid {
        self.hom.codomain()
    }

    fn ambient(&self) -> &FgAbelianGroup {
        self.p().ambient()
    }

    /// Whether no nonzero element of `Q` splits off `p` (assumes `p ∈ P`).
    pub fn is_primitive(&self, p: &GroupElement) -> bool {
        let a = self.ambient();
        self.hom
            .generator_images()
            .iter()
            .all(|g| !self.p().contains_unchecked(&a.sub(p, g)))
    }

    /// `p = p_prim + h(q)` with `p_prim` Q-primitive; `q` is returned in the
    /// ambient group of `Q`.
    pub fn primitive_decompose(&self, p: &GroupElement) -> Result<(GroupElement, GroupElement)> {
        if !self.p().contains(p)? {
            return Err(MonoidError::NotMember);
        }
        let a = self.ambient();
        let qa = self.q().ambient();
        let images = self.hom.generator_images();
        let mut rest = a.reduce(p.to_vec());
        let mut q = qa.zero();
        'strip: loop {
            for (g, img) in self.q().generators().iter().zip(&images) {
                let r = a.sub(&rest, img);
                if self.p().contains_unchecked(&r) {
                    rest = r;
                    q = qa.add(&q, g);
                    continue 'strip;
                }
            }
            return Ok((rest, q));
        }
    }

    /// Membership of `p ∈ P` in the ideal generated by `h(Q \ {0})`.
    pub fn in_ideal(&self, p: &GroupElement) -> Result<bool> {
        if !self.p().contains(p)? {
            return Err(MonoidError::NotMember);
        }
        Ok(!self.is_primitive(p))
    }

    /// Exact nilpotent test: some Q-primitive `p` has a multiple in the ideal
    /// iff some primitive sum of distinct generators of `P` spans a face of
    /// the cone of `P` containing the image of a generator of `Q`.
    pub fn nilpotents(&self) -> Result<Nilpotence> {
        let a = self.ambient();
        let gens = self.p().generators();
        let free: Vec<Vec<i64>> = gens.iter().map(|g| a.free_part(g).to_vec()).collect();
        let images: Vec<Vec<i64>> = self
            .hom
            .generator_images()
            .iter()
            .map(|g| a.free_part(g).to_vec())
            .collect();
        if images.is_empty() {
            return Ok(Nilpotence::NilpotentFree);
        }
        let mut dead: Vec<Vec<usize>> = Vec::new();
        for size in 1..=gens.len() {
            for subset in combinations(gens.len(), size) {
                if dead.iter().any(|d| d.iter().all(|i| subset.contains(i))) {
                    continue;
                }
                let sigma = subset.iter().fold(a.zero(), |acc, &i| a.add(&acc, &gens[i]));
                if !self.is_primitive(&sigma) {
                    dead.push(subset);
                    continue;
                }
                let s_free = a.free_part(&sigma).to_vec();
                if images.iter().any(|img| lp::in_face_of(&free, &s_free, img)) {
                    let mut x = sigma.clone();
                    for n in 2..=NILPOTENT_MULTIPLE_CAP {
                        x = a.add(&x, &sigma);
                        if !self.is_primitive(&x) {
                            return Ok(Nilpotence::Nilpotent { p: sigma, n });
                        }
                    }
                    return Err(MonoidError::BoundExceeded(
                        "nilpotent multiple exceeds search cap".into(),
                    ));
                }
            }
        }
        Ok(Nilpotence::NilpotentFree)
    }

    pub fn has_nilpotents(&self) -> Result<bool> {
        Ok(matches!(self.nilpotents()?, Nilpotence::Nilpotent { .. }))
    }
}
