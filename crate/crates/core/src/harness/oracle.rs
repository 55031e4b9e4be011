//! Brute-force reference implementations used to cross-check the exact
//! algorithms. Everything here works on explicitly enumerated elements.

use std::collections::{BTreeMap, BTreeSet};

use crate::monoid::{FgAbelianGroup, FgMonoid, GroupElement, MonoidHom};

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Elements built from `gens` whose weight (sum of `weights` of the
/// generators used) is at most `bound`. Weights must be positive.
pub fn weighted_elements(
    group: &FgAbelianGroup,
    gens: &[GroupElement],
    weights: &[i64],
    bound: i64,
) -> BTreeMap<GroupElement, i64> {
    let mut best: BTreeMap<GroupElement, i64> = BTreeMap::new();
    best.insert(group.zero(), 0);
    let mut layer = vec![(group.zero(), 0)];
    while !layer.is_empty() {
        let mut next = Vec::new();
        for (x, w) in &layer {
            for (g, gw) in gens.iter().zip(weights) {
                let (y, yw) = (group.add(x, g), w + gw);
                if yw <= bound && best.get(&y).is_none_or(|&old| yw < old) {
                    best.insert(y.clone(), yw);
                    next.push((y, yw));
                }
            }
        }
        layer = next;
    }
    best
}

/// All ways of writing `p = r + h(q)` with `r` primitive, found by listing
/// every element of `P` and `Q` of degree at most `deg p` under `grading`.
pub fn primitive_decompositions(h: &MonoidHom, grading: &[i64], p: &GroupElement) -> Vec<(GroupElement, GroupElement)> {
    let bound = dot(grading, h.codomain().ambient().free_part(p));
    DecompositionOracle::new(h, grading, bound).decompositions(p)
}

/// Enumerated elements of `P` and `Q` up to a fixed degree, shared across
/// queries.
pub struct DecompositionOracle<'a> {
    h: &'a MonoidHom,
    grading: Vec<i64>,
    bound: i64,
    members: BTreeMap<GroupElement, i64>,
    /// Elements of `Q` with the degree of their image.
    qs: Vec<(GroupElement, i64)>,
    images: Vec<GroupElement>,
}

impl<'a> DecompositionOracle<'a> {
    pub fn new(h: &'a MonoidHom, grading: &[i64], bound: i64) -> Self {
        let pa = h.codomain().ambient();
        let deg = |x: &GroupElement| dot(grading, pa.free_part(x));
        let p_degs: Vec<i64> = h.codomain().generators().iter().map(&deg).collect();
        let members = weighted_elements(pa, h.codomain().generators(), &p_degs, bound);
        let images = h.generator_images();
        let q_degs: Vec<i64> = images.iter().map(&deg).collect();
        let qs = weighted_elements(h.domain().ambient(), h.domain().generators(), &q_degs, bound)
            .into_keys()
            .map(|q| {
                let d = deg(&h.apply(&q));
                (q, d)
            })
            .collect();
        DecompositionOracle {
            h,
            grading: grading.to_vec(),
            bound,
            members,
            qs,
            images,
        }
    }

    /// Decompositions of `p`; `p` must have degree at most the bound.
    pub fn decompositions(&self, p: &GroupElement) -> Vec<(GroupElement, GroupElement)> {
        let pa = self.h.codomain().ambient();
        let dp = dot(&self.grading, pa.free_part(p));
        assert!(dp <= self.bound, "element beyond the enumeration bound");
        let primitive = |r: &GroupElement| {
            self.images
                .iter()
                .all(|img| !self.members.contains_key(&pa.sub(r, img)))
        };
        self.qs
            .iter()
            .filter(|(_, d)| *d <= dp)
            .filter_map(|(x, _)| {
                let r = pa.sub(p, &self.h.apply(x));
                (self.members.contains_key(&r) && primitive(&r)).then_some((r, x.clone()))
            })
            .collect()
    }
}

/// The quotient of `M` by the congruence generated by `f ~ 0` for `f` in the
/// face, computed by union-find on the elements of word length at most
/// `depth`. Returns a class label for each element of word length at most
/// `shown`.
pub fn congruence_classes(m: &FgMonoid, face: &FgMonoid, shown: usize, depth: usize) -> BTreeMap<GroupElement, usize> {
    let a = m.ambient();
    let elems: Vec<GroupElement> = m.elements_up_to(depth).into_iter().collect();
    let index: BTreeMap<&GroupElement, usize> = elems.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let mut parent: Vec<usize> = (0..elems.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (i, x) in elems.iter().enumerate() {
        for f in face.generators() {
            if let Some(&j) = index.get(&a.add(x, f)) {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[ri.max(rj)] = ri.min(rj);
            }
        }
    }
    m.elements_up_to(shown)
        .into_iter()
        .map(|x| {
            let r = find(&mut parent, index[&x]);
            (x, r)
        })
        .collect()
}

/// Integrality by search: every relation `h(q1) + p1 = h(q2) + p2` with all
/// four terms of degree at most `bound` must have a witness
/// `p1 = h(q3) + p`, `p2 = h(q4) + p`, `q1 + q3 = q2 + q4`. Witnesses are
/// searched exhaustively (their degrees are bounded by those of `p1`, `p2`),
/// so `false` is a proof; `true` means no counterexample up to `bound`.
pub fn integral_by_search(h: &MonoidHom, grading: &[i64], bound: i64) -> bool {
    let (q, pm) = (h.domain(), h.codomain());
    let (qa, pa) = (q.ambient(), pm.ambient());
    let deg = |x: &GroupElement| dot(grading, pa.free_part(x));
    let p_degs: Vec<i64> = pm.generators().iter().map(&deg).collect();
    let images = h.generator_images();
    // Generators of Q in the kernel get weight 1 so the enumeration stays finite.
    let q_degs: Vec<i64> = images.iter().map(|y| deg(y).max(1)).collect();
    let ps: Vec<GroupElement> = weighted_elements(pa, pm.generators(), &p_degs, bound)
        .into_keys()
        .collect();
    let qs: Vec<GroupElement> = weighted_elements(qa, q.generators(), &q_degs, bound)
        .into_keys()
        .collect();
    let p_set: BTreeSet<&GroupElement> = ps.iter().collect();
    let q_set: BTreeSet<&GroupElement> = qs.iter().collect();
    let mut lhs: BTreeMap<GroupElement, Vec<(usize, usize)>> = BTreeMap::new();
    for (i, x) in qs.iter().enumerate() {
        for (j, y) in ps.iter().enumerate() {
            lhs.entry(pa.add(&h.apply(x), y)).or_default().push((i, j));
        }
    }
    for pairs in lhs.values() {
        for &(i1, j1) in pairs {
            for &(i2, j2) in pairs {
                let (q1, p1, q2, p2) = (&qs[i1], &ps[j1], &qs[i2], &ps[j2]);
                let witness = qs.iter().any(|q3| {
                    let p = pa.sub(p1, &h.apply(q3));
                    if !p_set.contains(&p) {
                        return false;
                    }
                    let q4 = qa.sub(&qa.add(q1, q3), q2);
                    q_set.contains(&q4) && pa.add(&h.apply(&q4), &p) == *p2
                });
                if !witness {
                    return false;
                }
            }
        }
    }
    true
}
