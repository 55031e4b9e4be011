//! Finitely generated submonoids of finitely generated abelian groups.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use super::error::{MonoidError, Result};
use super::group::{FgAbelianGroup, GroupElement, QuotientMap, Subgroup};
use super::lp;

/// The submonoid of `ambient` generated by a finite list of elements.
///
/// Generators are reduced, the zero element is dropped, and the list is
/// sorted in graded-lex order and deduplicated, so two monoids built from
/// the same generator multiset compare equal.
#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "MonoidSpec", into = "MonoidSpec")]
pub struct FgMonoid {
    ambient: FgAbelianGroup,
    generators: Vec<GroupElement>,
    #[serde(skip)]
    oracle: OnceLock<Arc<Oracle>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct MonoidSpec {
    ambient: FgAbelianGroup,
    generators: Vec<Vec<i64>>,
}

impl TryFrom<MonoidSpec> for FgMonoid {
    type Error = MonoidError;
    fn try_from(s: MonoidSpec) -> Result<Self> {
        let ambient = FgAbelianGroup::new(s.ambient.rank, s.ambient.torsion)?;
        FgMonoid::new(ambient, s.generators.into_iter().map(GroupElement::new).collect())
    }
}

impl From<FgMonoid> for MonoidSpec {
    fn from(m: FgMonoid) -> Self {
        MonoidSpec {
            ambient: m.ambient,
            generators: m.generators.into_iter().map(|g| g.into_coords()).collect(),
        }
    }
}

/// Data for membership tests, computed on first use.
#[derive(Debug)]
struct Oracle {
    /// Indices of generators that are units.
    unit_gens: Vec<usize>,
    /// Quotient by the unit group, when there are units.
    quotient: Option<QuotientMap>,
    /// Images of the non-unit generators in the sharp quotient.
    images: Vec<GroupElement>,
    /// Integer functional on the free part of the sharp quotient, at least 1
    /// on every entry of `images`.
    grading: Vec<i64>,
    /// Dimension of the free part the grading acts on.
    free_rank: usize,
}

impl PartialEq for FgMonoid {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.generators == other.generators
    }
}

impl Eq for FgMonoid {}

impl std::hash::Hash for FgMonoid {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ambient.hash(state);
        self.generators.hash(state);
    }
}

impl fmt::Debug for FgMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FgMonoid")
            .field("ambient", &self.ambient)
            .field("generators", &self.generators)
            .finish()
    }
}

impl fmt::Display for FgMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "> in {}", self.ambient)
    }
}

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl FgMonoid {
    pub fn new(ambient: FgAbelianGroup, generators: Vec<GroupElement>) -> Result<Self> {
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            ambient.check(&g)?;
            let g = ambient.reduce(g.into_coords());
            if !g.is_zero() {
                gens.push(g);
            }
        }
        gens.sort();
        gens.dedup();
        Ok(FgMonoid {
            ambient,
            generators: gens,
            oracle: OnceLock::new(),
        })
    }

    /// `N^n` inside `Z^n`.
    pub fn free(n: usize) -> Self {
        let ambient = FgAbelianGroup::free(n);
        let gens = (0..n).map(|i| ambient.basis_element(i)).collect();
        Self::new(ambient, gens).expect("free monoid")
    }

    /// The zero monoid inside the trivial group.
    pub fn zero() -> Self {
        Self::free(0)
    }

    /// Submonoid of `Z^rank` generated by the given vectors.
    pub fn in_lattice(rank: usize, gens: &[Vec<i64>]) -> Result<Self> {
        Self::new(
            FgAbelianGroup::free(rank),
            gens.iter().cloned().map(GroupElement::new).collect(),
        )
    }

    pub fn ambient(&self) -> &FgAbelianGroup {
        &self.ambient
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn dim(&self) -> usize {
        self.ambient.dim()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    fn free_parts(&self) -> Vec<Vec<i64>> {
        self.generators
            .iter()
            .map(|g| self.ambient.free_part(g).to_vec())
            .collect()
    }

    fn oracle(&self) -> &Oracle {
        self.oracle.get_or_init(|| Arc::new(self.build_oracle()))
    }

    fn build_oracle(&self) -> Oracle {
        let free = self.free_parts();
        let unit_gens: Vec<usize> = (0..free.len())
            .filter(|&i| {
                let neg: Vec<i64> = free[i].iter().map(|x| -x).collect();
                lp::in_cone(&free, &neg)
            })
            .collect();
        let (quotient, images, free_rank) = if unit_gens.is_empty() {
            (None, self.generators.clone(), self.ambient.rank)
        } else {
            let rels: Vec<GroupElement> = unit_gens.iter().map(|&i| self.generators[i].clone()).collect();
            let q = QuotientMap::new(&self.ambient, &rels).expect("unit quotient");
            let images = (0..self.generators.len())
                .filter(|i| !unit_gens.contains(i))
                .map(|i| q.apply(&self.generators[i]))
                .collect();
            let r = q.target().rank;
            (Some(q), images, r)
        };
        let image_free: Vec<Vec<i64>> = images.iter().map(|g| g[..free_rank].to_vec()).collect();
        let grading = lp::positive_functional(&image_free, free_rank).expect("sharp quotient has a positive grading");
        Oracle {
            unit_gens,
            quotient,
            images,
            grading,
            free_rank,
        }
    }

    /// Indices into [`Self::generators`] of generators that are units.
    pub fn unit_generator_indices(&self) -> &[usize] {
        &self.oracle().unit_gens
    }

    pub fn is_sharp(&self) -> bool {
        self.oracle().unit_gens.is_empty()
    }

    /// The unit group, as the monoid generated by the unit generators and their negatives.
    pub fn units(&self) -> FgMonoid {
        let mut gens = Vec::new();
        for &i in self.unit_generator_indices() {
            let g = &self.generators[i];
            gens.push(g.clone());
            gens.push(self.ambient.neg(g));
        }
        FgMonoid::new(self.ambient.clone(), gens).expect("unit group")
    }

    /// An integer functional on the free part that is at least 1 on every
    /// generator. Only sharp monoids have one.
    pub fn grading(&self) -> Option<&[i64]> {
        let o = self.oracle();
        if o.quotient.is_none() {
            Some(&o.grading)
        } else {
            None
        }
    }

    /// Value of [`Self::grading`] on `x`.
    pub fn degree_of(&self, x: &GroupElement) -> Option<i64> {
        self.grading().map(|phi| dot(phi, self.ambient.free_part(x)))
    }

    /// Membership test.
    pub fn contains(&self, x: &GroupElement) -> Result<bool> {
        self.ambient.check(x)?;
        Ok(self.contains_unchecked(x))
    }

    pub(crate) fn contains_unchecked(&self, x: &GroupElement) -> bool {
        let x = self.ambient.reduce(x.to_vec());
        if x.is_zero() {
            return true;
        }
        let o = self.oracle();
        let y = match &o.quotient {
            Some(q) => q.apply(&x),
            None => x,
        };
        let target = match &o.quotient {
            Some(q) => q.target().clone(),
            None => self.ambient.clone(),
        };
        let mut failed = HashSet::new();
        search(&target, o, 0, y, &mut failed)
    }

    /// Groupification: the subgroup of the ambient generated by the generators.
    pub fn groupify(&self) -> Subgroup {
        Subgroup::generated_by(&self.ambient, &self.generators).expect("groupification")
    }

    /// All elements that are sums of at most `d` generators.
    pub fn elements_up_to(&self, d: usize) -> BTreeSet<GroupElement> {
        let mut all = BTreeSet::new();
        let mut layer = vec![self.ambient.zero()];
        all.insert(self.ambient.zero());
        for _ in 0..d {
            let mut next = Vec::new();
            for x in &layer {
                for g in &self.generators {
                    let y = self.ambient.add(x, g);
                    if all.insert(y.clone()) {
                        next.push(y);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            layer = next;
        }
        all
    }

    /// Minimal number of generators summing to `x` within `max` steps, if any.
    pub fn word_length(&self, x: &GroupElement, max: usize) -> Option<usize> {
        let mut seen = HashSet::new();
        let mut layer = vec![self.ambient.zero()];
        seen.insert(self.ambient.zero());
        for d in 0..=max {
            if layer.contains(x) {
                return Some(d);
            }
            let mut next = Vec::new();
            for y in &layer {
                for g in &self.generators {
                    let z = self.ambient.add(y, g);
                    if seen.insert(z.clone()) {
                        next.push(z);
                    }
                }
            }
            layer = next;
        }
        None
    }

    /// Whether every generator of `other` lies in `self` (same ambient).
    pub fn contains_monoid(&self, other: &FgMonoid) -> bool {
        self.ambient == other.ambient && other.generators.iter().all(|g| self.contains_unchecked(g))
    }

    /// Same ambient and mutual containment.
    pub fn same_monoid(&self, other: &FgMonoid) -> bool {
        self.contains_monoid(other) && other.contains_monoid(self)
    }
}

fn search(
    group: &FgAbelianGroup,
    o: &Oracle,
    i: usize,
    residual: GroupElement,
    failed: &mut HashSet<(usize, GroupElement)>,
) -> bool {
    if residual.is_zero() {
        return true;
    }
    if i == o.images.len() {
        return false;
    }
    let budget = dot(&o.grading, &residual[..o.free_rank]);
    if budget <= 0 {
        return false;
    }
    if failed.contains(&(i, residual.clone())) {
        return false;
    }
    let g = &o.images[i];
    let step = dot(&o.grading, &g[..o.free_rank]);
    let mut r = residual.clone();
    let mut spent = 0;
    while spent <= budget {
        if search(group, o, i + 1, r.clone(), failed) {
            return true;
        }
        r = group.sub(&r, g);
        spent += step;
    }
    failed.insert((i, residual));
    false
}
