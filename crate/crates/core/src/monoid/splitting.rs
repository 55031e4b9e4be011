//! Cokernels of integral monomorphisms and the N / Z splittings.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::error::{MonoidError, Result};
use super::fgmonoid::FgMonoid;
use super::group::{FgAbelianGroup, GroupElement, QuotientMap, Subgroup};
use super::integral::{IntegralMono, Nilpotence};

/// Classification of the cokernel monoid `C = image of P in P^gp / Q^gp`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum CokernelClass {
    Zero,
    /// `C ≅ N`; `p` is the Q-primitive element mapping to the generator.
    FreeRankOne {
        p: GroupElement,
    },
    /// `C = P^gp / Q^gp ≅ Z`; `p1`, `pm1` are the Q-primitive elements over
    /// `±1`, with `p1` graded-lex smaller.
    GroupZ {
        p1: GroupElement,
        pm1: GroupElement,
    },
    Other {
        reason: String,
    },
}

impl CokernelClass {
    pub fn name(&self) -> &'static str {
        match self {
            CokernelClass::Zero => "zero",
            CokernelClass::FreeRankOne { .. } => "free_rank_one",
            CokernelClass::GroupZ { .. } => "group_z",
            CokernelClass::Other { .. } => "other",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Cokernel {
    /// `P^gp / h(Q^gp)`.
    pub group: FgAbelianGroup,
    /// The image of `P` in [`Self::group`].
    pub monoid: FgMonoid,
    pub class: CokernelClass,
    pub torsion_free: bool,
    sub: Subgroup,
    quotient: QuotientMap,
}

impl Cokernel {
    /// Class of an element of `P^gp` in the cokernel group.
    pub fn class_of(&self, p: &GroupElement) -> Option<GroupElement> {
        self.sub.coords(p).map(|c| self.quotient.apply(&c))
    }
}

pub fn cokernel(h: &IntegralMono) -> Result<Cokernel> {
    let p = h.p();
    let sub = p.groupify();
    let img_coords: Vec<GroupElement> = h
        .hom()
        .generator_images()
        .iter()
        .map(|y| sub.coords(y).expect("image of Q lies in P^gp"))
        .collect();
    let quotient = QuotientMap::new(sub.group(), &img_coords)?;
    let group = quotient.target().clone();
    let classes: Vec<GroupElement> = p
        .generators()
        .iter()
        .map(|g| quotient.apply(&sub.coords(g).expect("generator in P^gp")))
        .collect();
    let monoid = FgMonoid::new(group.clone(), classes.clone())?;
    let mut ck = Cokernel {
        torsion_free: group.is_torsion_free(),
        group,
        monoid,
        class: CokernelClass::Zero,
        sub,
        quotient,
    };
    ck.class = classify(h, &ck, &classes)?;
    Ok(ck)
}

fn classify(h: &IntegralMono, ck: &Cokernel, classes: &[GroupElement]) -> Result<CokernelClass> {
    let g = &ck.group;
    if g.is_trivial() {
        return Ok(CokernelClass::Zero);
    }
    if g.rank != 1 || !g.torsion.is_empty() {
        return Ok(CokernelClass::Other {
            reason: format!("cokernel group is {g}"),
        });
    }
    let values: Vec<i64> = classes.iter().map(|c| c[0]).collect();
    let has_pos = values.iter().any(|&v| v > 0);
    let has_neg = values.iter().any(|&v| v < 0);
    match (has_pos, has_neg) {
        (true, true) => {
            let a = primitive_over(h, ck, &values, 1)?;
            let b = primitive_over(h, ck, &values, -1)?;
            let (p1, pm1) = if a <= b { (a, b) } else { (b, a) };
            Ok(CokernelClass::GroupZ { p1, pm1 })
        }
        (true, false) | (false, true) => {
            let sign = if has_pos { 1 } else { -1 };
            if values.contains(&sign) {
                Ok(CokernelClass::FreeRankOne {
                    p: primitive_over(h, ck, &values, sign)?,
                })
            } else {
                Ok(CokernelClass::Other {
                    reason: "cokernel monoid is not saturated".into(),
                })
            }
        }
        (false, false) => Ok(CokernelClass::Other {
            reason: "cokernel group is Z but the monoid is zero".into(),
        }),
    }
}

/// The Q-primitive element of `P` over the class `target ∈ Z`.
fn primitive_over(h: &IntegralMono, ck: &Cokernel, values: &[i64], target: i64) -> Result<GroupElement> {
    let p = h.p();
    let a = p.ambient();
    let gens = p.generators();
    let span = values.iter().map(|v| v.abs()).max().unwrap_or(0);
    let lo = target.min(0) - 2 * span;
    let hi = target.max(0) + 2 * span;
    // Breadth-first search over partial sums of class values.
    let mut prev: HashMap<i64, (i64, usize)> = HashMap::new();
    let mut layer = vec![0i64];
    let mut reached = target == 0;
    while !reached && !layer.is_empty() {
        let mut next = Vec::new();
        for &v in &layer {
            for (i, &c) in values.iter().enumerate() {
                let w = v + c;
                if w < lo || w > hi || w == 0 || prev.contains_key(&w) {
                    continue;
                }
                prev.insert(w, (v, i));
                if w == target {
                    reached = true;
                }
                next.push(w);
            }
        }
        layer = next;
    }
    if !reached {
        return Err(MonoidError::BoundExceeded(format!(
            "no element of P over cokernel class {target}"
        )));
    }
    let mut x = a.zero();
    let mut v = target;
    while v != 0 {
        let (u, i) = prev[&v];
        x = a.add(&x, &gens[i]);
        v = u;
    }
    let (prim, _) = h.primitive_decompose(&x)?;
    debug_assert_eq!(ck.class_of(&prim).map(|c| c[0]), Some(target));
    Ok(prim)
}

fn require_nilpotent_free(h: &IntegralMono) -> Result<()> {
    match h.nilpotents()? {
        Nilpotence::NilpotentFree => Ok(()),
        Nilpotence::Nilpotent { p, n } => Err(MonoidError::NilpotentsPresent { p: p.into_coords(), n }),
    }
}

/// The unique `p` with `(h, p): Q ⊕ N -> P` an isomorphism.
pub fn split_n(h: &IntegralMono) -> Result<GroupElement> {
    require_nilpotent_free(h)?;
    match cokernel(h)?.class {
        CokernelClass::FreeRankOne { p } => Ok(p),
        other => Err(MonoidError::WrongCokernelClass {
            expected: "free_rank_one",
            found: other.name().into(),
        }),
    }
}

/// `(q0, p1, pm1)` presenting `P` as the pushout of `Δ: N -> N^2` along `1 ↦ q0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZPresentation {
    pub q0: GroupElement,
    pub p1: GroupElement,
    pub pm1: GroupElement,
}

pub fn pushout_z_presentation(h: &IntegralMono) -> Result<ZPresentation> {
    require_nilpotent_free(h)?;
    match cokernel(h)?.class {
        CokernelClass::GroupZ { p1, pm1 } => {
            let a = h.p().ambient();
            let (rest, q0) = h.primitive_decompose(&a.add(&p1, &pm1))?;
            if !rest.is_zero() {
                return Err(MonoidError::BoundExceeded(
                    "p1 + pm1 has a nonzero primitive part".into(),
                ));
            }
            Ok(ZPresentation { q0, p1, pm1 })
        }
        other => Err(MonoidError::WrongCokernelClass {
            expected: "group_z",
            found: other.name().into(),
        }),
    }
}

/// Outcome of a bounded bijectivity or normal-form check.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, msg: String) {
        if self.failures.len() < 8 {
            self.failures.push(msg);
        }
    }
}

/// Checks that `(q, n) ↦ h(q) + n p` is bijective on elements of `P` of
/// word length at most `bound`, and on pairs with `q` of word length and
/// `n` at most `bound`.
pub fn verify_split(h: &IntegralMono, p: &GroupElement, bound: usize) -> Result<CheckOutcome> {
    let a = h.p().ambient();
    let mut out = CheckOutcome::default();
    let mut multiples = vec![a.zero()];
    for _ in 0..=4 * bound {
        let last = multiples.last().unwrap().clone();
        multiples.push(a.add(&last, p));
    }
    for x in h.p().elements_up_to(bound) {
        out.checked += 1;
        let (prim, _) = h.primitive_decompose(&x)?;
        if !multiples.contains(&prim) {
            out.fail(format!("primitive part {prim} of {x} is not a multiple of {p}"));
        }
    }
    for q in h.q().elements_up_to(bound) {
        for (n, np) in multiples.iter().enumerate().take(bound + 1) {
            out.checked += 1;
            let x = a.add(&h.hom().apply(&q), np);
            let (prim, q2) = h.primitive_decompose(&x)?;
            if &prim != np || h.q().ambient().reduce(q.to_vec()) != q2 {
                out.fail(format!("(q={q}, n={n}) does not round trip"));
            }
        }
    }
    Ok(out)
}
