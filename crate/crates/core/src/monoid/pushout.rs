//! Pushouts along integral monomorphisms.

use super::error::{MonoidError, Result};
use super::fgmonoid::FgMonoid;
use super::group::{GroupElement, QuotientMap};
use super::hom::MonoidHom;
use super::integral::IntegralMono;
use super::splitting::{CheckOutcome, ZPresentation};

/// `S = P ⊕_Q R` for an integral monomorphism `h: Q -> P` and any `f: Q -> R`.
///
/// Elements are written `[p, r]`; the normal form has `p` Q-primitive.
#[derive(Clone, Debug)]
pub struct Pushout {
    h: IntegralMono,
    f: MonoidHom,
    quotient: QuotientMap,
    pub monoid: FgMonoid,
    pub in_p: MonoidHom,
    pub in_r: MonoidHom,
}

pub fn monoid_pushout(h: &IntegralMono, f: &MonoidHom) -> Result<Pushout> {
    if f.domain() != h.q() {
        return Err(MonoidError::BadMatrix("pushout legs have different domains".into()));
    }
    let r = f.codomain();
    if !r.is_sharp() {
        return Err(MonoidError::NotSharp);
    }
    let p = h.p();
    let (dp, dr) = (p.dim(), r.dim());
    let n = dp + dr;
    let pad = |v: &[i64], offset: usize| {
        let mut out = vec![0i64; n];
        out[offset..offset + v.len()].copy_from_slice(v);
        out
    };
    let mut rels: Vec<Vec<i64>> = Vec::new();
    rels.extend(p.ambient().relations().iter().map(|v| pad(v, 0)));
    rels.extend(r.ambient().relations().iter().map(|v| pad(v, dp)));
    for g in h.q().generators() {
        let mut v = h.hom().apply(g).into_coords();
        v.extend(f.apply(g).iter().map(|x| -x));
        rels.push(v);
    }
    let quotient = QuotientMap::from_relations(n, &rels)?;
    let target = quotient.target().clone();
    let mut gens = Vec::new();
    for g in p.generators() {
        gens.push(quotient.apply_raw(&pad(g, 0))?);
    }
    for g in r.generators() {
        gens.push(quotient.apply_raw(&pad(g, dp))?);
    }
    let monoid = FgMonoid::new(target, gens)?;
    let cols = |range: std::ops::Range<usize>| -> Vec<Vec<i64>> {
        quotient
            .matrix()
            .iter()
            .map(|row| row[range.clone()].to_vec())
            .collect()
    };
    let in_p = MonoidHom::new(p.clone(), monoid.clone(), cols(0..dp))?;
    let in_r = MonoidHom::new(r.clone(), monoid.clone(), cols(dp..n))?;
    Ok(Pushout {
        h: h.clone(),
        f: f.clone(),
        quotient,
        monoid,
        in_p,
        in_r,
    })
}

impl Pushout {
    /// Image of `[p, r]` in the ambient group of the pushout.
    pub fn class(&self, p: &GroupElement, r: &GroupElement) -> GroupElement {
        let mut v = p.to_vec();
        v.extend_from_slice(r);
        self.quotient.apply(&GroupElement::new(v))
    }

    /// `[p, r] = [p', r + f(q)]` where `p = p' + h(q)` with `p'` Q-primitive.
    pub fn normal_form(&self, p: &GroupElement, r: &GroupElement) -> Result<(GroupElement, GroupElement)> {
        if !self.f.codomain().contains(r)? {
            return Err(MonoidError::NotMember);
        }
        let (prim, q) = self.h.primitive_decompose(p)?;
        let ra = self.f.codomain().ambient();
        Ok((prim, ra.add(r, &self.f.apply(&q))))
    }

    /// Sum of two normal forms, renormalized.
    pub fn add(
        &self,
        a: &(GroupElement, GroupElement),
        b: &(GroupElement, GroupElement),
    ) -> Result<(GroupElement, GroupElement)> {
        let pa = self.h.p().ambient();
        let ra = self.f.codomain().ambient();
        self.normal_form(&pa.add(&a.0, &b.0), &ra.add(&a.1, &b.1))
    }

    pub fn h(&self) -> &IntegralMono {
        &self.h
    }

    pub fn f(&self) -> &MonoidHom {
        &self.f
    }
}

/// Checks a Z presentation: `h(n q0) = n p1 + n pm1` with both summands
/// primitive, every element of `P` up to word length `bound` has primitive
/// part a multiple of `p1` or `pm1`, and the comparison map from the pushout
/// of `Δ: N -> N^2` along `1 ↦ q0` to `P` is an isomorphism.
pub fn verify_z_presentation(h: &IntegralMono, z: &ZPresentation, bound: usize) -> Result<CheckOutcome> {
    let pa = h.p().ambient();
    let mut out = CheckOutcome::default();
    let mut pos = vec![pa.zero()];
    let mut neg = vec![pa.zero()];
    let mut q_mult = h.q().ambient().zero();
    for n in 1..=bound.max(1) * 2 {
        pos.push(pa.add(&pos[n - 1], &z.p1));
        neg.push(pa.add(&neg[n - 1], &z.pm1));
        q_mult = h.q().ambient().add(&q_mult, &z.q0);
        out.checked += 1;
        if h.hom().apply(&q_mult) != pa.add(&pos[n], &neg[n]) {
            out.failures.push(format!("h({n} q0) != {n} p1 + {n} pm1"));
        }
        if !h.is_primitive(&pos[n]) || !h.is_primitive(&neg[n]) {
            out.failures.push(format!("{n} p1 or {n} pm1 is not primitive"));
        }
    }
    for x in h.p().elements_up_to(bound) {
        out.checked += 1;
        let (prim, _) = h.primitive_decompose(&x)?;
        if !pos.contains(&prim) && !neg.contains(&prim) {
            out.failures
                .push(format!("primitive part {prim} of {x} is off the p1/pm1 rays"));
        }
    }
    let delta = IntegralMono::new(MonoidHom::new(
        FgMonoid::free(1),
        FgMonoid::free(2),
        vec![vec![1], vec![1]],
    )?)?;
    let f = MonoidHom::from_generator_images(&FgMonoid::free(1), h.q(), std::slice::from_ref(&z.q0))?;
    let s = monoid_pushout(&delta, &f)?;
    // [a, b, q] ↦ a p1 + b pm1 + h(q) on the raw direct sum.
    let lifted: Vec<Vec<i64>> = (0..pa.dim())
        .map(|i| {
            let mut row = vec![z.p1[i], z.pm1[i]];
            row.extend_from_slice(&h.hom().matrix()[i]);
            row
        })
        .collect();
    out.checked += 1;
    match MonoidHom::induced_from_quotient(&s.quotient, &s.monoid, h.p(), &lifted) {
        Ok(cmp) if cmp.is_isomorphism() => {}
        Ok(_) => out
            .failures
            .push("comparison map from the pushout is not an isomorphism".into()),
        Err(e) => out.failures.push(format!("comparison map is not a hom: {e}")),
    }
    Ok(out)
}
