//! The minimal subfibration and the equivalence `Z ≃ Φ(Z^min, F|Z^min)`.

use std::sync::Arc;

use serde::Serialize;

use super::constructions::full_subcategory;
use super::error::{CategoryError, Result};
use super::finite::{FiniteCategory, Mor, Obj};
use super::functor::{FunctorData, NaturalTransformation};
use super::phi::{phi, LogCfg, Phi};
use super::tower::Tower;

/// The full subcategory of minimal objects with `M = F|Z^min`.
#[derive(Clone, Debug)]
pub struct MinimalSubfibration {
    pub category: Arc<FiniteCategory>,
    pub inclusion: FunctorData,
    pub m: FunctorData,
}

fn require_conditions(t: &Tower) -> Result<()> {
    let (b1, b2) = t.check_conditions()?;
    for (name, r) in [("B1", b1), ("B2", b2)] {
        if !r.holds {
            return Err(CategoryError::ConditionsNotSatisfied(format!(
                "{name}: {}",
                r.witness.unwrap_or_default()
            )));
        }
    }
    Ok(())
}

pub fn minimal_subfibration(t: &Tower) -> Result<MinimalSubfibration> {
    require_conditions(t)?;
    let minimal = t.minimal_objects();
    let (category, inclusion) = full_subcategory(t.z(), |o| minimal[o])?;
    let m = inclusion.then(t.f())?;
    Ok(MinimalSubfibration { category, inclusion, m })
}

/// The functors and natural isomorphisms exhibiting `Z ≃ Φ(Z^min, M)`.
#[derive(Clone, Debug)]
pub struct Descent {
    pub minimal: MinimalSubfibration,
    pub phi: Phi,
    /// `ψ: Φ(Z^min, M) -> Z`.
    pub psi: FunctorData,
    /// `φ: Z -> Φ(Z^min, M)`.
    pub phi_functor: FunctorData,
    /// `η: φψ ⇒ Id`.
    pub eta: NaturalTransformation,
    /// `θ: ψφ ⇒ Id`.
    pub theta: NaturalTransformation,
}

fn exactly_one(c: &FiniteCategory, mut it: impl Iterator<Item = Mor>, what: impl Fn() -> String) -> Result<Mor> {
    let first = it
        .next()
        .ok_or_else(|| CategoryError::ConstructionFailure(format!("no {}", what())))?;
    if let Some(second) = it.next() {
        return Err(CategoryError::ConstructionFailure(format!(
            "{} is not unique: {} and {}",
            what(),
            c.morphism_name(first),
            c.morphism_name(second)
        )));
    }
    Ok(first)
}

/// Smallest morphism by name.
fn least_by_name(c: &FiniteCategory, it: impl Iterator<Item = Mor>) -> Option<Mor> {
    it.min_by(|&a, &b| c.morphism_name(a).cmp(c.morphism_name(b)))
}

pub fn descent_construct(t: &Tower) -> Result<Descent> {
    let minimal = minimal_subfibration(t)?;
    let cfg = LogCfg::new(minimal.m.clone(), t.forget().clone())?;
    let p = phi(&cfg)?;
    let z = t.z();
    let ls = t.logsch();
    let f = t.f();
    let inc = &minimal.inclusion;
    let pc = p.category().clone();

    // Step 2: a cleavage f_x: z_x -> x with F f_x = f, for each object (x, f).
    let cleave: Vec<Mor> = pc
        .objects()
        .map(|o| {
            let (x, fl) = p.object(o);
            let xz = inc.obj(x);
            least_by_name(z, z.into_obj(xz).filter(|&m| f.mor(m) == fl)).ok_or_else(|| {
                CategoryError::ConstructionFailure(format!(
                    "{} has no lift ending at {}",
                    ls.morphism_name(fl),
                    z.object_name(xz)
                ))
            })
        })
        .collect::<Result<_>>()?;
    let psi_obj: Vec<Obj> = cleave.iter().map(|&m| z.source(m)).collect();
    let psi_mor: Vec<Mor> = pc
        .morphisms()
        .map(|pm| {
            let (a, b) = p.morphism(pm);
            let (s, t2) = (pc.source(pm), pc.target(pm));
            let rhs = z.comp(inc.mor(a), cleave[s]);
            exactly_one(
                z,
                z.hom(psi_obj[s], psi_obj[t2])
                    .iter()
                    .copied()
                    .filter(|&m| f.mor(m) == b && z.comp(cleave[t2], m) == rhs),
                || format!("ψ({})", pc.morphism_name(pm)),
            )
        })
        .collect::<Result<_>>()?;
    let psi = FunctorData::new(pc.clone(), z.clone(), psi_obj, psi_mor)?;

    // Step 3: f^m_z: z -> x_z with x_z minimal, over an identity of Sch.
    let mut min_index = vec![usize::MAX; z.num_objects()];
    for (i, &o) in inc.object_map().iter().enumerate() {
        min_index[o] = i;
    }
    let fm: Vec<Mor> = z
        .objects()
        .map(|o| {
            least_by_name(
                z,
                z.out_of(o)
                    .filter(|&i| min_index[z.target(i)] != usize::MAX && t.under().over_identity(i)),
            )
            .ok_or_else(|| CategoryError::ConstructionFailure(format!("no minimal model of {}", z.object_name(o))))
        })
        .collect::<Result<_>>()?;
    let xz = |o: Obj| min_index[z.target(fm[o])];
    let phi_obj: Vec<Obj> = z
        .objects()
        .map(|o| {
            p.find_object(xz(o), f.mor(fm[o]))
                .ok_or_else(|| CategoryError::ConstructionFailure(format!("φ({}) is not an object", z.object_name(o))))
        })
        .collect::<Result<_>>()?;
    let zm = &minimal.category;
    let phi_mor: Vec<Mor> = z
        .morphisms()
        .map(|h| {
            let (a, b) = (z.source(h), z.target(h));
            let rhs = z.comp(fm[b], h);
            let k = exactly_one(
                zm,
                zm.hom(xz(a), xz(b))
                    .iter()
                    .copied()
                    .filter(|&k| z.comp(inc.mor(k), fm[a]) == rhs),
                || format!("k for φ({})", z.morphism_name(h)),
            )?;
            p.find_morphism(phi_obj[a], phi_obj[b], k, f.mor(h)).ok_or_else(|| {
                CategoryError::ConstructionFailure(format!("φ({}) is not a morphism", z.morphism_name(h)))
            })
        })
        .collect::<Result<_>>()?;
    let phi_functor = FunctorData::new(z.clone(), pc.clone(), phi_obj, phi_mor)?;

    // Step 4: η at (x, f) is (k, Id) with k∘f^m_{z_x} = f_x.
    let phipsi = psi.then(&phi_functor)?;
    let eta_comp: Vec<Mor> = pc
        .objects()
        .map(|o| {
            let zx = psi.obj(o);
            let (x, _) = p.object(o);
            let k = exactly_one(
                zm,
                zm.hom(xz(zx), x)
                    .iter()
                    .copied()
                    .filter(|&k| z.comp(inc.mor(k), fm[zx]) == cleave[o]),
                || format!("k for η at {}", pc.object_name(o)),
            )?;
            p.find_morphism(phipsi.obj(o), o, k, ls.identity(f.obj(zx)))
                .ok_or_else(|| CategoryError::ConstructionFailure(format!("η at {}", pc.object_name(o))))
        })
        .collect::<Result<_>>()?;
    let eta = NaturalTransformation::new(phipsi, FunctorData::identity(&pc), eta_comp)?;

    // Step 5: θ(z) over Id_{Fz} with f^m_z∘θ = f_{x_z}.
    let psiphi = phi_functor.then(&psi)?;
    let theta_comp: Vec<Mor> = z
        .objects()
        .map(|o| {
            let target = cleave[phi_functor.obj(o)];
            exactly_one(
                z,
                z.hom(psiphi.obj(o), o)
                    .iter()
                    .copied()
                    .filter(|&m| f.over_identity(m) && z.comp(fm[o], m) == target),
                || format!("θ at {}", z.object_name(o)),
            )
        })
        .collect::<Result<_>>()?;
    let theta = NaturalTransformation::new(psiphi, FunctorData::identity(z), theta_comp)?;
    Ok(Descent {
        minimal,
        phi: p,
        psi,
        phi_functor,
        eta,
        theta,
    })
}

/// Outcome of checking a descent equivalence.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DescentCheck {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl DescentCheck {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn expect(&mut self, ok: bool, what: &str) {
        self.checked += 1;
        if !ok {
            self.failures.push(what.to_string());
        }
    }
}

impl Descent {
    /// Checks that `ψ` and `φ` are compatible with the projections to
    /// `LogSch` and that `η`, `θ` are isomorphisms over identities.
    pub fn verify(&self, t: &Tower) -> DescentCheck {
        let mut out = DescentCheck::default();
        let fp = self.phi.tower.f();
        out.expect(
            self.psi.then(t.f()).as_ref() == Ok(fp),
            "F∘ψ differs from the projection of Φ",
        );
        out.expect(
            self.phi_functor.then(fp).as_ref() == Ok(t.f()),
            "projection∘φ differs from F",
        );
        out.expect(self.eta.is_isomorphism(), "η is not an isomorphism");
        out.expect(self.theta.is_isomorphism(), "θ is not an isomorphism");
        out.expect(
            self.eta.components().iter().all(|&m| fp.over_identity(m)),
            "η is not over identities",
        );
        out.expect(
            self.theta.components().iter().all(|&m| t.f().over_identity(m)),
            "θ is not over identities",
        );
        out
    }
}
