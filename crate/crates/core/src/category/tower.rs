//! Towers `Z -> LogSch -> Sch`, minimal objects and conditions B1, B2.

use std::sync::Arc;

use serde::Serialize;

use super::error::{CategoryError, Result};
use super::fibration::{cartesian_table, groupoid_fibration_defect, is_fibered};
use super::finite::{FiniteCategory, Mor, Obj};
use super::functor::{same_category, FunctorData};

/// A functor `F: Z -> LogSch` over a fibered category `LogSch -> Sch`.
#[derive(Clone, Debug)]
pub struct Tower {
    f: FunctorData,
    forget: FunctorData,
    under: FunctorData,
    forget_cartesian: Vec<bool>,
}

impl Tower {
    pub fn new(f: FunctorData, forget: FunctorData) -> Result<Self> {
        if !same_category(f.target(), forget.source()) {
            return Err(CategoryError::ValidationFailure(
                "F does not land in the source of the forgetful functor".into(),
            ));
        }
        if !is_fibered(&forget) {
            return Err(CategoryError::NotFibered("LogSch -> Sch".into()));
        }
        let under = f.then(&forget)?;
        let forget_cartesian = cartesian_table(&forget);
        Ok(Tower {
            f,
            forget,
            under,
            forget_cartesian,
        })
    }

    pub fn z(&self) -> &Arc<FiniteCategory> {
        self.f.source()
    }

    pub fn logsch(&self) -> &Arc<FiniteCategory> {
        self.forget.source()
    }

    pub fn sch(&self) -> &Arc<FiniteCategory> {
        self.forget.target()
    }

    pub fn f(&self) -> &FunctorData {
        &self.f
    }

    pub fn forget(&self) -> &FunctorData {
        &self.forget
    }

    /// `u̲F = forget ∘ F`.
    pub fn under(&self) -> &FunctorData {
        &self.under
    }

    /// Whether a `LogSch` morphism is cartesian over `Sch`.
    pub fn is_forget_cartesian(&self, m: Mor) -> bool {
        self.forget_cartesian[m]
    }

    pub fn is_groupoid_fibration(&self) -> bool {
        groupoid_fibration_defect(&self.f).is_none()
    }

    pub(crate) fn require_groupoid_fibration(&self) -> Result<()> {
        match groupoid_fibration_defect(&self.f) {
            None => Ok(()),
            Some(why) => Err(CategoryError::NotGroupoidFibration(why)),
        }
    }

    /// `z` is minimal: for all `i: w' -> w`, `j: w' -> z` over identities in
    /// `Sch` there is exactly one `k: w -> z` with `k∘i = j`.
    pub fn is_minimal(&self, z: Obj) -> bool {
        let c = self.z();
        let u = &self.under;
        c.objects().all(|w1| {
            c.hom(w1, z).iter().filter(|&&j| u.over_identity(j)).all(|&j| {
                c.out_of(w1).filter(|&i| u.over_identity(i)).all(|i| {
                    let w = c.target(i);
                    c.hom(w, z).iter().filter(|&&k| c.comp(k, i) == j).count() == 1
                })
            })
        })
    }

    /// Minimality of every object, by index.
    pub fn minimal_objects(&self) -> Vec<bool> {
        self.z().objects().map(|z| self.is_minimal(z)).collect()
    }

    /// B1: every `w` maps over an identity to some minimal object.
    pub fn check_b1(&self) -> Result<ConditionReport> {
        self.require_groupoid_fibration()?;
        Ok(self.b1_with(&self.minimal_objects()))
    }

    fn b1_with(&self, minimal: &[bool]) -> ConditionReport {
        let c = self.z();
        let fails = c
            .objects()
            .find(|&w| !c.out_of(w).any(|i| minimal[c.target(i)] && self.under.over_identity(i)));
        match fails {
            None => ConditionReport::holds(),
            Some(w) => ConditionReport::fails(format!(
                "{} has no morphism over an identity to a minimal object",
                c.object_name(w)
            )),
        }
    }

    /// B2: for `i: w -> z` with `z` minimal, `F i` is cartesian iff `w` is minimal.
    pub fn check_b2(&self) -> Result<ConditionReport> {
        self.require_groupoid_fibration()?;
        Ok(self.b2_with(&self.minimal_objects()))
    }

    fn b2_with(&self, minimal: &[bool]) -> ConditionReport {
        let c = self.z();
        for i in c.morphisms().filter(|&i| minimal[c.target(i)]) {
            let cart = self.forget_cartesian[self.f.mor(i)];
            let w = c.source(i);
            if cart != minimal[w] {
                return ConditionReport::fails(format!(
                    "{}: F of it is {}cartesian but {} is {}minimal",
                    c.morphism_name(i),
                    if cart { "" } else { "not " },
                    c.object_name(w),
                    if minimal[w] { "" } else { "not " },
                ));
            }
        }
        ConditionReport::holds()
    }

    /// Both conditions, computing minimality once.
    pub fn check_conditions(&self) -> Result<(ConditionReport, ConditionReport)> {
        self.require_groupoid_fibration()?;
        let minimal = self.minimal_objects();
        Ok((self.b1_with(&minimal), self.b2_with(&minimal)))
    }
}

/// Outcome of a condition check with a witness of failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl ConditionReport {
    pub fn holds() -> Self {
        ConditionReport {
            holds: true,
            witness: None,
        }
    }

    pub fn fails(witness: String) -> Self {
        ConditionReport {
            holds: false,
            witness: Some(witness),
        }
    }
}
