//! Characteristic-level data of log curves: local structure at a point and
//! basic curves over a base point.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::error::{ModelError, Result};
use crate::monoid::{
    cokernel, pushout_z_presentation, split_n, CokernelClass, FgAbelianGroup, FgMonoid, GroupElement, IntegralMono,
    MonoidHom,
};

/// The stalk map `M̄_Y -> M̄_X` of a log curve at a point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CurvePointSpec", into = "CurvePointSpec")]
pub struct CurvePointDatum {
    point_map: IntegralMono,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CurvePointSpec {
    base_char: FgMonoid,
    point_map: MonoidHom,
}

impl TryFrom<CurvePointSpec> for CurvePointDatum {
    type Error = ModelError;
    fn try_from(s: CurvePointSpec) -> Result<Self> {
        if s.point_map.domain() != &s.base_char {
            return Err(ModelError::InvalidDatum("point_map does not start at base_char".into()));
        }
        CurvePointDatum::new(s.point_map)
    }
}

impl From<CurvePointDatum> for CurvePointSpec {
    fn from(d: CurvePointDatum) -> Self {
        CurvePointSpec {
            base_char: d.base_char().clone(),
            point_map: d.point_map.hom().clone(),
        }
    }
}

impl CurvePointDatum {
    /// Requires an integral monomorphism of sharp monoids without nilpotents.
    pub fn new(point_map: MonoidHom) -> Result<Self> {
        let h = IntegralMono::new(point_map)?;
        if !h.p().is_sharp() {
            return Err(ModelError::InvalidDatum("point monoid is not sharp".into()));
        }
        if h.has_nilpotents()? {
            return Err(ModelError::InvalidDatum("point map has nilpotents".into()));
        }
        Ok(CurvePointDatum { point_map: h })
    }

    pub fn base_char(&self) -> &FgMonoid {
        self.point_map.q()
    }

    pub fn point_map(&self) -> &IntegralMono {
        &self.point_map
    }
}

/// Local structure of a log curve at a point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "structure", rename_all = "snake_case")]
pub enum CurveStructure {
    /// Strict near the point.
    Smooth,
    /// `M̄_X = M̄_Y ⊕ N p`.
    Marked { p: GroupElement },
    /// `M̄_X` is the pushout of `Δ: N -> N^2` along `1 ↦ q0`.
    Node {
        q0: GroupElement,
        p1: GroupElement,
        pm1: GroupElement,
    },
}

pub fn structure_classify(d: &CurvePointDatum) -> Result<CurveStructure> {
    let h = d.point_map();
    match cokernel(h)?.class {
        CokernelClass::Zero => Ok(CurveStructure::Smooth),
        CokernelClass::FreeRankOne { .. } => Ok(CurveStructure::Marked { p: split_n(h)? }),
        CokernelClass::GroupZ { .. } => {
            let z = pushout_z_presentation(h)?;
            Ok(CurveStructure::Node {
                q0: z.q0,
                p1: z.p1,
                pm1: z.pm1,
            })
        }
        CokernelClass::Other { reason } => Err(ModelError::NotACurveDatum(reason)),
    }
}

/// Nodes of a curve fiber over a point `y` with their smoothing elements
/// in `M̄_{Y,y}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CurveFiberSpec", into = "CurveFiberSpec")]
pub struct CurveFiberDatum {
    base_char: FgMonoid,
    nodes: Vec<String>,
    smoothing: Vec<GroupElement>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CurveFiberSpec {
    base_char: FgMonoid,
    nodes: Vec<String>,
    smoothing: BTreeMap<String, GroupElement>,
}

impl TryFrom<CurveFiberSpec> for CurveFiberDatum {
    type Error = ModelError;
    fn try_from(s: CurveFiberSpec) -> Result<Self> {
        for k in s.smoothing.keys() {
            if !s.nodes.contains(k) {
                return Err(ModelError::InvalidDatum(format!("smoothing for unknown node {k}")));
            }
        }
        let smoothing = s
            .nodes
            .iter()
            .map(|n| {
                s.smoothing
                    .get(n)
                    .cloned()
                    .ok_or_else(|| ModelError::InvalidDatum(format!("node {n} has no smoothing")))
            })
            .collect::<Result<Vec<_>>>()?;
        CurveFiberDatum::new(s.base_char, s.nodes, smoothing)
    }
}

impl From<CurveFiberDatum> for CurveFiberSpec {
    fn from(d: CurveFiberDatum) -> Self {
        CurveFiberSpec {
            smoothing: d.nodes.iter().cloned().zip(d.smoothing).collect(),
            base_char: d.base_char,
            nodes: d.nodes,
        }
    }
}

impl CurveFiberDatum {
    pub fn new(base_char: FgMonoid, nodes: Vec<String>, smoothing: Vec<GroupElement>) -> Result<Self> {
        if nodes.len() != smoothing.len() {
            return Err(ModelError::InvalidDatum("one smoothing per node is required".into()));
        }
        let mut seen = std::collections::BTreeSet::new();
        if let Some(n) = nodes.iter().find(|n| !seen.insert(*n)) {
            return Err(ModelError::InvalidDatum(format!("duplicate node {n}")));
        }
        if !base_char.is_sharp() {
            return Err(ModelError::Monoid(crate::monoid::MonoidError::NotSharp));
        }
        for (n, q) in nodes.iter().zip(&smoothing) {
            base_char.ambient().check(q)?;
            let q = base_char.ambient().reduce(q.to_vec());
            if q.is_zero() || !base_char.contains(&q)? {
                return Err(ModelError::InvalidDatum(format!(
                    "smoothing of {n} must be a nonzero element of the base"
                )));
            }
        }
        let smoothing = smoothing
            .into_iter()
            .map(|q| base_char.ambient().reduce(q.into_coords()))
            .collect();
        Ok(CurveFiberDatum {
            base_char,
            nodes,
            smoothing,
        })
    }

    pub fn base_char(&self) -> &FgMonoid {
        &self.base_char
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn smoothing(&self) -> &[GroupElement] {
        &self.smoothing
    }

    /// `q: N^{nodes} -> M̄_Y`, sending each node to its smoothing element.
    pub fn comparison(&self) -> MonoidHom {
        let n = self.nodes.len();
        let matrix = (0..self.base_char.dim())
            .map(|i| self.smoothing.iter().map(|q| q[i]).collect())
            .collect();
        MonoidHom::new(FgMonoid::free(n), self.base_char.clone(), matrix).expect("smoothings lie in the base")
    }

    /// The same nodes over a new base point, along `b: M̄_Y -> M̄_{Y'}`.
    pub fn base_change(&self, b: &MonoidHom) -> Result<CurveFiberDatum> {
        if b.domain() != &self.base_char {
            return Err(ModelError::InvalidDatum("base change must start at the base".into()));
        }
        CurveFiberDatum::new(
            b.codomain().clone(),
            self.nodes.clone(),
            self.smoothing.iter().map(|q| b.apply(q)).collect(),
        )
    }
}

/// Basic iff `q: N^{nodes} -> M̄_Y` is an isomorphism.
pub fn is_basic_curve(d: &CurveFiberDatum) -> bool {
    d.comparison().is_isomorphism()
}

/// The basic datum with the same nodes (base `N^{nodes}`, node `i`
/// smoothed by `e_i`) and its comparison map to the given base.
pub fn basify_curve(d: &CurveFiberDatum) -> (CurveFiberDatum, MonoidHom) {
    let n = d.nodes.len();
    let free = FgMonoid::free(n);
    let units = (0..n).map(|i| FgAbelianGroup::free(n).basis_element(i)).collect();
    let basic = CurveFiberDatum::new(free, d.nodes.clone(), units).expect("free datum");
    (basic, d.comparison())
}
