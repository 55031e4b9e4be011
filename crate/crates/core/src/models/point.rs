//! Characteristic data of a log point `f^† = (a, h): M_X -> M_Y ⊕ P` and
//! its basic log structure `N_Y`.

use serde::{Deserialize, Serialize};

use super::error::{ModelError, Result};
use crate::monoid::{kernel_face, quotient_by_face, FgAbelianGroup, FgMonoid, MonoidHom, QuotientMap};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PointSpec", into = "PointSpec")]
pub struct CharLogPointDatum {
    a: MonoidHom,
    h: MonoidHom,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PointSpec {
    mx: FgMonoid,
    my: FgMonoid,
    p: FgMonoid,
    a: MonoidHom,
    h: MonoidHom,
}

impl TryFrom<PointSpec> for CharLogPointDatum {
    type Error = ModelError;
    fn try_from(s: PointSpec) -> Result<Self> {
        if s.a.domain() != &s.mx || s.h.domain() != &s.mx || s.a.codomain() != &s.my || s.h.codomain() != &s.p {
            return Err(ModelError::InvalidDatum(
                "a must map mx to my and h must map mx to p".into(),
            ));
        }
        CharLogPointDatum::new(s.a, s.h)
    }
}

impl From<CharLogPointDatum> for PointSpec {
    fn from(d: CharLogPointDatum) -> Self {
        PointSpec {
            mx: d.a.domain().clone(),
            my: d.a.codomain().clone(),
            p: d.h.codomain().clone(),
            a: d.a,
            h: d.h,
        }
    }
}

impl CharLogPointDatum {
    /// `a: M_X -> M_Y` and `h: M_X -> P` with `M_Y` and `P` sharp.
    pub fn new(a: MonoidHom, h: MonoidHom) -> Result<Self> {
        if a.domain() != h.domain() {
            return Err(ModelError::InvalidDatum("a and h have different domains".into()));
        }
        if !a.codomain().is_sharp() || !h.codomain().is_sharp() {
            return Err(ModelError::InvalidDatum("M_Y and P must be sharp".into()));
        }
        Ok(CharLogPointDatum { a, h })
    }

    pub fn mx(&self) -> &FgMonoid {
        self.a.domain()
    }

    pub fn my(&self) -> &FgMonoid {
        self.a.codomain()
    }

    pub fn p(&self) -> &FgMonoid {
        self.h.codomain()
    }

    pub fn a(&self) -> &MonoidHom {
        &self.a
    }

    pub fn h(&self) -> &MonoidHom {
        &self.h
    }

    /// `(a, h): M_X -> M_Y ⊕ P`.
    pub fn joint(&self) -> Result<MonoidHom> {
        let (my, p) = (self.my(), self.p());
        let ambient = FgAbelianGroup::new(
            my.ambient().rank + p.ambient().rank,
            my.ambient()
                .torsion
                .iter()
                .chain(&p.ambient().torsion)
                .copied()
                .collect(),
        )?;
        // Reorder coordinates as (free_Y, free_P, torsion_Y, torsion_P).
        let (ry, rp) = (my.ambient().rank, p.ambient().rank);
        let place = |y: &[i64], q: &[i64]| -> Vec<i64> {
            let mut v = y[..ry].to_vec();
            v.extend_from_slice(&q[..rp]);
            v.extend_from_slice(&y[ry..]);
            v.extend_from_slice(&q[rp..]);
            v
        };
        let zero_y = my.ambient().zero();
        let zero_p = p.ambient().zero();
        let mut gens: Vec<_> = my.generators().iter().map(|g| place(g, &zero_p)).collect();
        gens.extend(p.generators().iter().map(|g| place(&zero_y, g)));
        let sum = FgMonoid::new(ambient, gens.into_iter().map(Into::into).collect())?;
        let cols: Vec<Vec<i64>> = (0..self.mx().dim())
            .map(|j| {
                let e = self.mx().ambient().basis_element(j);
                place(&self.a.apply(&e), &self.h.apply(&e))
            })
            .collect();
        let matrix = (0..sum.dim()).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
        Ok(MonoidHom::new(self.mx().clone(), sum, matrix)?)
    }

    /// The datum with `a` followed by `b: M_Y -> M_Y'`.
    pub fn base_change(&self, b: &MonoidHom) -> Result<CharLogPointDatum> {
        CharLogPointDatum::new(self.a.then(b)?, self.h.clone())
    }
}

/// `N_Y = M_X / a^{-1}(0)` with the induced `z: N_Y -> M_Y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointBasic {
    pub ny: FgMonoid,
    pub z: MonoidHom,
    pub basic: bool,
}

pub fn char_log_point_basic(d: &CharLogPointDatum) -> Result<PointBasic> {
    let face = kernel_face(d.a());
    let (ny, _) = quotient_by_face(d.mx(), &face)?;
    let q = QuotientMap::new(d.mx().ambient(), face.generators())?;
    let z = MonoidHom::induced_from_quotient(&q, &ny, d.my(), d.a().matrix())?;
    let basic = z.is_isomorphism();
    Ok(PointBasic { ny, z, basic })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::GroupElement;

    fn hom(q: usize, p: usize, m: Vec<Vec<i64>>) -> MonoidHom {
        let cod = if p == 0 { FgMonoid::zero() } else { FgMonoid::free(p) };
        let dom = if q == 0 { FgMonoid::zero() } else { FgMonoid::free(q) };
        MonoidHom::new(dom, cod, m).unwrap()
    }

    #[test]
    fn collapsed_datum_is_not_basic() {
        let d = CharLogPointDatum::new(hom(2, 1, vec![vec![1, 1]]), hom(2, 1, vec![vec![0, 0]])).unwrap();
        let b = char_log_point_basic(&d).unwrap();
        assert!(b.ny.same_monoid(&FgMonoid::free(2)));
        assert_eq!(b.z.matrix(), &[vec![1, 1]]);
        assert!(!b.basic);
    }

    #[test]
    fn identity_datum_is_basic() {
        let d = CharLogPointDatum::new(hom(1, 1, vec![vec![1]]), hom(1, 1, vec![vec![0]])).unwrap();
        let b = char_log_point_basic(&d).unwrap();
        assert!(b.basic);
        assert!(b.ny.same_monoid(&FgMonoid::free(1)));
    }

    #[test]
    fn everything_in_kernel_gives_trivial_basic() {
        let d = CharLogPointDatum::new(hom(1, 0, vec![]), hom(1, 1, vec![vec![1]])).unwrap();
        let b = char_log_point_basic(&d).unwrap();
        assert!(b.ny.is_trivial());
        assert!(b.basic);
    }

    #[test]
    fn joint_map() {
        let d = CharLogPointDatum::new(hom(2, 1, vec![vec![1, 1]]), hom(2, 1, vec![vec![0, 1]])).unwrap();
        let j = d.joint().unwrap();
        assert_eq!(j.apply(&GroupElement::new(vec![1, 0])).to_vec(), vec![1, 0]);
        assert_eq!(j.apply(&GroupElement::new(vec![0, 1])).to_vec(), vec![1, 1]);
    }

    #[test]
    fn strict_base_change_preserves_ny() {
        let d = CharLogPointDatum::new(hom(2, 2, vec![vec![1, 0], vec![0, 0]]), hom(2, 1, vec![vec![0, 1]])).unwrap();
        let swap = hom(2, 2, vec![vec![0, 1], vec![1, 0]]);
        let b0 = char_log_point_basic(&d).unwrap();
        let b1 = char_log_point_basic(&d.base_change(&swap).unwrap()).unwrap();
        assert!(b0.ny.same_monoid(&b1.ny));
        assert_eq!(b0.basic, b1.basic);
    }

    #[test]
    fn json_roundtrip() {
        let d = CharLogPointDatum::new(hom(2, 1, vec![vec![1, 1]]), hom(2, 1, vec![vec![0, 0]])).unwrap();
        let text = serde_json::to_string(&d).unwrap();
        let back: CharLogPointDatum = serde_json::from_str(&text).unwrap();
        assert_eq!(back, d);
    }

    proptest::proptest! {
        #[test]
        fn replacing_my_by_ny_is_basic(
            k in 1usize..=3,
            m in 1usize..=2,
            raw in proptest::collection::vec(proptest::collection::vec(0i64..=2, 3), 2),
        ) {
            let a = hom(k, m, raw[..m].iter().map(|r| r[..k].to_vec()).collect());
            let d = CharLogPointDatum::new(a, hom(k, 1, vec![vec![1; k]])).unwrap();
            let b = char_log_point_basic(&d).unwrap();
            let (_, proj) = quotient_by_face(d.mx(), &kernel_face(d.a())).unwrap();
            // a factors as z after the projection M_X -> N_Y.
            let through = proj.then(&b.z).unwrap();
            proptest::prop_assert_eq!(through.matrix(), d.a().matrix());
            let again = char_log_point_basic(&CharLogPointDatum::new(proj, d.h().clone()).unwrap()).unwrap();
            proptest::prop_assert!(again.basic);
            proptest::prop_assert!(again.ny.same_monoid(&b.ny));
        }
    }
}
