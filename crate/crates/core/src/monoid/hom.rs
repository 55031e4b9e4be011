//! Homomorphisms of finitely generated monoids given by ambient matrices.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::error::{MonoidError, Result};
use super::fgmonoid::FgMonoid;
use super::group::{big_to_i64, GroupElement, QuotientMap, Subgroup};
use super::snf::{smith_normal_form, IntMatrix};

/// A monoid homomorphism `domain -> codomain` induced by an integer matrix
/// between the ambient groups (rows index codomain coordinates).
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "HomSpec", into = "HomSpec")]
pub struct MonoidHom {
    domain: FgMonoid,
    codomain: FgMonoid,
    matrix: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct HomSpec {
    domain: FgMonoid,
    codomain: FgMonoid,
    matrix: Vec<Vec<i64>>,
}

impl TryFrom<HomSpec> for MonoidHom {
    type Error = MonoidError;
    fn try_from(s: HomSpec) -> Result<Self> {
        MonoidHom::new(s.domain, s.codomain, s.matrix)
    }
}

impl From<MonoidHom> for HomSpec {
    fn from(h: MonoidHom) -> Self {
        HomSpec {
            domain: h.domain,
            codomain: h.codomain,
            matrix: h.matrix,
        }
    }
}

impl fmt::Debug for MonoidHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MonoidHom")
            .field("domain", &self.domain)
            .field("codomain", &self.codomain)
            .field("matrix", &self.matrix)
            .finish()
    }
}

/// Some integer `y` with `Σ y_j columns[j] = x`, if one exists.
pub(crate) fn solve_integer(columns: &[Vec<i64>], rows: usize, x: &[i64]) -> Option<Vec<i64>> {
    let a = IntMatrix::from_columns(columns, rows);
    let snf = smith_normal_form(&a);
    let ux = snf.u.mul(&IntMatrix::from_columns(&[x.to_vec()], rows));
    let diag = snf.diagonal();
    let mut z = IntMatrix::zeros(columns.len(), 1);
    for i in 0..rows {
        let v = &ux.entries[i][0];
        match diag.get(i) {
            Some(d) if !num_traits::Zero::is_zero(d) => {
                if !num_integer::Integer::is_multiple_of(v, d) {
                    return None;
                }
                z.entries[i][0] = v / d;
            }
            _ => {
                if !num_traits::Zero::is_zero(v) {
                    return None;
                }
            }
        }
    }
    let y = snf.v.mul(&z);
    y.entries
        .iter()
        .map(|r| big_to_i64(&r[0], "integer solve").ok())
        .collect()
}

impl MonoidHom {
    pub fn new(domain: FgMonoid, codomain: FgMonoid, matrix: Vec<Vec<i64>>) -> Result<Self> {
        let (m, n) = (codomain.dim(), domain.dim());
        if matrix.len() != m || matrix.iter().any(|r| r.len() != n) {
            return Err(MonoidError::BadMatrix(format!("expected a {m}x{n} matrix")));
        }
        let h = MonoidHom {
            domain,
            codomain,
            matrix,
        };
        for rel in h.domain.ambient().relations() {
            if !h.apply_raw(&rel).is_zero() {
                return Err(MonoidError::BadMatrix("torsion relation does not map to zero".into()));
            }
        }
        for (index, g) in h.domain.generators().iter().enumerate() {
            if !h.codomain.contains_unchecked(&h.apply(g)) {
                return Err(MonoidError::ImageNotInCodomain { index });
            }
        }
        Ok(h)
    }

    pub fn identity(m: &FgMonoid) -> Self {
        let n = m.dim();
        let matrix = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        MonoidHom {
            domain: m.clone(),
            codomain: m.clone(),
            matrix,
        }
    }

    pub fn zero_map(domain: &FgMonoid, codomain: &FgMonoid) -> Self {
        MonoidHom {
            domain: domain.clone(),
            codomain: codomain.clone(),
            matrix: vec![vec![0; domain.dim()]; codomain.dim()],
        }
    }

    /// The hom sending the `i`-th domain generator to `images[i]`. The domain
    /// generators must generate the domain ambient group.
    pub fn from_generator_images(domain: &FgMonoid, codomain: &FgMonoid, images: &[GroupElement]) -> Result<Self> {
        let gens = domain.generators();
        if images.len() != gens.len() {
            return Err(MonoidError::BadMatrix(format!(
                "{} images for {} generators",
                images.len(),
                gens.len()
            )));
        }
        for y in images {
            codomain.ambient().check(y)?;
        }
        let amb = domain.ambient();
        let n = amb.dim();
        let rels = amb.relations();
        let mut cols = rels.clone();
        cols.extend(gens.iter().map(|g| g.to_vec()));
        let mut matrix = vec![vec![0i64; n]; codomain.dim()];
        for k in 0..n {
            let e = amb.basis_element(k);
            let y = solve_integer(&cols, n, &e)
                .ok_or_else(|| MonoidError::BadMatrix("domain generators do not generate the ambient group".into()))?;
            for (j, c) in y[rels.len()..].iter().enumerate() {
                for (row, v) in matrix.iter_mut().zip(images[j].iter()) {
                    row[k] += c * v;
                }
            }
        }
        let h = MonoidHom::new(domain.clone(), codomain.clone(), matrix)?;
        for (g, y) in gens.iter().zip(images) {
            if h.apply(g) != codomain.ambient().reduce(y.to_vec()) {
                return Err(MonoidError::BadMatrix(
                    "generator images do not respect the relations among generators".into(),
                ));
            }
        }
        Ok(h)
    }

    pub fn domain(&self) -> &FgMonoid {
        &self.domain
    }

    pub fn codomain(&self) -> &FgMonoid {
        &self.codomain
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    fn apply_raw(&self, x: &[i64]) -> GroupElement {
        let v = self
            .matrix
            .iter()
            .map(|r| r.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect();
        self.codomain.ambient().reduce(v)
    }

    /// Image of an element of the domain ambient group.
    pub fn apply(&self, x: &GroupElement) -> GroupElement {
        self.apply_raw(x)
    }

    /// Images of the domain generators.
    pub fn generator_images(&self) -> Vec<GroupElement> {
        self.domain.generators().iter().map(|g| self.apply(g)).collect()
    }

    /// The submonoid of the codomain ambient generated by the generator images.
    pub fn image(&self) -> FgMonoid {
        FgMonoid::new(self.codomain.ambient().clone(), self.generator_images()).expect("image monoid")
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &MonoidHom) -> Result<MonoidHom> {
        if self.codomain != other.domain {
            return Err(MonoidError::BadMatrix(
                "codomain and domain differ in composition".into(),
            ));
        }
        let inner = self.domain.dim();
        let matrix = other
            .matrix
            .iter()
            .map(|row| {
                (0..inner)
                    .map(|j| row.iter().zip(&self.matrix).map(|(a, r)| a * r[j]).sum())
                    .collect()
            })
            .collect();
        Ok(MonoidHom {
            domain: self.domain.clone(),
            codomain: other.codomain.clone(),
            matrix,
        })
    }

    /// Injective on the domain (decided on groupifications).
    pub fn is_monomorphism(&self) -> bool {
        let source = self.domain.groupify();
        let target = Subgroup::generated_by(self.codomain.ambient(), &self.generator_images()).expect("image subgroup");
        // A surjection between isomorphic finitely generated abelian groups is injective.
        source.group() == target.group()
    }

    /// Injective with image equal to the codomain.
    pub fn is_isomorphism(&self) -> bool {
        self.is_monomorphism() && self.image().contains_monoid(&self.codomain)
    }

    /// The hom out of a quotient `Z^n / L -> codomain` induced by a matrix on
    /// `Z^n` that kills `L`. `domain` must live in the quotient's target.
    pub fn induced_from_quotient(
        quotient: &QuotientMap,
        domain: &FgMonoid,
        codomain: &FgMonoid,
        lifted: &[Vec<i64>],
    ) -> Result<Self> {
        let section = quotient.section_matrix();
        let k = quotient.target().dim();
        let matrix = lifted
            .iter()
            .map(|row| {
                (0..k)
                    .map(|j| row.iter().zip(&section).map(|(a, s)| a * s[j]).sum())
                    .collect()
            })
            .collect();
        MonoidHom::new(domain.clone(), codomain.clone(), matrix)
    }

    /// Whether the map sends every domain generator to zero.
    pub fn is_zero(&self) -> bool {
        self.generator_images().iter().all(|y| y.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::group::FgAbelianGroup;

    fn e(v: &[i64]) -> GroupElement {
        GroupElement::new(v.to_vec())
    }

    pub(crate) fn diagonal() -> MonoidHom {
        MonoidHom::new(FgMonoid::free(1), FgMonoid::free(2), vec![vec![1], vec![1]]).unwrap()
    }

    #[test]
    fn monomorphism_examples() {
        assert!(diagonal().is_monomorphism());
        let sum = MonoidHom::new(FgMonoid::free(2), FgMonoid::free(1), vec![vec![1, 1]]).unwrap();
        assert!(!sum.is_monomorphism());
        let double = MonoidHom::new(FgMonoid::free(1), FgMonoid::free(1), vec![vec![2]]).unwrap();
        assert!(double.is_monomorphism());
        assert!(!double.is_isomorphism());
        assert!(MonoidHom::identity(&FgMonoid::free(3)).is_isomorphism());
    }

    #[test]
    fn image_must_lie_in_codomain() {
        let cusp = FgMonoid::in_lattice(1, &[vec![2], vec![3]]).unwrap();
        let err = MonoidHom::new(FgMonoid::free(1), cusp, vec![vec![1]]).unwrap_err();
        assert_eq!(err, MonoidError::ImageNotInCodomain { index: 0 });
    }

    #[test]
    fn torsion_must_be_respected() {
        let g = FgAbelianGroup::new(0, vec![2]).unwrap();
        let t = FgMonoid::new(g, vec![e(&[1])]).unwrap();
        assert!(MonoidHom::new(t.clone(), FgMonoid::free(1), vec![vec![1]]).is_err());
        assert!(MonoidHom::new(t, FgMonoid::free(1), vec![vec![0]]).is_ok());
    }

    #[test]
    fn composition() {
        let d = diagonal();
        let sum = MonoidHom::new(FgMonoid::free(2), FgMonoid::free(1), vec![vec![1, 1]]).unwrap();
        let c = d.then(&sum).unwrap();
        assert_eq!(c.matrix(), &[vec![2]]);
        assert!(sum.then(&sum).is_err());
    }

    #[test]
    fn from_images_of_cusp_generators() {
        let cusp = FgMonoid::in_lattice(1, &[vec![2], vec![3]]).unwrap();
        let h = MonoidHom::from_generator_images(&cusp, &FgMonoid::free(2), &[e(&[2, 0]), e(&[3, 0])]).unwrap();
        assert_eq!(h.matrix(), &[vec![1], vec![0]]);
        let bad = MonoidHom::from_generator_images(&cusp, &FgMonoid::free(2), &[e(&[1, 0]), e(&[0, 1])]);
        assert!(bad.is_err());
    }

    #[test]
    fn json_roundtrip() {
        let d = diagonal();
        let s = serde_json::to_string(&d).unwrap();
        let back: MonoidHom = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
    }
}
