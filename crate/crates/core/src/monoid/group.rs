//! Finitely generated abelian groups in invariant-factor coordinates,
//! quotient maps, and subgroup coordinates.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Deref;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::error::{MonoidError, Result};
use super::snf::{smith_normal_form, IntMatrix};

/// `Z^rank ⊕ Z/m_1 ⊕ … ⊕ Z/m_t` with `m_1 | m_2 | … | m_t`, all `m_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FgAbelianGroup {
    pub rank: usize,
    pub torsion: Vec<i64>,
}

/// Coordinates of an element of some [`FgAbelianGroup`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(Vec<i64>);

impl GroupElement {
    pub fn new(coords: Vec<i64>) -> Self {
        GroupElement(coords)
    }

    pub fn zero(dim: usize) -> Self {
        GroupElement(vec![0; dim])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Sum of absolute values of the coordinates.
    pub fn grade(&self) -> i64 {
        self.0.iter().map(|x| x.abs()).sum()
    }
}

impl Deref for GroupElement {
    type Target = [i64];
    fn deref(&self) -> &[i64] {
        &self.0
    }
}

impl From<Vec<i64>> for GroupElement {
    fn from(v: Vec<i64>) -> Self {
        GroupElement(v)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Graded-lex order: by [`GroupElement::grade`], then by the first
/// differing coordinate, larger first. Unit vectors come out as `e_1 < e_2 < …`.
pub fn graded_lex_cmp(a: &GroupElement, b: &GroupElement) -> Ordering {
    a.grade().cmp(&b.grade()).then_with(|| b.0.cmp(&a.0))
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        graded_lex_cmp(self, other)
    }
}

impl FgAbelianGroup {
    pub fn new(rank: usize, torsion: Vec<i64>) -> Result<Self> {
        let ok = torsion.iter().all(|&m| m >= 2) && torsion.windows(2).all(|w| w[1] % w[0] == 0);
        if !ok {
            return Err(MonoidError::InvalidTorsion(torsion));
        }
        Ok(FgAbelianGroup { rank, torsion })
    }

    pub fn free(rank: usize) -> Self {
        FgAbelianGroup {
            rank,
            torsion: Vec::new(),
        }
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    /// Number of coordinates.
    pub fn dim(&self) -> usize {
        self.rank + self.torsion.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Modulus of coordinate `i`, or 0 for a free coordinate.
    pub fn modulus(&self, i: usize) -> i64 {
        if i < self.rank {
            0
        } else {
            self.torsion[i - self.rank]
        }
    }

    /// Lcm of the torsion moduli (1 if torsion free).
    pub fn exponent(&self) -> i64 {
        self.torsion.last().copied().unwrap_or(1)
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement::zero(self.dim())
    }

    pub fn check(&self, x: &GroupElement) -> Result<()> {
        if x.len() != self.dim() {
            return Err(MonoidError::AmbientMismatch {
                expected: self.dim(),
                found: x.len(),
            });
        }
        Ok(())
    }

    /// Reduces torsion coordinates into `[0, m)`.
    pub fn reduce(&self, mut x: Vec<i64>) -> GroupElement {
        debug_assert_eq!(x.len(), self.dim());
        for (i, &m) in self.torsion.iter().enumerate() {
            x[self.rank + i] = x[self.rank + i].rem_euclid(m);
        }
        GroupElement(x)
    }

    pub fn element(&self, coords: Vec<i64>) -> Result<GroupElement> {
        if coords.len() != self.dim() {
            return Err(MonoidError::AmbientMismatch {
                expected: self.dim(),
                found: coords.len(),
            });
        }
        Ok(self.reduce(coords))
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.reduce(a.iter().zip(b.iter()).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.reduce(a.iter().zip(b.iter()).map(|(x, y)| x - y).collect())
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        self.reduce(a.iter().map(|x| -x).collect())
    }

    pub fn scale(&self, n: i64, a: &GroupElement) -> GroupElement {
        self.reduce(a.iter().map(|x| n * x).collect())
    }

    /// `Σ counts[i] · elems[i]`.
    pub fn combination(&self, counts: &[i64], elems: &[GroupElement]) -> GroupElement {
        let mut acc = vec![0i64; self.dim()];
        for (c, e) in counts.iter().zip(elems) {
            if *c == 0 {
                continue;
            }
            for (a, x) in acc.iter_mut().zip(e.iter()) {
                *a += c * x;
            }
        }
        self.reduce(acc)
    }

    /// The free part of an element (first `rank` coordinates).
    pub fn free_part<'a>(&self, x: &'a GroupElement) -> &'a [i64] {
        &x[..self.rank]
    }

    /// Unit vector along coordinate `i`.
    pub fn basis_element(&self, i: usize) -> GroupElement {
        let mut v = vec![0; self.dim()];
        v[i] = 1;
        GroupElement(v)
    }

    /// Relation vectors `m_i e_{rank+i}` presenting this group as a quotient of `Z^dim`.
    pub fn relations(&self) -> Vec<Vec<i64>> {
        self.torsion
            .iter()
            .enumerate()
            .map(|(i, &m)| {
                let mut v = vec![0; self.dim()];
                v[self.rank + i] = m;
                v
            })
            .collect()
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.rank > 0 {
            parts.push(if self.rank == 1 {
                "Z".to_string()
            } else {
                format!("Z^{}", self.rank)
            });
        }
        for m in &self.torsion {
            parts.push(format!("Z/{m}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

pub(crate) fn big_to_i64(x: &BigInt, ctx: &'static str) -> Result<i64> {
    i64::try_from(x).map_err(|_| MonoidError::Overflow(ctx))
}

fn dot(row: &[i64], x: &[i64]) -> i128 {
    row.iter().zip(x).map(|(&a, &b)| a as i128 * b as i128).sum()
}

fn narrow(x: i128, ctx: &'static str) -> Result<i64> {
    i64::try_from(x).map_err(|_| MonoidError::Overflow(ctx))
}

/// The canonical surjection `Z^n → Z^n / ⟨relations⟩`, with the target in
/// invariant-factor coordinates and a set-theoretic section.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    source_dim: usize,
    target: FgAbelianGroup,
    /// Row `i` computes target coordinate `i` (before torsion reduction).
    rows: Vec<Vec<i64>>,
    /// `section[i]` is a preimage of the `i`-th target basis vector.
    section: Vec<Vec<i64>>,
}

impl QuotientMap {
    /// Quotient of `Z^n` by the span of `relations` (each of length `n`).
    pub fn from_relations(n: usize, relations: &[Vec<i64>]) -> Result<Self> {
        let a = IntMatrix::from_columns(relations, n);
        let snf = smith_normal_form(&a);
        let diag = snf.diagonal();
        let u = snf.u.to_i64().ok_or(MonoidError::Overflow("quotient map"))?;
        let u_inv = snf.u_inv.to_i64().ok_or(MonoidError::Overflow("quotient map"))?;
        let modulus = |j: usize| -> Result<i64> {
            match diag.get(j) {
                Some(d) => big_to_i64(d, "quotient modulus"),
                None => Ok(0),
            }
        };
        let mut free_rows = Vec::new();
        let mut torsion_rows = Vec::new();
        for j in 0..n {
            let m = modulus(j)?;
            if m == 0 {
                free_rows.push(j);
            } else if m > 1 {
                torsion_rows.push((j, m));
            }
        }
        let target = FgAbelianGroup {
            rank: free_rows.len(),
            torsion: torsion_rows.iter().map(|&(_, m)| m).collect(),
        };
        let order: Vec<usize> = free_rows
            .iter()
            .copied()
            .chain(torsion_rows.iter().map(|&(j, _)| j))
            .collect();
        let rows = order.iter().map(|&j| u[j].clone()).collect();
        let section = order.iter().map(|&j| (0..n).map(|i| u_inv[i][j]).collect()).collect();
        Ok(QuotientMap {
            source_dim: n,
            target,
            rows,
            section,
        })
    }

    /// Quotient of an ambient group by extra relations.
    pub fn new(source: &FgAbelianGroup, relations: &[GroupElement]) -> Result<Self> {
        let mut rels = source.relations();
        for r in relations {
            source.check(r)?;
            rels.push(r.to_vec());
        }
        Self::from_relations(source.dim(), &rels)
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target(&self) -> &FgAbelianGroup {
        &self.target
    }

    /// Integer matrix of the map (rows = target coordinates).
    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn apply_raw(&self, x: &[i64]) -> Result<GroupElement> {
        debug_assert_eq!(x.len(), self.source_dim);
        let v = self
            .rows
            .iter()
            .map(|r| narrow(dot(r, x), "quotient image"))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.target.reduce(v))
    }

    pub fn apply(&self, x: &GroupElement) -> GroupElement {
        self.apply_raw(x).expect("quotient image overflow")
    }

    /// A preimage of `z` (as a raw integer vector).
    pub fn lift(&self, z: &GroupElement) -> Vec<i64> {
        let mut out = vec![0i64; self.source_dim];
        for (c, col) in z.iter().zip(&self.section) {
            for (o, s) in out.iter_mut().zip(col) {
                *o += c * s;
            }
        }
        out
    }

    /// Matrix of `lift` (columns are preimages of target basis vectors).
    pub fn section_matrix(&self) -> Vec<Vec<i64>> {
        (0..self.source_dim)
            .map(|i| self.section.iter().map(|c| c[i]).collect())
            .collect()
    }
}

/// The subgroup of an ambient group generated by a list of elements, with
/// coordinates in invariant-factor form.
#[derive(Clone, Debug)]
pub struct Subgroup {
    ambient: FgAbelianGroup,
    u: Vec<Vec<i64>>,
    divisors: Vec<i64>,
    basis: Vec<Vec<i64>>,
    quotient: QuotientMap,
}

impl Subgroup {
    pub fn generated_by(ambient: &FgAbelianGroup, gens: &[GroupElement]) -> Result<Self> {
        let n = ambient.dim();
        let mut cols = ambient.relations();
        for g in gens {
            ambient.check(g)?;
            cols.push(g.to_vec());
        }
        let a = IntMatrix::from_columns(&cols, n);
        let snf = smith_normal_form(&a);
        let diag: Vec<i64> = snf
            .diagonal()
            .iter()
            .take_while(|d| !d.is_zero())
            .map(|d| big_to_i64(d, "subgroup divisor"))
            .collect::<Result<_>>()?;
        let k = diag.len();
        let u = snf.u.to_i64().ok_or(MonoidError::Overflow("subgroup"))?;
        let u_inv = snf.u_inv.to_i64().ok_or(MonoidError::Overflow("subgroup"))?;
        let basis: Vec<Vec<i64>> = (0..k)
            .map(|j| (0..n).map(|i| u_inv[i][j] * diag[j]).collect())
            .collect();
        let mut sub = Subgroup {
            ambient: ambient.clone(),
            u,
            divisors: diag,
            basis,
            quotient: QuotientMap::from_relations(0, &[])?,
        };
        let torsion_rels: Vec<Vec<i64>> = ambient
            .relations()
            .iter()
            .map(|r| sub.lattice_coords(r).expect("torsion relation lies in lattice"))
            .collect();
        sub.quotient = QuotientMap::from_relations(k, &torsion_rels)?;
        Ok(sub)
    }

    fn lattice_coords(&self, x: &[i64]) -> Option<Vec<i64>> {
        let n = self.ambient.dim();
        let mut c = Vec::with_capacity(self.divisors.len());
        for j in 0..n {
            let y = dot(&self.u[j], x);
            if j < self.divisors.len() {
                let d = self.divisors[j] as i128;
                if y % d != 0 {
                    return None;
                }
                c.push(i64::try_from(y / d).ok()?);
            } else if y != 0 {
                return None;
            }
        }
        Some(c)
    }

    pub fn ambient(&self) -> &FgAbelianGroup {
        &self.ambient
    }

    /// The subgroup as an abstract group.
    pub fn group(&self) -> &FgAbelianGroup {
        self.quotient.target()
    }

    /// Coordinates of `x` in [`Self::group`], or `None` if `x` is not in the subgroup.
    pub fn coords(&self, x: &GroupElement) -> Option<GroupElement> {
        let c = self.lattice_coords(x)?;
        self.quotient.apply_raw(&c).ok()
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        self.lattice_coords(x).is_some()
    }

    /// The ambient element with the given subgroup coordinates.
    pub fn element(&self, z: &GroupElement) -> GroupElement {
        let c = self.quotient.lift(z);
        let n = self.ambient.dim();
        let mut x = vec![0i64; n];
        for (cj, b) in c.iter().zip(&self.basis) {
            for (xi, bi) in x.iter_mut().zip(b) {
                *xi += cj * bi;
            }
        }
        self.ambient.reduce(x)
    }
}

/// Integer kernel of a matrix with the given columns, as a list of basis vectors.
pub fn integer_kernel(columns: &[Vec<i64>], rows: usize) -> Result<Vec<Vec<i64>>> {
    let a = IntMatrix::from_columns(columns, rows);
    let snf = smith_normal_form(&a);
    let r = snf.rank();
    let v = snf.v.to_i64().ok_or(MonoidError::Overflow("kernel"))?;
    Ok((r..columns.len())
        .map(|j| (0..columns.len()).map(|i| v[i][j]).collect())
        .collect())
}

/// Greatest common divisor of a list (0 for an empty or all-zero list).
pub fn gcd_all(xs: &[i64]) -> i64 {
    xs.iter().fold(0i64, |g, &x| g.gcd(&x))
}

/// Floor division helper for mixed-sign integers.
pub fn div_floor_i128(a: i128, b: i128) -> i128 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn groupify_two_three() {
        let g = FgAbelianGroup::free(1);
        let s = Subgroup::generated_by(&g, &[vec![2].into(), vec![3].into()]).unwrap();
        assert_eq!(s.group(), &FgAbelianGroup::free(1));
        let c = s.coords(&vec![5].into()).unwrap();
        assert_eq!(s.element(&c), GroupElement::from(vec![5]));
    }

    #[test]
    fn torsion_cyclic_group() {
        for n in 2..=4 {
            let g = FgAbelianGroup::new(1, vec![n]).unwrap();
            let s = Subgroup::generated_by(&g, &[vec![1, 0].into(), vec![1, 1].into()]).unwrap();
            assert_eq!(s.group(), &FgAbelianGroup::new(1, vec![n]).unwrap());
        }
    }

    #[test]
    fn quotient_of_z2_by_diagonal() {
        let g = FgAbelianGroup::free(2);
        let q = QuotientMap::new(&g, &[vec![1, 1].into()]).unwrap();
        assert_eq!(q.target(), &FgAbelianGroup::free(1));
        let a = q.apply(&vec![1, 0].into());
        let b = q.apply(&vec![0, 1].into());
        assert_eq!(a[0], -b[0]);
        assert_eq!(a[0].abs(), 1);
    }

    #[test]
    fn quotient_with_torsion() {
        let g = FgAbelianGroup::free(1);
        let q = QuotientMap::new(&g, &[vec![6].into()]).unwrap();
        assert_eq!(q.target(), &FgAbelianGroup::new(0, vec![6]).unwrap());
        let z = q.apply(&vec![7].into());
        assert_eq!(q.apply(&GroupElement::from(q.lift(&z))), z);
    }

    #[test]
    fn subgroup_membership() {
        let g = FgAbelianGroup::free(2);
        let s = Subgroup::generated_by(&g, &[vec![2, 0].into(), vec![1, 1].into()]).unwrap();
        assert!(s.contains(&vec![0, 2].into()));
        assert!(!s.contains(&vec![1, 0].into()));
    }

    #[test]
    fn bad_torsion_rejected() {
        assert!(FgAbelianGroup::new(0, vec![2, 3]).is_err());
        assert!(FgAbelianGroup::new(0, vec![1]).is_err());
    }
}
