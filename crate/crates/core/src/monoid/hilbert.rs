//! Hilbert bases of pointed rational cones and saturation.

use std::collections::BTreeSet;

use num_traits::Zero;

use super::error::{MonoidError, Result};
use super::fgmonoid::{dot, FgMonoid};
use super::group::{big_to_i64, div_floor_i128, FgAbelianGroup, GroupElement};
use super::lp;
use super::snf::{smith_normal_form, IntMatrix};

/// Largest simplicial-cone index the enumeration accepts.
pub const MAX_SIMPLEX_INDEX: i64 = 200_000;

/// The minimal generating set of `cone(gens) ∩ lattice`, in graded-lex order.
///
/// Candidates are the lattice points of the fundamental parallelepipeds of
/// all simplicial subcones; the irreducible ones are kept.
pub fn hilbert_basis(gens: &[GroupElement], lattice: &FgAbelianGroup) -> Result<Vec<GroupElement>> {
    if !lattice.is_torsion_free() {
        return Err(MonoidError::TorsionLattice);
    }
    let n = lattice.dim();
    for g in gens {
        lattice.check(g)?;
    }
    let nonzero: Vec<Vec<i64>> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.to_vec()).collect();
    if nonzero.is_empty() {
        return Ok(Vec::new());
    }
    if lp::positive_functional(&nonzero, n).is_none() {
        return Err(MonoidError::NotPointed);
    }
    // Restrict to the saturated sublattice spanned by the generators.
    let snf = smith_normal_form(&IntMatrix::from_columns(&nonzero, n));
    let r = snf.rank();
    let u = snf.u.to_i64().ok_or(MonoidError::Overflow("hilbert basis"))?;
    let u_inv = snf.u_inv.to_i64().ok_or(MonoidError::Overflow("hilbert basis"))?;
    let local: Vec<Vec<i64>> = nonzero
        .iter()
        .map(|g| (0..r).map(|i| dot(&u[i], g)).collect())
        .collect();
    let basis = hilbert_basis_full(&local, r)?;
    let mut out: Vec<GroupElement> = basis
        .iter()
        .map(|c| GroupElement::new((0..n).map(|i| (0..r).map(|j| u_inv[i][j] * c[j]).sum()).collect()))
        .collect();
    out.sort();
    Ok(out)
}

/// Hilbert basis of a full-dimensional pointed cone in `Z^d`.
fn hilbert_basis_full(gens: &[Vec<i64>], d: usize) -> Result<Vec<Vec<i64>>> {
    let phi = lp::positive_functional(gens, d).ok_or(MonoidError::NotPointed)?;
    let mut candidates: BTreeSet<Vec<i64>> = gens.iter().cloned().collect();
    for subset in combinations(gens.len(), d) {
        let cols: Vec<Vec<i64>> = subset.iter().map(|&i| gens[i].clone()).collect();
        parallelepiped_points(&cols, d, &mut candidates)?;
    }
    candidates.remove(&vec![0; d]);
    let mut ordered: Vec<Vec<i64>> = candidates.into_iter().collect();
    ordered.sort_by_key(|x| (dot(&phi, x), x.clone()));
    let mut kept: Vec<Vec<i64>> = Vec::new();
    for x in ordered {
        let reducible = kept.iter().any(|h| {
            let diff: Vec<i64> = x.iter().zip(h).map(|(a, b)| a - b).collect();
            lp::in_cone(gens, &diff)
        });
        if !reducible {
            kept.push(x);
        }
    }
    Ok(kept)
}

/// Adds the lattice points of `{Σ t_i b_i : 0 <= t_i < 1}` for the columns
/// `b_i`, when they are linearly independent.
fn parallelepiped_points(cols: &[Vec<i64>], d: usize, out: &mut BTreeSet<Vec<i64>>) -> Result<()> {
    let b = IntMatrix::from_columns(cols, d);
    let det = b.determinant();
    if det.is_zero() {
        return Ok(());
    }
    let det = big_to_i64(&det, "simplex index")?;
    if det.abs() > MAX_SIMPLEX_INDEX {
        return Err(MonoidError::BoundExceeded(format!(
            "simplicial cone of index {} exceeds {MAX_SIMPLEX_INDEX}",
            det.abs()
        )));
    }
    let adj = adjugate(cols, d);
    let snf = smith_normal_form(&b);
    let diag: Vec<i64> = snf
        .diagonal()
        .iter()
        .map(|x| big_to_i64(x, "simplex index"))
        .collect::<Result<_>>()?;
    let u_inv = snf.u_inv.to_i64().ok_or(MonoidError::Overflow("parallelepiped"))?;
    // Coset representatives of Z^d / B Z^d are U^{-1} a with 0 <= a_i < d_i.
    let mut a = vec![0i64; d];
    loop {
        let y: Vec<i128> = (0..d)
            .map(|i| (0..d).map(|j| u_inv[i][j] as i128 * a[j] as i128).sum())
            .collect();
        // t = adj(B) y / det; subtract B floor(t).
        let mut x = y.clone();
        for k in 0..d {
            let num: i128 = (0..d).map(|j| adj[k][j] as i128 * y[j]).sum();
            let f = div_floor_i128(num, det as i128);
            if f != 0 {
                for i in 0..d {
                    x[i] -= f * cols[k][i] as i128;
                }
            }
        }
        out.insert(
            x.iter()
                .map(|&v| i64::try_from(v).map_err(|_| MonoidError::Overflow("parallelepiped")))
                .collect::<Result<_>>()?,
        );
        // Next mixed-radix counter value.
        let mut i = 0;
        loop {
            if i == d {
                return Ok(());
            }
            a[i] += 1;
            if a[i] < diag[i] {
                break;
            }
            a[i] = 0;
            i += 1;
        }
    }
}

/// Adjugate of the square matrix with the given columns.
fn adjugate(cols: &[Vec<i64>], d: usize) -> Vec<Vec<i64>> {
    let entry = |i: usize, j: usize| cols[j][i];
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    // cofactor C_{ji} goes to adj[i][j]
                    let minor: Vec<Vec<i64>> = (0..d)
                        .filter(|&c| c != i)
                        .map(|c| (0..d).filter(|&r| r != j).map(|r| entry(r, c)).collect())
                        .collect();
                    let m = IntMatrix::from_columns(&minor, d - 1).determinant();
                    let m = i64::try_from(&m).expect("cofactor overflow");
                    if (i + j) % 2 == 0 {
                        m
                    } else {
                        -m
                    }
                })
                .collect()
        })
        .collect()
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
            if i == 0 {
                return out;
            }
        }
    }
}

/// `{x in M^gp : n x in M for some n >= 1}`.
pub fn saturate(m: &FgMonoid) -> Result<FgMonoid> {
    if !m.is_sharp() {
        return Err(MonoidError::NotSharp);
    }
    let sub = m.groupify();
    let g = sub.group().clone();
    let coords: Vec<GroupElement> = m
        .generators()
        .iter()
        .map(|x| sub.coords(x).expect("generator lies in its groupification"))
        .collect();
    let free_lattice = FgAbelianGroup::free(g.rank);
    let free_gens: Vec<GroupElement> = coords.iter().map(|c| GroupElement::new(c[..g.rank].to_vec())).collect();
    let basis = hilbert_basis(&free_gens, &free_lattice)?;
    let mut gens: Vec<GroupElement> = basis
        .into_iter()
        .map(|h| {
            let mut v = h.into_coords();
            v.resize(g.dim(), 0);
            sub.element(&GroupElement::new(v))
        })
        .collect();
    for i in g.rank..g.dim() {
        gens.push(sub.element(&g.basis_element(i)));
    }
    FgMonoid::new(m.ambient().clone(), gens)
}

pub fn is_saturated(m: &FgMonoid) -> Result<bool> {
    let s = saturate(m)?;
    Ok(m.contains_monoid(&s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn e(v: &[i64]) -> GroupElement {
        GroupElement::new(v.to_vec())
    }

    fn hb(rank: usize, gens: &[Vec<i64>]) -> Vec<GroupElement> {
        let gens: Vec<GroupElement> = gens.iter().map(|g| e(g)).collect();
        hilbert_basis(&gens, &FgAbelianGroup::free(rank)).unwrap()
    }

    /// Irreducible lattice points of the cone found by bounded enumeration.
    fn brute_force(gens: &[Vec<i64>], bound: i64) -> Vec<GroupElement> {
        let d = gens[0].len();
        let mut pts = Vec::new();
        let side = 2 * bound + 1;
        for code in 0..side.pow(d as u32) {
            let mut c = code;
            let x: Vec<i64> = (0..d)
                .map(|_| {
                    let v = c % side - bound;
                    c /= side;
                    v
                })
                .collect();
            if x.iter().any(|&v| v != 0) && lp::in_cone(gens, &x) {
                pts.push(x);
            }
        }
        let mut irreducible: Vec<GroupElement> = pts
            .iter()
            .filter(|x| {
                !pts.iter().any(|y| {
                    let z: Vec<i64> = x.iter().zip(y.iter()).map(|(a, b)| a - b).collect();
                    y != *x && z.iter().any(|&v| v != 0) && lp::in_cone(gens, &z)
                })
            })
            .map(|x| e(x))
            .collect();
        irreducible.sort();
        irreducible
    }

    #[test]
    fn positive_orthant() {
        assert_eq!(hb(2, &[vec![1, 0], vec![0, 1]]), vec![e(&[1, 0]), e(&[0, 1])]);
    }

    #[test]
    fn cone_one_zero_one_two() {
        let got = hb(2, &[vec![1, 0], vec![1, 2]]);
        assert_eq!(got, vec![e(&[1, 0]), e(&[1, 1]), e(&[1, 2])]);
        assert_eq!(got, brute_force(&[vec![1, 0], vec![1, 2]], 3));
    }

    #[test]
    fn ray_two() {
        assert_eq!(hb(1, &[vec![2]]), vec![e(&[1])]);
    }

    #[test]
    fn line_is_rejected() {
        let gens = vec![e(&[1]), e(&[-1])];
        assert_eq!(
            hilbert_basis(&gens, &FgAbelianGroup::free(1)),
            Err(MonoidError::NotPointed)
        );
    }

    #[test]
    fn lower_dimensional_cone() {
        assert_eq!(hb(2, &[vec![2, 2]]), vec![e(&[1, 1])]);
    }

    #[test]
    fn cusp_saturation_is_n() {
        let cusp = FgMonoid::in_lattice(1, &[vec![2], vec![3]]).unwrap();
        assert!(!is_saturated(&cusp).unwrap());
        assert_eq!(saturate(&cusp).unwrap(), FgMonoid::free(1));
    }

    #[test]
    fn saturated_examples() {
        assert!(is_saturated(&FgMonoid::free(2)).unwrap());
        let m = FgMonoid::in_lattice(2, &[vec![2, 0], vec![1, 1], vec![0, 2]]).unwrap();
        assert!(is_saturated(&m).unwrap());
    }

    #[test]
    fn torsion_monoid_not_saturated() {
        for n in 2..=4 {
            let g = FgAbelianGroup::new(1, vec![n]).unwrap();
            let p = FgMonoid::new(g, vec![e(&[1, 0]), e(&[1, 1])]).unwrap();
            assert!(!is_saturated(&p).unwrap());
            let s = saturate(&p).unwrap();
            assert!(s.contains(&e(&[0, 1])).unwrap());
        }
    }

    #[test]
    fn non_sharp_rejected() {
        let z = FgMonoid::in_lattice(1, &[vec![1], vec![-1]]).unwrap();
        assert_eq!(saturate(&z), Err(MonoidError::NotSharp));
    }

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(5, 2).len(), 10);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn matches_bounded_enumeration(
            gens in proptest::collection::vec(proptest::collection::vec(0i64..=3, 2), 2..=3)
        ) {
            prop_assume!(gens.iter().all(|g| g.iter().any(|&v| v != 0)));
            let got = hb(2, &gens);
            // Every Hilbert basis element lies within the box spanned by the generators.
            prop_assert_eq!(got, brute_force(&gens, 3));
        }

        #[test]
        fn saturation_laws(
            gens in proptest::collection::vec(proptest::collection::vec(0i64..=3, 2), 1..=3)
        ) {
            let m = FgMonoid::in_lattice(2, &gens).unwrap();
            let s = saturate(&m).unwrap();
            prop_assert!(s.contains_monoid(&m));
            if s.is_sharp() {
                prop_assert!(is_saturated(&s).unwrap());
                prop_assert!(saturate(&s).unwrap().same_monoid(&s));
            }
        }
    }
}
