//! Exact rational feasibility for `A x = b, x >= 0` (phase-one simplex with
//! Bland's rule) and the cone queries built on it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Returns some `x >= 0` with `A x = b`, or `None` if there is none.
/// `a` is given row by row; every row has length `nvars`.
pub fn feasible_point(a: &[Vec<i64>], b: &[i64], nvars: usize) -> Option<Vec<BigRational>> {
    let m = a.len();
    assert_eq!(b.len(), m, "rhs length mismatch");
    let width = nvars + m + 1;
    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    for (i, row) in a.iter().enumerate() {
        assert_eq!(row.len(), nvars, "ragged constraint matrix");
        let flip = b[i] < 0;
        let mut r = vec![BigRational::zero(); width];
        for (j, &x) in row.iter().enumerate() {
            r[j] = rat(if flip { -x } else { x });
        }
        r[nvars + i] = BigRational::one();
        r[width - 1] = rat(b[i].abs());
        t.push(r);
    }
    let mut basis: Vec<usize> = (nvars..nvars + m).collect();
    // Reduced costs of the artificial objective.
    let mut cost = vec![BigRational::zero(); width];
    for r in &t {
        for j in 0..nvars {
            cost[j] -= &r[j];
        }
        cost[width - 1] -= &r[width - 1];
    }
    while let Some(enter) = (0..nvars + m).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<usize> = None;
        for i in 0..m {
            if !t[i][enter].is_positive() {
                continue;
            }
            leave = match leave {
                None => Some(i),
                Some(l) => {
                    let ri = &t[i][width - 1] / &t[i][enter];
                    let rl = &t[l][width - 1] / &t[l][enter];
                    if ri < rl || (ri == rl && basis[i] < basis[l]) {
                        Some(i)
                    } else {
                        Some(l)
                    }
                }
            };
        }
        // The phase-one objective is bounded below by zero.
        let l = leave.expect("unbounded phase-one objective");
        pivot(&mut t, &mut cost, l, enter);
        basis[l] = enter;
    }
    if !cost[width - 1].is_zero() {
        return None;
    }
    let mut x = vec![BigRational::zero(); nvars];
    for (i, &v) in basis.iter().enumerate() {
        if v < nvars {
            x[v] = t[i][width - 1].clone();
        }
    }
    Some(x)
}

fn pivot(t: &mut [Vec<BigRational>], cost: &mut [BigRational], l: usize, e: usize) {
    let p = t[l][e].clone();
    for x in t[l].iter_mut() {
        *x = &*x / &p;
    }
    let prow = t[l].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i == l || row[e].is_zero() {
            continue;
        }
        let f = row[e].clone();
        for (x, y) in row.iter_mut().zip(&prow) {
            *x -= &f * y;
        }
    }
    if !cost[e].is_zero() {
        let f = cost[e].clone();
        for (x, y) in cost.iter_mut().zip(&prow) {
            *x -= &f * y;
        }
    }
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// An integer functional `phi` with `phi . g >= 1` for every vector in `gens`,
/// or `None` if no such functional exists (some nonnegative combination of
/// the vectors vanishes nontrivially, or a vector is zero).
pub fn positive_functional(gens: &[Vec<i64>], dim: usize) -> Option<Vec<i64>> {
    if gens.is_empty() {
        return Some(vec![0; dim]);
    }
    // Variables: phi+ (dim), phi- (dim), one slack per vector.
    let k = gens.len();
    let nvars = 2 * dim + k;
    let a: Vec<Vec<i64>> = gens
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let mut row = vec![0i64; nvars];
            for j in 0..dim {
                row[j] = g[j];
                row[dim + j] = -g[j];
            }
            row[2 * dim + i] = -1;
            row
        })
        .collect();
    let x = feasible_point(&a, &vec![1; k], nvars)?;
    let phi: Vec<BigRational> = (0..dim).map(|j| &x[j] - &x[dim + j]).collect();
    let lcm = phi.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    Some(
        phi.iter()
            .map(|q| {
                (q.numer() * (&lcm / q.denom()))
                    .to_i64()
                    .expect("functional coefficient overflow")
            })
            .collect(),
    )
}

/// Whether `x` lies in the rational cone spanned by `gens`.
pub fn in_cone(gens: &[Vec<i64>], x: &[i64]) -> bool {
    let dim = x.len();
    let a: Vec<Vec<i64>> = (0..dim).map(|r| gens.iter().map(|g| g[r]).collect()).collect();
    feasible_point(&a, x, gens.len()).is_some()
}

/// Whether `g` lies in the smallest face of `cone(gens)` containing `sigma`
/// (`sigma` is assumed to lie in the cone).
pub fn in_face_of(gens: &[Vec<i64>], sigma: &[i64], g: &[i64]) -> bool {
    let dim = sigma.len();
    // sum lambda_j gens_j - t sigma = -g
    let nvars = gens.len() + 1;
    let a: Vec<Vec<i64>> = (0..dim)
        .map(|r| {
            let mut row: Vec<i64> = gens.iter().map(|v| v[r]).collect();
            row.push(-sigma[r]);
            row
        })
        .collect();
    let b: Vec<i64> = g.iter().map(|x| -x).collect();
    feasible_point(&a, &b, nvars).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn simple_feasibility() {
        // x + y = 3, x - y = 1
        let x = feasible_point(&[vec![1, 1], vec![1, -1]], &[3, 1], 2).unwrap();
        assert_eq!(x, vec![rat(2), rat(1)]);
        // x + y = -1 has no nonnegative solution
        assert!(feasible_point(&[vec![1, 1]], &[-1], 2).is_none());
    }

    #[test]
    fn functional_on_pointed_cone() {
        let gens = vec![vec![1, 0], vec![1, 2], vec![0, 1]];
        let phi = positive_functional(&gens, 2).unwrap();
        for g in &gens {
            assert!(g[0] * phi[0] + g[1] * phi[1] >= 1);
        }
        assert!(positive_functional(&[vec![1], vec![-1]], 1).is_none());
        assert!(positive_functional(&[vec![0, 0]], 2).is_none());
    }

    #[test]
    fn cone_and_face() {
        let gens = vec![vec![1, 0], vec![0, 1]];
        assert!(in_cone(&gens, &[2, 3]));
        assert!(!in_cone(&gens, &[-1, 3]));
        assert!(in_face_of(&gens, &[2, 0], &[1, 0]));
        assert!(!in_face_of(&gens, &[2, 0], &[0, 1]));
        assert!(in_face_of(&gens, &[1, 1], &[0, 1]));
    }

    proptest! {
        #[test]
        fn returned_points_satisfy_constraints(
            rows in 1usize..=4,
            cols in 1usize..=5,
            data in proptest::collection::vec(-5i64..=5, 20),
            rhs in proptest::collection::vec(-6i64..=6, 4),
        ) {
            let a: Vec<Vec<i64>> = (0..rows).map(|i| data[i * 5..i * 5 + cols].to_vec()).collect();
            let b = &rhs[..rows];
            if let Some(x) = feasible_point(&a, b, cols) {
                for (row, bi) in a.iter().zip(b) {
                    let s = row.iter().zip(&x).fold(BigRational::zero(), |acc, (c, v)| acc + rat(*c) * v);
                    prop_assert_eq!(s, rat(*bi));
                }
                prop_assert!(x.iter().all(|v| !v.is_negative()));
            } else {
                // Cross-check infeasibility on a small integer grid.
                let mut found = false;
                let total = 4usize.pow(cols as u32);
                for code in 0..total {
                    let mut c = code;
                    let v: Vec<i64> = (0..cols).map(|_| { let d = (c % 4) as i64; c /= 4; d }).collect();
                    if a.iter().zip(b).all(|(row, bi)| row.iter().zip(&v).map(|(p, q)| p * q).sum::<i64>() == *bi) {
                        found = true;
                        break;
                    }
                }
                prop_assert!(!found);
            }
        }
    }
}
