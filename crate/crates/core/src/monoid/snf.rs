//! Smith normal form over the integers.
//!
//! Arbitrary precision is used internally so that the transformation
//! matrices never overflow; callers convert back to machine integers where
//! they know the entries are small.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A dense integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![vec![BigInt::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i][i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from machine-integer rows. `cols` is needed to
    /// describe matrices with zero rows.
    pub fn from_rows(rows: &[Vec<i64>], cols: usize) -> Self {
        let entries = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged matrix");
                r.iter().map(|&x| BigInt::from(x)).collect()
            })
            .collect();
        IntMatrix {
            rows: rows.len(),
            cols,
            entries,
        }
    }

    /// Builds a matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(columns: &[Vec<i64>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, &x) in c.iter().enumerate() {
                m.entries[i][j] = BigInt::from(x);
            }
        }
        m
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.entries[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.entries[i][j] += a * &other.entries[k][j];
                }
            }
        }
        out
    }

    /// Determinant by fraction-free elimination. Square matrices only.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.entries.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    /// Converts to machine integers, or `None` if an entry does not fit.
    pub fn to_i64(&self) -> Option<Vec<Vec<i64>>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|x| i64::try_from(x).ok()).collect())
            .collect()
    }
}

/// `u * a * v == d`, with `d` diagonal, the diagonal a divisibility chain of
/// nonnegative entries, and `u`, `v` unimodular.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    /// Inverse of `u`, tracked alongside it.
    pub u_inv: IntMatrix,
}

impl Snf {
    /// Diagonal entries `d[i][i]` for `i < min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d.entries[i][i].clone())
            .collect()
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

struct Reducer {
    a: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    u_inv: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
    rows: usize,
    cols: usize,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        self.u.swap(i, j);
        // u_inv columns follow the inverse operation.
        for row in self.u_inv.iter_mut() {
            row.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        for row in self.v.iter_mut() {
            row.swap(i, j);
        }
    }

    /// row[target] -= q * row[source]
    fn add_row(&mut self, target: usize, source: usize, q: &BigInt) {
        for j in 0..self.cols {
            let s = &self.a[source][j] * q;
            self.a[target][j] -= s;
        }
        for j in 0..self.rows {
            let s = &self.u[source][j] * q;
            self.u[target][j] -= s;
        }
        // inverse: col[source] += q * col[target]
        for i in 0..self.rows {
            let s = &self.u_inv[i][target] * q;
            self.u_inv[i][source] += s;
        }
    }

    /// col[target] -= q * col[source]
    fn add_col(&mut self, target: usize, source: usize, q: &BigInt) {
        for i in 0..self.rows {
            let s = &self.a[i][source] * q;
            self.a[i][target] -= s;
        }
        for i in 0..self.cols {
            let s = &self.v[i][source] * q;
            self.v[i][target] -= s;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -&*x;
        }
        for x in self.u[i].iter_mut() {
            *x = -&*x;
        }
        for r in 0..self.rows {
            self.u_inv[r][i] = -&self.u_inv[r][i];
        }
    }

    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                if self.a[i][j].is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((bi, bj)) => self.a[i][j].abs() < self.a[bi][bj].abs(),
                };
                if better {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    fn run(&mut self) {
        let n = self.rows.min(self.cols);
        for t in 0..n {
            let Some((pi, pj)) = self.min_pivot(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut dirty = false;
                for i in t + 1..self.rows {
                    if self.a[i][t].is_zero() {
                        continue;
                    }
                    let q = self.a[i][t].div_floor(&self.a[t][t]);
                    self.add_row(i, t, &q);
                    if !self.a[i][t].is_zero() {
                        dirty = true;
                    }
                }
                for j in t + 1..self.cols {
                    if self.a[t][j].is_zero() {
                        continue;
                    }
                    let q = self.a[t][j].div_floor(&self.a[t][t]);
                    self.add_col(j, t, &q);
                    if !self.a[t][j].is_zero() {
                        dirty = true;
                    }
                }
                if dirty {
                    // Move the smallest remainder in row/column t to the pivot.
                    let mut best = (t, t);
                    for i in t + 1..self.rows {
                        if !self.a[i][t].is_zero() && self.a[i][t].abs() < self.a[best.0][best.1].abs() {
                            best = (i, t);
                        }
                    }
                    for j in t + 1..self.cols {
                        if !self.a[t][j].is_zero() && self.a[t][j].abs() < self.a[best.0][best.1].abs() {
                            best = (t, j);
                        }
                    }
                    self.swap_rows(t, best.0);
                    self.swap_cols(t, best.1);
                    continue;
                }
                // Row and column are clean; enforce divisibility of the rest.
                let mut offender = None;
                'outer: for i in t + 1..self.rows {
                    for j in t + 1..self.cols {
                        if !self.a[i][j].is_multiple_of(&self.a[t][t]) {
                            offender = Some(i);
                            break 'outer;
                        }
                    }
                }
                match offender {
                    Some(i) => {
                        let minus_one = -BigInt::one();
                        self.add_row(t, i, &minus_one);
                    }
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
        }
    }
}

/// Computes `U·A·V = D` with `D` in Smith normal form.
pub fn smith_normal_form(a: &IntMatrix) -> Snf {
    let mut r = Reducer {
        a: a.entries.clone(),
        u: IntMatrix::identity(a.rows).entries,
        u_inv: IntMatrix::identity(a.rows).entries,
        v: IntMatrix::identity(a.cols).entries,
        rows: a.rows,
        cols: a.cols,
    };
    r.run();
    Snf {
        u: IntMatrix {
            rows: a.rows,
            cols: a.rows,
            entries: r.u,
        },
        d: IntMatrix {
            rows: a.rows,
            cols: a.cols,
            entries: r.a,
        },
        v: IntMatrix {
            rows: a.cols,
            cols: a.cols,
            entries: r.v,
        },
        u_inv: IntMatrix {
            rows: a.rows,
            cols: a.rows,
            entries: r.u_inv,
        },
    }
}
