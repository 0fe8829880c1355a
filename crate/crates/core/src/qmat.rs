//! Dense exact matrices over the rationals.
//!
//! Rank goes through fraction-free Bareiss elimination on an integerized
//! copy; kernels, solving and inversion use rational Gauss-Jordan. Pivoting
//! is always "first nonzero in column order", so results are deterministic.

use num_traits::{One, Zero};

use crate::rational::{Integer, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMat {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Rational>>,
}

impl QMat {
    pub fn new(data: Vec<Vec<Rational>>) -> Self {
        let rows = data.len();
        let cols = data.first().map(|r| r.len()).unwrap_or(0);
        assert!(data.iter().all(|r| r.len() == cols));
        QMat { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMat {
            rows,
            cols,
            data: vec![vec![Rational::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMat::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Rational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Rational) -> Self {
        QMat {
            rows,
            cols,
            data: (0..rows)
                .map(|i| (0..cols).map(|j| f(i, j)).collect())
                .collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Rational {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i]
    }

    pub fn transpose(&self) -> QMat {
        QMat::from_fn(self.cols, self.rows, |i, j| self.data[j][i].clone())
    }

    pub fn mul(&self, other: &QMat) -> QMat {
        assert_eq!(self.cols, other.rows);
        QMat::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = Rational::zero();
            for k in 0..self.cols {
                acc += &self.data[i][k] * &other.data[k][j];
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for k in 0..self.cols {
                    acc += &self.data[i][k] * &v[k];
                }
                acc
            })
            .collect()
    }

    /// Exact rank over the rationals (hence over any extension field).
    pub fn rank(&self) -> usize {
        // Clear denominators row by row; scaling does not change the rank.
        let mut m: Vec<Vec<Integer>> = self
            .data
            .iter()
            .map(|row| {
                let mut lcm = Integer::one();
                for x in row {
                    lcm = num_integer::lcm(lcm, x.denom().clone());
                }
                row.iter()
                    .map(|x| x.numer() * (&lcm / x.denom()))
                    .collect()
            })
            .collect();
        bareiss_rank(&mut m, self.rows, self.cols)
    }

    /// Reduced row echelon form; returns (rref, pivot column per pivot row).
    pub fn rref(&self) -> (QMat, Vec<usize>) {
        let mut m = self.data.clone();
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..self.cols {
            let Some(p) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = m[r][c].clone();
            for x in m[r].iter_mut() {
                *x = &*x / &inv;
            }
            for i in 0..self.rows {
                if i != r && !m[i][c].is_zero() {
                    let factor = m[i][c].clone();
                    for j in 0..self.cols {
                        let sub = &factor * &m[r][j];
                        m[i][j] -= sub;
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == self.rows {
                break;
            }
        }
        (QMat::new(m), pivots)
    }

    /// Basis of the right kernel {x : Mx = 0}, one vector per free column,
    /// in ascending free-column order.
    pub fn right_kernel(&self) -> Vec<Vec<Rational>> {
        let (rref, pivots) = self.rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (row, &col) in pivots.iter().enumerate() {
                v[col] = Some(row);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut vec = vec![Rational::zero(); self.cols];
            vec[free] = Rational::one();
            for (col, rowopt) in pivot_set.iter().enumerate() {
                if let Some(row) = rowopt {
                    vec[col] = -rref.data[*row][free].clone();
                }
            }
            basis.push(vec);
        }
        basis
    }

    /// Solves Mx = b exactly; `None` when inconsistent. Free variables are 0.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = QMat::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.data[i][j].clone()
            } else {
                b[i].clone()
            }
        });
        let (rref, pivots) = aug.rref();
        aug = rref;
        if pivots.contains(&self.cols) {
            return None; // pivot in the augmented column
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (row, &col) in pivots.iter().enumerate() {
            x[col] = aug.data[row][self.cols].clone();
        }
        Some(x)
    }

    /// Exact inverse of a square matrix; `None` when singular.
    pub fn inverse(&self) -> Option<QMat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let aug = QMat::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.data[i][j].clone()
            } else if j - n == i {
                Rational::one()
            } else {
                Rational::zero()
            }
        });
        let (rref, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(QMat::from_fn(n, n, |i, j| rref.data[i][n + j].clone()))
    }

    /// Exact determinant (rational Gaussian elimination with row swaps).
    pub fn det(&self) -> Rational {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.data.clone();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
                return Rational::zero();
            };
            if p != c {
                m.swap(c, p);
                det = -det;
            }
            det *= &m[c][c];
            let inv = m[c][c].clone();
            for i in c + 1..n {
                if m[i][c].is_zero() {
                    continue;
                }
                let factor = &m[i][c] / &inv;
                for j in c..n {
                    let sub = &factor * &m[c][j];
                    m[i][j] -= sub;
                }
            }
        }
        det
    }
}

/// Fraction-free Bareiss elimination; returns the rank. `m` is destroyed.
fn bareiss_rank(m: &mut [Vec<Integer>], rows: usize, cols: usize) -> usize {
    let mut rank = 0usize;
    let mut prev = Integer::one();
    let mut r = 0usize;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let num = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                debug_assert!((&num % &prev).is_zero() || prev.is_one());
                m[i][j] = num / &prev;
            }
            m[i][c] = Integer::zero();
        }
        prev = m[r][c].clone();
        rank += 1;
        r += 1;
        if r == rows {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_i64};

    fn m(entries: &[&[i64]]) -> QMat {
        QMat::new(
            entries
                .iter()
                .map(|r| r.iter().map(|&x| rat_i64(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_of_zero_matrix() {
        assert_eq!(QMat::zeros(3, 4).rank(), 0);
    }

    #[test]
    fn rank_and_kernel() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let kernel = a.right_kernel();
        assert_eq!(kernel.len(), 1);
        for v in &kernel {
            let img = a.mul_vec(v);
            assert!(img.iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn rational_entries_rank() {
        let a = QMat::new(vec![
            vec![rat(1, 2), rat(1, 3)],
            vec![rat(3, 2), rat(2, 1)],
        ]);
        assert_eq!(a.rank(), 2);
        // second and third rows are multiples of the first
        let b = QMat::new(vec![
            vec![rat(1, 2), rat(1, 3)],
            vec![rat(3, 2), rat(1, 1)],
            vec![rat(2, 1), rat(4, 3)],
        ]);
        assert_eq!(b.rank(), 1);
    }

    #[test]
    fn solve_and_inverse() {
        let a = m(&[&[2, 1], &[1, 3]]);
        let x = a.solve(&[rat_i64(5), rat_i64(10)]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![rat_i64(5), rat_i64(10)]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), QMat::identity(2));
        assert_eq!(a.det(), rat_i64(5));

        let singular = m(&[&[1, 2], &[2, 4]]);
        assert!(singular.inverse().is_none());
        assert_eq!(singular.det(), rat_i64(0));
        assert!(singular.solve(&[rat_i64(1), rat_i64(0)]).is_none());
    }
}
