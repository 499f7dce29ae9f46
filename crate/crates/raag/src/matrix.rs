//! Exact integer matrices.

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A square matrix of `i64`, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<Vec<i64>>", try_from = "Vec<Vec<i64>>")]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zero(n: usize) -> Self {
        IntMatrix {
            n,
            data: vec![0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// `I + k·E_{st}`.
    pub fn elementary(n: usize, s: usize, t: usize, k: i64) -> Self {
        assert_ne!(s, t, "elementary matrices need s != t");
        let mut m = IntMatrix::identity(n);
        m.data[s * n + t] = k;
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::Dimension {
                    expected: n,
                    got: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Ok(IntMatrix { n, data })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: i64) {
        self.data[i * self.n + j] = x;
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.n.max(1)).take(self.n).map(<[i64]>::to_vec).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == IntMatrix::identity(self.n)
    }

    /// Checked product; `None` on overflow.
    pub fn checked_mul(&self, other: &IntMatrix) -> Option<IntMatrix> {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let mut out = IntMatrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let b = other.data[k * n + j];
                    if b != 0 {
                        let cell = &mut out.data[i * n + j];
                        *cell = cell.checked_add(a.checked_mul(b)?)?;
                    }
                }
            }
        }
        Some(out)
    }

    /// Left multiplication by `I + k·E_{st}`: adds `k` times row `t` to row `s`.
    pub fn add_row_multiple(&mut self, s: usize, t: usize, k: i64) {
        let n = self.n;
        for j in 0..n {
            let x = self.data[t * n + j];
            self.data[s * n + j] += k * x;
        }
    }

    /// Right multiplication by `I + k·E_{st}`: adds `k` times column `s` to column `t`.
    pub fn add_col_multiple(&mut self, s: usize, t: usize, k: i64) {
        let n = self.n;
        for i in 0..n {
            let x = self.data[i * n + s];
            self.data[i * n + t] += k * x;
        }
    }

    /// The square submatrix on the given (sorted) index set.
    pub fn principal_submatrix(&self, idx: &[usize]) -> IntMatrix {
        let m = idx.len();
        let mut out = IntMatrix::zero(m);
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                out.data[a * m + b] = self.get(i, j);
            }
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> i128 {
        let n = self.n;
        if n == 0 {
            return 1;
        }
        let mut a: Vec<i128> = self.data.iter().map(|&x| x as i128).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k * n + k] == 0 {
                let Some(p) = (k + 1..n).find(|&r| a[r * n + k] != 0) else {
                    return 0;
                };
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i * n + j] = (a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j]) / prev;
                }
            }
            prev = a[k * n + k];
        }
        sign * a[n * n - 1]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.checked_mul(rhs).expect("integer overflow in matrix product")
    }
}

impl From<IntMatrix> for Vec<Vec<i64>> {
    fn from(m: IntMatrix) -> Self {
        m.rows()
    }
}

impl TryFrom<Vec<Vec<i64>>> for IntMatrix {
    type Error = Error;
    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self> {
        IntMatrix::from_rows(&rows)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elementary_products() {
        let a = IntMatrix::elementary(3, 0, 1, 2);
        let b = IntMatrix::elementary(3, 0, 1, -2);
        assert!((&a * &b).is_identity());
        let mut c = IntMatrix::identity(3);
        c.add_row_multiple(0, 1, 2);
        assert_eq!(c, a);
        let mut d = IntMatrix::identity(3);
        d.add_col_multiple(0, 1, 2);
        assert_eq!(d, a);
    }

    #[test]
    fn determinants() {
        assert_eq!(IntMatrix::identity(4).determinant(), 1);
        let m = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(m.determinant(), -1);
        let m = IntMatrix::from_rows(&[vec![2, 3, 1], vec![4, 1, 0], vec![1, 1, 1]]).unwrap();
        assert_eq!(m.determinant(), -7);
    }

    #[test]
    fn serde_round_trip_and_errors() {
        let m = IntMatrix::elementary(2, 1, 0, 5);
        assert_eq!(m.rows(), vec![vec![1, 0], vec![5, 1]]);
        assert!(IntMatrix::from_rows(&[vec![1, 0], vec![0]]).is_err());
    }
}
