//! Dense square matrices over a generic scalar.
//!
//! Small and unclever on purpose: representation matrices have dimension at
//! most 3 and evaluated group matrices at most 24. Determinants come in two
//! flavors — division-free cofactor expansion for any [`Scalar`] (used for
//! principal minors) and exact Gaussian elimination for a [`FieldScalar`].

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{FieldScalar, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct SqMatrix<T: Scalar> {
    n: usize,
    rows: Vec<Vec<T>>,
}

impl<T: Scalar> SqMatrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension("matrix must be square".into()));
        }
        Ok(SqMatrix { n, rows })
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { T::one() } else { T::zero() })
                    .collect()
            })
            .collect();
        SqMatrix { n, rows }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.rows
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "matrix dimension mismatch");
        let n = self.n;
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut acc = T::zero();
                        for k in 0..n {
                            acc = acc + self.rows[i][k].clone() * other.rows[k][j].clone();
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        SqMatrix { n, rows }
    }

    pub fn trace(&self) -> T {
        let mut acc = T::zero();
        for i in 0..self.n {
            acc = acc + self.rows[i][i].clone();
        }
        acc
    }

    /// Division-free determinant by cofactor expansion; fine for n <= 8.
    pub fn det_cofactor(&self) -> T {
        fn go<T: Scalar>(rows: &[Vec<T>], cols: &mut Vec<usize>) -> T {
            let k = cols.len();
            let row = rows.len() - k;
            if k == 1 {
                return rows[row][cols[0]].clone();
            }
            let mut acc = T::zero();
            for idx in 0..k {
                let c = cols.remove(idx);
                let a = rows[row][c].clone();
                if !a.is_zero() {
                    let sub = go(rows, cols);
                    let term = a * sub;
                    acc = if idx % 2 == 0 { acc + term } else { acc - term };
                }
                cols.insert(idx, c);
            }
            acc
        }
        if self.n == 0 {
            return T::one();
        }
        let mut cols: Vec<usize> = (0..self.n).collect();
        go(&self.rows, &mut cols)
    }

    /// Sum of all principal k x k minors (the trace on the k-th exterior
    /// power). k = 0 gives 1, k = n gives the determinant.
    pub fn principal_minor_sum(&self, k: usize) -> Result<T> {
        if k > self.n {
            return Err(Error::InvalidParameter(format!(
                "principal minors of size {k} in a {n} x {n} matrix",
                n = self.n
            )));
        }
        if k == 0 {
            return Ok(T::one());
        }
        let mut acc = T::zero();
        for subset in subsets_of_size(self.n, k) {
            let sub: Vec<Vec<T>> = subset
                .iter()
                .map(|&i| subset.iter().map(|&j| self.rows[i][j].clone()).collect())
                .collect();
            let m = SqMatrix { n: k, rows: sub };
            acc = acc + m.det_cofactor();
        }
        Ok(acc)
    }
}

impl<T: FieldScalar> SqMatrix<T> {
    /// Exact determinant by Gaussian elimination with column pivoting.
    pub fn det_field(&self) -> T {
        let n = self.n;
        let mut a = self.rows.clone();
        let mut det = T::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return T::zero();
            };
            if p != col {
                a.swap(p, col);
                det = -det;
            }
            let pivot = a[col][col].clone();
            det = det * pivot.clone();
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone() / pivot.clone();
                for c in col..n {
                    let t = factor.clone() * a[col][c].clone();
                    a[r][c] = a[r][c].clone() - t;
                }
            }
        }
        det
    }
}

/// All k-element subsets of 0..n in lexicographic order.
pub fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - k {
                break;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

impl<T: Scalar> fmt::Debug for SqMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| format!("{c}")).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}
