//! Small dense integer matrices with exact arithmetic.
//!
//! These are the workhorse for point-group actions on the translation
//! lattice: dimensions stay tiny (2 or 3), entries stay small, and every
//! operation is exact over i64. Arbitrary-precision matrices for homology
//! live in [`crate::homology`]; this type deliberately stays lightweight.

use serde::{Deserialize, Serialize};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IMat {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl std::fmt::Debug for IMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "IMat{:?}", self.to_rows())
    }
}

impl IMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IMat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IMat { rows: r, cols: c, data: rows.iter().flatten().copied().collect() }
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec()).collect()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> IMat {
        let mut t = IMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &IMat) -> IMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = IMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.set(i, j, out.get(i, j) + a * other.get(k, j));
                }
            }
        }
        out
    }

    pub fn mulv(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    pub fn add(&self, other: &IMat) -> IMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn det(&self) -> i64 {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        match self.rows {
            0 => 1,
            1 => self.get(0, 0),
            2 => self.get(0, 0) * self.get(1, 1) - self.get(0, 1) * self.get(1, 0),
            _ => (0..self.cols)
                .map(|j| {
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    sign * self.get(0, j) * self.minor(0, j).det()
                })
                .sum(),
        }
    }

    fn minor(&self, row: usize, col: usize) -> IMat {
        let mut m = IMat::zeros(self.rows - 1, self.cols - 1);
        let mut di = 0;
        for i in 0..self.rows {
            if i == row {
                continue;
            }
            let mut dj = 0;
            for j in 0..self.cols {
                if j == col {
                    continue;
                }
                m.set(di, dj, self.get(i, j));
                dj += 1;
            }
            di += 1;
        }
        m
    }

    /// Exact inverse for matrices with determinant ±1 (lattice changes of
    /// basis and point-group elements). Panics otherwise.
    pub fn inverse_unimodular(&self) -> IMat {
        let d = self.det();
        assert!(d == 1 || d == -1, "matrix is not unimodular (det {d})");
        let n = self.rows;
        let mut inv = IMat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                // adjugate transposes the cofactor matrix
                inv.set(j, i, sign * self.minor(i, j).det() * d);
            }
        }
        inv
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == IMat::identity(self.rows)
    }

    /// Entries reduced to {0,1} mod 2.
    pub fn mod2(&self) -> Vec<Vec<u8>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).rem_euclid(2) as u8).collect())
            .collect()
    }
}

pub fn vec_add(a: &[i64], b: &[i64]) -> Vec<i64> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_neg(a: &[i64]) -> Vec<i64> {
    a.iter().map(|x| -x).collect()
}
