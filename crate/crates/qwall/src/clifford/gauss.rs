//! Small square matrices over the Gaussian integers.
//!
//! Every symmetry matrix in the shipped band representations has entries in
//! {0, ±1, ±i}, so products, conjugates and Kronecker products stay exact.
//! Equality of composed operators is therefore an integer comparison, never a
//! floating-point one.

use num_complex::Complex;

pub type GaussInt = Complex<i64>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussMat {
    n: usize,
    data: Vec<GaussInt>,
}

impl GaussMat {
    pub fn zeros(n: usize) -> Self {
        GaussMat {
            n,
            data: vec![GaussInt::new(0, 0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, GaussInt::new(1, 0));
        }
        m
    }

    /// Builds from rows of (re, im) pairs. Panics unless the rows form a square.
    pub fn from_rows(rows: &[&[(i64, i64)]]) -> Self {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "row {i} has length {}, want {n}", row.len());
            for (j, &(re, im)) in row.iter().enumerate() {
                m.set(i, j, GaussInt::new(re, im));
            }
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> GaussInt {
        self.data[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: GaussInt) {
        self.data[r * self.n + c] = v;
    }

    pub fn mul(&self, rhs: &GaussMat) -> GaussMat {
        assert_eq!(self.n, rhs.n);
        let mut out = Self::zeros(self.n);
        for i in 0..self.n {
            for k in 0..self.n {
                let a = self.get(i, k);
                if a == GaussInt::new(0, 0) {
                    continue;
                }
                for j in 0..self.n {
                    let v = out.get(i, j) + a * rhs.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> GaussMat {
        GaussMat {
            n: self.n,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> GaussMat {
        let mut out = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn scale(&self, z: GaussInt) -> GaussMat {
        GaussMat {
            n: self.n,
            data: self.data.iter().map(|w| w * z).collect(),
        }
    }

    pub fn kron(&self, rhs: &GaussMat) -> GaussMat {
        let n = self.n * rhs.n;
        let mut out = Self::zeros(n);
        for i in 0..self.n {
            for j in 0..self.n {
                let a = self.get(i, j);
                for r in 0..rhs.n {
                    for c in 0..rhs.n {
                        out.set(i * rhs.n + r, j * rhs.n + c, a * rhs.get(r, c));
                    }
                }
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    pub fn is_unitary(&self) -> bool {
        self.dagger().mul(self).is_identity()
    }

    /// Pauli matrices; index 0 is the 2x2 identity.
    pub fn pauli(k: usize) -> GaussMat {
        match k {
            0 => Self::identity(2),
            1 => Self::from_rows(&[&[(0, 0), (1, 0)], &[(1, 0), (0, 0)]]),
            2 => Self::from_rows(&[&[(0, 0), (0, -1)], &[(0, 1), (0, 0)]]),
            3 => Self::from_rows(&[&[(1, 0), (0, 0)], &[(0, 0), (-1, 0)]]),
            _ => panic!("pauli index {k} out of range"),
        }
    }
}

impl std::fmt::Debug for GaussMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "GaussMat {}x{} [", self.n, self.n)?;
        for i in 0..self.n {
            write!(f, "  ")?;
            for j in 0..self.n {
                let z = self.get(i, j);
                let s = match (z.re, z.im) {
                    (0, 0) => ".".to_string(),
                    (re, 0) => format!("{re}"),
                    (0, 1) => "i".to_string(),
                    (0, -1) => "-i".to_string(),
                    (0, im) => format!("{im}i"),
                    (re, im) if im > 0 => format!("{re}+{im}i"),
                    (re, im) => format!("{re}{im}i"),
                };
                write!(f, "{s:>6}")?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}
