//! Bit-packed linear algebra over the two-element field.
//!
//! Factor-system classification reduces to exact kernel and coset
//! computations on F2 matrices with a few hundred columns, so vectors are
//! packed into u64 limbs and all elimination is done in place.

/// Dense F2 vector packed 64 bits per limb.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Vec {
    len: usize,
    limbs: Vec<u64>,
}

impl std::fmt::Debug for F2Vec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s: String = (0..self.len).map(|i| if self.get(i) { '1' } else { '0' }).collect();
        write!(f, "{s}")
    }
}

impl F2Vec {
    pub fn zeros(len: usize) -> Self {
        F2Vec { len, limbs: vec![0; len.div_ceil(64)] }
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = F2Vec::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b % 2 == 1 {
                v.set(i, true);
            }
        }
        v
    }

    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.len).map(|i| self.get(i) as u8).collect()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.limbs[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, bit: bool) {
        debug_assert!(i < self.len);
        if bit {
            self.limbs[i / 64] |= 1 << (i % 64);
        } else {
            self.limbs[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.limbs[i / 64] ^= 1 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &F2Vec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.limbs.iter_mut().zip(&other.limbs) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.iter().all(|&l| l == 0)
    }

    pub fn leading_one(&self) -> Option<usize> {
        for (k, &l) in self.limbs.iter().enumerate() {
            if l != 0 {
                return Some(k * 64 + l.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn weight(&self) -> usize {
        self.limbs.iter().map(|l| l.count_ones() as usize).sum()
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&i| self.get(i))
    }

    /// Lexicographic comparison reading index 0 first, with 0 < 1.
    pub fn lex_cmp(&self, other: &F2Vec) -> std::cmp::Ordering {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.limbs.iter().zip(&other.limbs) {
            let diff = a ^ b;
            if diff != 0 {
                let i = diff.trailing_zeros();
                // whoever has 0 at the first differing index is smaller
                return if a >> i & 1 == 0 {
                    std::cmp::Ordering::Less
                } else {
                    std::cmp::Ordering::Greater
                };
            }
        }
        std::cmp::Ordering::Equal
    }
}

/// A subspace of F2^n held in reduced row echelon form: pivots strictly
/// increase, and each pivot column is zero in every other row. Supports
/// incremental insertion and canonical coset reduction.
#[derive(Clone, Debug)]
pub struct RrefBasis {
    n: usize,
    rows: Vec<F2Vec>,
    pivots: Vec<usize>,
}

impl RrefBasis {
    pub fn new(n: usize) -> Self {
        RrefBasis { n, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_vectors<'a>(n: usize, vectors: impl IntoIterator<Item = &'a F2Vec>) -> Self {
        let mut b = RrefBasis::new(n);
        for v in vectors {
            b.insert(v);
        }
        b
    }

    /// Adds `v` to the span. Returns false if it was already contained.
    pub fn insert(&mut self, v: &F2Vec) -> bool {
        debug_assert_eq!(v.len(), self.n);
        let v = self.reduce(v);
        let Some(p) = v.leading_one() else { return false };
        for row in &mut self.rows {
            if row.get(p) {
                row.xor_assign(&v);
            }
        }
        let pos = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(pos, p);
        self.rows.insert(pos, v);
        true
    }

    /// Canonical coset representative of `v` modulo the span: the unique
    /// element of the coset vanishing on every pivot coordinate, which is
    /// also its lexicographic minimum.
    pub fn reduce(&self, v: &F2Vec) -> F2Vec {
        let mut r = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if r.get(p) {
                r.xor_assign(row);
            }
        }
        r
    }

    pub fn contains(&self, v: &F2Vec) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[F2Vec] {
        &self.rows
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }
}

/// A linear system over F2: one packed row per equation plus a right-hand
/// side bit. `solve` returns a particular solution and a kernel basis, or
/// None when inconsistent.
#[derive(Clone, Debug)]
pub struct F2LinearSystem {
    n_vars: usize,
    rows: Vec<F2Vec>,
    rhs: Vec<bool>,
}

#[derive(Clone, Debug)]
pub struct F2Solution {
    pub particular: F2Vec,
    pub kernel: Vec<F2Vec>,
}

impl F2LinearSystem {
    pub fn new(n_vars: usize) -> Self {
        F2LinearSystem { n_vars, rows: Vec::new(), rhs: Vec::new() }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn push_row(&mut self, row: F2Vec, rhs: bool) {
        debug_assert_eq!(row.len(), self.n_vars);
        self.rows.push(row);
        self.rhs.push(rhs);
    }

    pub fn rows(&self) -> impl Iterator<Item = (&F2Vec, bool)> {
        self.rows.iter().zip(self.rhs.iter().copied())
    }

    /// True when `x` satisfies every equation.
    pub fn is_satisfied_by(&self, x: &F2Vec) -> bool {
        debug_assert_eq!(x.len(), self.n_vars);
        self.rows.iter().zip(&self.rhs).all(|(row, &b)| {
            let mut parity = false;
            for (ra, xa) in row.limbs.iter().zip(&x.limbs) {
                parity ^= (ra & xa).count_ones() % 2 == 1;
            }
            parity == b
        })
    }

    pub fn solve(&self) -> Option<F2Solution> {
        let n = self.n_vars;
        // augmented elimination: variable columns 0..n, rhs at column n
        let mut aug: Vec<F2Vec> = self
            .rows
            .iter()
            .zip(&self.rhs)
            .map(|(row, &b)| {
                let mut a = F2Vec::zeros(n + 1);
                for (dst, src) in a.limbs.iter_mut().zip(&row.limbs) {
                    *dst = *src;
                }
                // from_bits-packed copy keeps stray high bits out because
                // row.len() == n and its limbs are already masked
                a.set(n, b);
                a
            })
            .collect();

        let mut pivots: Vec<usize> = Vec::new();
        let mut pivot_rows: Vec<usize> = Vec::new();
        let mut next_row = 0;
        for col in 0..=n {
            let Some(r) = (next_row..aug.len()).find(|&r| aug[r].get(col)) else {
                continue;
            };
            aug.swap(next_row, r);
            let (before, rest) = aug.split_at_mut(next_row);
            let (pivot_slice, after) = rest.split_at_mut(1);
            let pivot_row = &pivot_slice[0];
            for other in before.iter_mut().chain(after.iter_mut()) {
                if other.get(col) {
                    other.xor_assign(pivot_row);
                }
            }
            if col == n {
                return None; // a row reduced to 0 = 1
            }
            pivots.push(col);
            pivot_rows.push(next_row);
            next_row += 1;
        }

        let mut particular = F2Vec::zeros(n);
        for (&p, &r) in pivots.iter().zip(&pivot_rows) {
            particular.set(p, aug[r].get(n));
        }

        let is_pivot = {
            let mut mask = vec![false; n];
            for &p in &pivots {
                mask[p] = true;
            }
            mask
        };
        let mut kernel = Vec::new();
        for f in 0..n {
            if is_pivot[f] {
                continue;
            }
            let mut v = F2Vec::zeros(n);
            v.set(f, true);
            for (&p, &r) in pivots.iter().zip(&pivot_rows) {
                v.set(p, aug[r].get(f));
            }
            kernel.push(v);
        }
        Some(F2Solution { particular, kernel })
    }
}
