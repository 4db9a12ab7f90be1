//! Dense matrices over the prime field F_p with p = 2^31 - 1.
//!
//! Entries are stored as `u64` values in `0..MODULUS`. Products of two
//! entries fit in 62 bits, which lets the inner loops fold once per product
//! and reduce once per dot product.

use rand::Rng;

/// The field modulus shared by every representation in the crate.
pub const MODULUS: u64 = 2_147_483_647;

#[inline]
fn fold(x: u64) -> u64 {
    (x & MODULUS) + (x >> 31)
}

/// Reduces any `u64` to its canonical residue.
#[inline]
pub fn reduce(x: u64) -> u64 {
    let r = fold(fold(x));
    if r >= MODULUS {
        r - MODULUS
    } else {
        r
    }
}

#[inline]
pub fn add(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= MODULUS {
        s - MODULUS
    } else {
        s
    }
}

#[inline]
pub fn sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + MODULUS - b
    }
}

#[inline]
pub fn neg(a: u64) -> u64 {
    if a == 0 {
        0
    } else {
        MODULUS - a
    }
}

#[inline]
pub fn mul(a: u64, b: u64) -> u64 {
    reduce(a * b)
}

pub fn pow(mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul(acc, base);
        }
        base = mul(base, base);
        exp >>= 1;
    }
    acc
}

/// Multiplicative inverse; `a` must be nonzero.
pub fn inv(a: u64) -> u64 {
    debug_assert!(a != 0, "inverse of zero");
    pow(a, MODULUS - 2)
}

/// Row-major dense matrix over F_p.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from rows of (possibly unreduced) integers.
    pub fn from_rows(rows: &[Vec<u64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.data[i * c + j] = reduce(v);
            }
        }
        m
    }

    pub fn random<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Self {
        let data = (0..rows * cols)
            .map(|_| rng.gen_range(0..MODULUS))
            .collect();
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    /// Adds `scale * other` into the block whose top-left corner is `(r0, c0)`.
    pub fn add_scaled_block(&mut self, r0: usize, c0: usize, other: &Matrix, scale: u64) {
        for i in 0..other.rows {
            for j in 0..other.cols {
                let idx = (r0 + i) * self.cols + c0 + j;
                self.data[idx] = add(self.data[idx], mul(scale, other.get(i, j)));
            }
        }
    }

    pub fn scaled(&self, scale: u64) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&v| mul(v, scale)).collect(),
        }
    }

    pub fn add_matrix(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| add(a, b))
                .collect(),
        }
    }

    pub fn sub_matrix(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| sub(a, b))
                .collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let (n, k, m) = (self.rows, self.cols, other.cols);
        let mut out = Matrix::zeros(n, m);
        if k == 0 {
            return out;
        }
        // Each folded product is below 2^32, so 2^31 of them fit in a u64.
        let mut acc = vec![0u64; m];
        for i in 0..n {
            acc.iter_mut().for_each(|a| *a = 0);
            for l in 0..k {
                let a = self.data[i * k + l];
                if a == 0 {
                    continue;
                }
                let orow = &other.data[l * m..(l + 1) * m];
                for (slot, &b) in acc.iter_mut().zip(orow) {
                    *slot += fold(a * b);
                }
            }
            for (j, &v) in acc.iter().enumerate() {
                out.data[i * m + j] = reduce(v);
            }
        }
        out
    }

    /// Reduces `self` in place to reduced row echelon form and returns the
    /// pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    self.data.swap(p * cols + j, r * cols + j);
                }
            }
            let scale = inv(self.get(r, c));
            for j in c..cols {
                let idx = r * cols + j;
                self.data[idx] = mul(self.data[idx], scale);
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c);
                if f == 0 {
                    continue;
                }
                for j in c..cols {
                    let v = mul(f, self.data[r * cols + j]);
                    let idx = i * cols + j;
                    self.data[idx] = sub(self.data[idx], v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = if self.rows <= self.cols {
            self.clone()
        } else {
            self.transpose()
        };
        m.rref_in_place().len()
    }

    /// Basis of the right null space `{x : self * x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<u64>> {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u64; self.cols];
            v[free] = 1;
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = neg(m.get(row, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Stacks `blocks` into a block-diagonal matrix.
    pub fn block_diagonal(blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.add_scaled_block(r0, c0, b, 1);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }
}
