//! Dense exact-rational linear algebra for strand computations.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Clone, Debug)]
pub struct QMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigRational>,
}

pub enum SolveOutcome {
    NoSolution,
    Unique(Vec<BigRational>),
    Underdetermined,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigRational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &BigRational) {
        let idx = r * self.cols + c;
        self.data[idx] = &self.data[idx] + v;
    }

    pub fn from_int_rows(rows: &[Vec<BigInt>]) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut m = QMatrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, BigRational::from_integer(v.clone()));
            }
        }
        m
    }

    /// Row-reduces in place; returns pivot column per pivot row.
    fn reduce(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for j in 0..self.cols {
                    self.data.swap(row * self.cols + j, p * self.cols + j);
                }
            }
            let inv = {
                let piv = self.get(row, col).clone();
                BigRational::one() / piv
            };
            for j in col..self.cols {
                let v = self.get(row, j) * &inv;
                self.set(row, j, v);
            }
            for r in 0..self.rows {
                if r != row && !self.get(r, col).is_zero() {
                    let f = self.get(r, col).clone();
                    for j in col..self.cols {
                        let v = self.get(r, j) - &f * self.get(row, j);
                        self.set(r, j, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.reduce().len()
    }

    /// Basis of the right null space.
    pub fn kernel_basis(&self) -> Vec<Vec<BigRational>> {
        let mut m = self.clone();
        let pivots = m.reduce();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().cloned().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        let mut basis = Vec::new();
        for &f in &free {
            let mut v = vec![BigRational::zero(); self.cols];
            v[f] = BigRational::one();
            for (prow, &pcol) in pivots.iter().enumerate() {
                v[pcol] = -m.get(prow, f).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Solves `self * x = rhs`, reporting uniqueness.
    pub fn solve(&self, rhs: &[BigRational]) -> SolveOutcome {
        assert_eq!(rhs.len(), self.rows);
        let mut aug = QMatrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, rhs[r].clone());
        }
        let pivots = aug.reduce();
        if pivots.iter().any(|&p| p == self.cols) {
            return SolveOutcome::NoSolution;
        }
        if pivots.len() < self.cols {
            return SolveOutcome::Underdetermined;
        }
        let mut x = vec![BigRational::zero(); self.cols];
        for (prow, &pcol) in pivots.iter().enumerate() {
            x[pcol] = aug.get(prow, self.cols).clone();
        }
        SolveOutcome::Unique(x)
    }
}

/// Dense matrix over `F_p` (p < 2^31) for fast rank pre-passes.
pub struct ModMatrix {
    pub rows: usize,
    pub cols: usize,
    p: u64,
    data: Vec<u64>,
}

impl ModMatrix {
    pub fn zeros(rows: usize, cols: usize, p: u64) -> Self {
        assert!(p > 1 && p < (1 << 31));
        ModMatrix {
            rows,
            cols,
            p,
            data: vec![0; rows * cols],
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: u64) {
        let idx = r * self.cols + c;
        self.data[idx] = (self.data[idx] + v) % self.p;
    }

    /// Reduces a rational exactly; `None` when the denominator vanishes mod p.
    pub fn reduce_rational(q: &BigRational, p: u64) -> Option<u64> {
        let pb = BigInt::from(p);
        let den = ((q.denom() % &pb) + &pb) % &pb;
        let den = den.to_u64_digits().1.first().copied().unwrap_or(0);
        if den == 0 {
            return None;
        }
        let num = ((q.numer() % &pb) + &pb) % &pb;
        let num = num.to_u64_digits().1.first().copied().unwrap_or(0);
        Some(num * mod_inv(den, p) % p)
    }

    /// Rank by forward elimination to row echelon form.
    pub fn rank(mut self) -> usize {
        let p = self.p;
        let cols = self.cols;
        let mut rank = 0;
        let mut row = 0;
        for col in 0..cols {
            if row == self.rows {
                break;
            }
            let Some(piv) = (row..self.rows).find(|&r| self.data[r * cols + col] != 0) else {
                continue;
            };
            if piv != row {
                for j in col..cols {
                    self.data.swap(row * cols + j, piv * cols + j);
                }
            }
            let inv = mod_inv(self.data[row * cols + col], p);
            for j in col..cols {
                self.data[row * cols + j] = self.data[row * cols + j] * inv % p;
            }
            let (top, bottom) = self.data.split_at_mut((row + 1) * cols);
            let pivot_row = &top[row * cols..(row + 1) * cols];
            for r in 0..bottom.len() / cols {
                let f = bottom[r * cols + col];
                if f != 0 {
                    for j in col..cols {
                        let sub = f * pivot_row[j] % p;
                        let idx = r * cols + j;
                        bottom[idx] = (bottom[idx] + p - sub) % p;
                    }
                }
            }
            rank += 1;
            row += 1;
        }
        rank
    }
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // p prime; Fermat
    let mut base = a % p;
    let mut exp = p - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}
