//! Exact rank and null spaces of integer matrices.
//!
//! Every matrix the library builds has integer entries (incidence counts,
//! structure constants, or rational combinations scaled to integers), and
//! rank over ℚ of an integer matrix is what is asked for everywhere.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ExactMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        ExactMatrix {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        }
    }

    /// Rows of rationals, each scaled by the lcm of its denominators. Row
    /// scaling does not change rank or null space. `cols` is explicit so
    /// that a matrix without rows keeps its width.
    pub fn from_rational_rows(cols: usize, rows: &[Vec<BigRational>]) -> Result<Self> {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            for x in row {
                let v = x.numer() * (&lcm / x.denom());
                data.push(i64::try_from(v).map_err(|_| Error::Overflow)?);
            }
        }
        Ok(ExactMatrix {
            rows: rows.len(),
            cols,
            data,
        })
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

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = ExactMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = ExactMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(l, j);
                    if b != 0 {
                        let v = a
                            .checked_mul(b)
                            .and_then(|p| p.checked_add(out.get(i, j)))
                            .ok_or(Error::Overflow)?;
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    /// One row per line, entries separated by spaces.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }
}

const P: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    (u128::from(a) * u128::from(b) % u128::from(P)) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

fn to_mod(v: i64) -> u64 {
    v.rem_euclid(P as i64) as u64
}

/// Rank over the field with `2^61 − 1` elements. Never exceeds the rank
/// over ℚ.
pub fn rank_mod_p(m: &ExactMatrix) -> usize {
    let mut a: Vec<u64> = m.data.iter().map(|&v| to_mod(v)).collect();
    let (rows, cols) = (m.rows, m.cols);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&i| a[i * cols + c] != 0) else {
            continue;
        };
        if p != rank {
            for j in 0..cols {
                a.swap(p * cols + j, rank * cols + j);
            }
        }
        let inv = powmod(a[rank * cols + c], P - 2);
        for i in rank + 1..rows {
            let f = a[i * cols + c];
            if f == 0 {
                continue;
            }
            let f = mulmod(f, inv);
            for j in c..cols {
                let sub = mulmod(f, a[rank * cols + j]);
                a[i * cols + j] = (a[i * cols + j] + P - sub) % P;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Fraction-free elimination over the integers. Pivots are chosen by
/// smallest magnitude in the column to keep intermediate entries short.
pub fn rank_bareiss(m: &ExactMatrix) -> usize {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<BigInt> = m.data.iter().map(|&v| BigInt::from(v)).collect();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let pivot = (rank..rows)
            .filter(|&i| !a[i * cols + c].is_zero())
            .min_by(|&i, &j| a[i * cols + c].abs().cmp(&a[j * cols + c].abs()));
        let Some(p) = pivot else {
            continue;
        };
        if p != rank {
            for j in 0..cols {
                a.swap(p * cols + j, rank * cols + j);
            }
        }
        let piv = a[rank * cols + c].clone();
        for i in rank + 1..rows {
            let f = a[i * cols + c].clone();
            for j in c + 1..cols {
                let v = (&piv * &a[i * cols + j] - &f * &a[rank * cols + j]) / &prev;
                a[i * cols + j] = v;
            }
            a[i * cols + c] = BigInt::zero();
        }
        prev = piv;
        rank += 1;
    }
    rank
}

/// Rank over ℚ. A full modular rank is already certified (some maximal
/// minor is non-zero mod p, hence non-zero); otherwise the integer
/// elimination decides.
pub fn rank_exact(m: &ExactMatrix) -> usize {
    let r = rank_mod_p(m);
    if r == m.rows.min(m.cols) {
        r
    } else {
        rank_bareiss(m)
    }
}

/// Reduced row echelon form over ℚ; returns the matrix and pivot columns.
pub fn rref(m: &ExactMatrix) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let mut a: Vec<Vec<BigRational>> = (0..m.rows)
        .map(|i| {
            m.row(i)
                .iter()
                .map(|&v| BigRational::from_integer(v.into()))
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        let Some(p) = (r..m.rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pivot_row = a[r].clone();
                for (x, p) in a[i].iter_mut().zip(&pivot_row).skip(c) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.rows {
            break;
        }
    }
    (a, pivots)
}

/// A basis of `{x : m x = 0}` over ℚ.
pub fn null_space(m: &ExactMatrix) -> Vec<Vec<BigRational>> {
    let (a, pivots) = rref(m);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); m.cols];
            v[f] = BigRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][f].clone();
            }
            v
        })
        .collect()
}
