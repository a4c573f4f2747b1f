//! Exact rank computation for the sparse sign matrices of graded complexes.
//!
//! The primary route is fraction-free (Bareiss) elimination over the
//! integers; an optional cross-check recomputes the rank modulo two fixed
//! word-sized primes and asserts agreement.

use std::fmt;

/// A sparse integer matrix; entries of our differentials are always in
/// {-1, 0, +1} but arbitrary integers are accepted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, i64)>,
}

pub const CROSS_CHECK_PRIMES: [u64; 2] = [(1 << 61) - 1, 4611686018427387847];

impl SparseIntMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseIntMatrix {
            rows,
            cols,
            entries: Vec::new(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[(usize, usize, i64)] {
        &self.entries
    }

    pub fn push(&mut self, row: usize, col: usize, value: i64) {
        assert!(row < self.rows && col < self.cols);
        if value != 0 {
            self.entries.push((row, col, value));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_dense(&self) -> Vec<Vec<i128>> {
        let mut m = vec![vec![0i128; self.cols]; self.rows];
        for &(r, c, v) in &self.entries {
            m[r][c] += v as i128;
        }
        m
    }

    /// Matrix product self * other.
    pub fn multiply(&self, other: &SparseIntMatrix) -> SparseIntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut acc = std::collections::BTreeMap::new();
        for &(r, k, v) in &self.entries {
            for &(k2, c, w) in &other.entries {
                if k == k2 {
                    *acc.entry((r, c)).or_insert(0i64) += v * w;
                }
            }
        }
        let mut out = SparseIntMatrix::new(self.rows, other.cols);
        for ((r, c), v) in acc {
            out.push(r, c, v);
        }
        out
    }

    /// Exact rank by fraction-free elimination. Pivots are chosen with the
    /// smallest nonzero magnitude to keep intermediate values small; on our
    /// sign matrices they stay word-sized.
    pub fn rank(&self) -> usize {
        let mut m = self.to_dense();
        let rows = self.rows;
        let cols = self.cols;
        let mut rank = 0usize;
        let mut prev: i128 = 1;
        while rank < rows && rank < cols {
            // full pivoting: any nonzero in the trailing submatrix
            let mut pivot: Option<(usize, usize)> = None;
            for (i, row) in m.iter().enumerate().skip(rank) {
                for (j, &v) in row.iter().enumerate().skip(rank) {
                    if v != 0 && pivot.is_none_or(|(pi, pj)| v.abs() < m[pi][pj].abs()) {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else { break };
            m.swap(rank, pi);
            if pj != rank {
                for row in m.iter_mut() {
                    row.swap(rank, pj);
                }
            }
            let pv = m[rank][rank];
            for i in rank + 1..rows {
                for j in rank + 1..cols {
                    let num = m[i][j]
                        .checked_mul(pv)
                        .and_then(|x| x.checked_sub(m[i][rank].checked_mul(m[rank][j]).unwrap()))
                        .expect("fraction-free elimination overflowed i128");
                    m[i][j] = num / prev; // exact by the Bareiss identity
                }
                m[i][rank] = 0;
            }
            prev = pv;
            rank += 1;
        }
        rank
    }

    /// Rank over the prime field F_p.
    pub fn rank_mod(&self, p: u64) -> usize {
        let pi = p as i128;
        let mut m: Vec<Vec<u64>> = self
            .to_dense()
            .into_iter()
            .map(|row| row.into_iter().map(|v| v.rem_euclid(pi) as u64).collect())
            .collect();
        let rows = self.rows;
        let cols = self.cols;
        let mut rank = 0usize;
        for col in 0..cols {
            let Some(pivot_row) = (rank..rows).find(|&i| m[i][col] != 0) else {
                continue;
            };
            m.swap(rank, pivot_row);
            let inv = mod_inverse(m[rank][col], p);
            for v in m[rank][col..].iter_mut() {
                *v = mulmod(*v, inv, p);
            }
            let pivot_row = m[rank].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i != rank && row[col] != 0 {
                    let factor = row[col];
                    for (v, &pv) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                        let sub = mulmod(factor, pv, p);
                        *v = (*v + p - sub) % p;
                    }
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }

    /// Rank with the modular cross-check enabled.
    pub fn rank_checked(&self) -> usize {
        let r = self.rank();
        for p in CROSS_CHECK_PRIMES {
            assert_eq!(
                self.rank_mod(p),
                r,
                "modular rank disagrees with fraction-free rank"
            );
        }
        r
    }
}

impl fmt::Display for SparseIntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_dense() {
            for (j, v) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{v}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // p is prime: a^(p-2) mod p
    let mut base = a % p;
    let mut exp = p - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}
