//! Exact matrix rank over GF(p) by Gaussian elimination.
//!
//! GF(2) rows are packed 64 columns per word; odd characteristics use dense
//! `u64` residues.

/// Sparse matrix with entries in `{+1, -1}` (boundary coefficients).
#[derive(Clone, Debug, Default)]
pub struct SignedMatrix {
    pub ncols: usize,
    pub rows: Vec<Vec<(usize, bool)>>,
}

impl SignedMatrix {
    pub fn new(ncols: usize) -> Self {
        SignedMatrix {
            ncols,
            rows: Vec::new(),
        }
    }

    /// Appends a row given as `(column, negative)` pairs.
    pub fn push_row(&mut self, row: Vec<(usize, bool)>) {
        debug_assert!(row.iter().all(|&(c, _)| c < self.ncols));
        self.rows.push(row);
    }

    pub fn rank(&self, p: u32) -> usize {
        if self.rows.is_empty() || self.ncols == 0 {
            return 0;
        }
        if p == 2 {
            rank_gf2(self)
        } else {
            rank_mod_p(self, p)
        }
    }
}

fn rank_gf2(m: &SignedMatrix) -> usize {
    let words = m.ncols.div_ceil(64);
    let mut rows: Vec<Vec<u64>> = m
        .rows
        .iter()
        .map(|r| {
            let mut bits = vec![0u64; words];
            for &(c, _) in r {
                bits[c / 64] ^= 1 << (c % 64);
            }
            bits
        })
        .collect();
    let mut rank = 0;
    for col in 0..m.ncols {
        let (w, bit) = (col / 64, 1u64 << (col % 64));
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][w] & bit != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let prow = &head[rank];
        for row in tail.iter_mut() {
            if row[w] & bit != 0 {
                for (x, y) in row[w..].iter_mut().zip(&prow[w..]) {
                    *x ^= *y;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

fn inverse_mod(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2)
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

fn rank_mod_p(m: &SignedMatrix, p: u32) -> usize {
    let p64 = p as u64;
    let mut rows: Vec<Vec<u64>> = m
        .rows
        .iter()
        .map(|r| {
            let mut v = vec![0u64; m.ncols];
            for &(c, neg) in r {
                let e = if neg { p64 - 1 } else { 1 };
                v[c] = (v[c] + e) % p64;
            }
            v
        })
        .collect();
    let mut rank = 0;
    for col in 0..m.ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = inverse_mod(rows[rank][col], p64);
        for x in rows[rank][col..].iter_mut() {
            *x = *x * inv % p64;
        }
        let (head, tail) = rows.split_at_mut(rank + 1);
        let prow = &head[rank];
        for row in tail.iter_mut() {
            let f = row[col];
            if f != 0 {
                for (x, y) in row[col..].iter_mut().zip(&prow[col..]) {
                    *x = (*x + (p64 - f) * *y) % p64;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}
