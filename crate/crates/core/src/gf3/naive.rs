//! Unpacked reference arithmetic: one `u8` per entry, no bit tricks.
//!
//! Used as the oracle for the packed kernels in tests.

use alloc::vec::Vec;

pub type Matrix = Vec<Vec<u8>>;

pub fn mul(a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), inner);
            (0..cols)
                .map(|c| {
                    let s: u32 = (0..inner).map(|k| row[k] as u32 * b[k][c] as u32).sum();
                    (s % 3) as u8
                })
                .collect()
        })
        .collect()
}

pub fn transpose(a: &Matrix) -> Matrix {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols).map(|c| a.iter().map(|r| r[c]).collect()).collect()
}

pub fn add_rows(a: &[u8], b: &[u8], c: u8) -> Vec<u8> {
    a.iter().zip(b).map(|(x, y)| (x + c * y) % 3).collect()
}

/// Reduced row-echelon form; returns `(rref, pivots)`.
pub fn rref(a: &Matrix) -> (Matrix, Vec<usize>) {
    let mut m = a.clone();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, p);
        if m[rank][col] == 2 {
            m[rank] = m[rank].iter().map(|x| (2 * x) % 3).collect();
        }
        for r in 0..m.len() {
            if r != rank && m[r][col] != 0 {
                let c = 3 - m[r][col];
                m[r] = add_rows(&m[r], &m[rank], c);
            }
        }
        pivots.push(col);
        rank += 1;
    }
    (m, pivots)
}

pub fn rank(a: &Matrix) -> usize {
    rref(a).1.len()
}

pub fn weight(v: &[u8]) -> usize {
    v.iter().filter(|&&x| x != 0).count()
}

/// All `3^k` codewords of the row space of `g`, in message order.
pub fn all_codewords(g: &Matrix) -> Vec<Vec<u8>> {
    let k = g.len();
    let n = g.first().map_or(0, Vec::len);
    let total = 3usize.pow(k as u32);
    let mut out = Vec::with_capacity(total);
    for mut m in 0..total {
        let mut word = alloc::vec![0u8; n];
        for row in g.iter() {
            let c = (m % 3) as u8;
            m /= 3;
            if c != 0 {
                word = add_rows(&word, row, c);
            }
        }
        out.push(word);
    }
    out
}

/// Weight distribution by full enumeration of the row space of `g`
/// (which should have full rank for the counts to be exact).
pub fn weight_distribution(g: &Matrix) -> Vec<u64> {
    let n = g.first().map_or(0, Vec::len);
    let mut dist = alloc::vec![0u64; n + 1];
    for w in all_codewords(g) {
        dist[weight(&w)] += 1;
    }
    dist
}
