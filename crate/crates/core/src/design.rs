//! Incidence structures, symmetric 2-designs, cyclic actions and the Paley
//! and Hadamard constructions.
//!
//! Blocks are the rows of an incidence matrix and points are its columns.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{bail, Result};
use crate::gf3::{Trit, TritMatrix};
use crate::perm::Permutation;

/// A 0/1 block-by-point incidence matrix, each block stored as a bitset.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IncidenceStructure {
    v: usize,
    b: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl IncidenceStructure {
    pub fn empty(v: usize, b: usize) -> Self {
        let stride = v.div_ceil(64).max(1);
        IncidenceStructure {
            v,
            b,
            stride,
            bits: alloc::vec![0; b * stride],
        }
    }

    /// Builds a structure from block rows with entries in `{0, 1}`.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let v = rows.first().map_or(0, |r| r.as_ref().len());
        let mut d = Self::empty(v, rows.len());
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != v {
                bail!(Shape, "block {i} has {} entries, expected {v}", r.len());
            }
            for (x, &e) in r.iter().enumerate() {
                match e {
                    0 => {}
                    1 => d.set(i, x, true),
                    _ => bail!(Parameter, "entry ({i},{x}) = {e} is not 0 or 1"),
                }
            }
        }
        Ok(d)
    }

    /// Builds a structure from lists of points per block.
    pub fn from_blocks(v: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut d = Self::empty(v, blocks.len());
        for (i, blk) in blocks.iter().enumerate() {
            for &x in blk {
                if x >= v {
                    bail!(Parameter, "point {x} out of range in block {i}");
                }
                d.set(i, x, true);
            }
        }
        Ok(d)
    }

    #[inline]
    pub fn points(&self) -> usize {
        self.v
    }

    #[inline]
    pub fn blocks(&self) -> usize {
        self.b
    }

    #[inline]
    pub fn get(&self, block: usize, point: usize) -> bool {
        self.bits[block * self.stride + point / 64] >> (point % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, block: usize, point: usize, on: bool) {
        let w = &mut self.bits[block * self.stride + point / 64];
        if on {
            *w |= 1 << (point % 64);
        } else {
            *w &= !(1 << (point % 64));
        }
    }

    pub fn flip(&mut self, block: usize, point: usize) {
        let on = self.get(block, point);
        self.set(block, point, !on);
    }

    /// The bitset of block `i`.
    #[inline]
    pub fn block(&self, i: usize) -> &[u64] {
        &self.bits[i * self.stride..(i + 1) * self.stride]
    }

    pub fn block_points(&self, i: usize) -> Vec<usize> {
        (0..self.v).filter(|&x| self.get(i, x)).collect()
    }

    pub fn block_size(&self, i: usize) -> usize {
        self.block(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn intersection(&self, i: usize, j: usize) -> usize {
        self.block(i)
            .iter()
            .zip(self.block(j))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Relabels points by `points` and blocks by `blocks`: block `i` of the
    /// input becomes block `blocks(i)` and point `x` becomes `points(x)`.
    pub fn relabel(&self, points: &Permutation, blocks: &Permutation) -> Self {
        assert_eq!(points.len(), self.v);
        assert_eq!(blocks.len(), self.b);
        let mut out = Self::empty(self.v, self.b);
        for i in 0..self.b {
            for x in 0..self.v {
                if self.get(i, x) {
                    out.set(blocks.apply(i), points.apply(x), true);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::empty(self.b, self.v);
        for i in 0..self.b {
            for x in 0..self.v {
                if self.get(i, x) {
                    out.set(x, i, true);
                }
            }
        }
        out
    }

    /// The incidence matrix read over GF(3).
    pub fn to_trit_matrix(&self) -> TritMatrix {
        TritMatrix::from_fn(self.b, self.v, |i, x| {
            if self.get(i, x) {
                Trit::ONE
            } else {
                Trit::ZERO
            }
        })
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.b)
            .map(|i| (0..self.v).map(|x| self.get(i, x) as u8).collect())
            .collect()
    }
}

impl fmt::Display for IncidenceStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.b {
            for x in 0..self.v {
                f.write_str(if self.get(i, x) { "1" } else { "0" })?;
            }
            f.write_str("\n")?;
        }
        Ok(())
    }
}

impl fmt::Debug for IncidenceStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IncidenceStructure {}x{}", self.b, self.v)?;
        fmt::Display::fmt(self, f)
    }
}

/// Parameters `(v, k, λ)` of a symmetric 2-design.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DesignParams {
    pub v: usize,
    pub k: usize,
    pub lambda: usize,
}

impl DesignParams {
    /// The parameters of the designs this crate is built around.
    pub const SYM_47_23_11: DesignParams = DesignParams {
        v: 47,
        k: 23,
        lambda: 11,
    };

    /// Checks the necessary condition `λ(v−1) = k(k−1)`.
    pub fn new(v: usize, k: usize, lambda: usize) -> Result<Self> {
        if v == 0 || k == 0 || k > v {
            bail!(Parameter, "({v},{k},{lambda}) out of range");
        }
        if lambda * (v - 1) != k * (k - 1) {
            bail!(Parameter, "({v},{k},{lambda}) fails lambda(v-1) = k(k-1)");
        }
        Ok(DesignParams { v, k, lambda })
    }
}

/// True iff every block has `k` points and distinct blocks meet in `λ`
/// points, i.e. `M·Mᵀ = (k−λ)I + λJ` over the integers.
pub fn validate_symmetric_design(d: &IncidenceStructure, p: &DesignParams) -> Result<bool> {
    if d.points() != p.v || d.blocks() != p.v {
        bail!(
            Parameter,
            "structure is {}x{}, parameters need {}x{}",
            d.blocks(),
            d.points(),
            p.v,
            p.v
        );
    }
    for i in 0..d.blocks() {
        if d.block_size(i) != p.k {
            return Ok(false);
        }
        for j in i + 1..d.blocks() {
            if d.intersection(i, j) != p.lambda {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn is_prime(q: usize) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

/// Nonzero squares modulo a prime `q`.
pub fn quadratic_residues(q: usize) -> Vec<bool> {
    let mut r = alloc::vec![false; q];
    for x in 1..q {
        r[x * x % q] = true;
    }
    r
}

/// Quadratic character of `a` modulo the prime `q`.
pub fn legendre(a: i64, q: usize, residues: &[bool]) -> i8 {
    let a = a.rem_euclid(q as i64) as usize;
    if a == 0 {
        0
    } else if residues[a] {
        1
    } else {
        -1
    }
}

/// The design with points `Z_q` and blocks `a + Q`, where `Q` is the set of
/// nonzero quadratic residues; a 2-(q, (q−1)/2, (q−3)/4) design. Block `a`
/// is the translate by `a`.
pub fn paley_type1_design(q: usize) -> Result<IncidenceStructure> {
    if !is_prime(q) || q % 4 != 3 {
        bail!(Parameter, "q = {q} must be a prime congruent to 3 mod 4");
    }
    let qr = quadratic_residues(q);
    let blocks: Vec<Vec<usize>> = (0..q)
        .map(|a| (1..q).filter(|&x| qr[x]).map(|x| (a + x) % q).collect())
        .collect();
    IncidenceStructure::from_blocks(q, &blocks)
}

/// A square matrix with entries ±1.
pub type SignMatrix = Vec<Vec<i8>>;

pub fn is_hadamard(h: &SignMatrix) -> bool {
    let n = h.len();
    if h.iter().any(|r| r.len() != n || r.iter().any(|&x| x != 1 && x != -1)) {
        return false;
    }
    (0..n).all(|i| {
        (0..n).all(|j| {
            let dot: i64 = h[i].iter().zip(&h[j]).map(|(&a, &b)| (a * b) as i64).sum();
            dot == if i == j { n as i64 } else { 0 }
        })
    })
}

/// Sylvester's Hadamard matrix of order `2^m`.
pub fn sylvester_hadamard(m: u32) -> SignMatrix {
    let n = 1usize << m;
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if (i & j).count_ones() % 2 == 0 { 1 } else { -1 })
                .collect()
        })
        .collect()
}

/// The Paley conference matrix of order `q + 1` for a prime `q`: zero
/// diagonal, first row `(0, 1, …, 1)`, first column `±1` so that the matrix
/// is symmetric when `q ≡ 1 (mod 4)` and skew when `q ≡ 3 (mod 4)`, and the
/// core `χ(y − x)`.
pub fn paley_conference(q: usize) -> Result<Vec<Vec<i8>>> {
    if !is_prime(q) || q == 2 {
        bail!(Parameter, "q = {q} must be an odd prime");
    }
    let qr = quadratic_residues(q);
    let first_col: i8 = if q % 4 == 1 { 1 } else { -1 };
    let n = q + 1;
    let mut s = alloc::vec![alloc::vec![0i8; n]; n];
    for j in 1..n {
        s[0][j] = 1;
        s[j][0] = first_col;
    }
    for x in 0..q {
        for y in 0..q {
            s[x + 1][y + 1] = legendre(y as i64 - x as i64, q, &qr);
        }
    }
    Ok(s)
}

/// A Hadamard matrix of order `2(q + 1)` built from the conference matrix
/// `S` of a prime `q`. For `q ≡ 1 (mod 4)` (`S` symmetric) this is
/// `[[S+I, S−I], [S−I, −S−I]]`; for `q ≡ 3 (mod 4)` (`S` skew) it is
/// `[[S−I, S−I], [S+I, −S−I]]`. With `q = 23` the second form gives an order
/// 48 matrix whose derived 2-(47,23,11) design spans an extremal code.
pub fn paley_type2_hadamard(q: usize) -> Result<SignMatrix> {
    let s = paley_conference(q)?;
    let n = q + 1;
    let plus = |i: usize, j: usize| s[i][j] + (i == j) as i8;
    let minus = |i: usize, j: usize| s[i][j] - (i == j) as i8;
    let mut h = alloc::vec![alloc::vec![0i8; 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            let (a, b, c, d) = if q % 4 == 1 {
                (plus(i, j), minus(i, j), minus(i, j), -plus(i, j))
            } else {
                (minus(i, j), minus(i, j), plus(i, j), -plus(i, j))
            };
            h[i][j] = a;
            h[i][j + n] = b;
            h[i + n][j] = c;
            h[i + n][j + n] = d;
        }
    }
    if !is_hadamard(&h) {
        bail!(Invariant, "Paley construction for q = {q} is not Hadamard");
    }
    Ok(h)
}

/// Normalizes `h` so its first row and column are all `+1`, deletes them and
/// maps `+1 → 1`, `−1 → 0`. A Hadamard matrix of order `4n` yields a
/// symmetric 2-(4n−1, 2n−1, n−1) design.
pub fn hadamard_to_design(h: &SignMatrix) -> Result<IncidenceStructure> {
    if h.is_empty() || !is_hadamard(h) {
        bail!(Parameter, "input is not a Hadamard matrix");
    }
    let n = h.len();
    let col_sign: Vec<i8> = h[0].clone();
    let row_sign: Vec<i8> = (0..n).map(|i| h[i][0] * col_sign[0]).collect();
    let rows: Vec<Vec<u8>> = (1..n)
        .map(|i| {
            (1..n)
                .map(|j| (h[i][j] * col_sign[j] * row_sign[i] == 1) as u8)
                .collect()
        })
        .collect();
    IncidenceStructure::from_rows(&rows)
}

/// A cyclic group of order `order` acting on points and blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicAction {
    pub order: usize,
    pub point_perm: Permutation,
    pub block_perm: Permutation,
}

impl CyclicAction {
    pub fn new(order: usize, point_perm: Permutation, block_perm: Permutation) -> Result<Self> {
        if order == 0 || point_perm.order() != order || !order.is_multiple_of(block_perm.order()) {
            bail!(
                Parameter,
                "generator orders ({}, {}) do not match group order {order}",
                point_perm.order(),
                block_perm.order()
            );
        }
        Ok(CyclicAction {
            order,
            point_perm,
            block_perm,
        })
    }

    /// The action of `Z_n` whose orbits are consecutive runs of labels with
    /// the given sizes, the generator shifting each run cyclically. The same
    /// sizes are used for points and blocks.
    pub fn from_orbit_sizes(order: usize, sizes: &[usize]) -> Result<Self> {
        if sizes.iter().any(|&s| s == 0 || !order.is_multiple_of(s)) {
            bail!(Parameter, "orbit sizes {sizes:?} must divide {order}");
        }
        let perm = orbit_shift(sizes);
        if perm.order() != order {
            bail!(Parameter, "orbit sizes {sizes:?} do not give an action of order {order}");
        }
        Ok(CyclicAction {
            order,
            point_perm: perm.clone(),
            block_perm: perm,
        })
    }

    /// True iff relabeling `d` by the generator reproduces `d` exactly.
    pub fn fixes(&self, d: &IncidenceStructure) -> bool {
        d.relabel(&self.point_perm, &self.block_perm) == *d
    }
}

/// Cyclic shift within consecutive runs of the given sizes.
pub fn orbit_shift(sizes: &[usize]) -> Permutation {
    let mut images = Vec::new();
    let mut base = 0;
    for &s in sizes {
        for t in 0..s {
            images.push(base + (t + 1) % s);
        }
        base += s;
    }
    Permutation::new(images).expect("shift within runs is a permutation")
}

/// The Fano plane as translates of `{1, 2, 4}` modulo 7.
pub fn fano_plane() -> IncidenceStructure {
    let blocks: Vec<Vec<usize>> = (0..7).map(|a| [1, 2, 4].iter().map(|x| (a + x) % 7).collect()).collect();
    IncidenceStructure::from_blocks(7, &blocks).expect("valid blocks")
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn fano_validates_and_flip_breaks_it() {
        let p = DesignParams::new(7, 3, 1).unwrap();
        let mut f = fano_plane();
        assert!(validate_symmetric_design(&f, &p).unwrap());
        f.flip(2, 5);
        assert!(!validate_symmetric_design(&f, &p).unwrap());
        assert!(validate_symmetric_design(&f, &DesignParams::new(3, 1, 0).unwrap()).is_err());
    }

    #[test]
    fn params_condition() {
        assert!(DesignParams::new(47, 23, 11).is_ok());
        assert!(DesignParams::new(47, 23, 10).is_err());
    }

    #[test]
    fn paley_designs() {
        for (q, k, l) in [(7, 3, 1), (11, 5, 2), (19, 9, 4), (47, 23, 11)] {
            let d = paley_type1_design(q).unwrap();
            assert!(validate_symmetric_design(&d, &DesignParams::new(q, k, l).unwrap()).unwrap());
            let shift = Permutation::new((0..q).map(|x| (x + 1) % q).collect()).unwrap();
            assert!(CyclicAction::new(q, shift.clone(), shift).unwrap().fixes(&d));
        }
        assert!(paley_type1_design(13).is_err());
        assert!(paley_type1_design(15).is_err());
    }

    #[test]
    fn paley_blocks_meet_pairwise_in_lambda() {
        let d = paley_type1_design(47).unwrap();
        for i in 0..47 {
            for j in 0..47 {
                let expect = if i == j { 23 } else { 11 };
                let brute = (0..47).filter(|&x| d.get(i, x) && d.get(j, x)).count();
                assert_eq!(brute, expect);
            }
        }
    }

    #[test]
    fn hadamard_designs() {
        let d4 = hadamard_to_design(&sylvester_hadamard(2)).unwrap();
        assert!((0..3).all(|i| d4.block_size(i) == 1));
        assert!(validate_symmetric_design(&d4, &DesignParams::new(3, 1, 0).unwrap()).unwrap());
        assert_eq!(d4.transpose().transpose(), d4);
        let d8 = hadamard_to_design(&sylvester_hadamard(3)).unwrap();
        assert!(validate_symmetric_design(&d8, &DesignParams::new(7, 3, 1).unwrap()).unwrap());
        for q in [5, 11, 13, 23] {
            let h = paley_type2_hadamard(q).unwrap();
            let n = 2 * (q + 1);
            let d = hadamard_to_design(&h).unwrap();
            let p = DesignParams::new(n - 1, n / 2 - 1, n / 4 - 1).unwrap();
            assert!(validate_symmetric_design(&d, &p).unwrap(), "q = {q}");
        }
        let mut bad = sylvester_hadamard(2);
        bad[1][1] = 1;
        assert!(hadamard_to_design(&bad).is_err());
    }

    #[test]
    fn canonical_c6_orbits() {
        let a = CyclicAction::from_orbit_sizes(6, &[1, 2, 2, 3, 3, 6, 6, 6, 6, 6, 6]).unwrap();
        let mut lens: Vec<usize> = a.point_perm.orbits().iter().map(Vec::len).collect();
        assert_eq!(lens, vec![1, 2, 2, 3, 3, 6, 6, 6, 6, 6, 6]);
        lens.sort();
        assert!(lens.iter().all(|l| 6 % l == 0));
        assert!(CyclicAction::from_orbit_sizes(6, &[1, 2, 2]).is_err());
    }
}
