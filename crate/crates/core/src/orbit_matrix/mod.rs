//! Orbit matrices of symmetric designs under a cyclic group.
//!
//! For a cyclic group `Z_n` acting on a symmetric 2-(v,k,λ) design with
//! block orbits of sizes `Ω` and point orbits of sizes `ω`, entry `s[i][j]`
//! counts the points of point orbit `j` on one block of block orbit `i`.
//! A valid orbit matrix satisfies
//!
//! * C1: `0 ≤ s[i][j] ≤ ω[j]`
//! * C2: `Σ_j s[i][j] = k`
//! * C3: `Σ_i Ω[i]·s[i][j] = k·ω[j]`
//! * C4: `Σ_j (Ω[i']/ω[j])·s[i][j]·s[i'][j] = λ·Ω[i'] + δ(i,i')·(k−λ)`
//! * C5: `s[i][j]` is a multiple of the length of the orbits of the block
//!   stabilizer on point orbit `j`, `ℓ = (n/Ω[i]) / gcd(n/Ω[i], n/ω[j])`.
//!
//! C4 is evaluated in integers after multiplying through by `lcm(ω)`.

mod appendix;

use alloc::vec::Vec;
use core::fmt;

use crate::design::DesignParams;
use crate::error::{bail, Result};
use crate::perm::{gcd, lcm};

pub use appendix::SIZES as APPENDIX_SIZES;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitMatrix {
    pub group_order: usize,
    pub params: DesignParams,
    pub block_orbit_sizes: Vec<usize>,
    pub point_orbit_sizes: Vec<usize>,
    pub s: Vec<Vec<usize>>,
}

/// The first condition an orbit matrix fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Orbit sizes do not divide the group order or do not sum to `v`.
    Sizes,
    C1 { row: usize, col: usize },
    C2 { row: usize },
    C3 { col: usize },
    C4 { row: usize, other: usize },
    C5 { row: usize, col: usize },
}

impl Violation {
    pub fn condition(&self) -> &'static str {
        match self {
            Violation::Sizes => "sizes",
            Violation::C1 { .. } => "C1",
            Violation::C2 { .. } => "C2",
            Violation::C3 { .. } => "C3",
            Violation::C4 { .. } => "C4",
            Violation::C5 { .. } => "C5",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Sizes => write!(f, "orbit sizes inconsistent with v and n"),
            Violation::C1 { row, col } => write!(f, "C1 violated at ({row},{col}): entry exceeds orbit size"),
            Violation::C2 { row } => write!(f, "C2 violated at row {row}: row sum differs from k"),
            Violation::C3 { col } => write!(f, "C3 violated at column {col}: weighted column sum differs from k*omega"),
            Violation::C4 { row, other } => write!(f, "C4 violated at rows ({row},{other}): wrong intersection count"),
            Violation::C5 { row, col } => write!(f, "C5 violated at ({row},{col}): entry not a multiple of the stabilizer orbit length"),
        }
    }
}

/// Length of the orbits of the stabilizer of a block in an orbit of size
/// `block_orbit` on a point orbit of size `point_orbit`, under `Z_n`.
pub fn stabilizer_orbit_length(n: usize, block_orbit: usize, point_orbit: usize) -> usize {
    let a = n / block_orbit;
    a / gcd(a, n / point_orbit)
}

/// Values an entry may take under C1 and C5: the multiples of the stabilizer
/// orbit length up to the point orbit size.
pub fn admissible_values(n: usize, block_orbit: usize, point_orbit: usize) -> Result<Vec<usize>> {
    if block_orbit == 0 || point_orbit == 0 || !n.is_multiple_of(block_orbit) || !n.is_multiple_of(point_orbit) {
        bail!(Parameter, "orbit sizes {block_orbit}, {point_orbit} must divide {n}");
    }
    let l = stabilizer_orbit_length(n, block_orbit, point_orbit);
    Ok((0..=point_orbit / l).map(|m| m * l).collect())
}

impl OrbitMatrix {
    pub fn new(
        group_order: usize,
        params: DesignParams,
        block_orbit_sizes: Vec<usize>,
        point_orbit_sizes: Vec<usize>,
        s: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if s.len() != block_orbit_sizes.len() || s.iter().any(|r| r.len() != point_orbit_sizes.len()) {
            bail!(
                Shape,
                "orbit matrix must be {}x{}",
                block_orbit_sizes.len(),
                point_orbit_sizes.len()
            );
        }
        if group_order == 0 || block_orbit_sizes.iter().chain(&point_orbit_sizes).any(|&x| x == 0) {
            bail!(Parameter, "group order and orbit sizes must be positive");
        }
        Ok(OrbitMatrix {
            group_order,
            params,
            block_orbit_sizes,
            point_orbit_sizes,
            s,
        })
    }

    /// One of the four bundled matrices, `id` in `1..=4`.
    pub fn appendix(id: usize) -> Result<Self> {
        let rows = match id {
            1 => appendix::OM1,
            2 => appendix::OM2,
            3 => appendix::OM3,
            4 => appendix::OM4,
            _ => bail!(Parameter, "appendix orbit matrix id {id} not in 1..=4"),
        };
        OrbitMatrix::new(
            6,
            DesignParams::SYM_47_23_11,
            appendix::SIZES.to_vec(),
            appendix::SIZES.to_vec(),
            rows.iter().map(|r| r.to_vec()).collect(),
        )
    }

    /// The orbit matrix of the dual design: entry `(j, i)` counts the
    /// blocks of orbit `i` through a point of orbit `j`, `s[i][j]·Ω_i/ω_j`.
    ///
    /// The bundled matrices give near-extremal codes when read this way
    /// round; see [`crate::indexer`].
    pub fn dual(&self) -> Result<OrbitMatrix> {
        let (bo, po) = (&self.block_orbit_sizes, &self.point_orbit_sizes);
        let mut t = alloc::vec![alloc::vec![0; self.rows()]; self.cols()];
        for (i, row) in self.s.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                if x * bo[i] % po[j] != 0 {
                    bail!(Parameter, "entry ({i},{j}) has no integral dual");
                }
                t[j][i] = x * bo[i] / po[j];
            }
        }
        OrbitMatrix::new(self.group_order, self.params, po.clone(), bo.clone(), t)
    }

    pub fn rows(&self) -> usize {
        self.block_orbit_sizes.len()
    }

    pub fn cols(&self) -> usize {
        self.point_orbit_sizes.len()
    }

    /// `lcm` of the point orbit sizes, the scale of the integer form of C4.
    fn c4_scale(&self) -> usize {
        self.point_orbit_sizes.iter().fold(1, |a, &b| lcm(a, b))
    }

    /// `Σ_j (L/ω_j)·s[i][j]·s[i'][j]` with `L` the C4 scale.
    pub fn scaled_inner(&self, i: usize, other: usize) -> usize {
        let l = self.c4_scale();
        (0..self.cols())
            .map(|j| l / self.point_orbit_sizes[j] * self.s[i][j] * self.s[other][j])
            .sum()
    }

    /// The left side of C4, `Σ_j (Ω[i']/ω_j) s[i][j] s[i'][j]`, when it is
    /// an integer.
    pub fn c4_value(&self, i: usize, other: usize) -> Option<usize> {
        let num = self.block_orbit_sizes[other] * self.scaled_inner(i, other);
        let l = self.c4_scale();
        num.is_multiple_of(l).then_some(num / l)
    }

    /// The first violated condition, or `None` if the matrix is valid.
    pub fn violation(&self) -> Option<Violation> {
        let (n, p) = (self.group_order, self.params);
        let sizes_ok = self.block_orbit_sizes.iter().chain(&self.point_orbit_sizes).all(|&x| n % x == 0)
            && self.block_orbit_sizes.iter().sum::<usize>() == p.v
            && self.point_orbit_sizes.iter().sum::<usize>() == p.v;
        if !sizes_ok {
            return Some(Violation::Sizes);
        }
        for row in 0..self.rows() {
            for col in 0..self.cols() {
                if self.s[row][col] > self.point_orbit_sizes[col] {
                    return Some(Violation::C1 { row, col });
                }
            }
        }
        for row in 0..self.rows() {
            if self.s[row].iter().sum::<usize>() != p.k {
                return Some(Violation::C2 { row });
            }
        }
        for col in 0..self.cols() {
            let sum: usize = (0..self.rows()).map(|i| self.block_orbit_sizes[i] * self.s[i][col]).sum();
            if sum != p.k * self.point_orbit_sizes[col] {
                return Some(Violation::C3 { col });
            }
        }
        for row in 0..self.rows() {
            for other in 0..self.rows() {
                let want = p.lambda * self.block_orbit_sizes[other] + if row == other { p.k - p.lambda } else { 0 };
                if self.c4_value(row, other) != Some(want) {
                    return Some(Violation::C4 { row, other });
                }
            }
        }
        for row in 0..self.rows() {
            for col in 0..self.cols() {
                let l = stabilizer_orbit_length(n, self.block_orbit_sizes[row], self.point_orbit_sizes[col]);
                if !self.s[row][col].is_multiple_of(l) {
                    return Some(Violation::C5 { row, col });
                }
            }
        }
        None
    }

    pub fn is_valid(&self) -> bool {
        self.violation().is_none()
    }

    /// Canonical representative under permutations of rows with equal block
    /// orbit size and of columns with equal point orbit size: the
    /// lexicographically smallest matrix (row-major) in the class.
    pub fn canonical(&self) -> OrbitMatrix {
        let col_groups = groups(&self.point_orbit_sizes);
        let row_groups = groups(&self.block_orbit_sizes);
        let mut best: Option<Vec<Vec<usize>>> = None;
        let mut cols: Vec<usize> = (0..self.cols()).collect();
        for_each_group_perm(&col_groups, &mut cols, &mut |cols| {
            let mut m: Vec<Vec<usize>> = self.s.iter().map(|r| cols.iter().map(|&c| r[c]).collect()).collect();
            for g in &row_groups {
                let mut rows: Vec<Vec<usize>> = g.iter().map(|&i| m[i].clone()).collect();
                rows.sort();
                for (&i, r) in g.iter().zip(rows) {
                    m[i] = r;
                }
            }
            if best.as_ref().is_none_or(|b| m < *b) {
                best = Some(m);
            }
        });
        OrbitMatrix {
            s: best.expect("at least the identity permutation"),
            ..self.clone()
        }
    }

    /// True iff both matrices are equal up to the permutations used by
    /// [`canonical`](Self::canonical).
    pub fn equivalent(&self, other: &OrbitMatrix) -> bool {
        self.group_order == other.group_order
            && self.params == other.params
            && self.block_orbit_sizes == other.block_orbit_sizes
            && self.point_orbit_sizes == other.point_orbit_sizes
            && self.canonical() == other.canonical()
    }
}

/// Positions sharing each distinct size, in order of first appearance.
fn groups(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut out: Vec<(usize, Vec<usize>)> = Vec::new();
    for (i, &s) in sizes.iter().enumerate() {
        match out.iter_mut().find(|(x, _)| *x == s) {
            Some((_, g)) => g.push(i),
            None => out.push((s, alloc::vec![i])),
        }
    }
    out.into_iter().map(|(_, g)| g).collect()
}

/// Calls `f` with every arrangement of `slots` obtained by permuting the
/// entries at the positions of each group among themselves.
fn for_each_group_perm(groups: &[Vec<usize>], slots: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    fn rec(groups: &[Vec<usize>], g: usize, slots: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if g == groups.len() {
            f(slots);
            return;
        }
        let pos = &groups[g];
        let mut items: Vec<usize> = pos.iter().map(|&p| slots[p]).collect();
        permute(&mut items, 0, &mut |items| {
            for (&p, &x) in pos.iter().zip(items) {
                slots[p] = x;
            }
            rec(groups, g + 1, slots, f);
        });
    }
    rec(groups, 0, slots, f);
}

fn permute(items: &mut [usize], k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, f);
        items.swap(k, i);
    }
}

/// All orbit matrices satisfying C1–C5, one per equivalence class (see
/// [`OrbitMatrix::canonical`]), sorted by their canonical form.
pub fn generate_orbit_matrices(
    params: DesignParams,
    n: usize,
    block_orbit_sizes: &[usize],
    point_orbit_sizes: &[usize],
) -> Result<Vec<OrbitMatrix>> {
    let v = params.v;
    if block_orbit_sizes.iter().sum::<usize>() != v || point_orbit_sizes.iter().sum::<usize>() != v {
        bail!(Parameter, "orbit sizes must sum to v = {v}");
    }
    for &x in block_orbit_sizes.iter().chain(point_orbit_sizes) {
        if x == 0 || !n.is_multiple_of(x) {
            bail!(Parameter, "orbit size {x} does not divide the group order {n}");
        }
    }
    let mut search = Generator::new(params, n, block_orbit_sizes, point_orbit_sizes);
    search.row(0);
    let mut found: Vec<OrbitMatrix> = search
        .solutions
        .into_iter()
        .map(|s| {
            OrbitMatrix {
                group_order: n,
                params,
                block_orbit_sizes: block_orbit_sizes.to_vec(),
                point_orbit_sizes: point_orbit_sizes.to_vec(),
                s,
            }
            .canonical()
        })
        .collect();
    found.sort();
    found.dedup();
    Ok(found)
}

/// Rows satisfying C1, C2, C5 and the diagonal case of C4 for one block
/// orbit size, in lexicographic order.
fn candidate_rows(params: DesignParams, n: usize, block_orbit: usize, point_orbit_sizes: &[usize]) -> Vec<Vec<usize>> {
    let scale = point_orbit_sizes.iter().fold(1, |a, &b| lcm(a, b));
    let values: Vec<Vec<usize>> = point_orbit_sizes
        .iter()
        .map(|&po| admissible_values(n, block_orbit, po).expect("sizes checked"))
        .collect();
    let weights: Vec<usize> = point_orbit_sizes.iter().map(|&po| scale / po).collect();
    // scaled self inner product required by C4
    let num = scale * (params.lambda * block_orbit + params.k - params.lambda);
    if !num.is_multiple_of(block_orbit) {
        return Vec::new();
    }
    let target = num / block_orbit;
    let cols = point_orbit_sizes.len();
    let mut max_sum = alloc::vec![0usize; cols + 1];
    let mut max_sq = alloc::vec![0usize; cols + 1];
    for c in (0..cols).rev() {
        let top = values[c].last().copied().unwrap_or(0);
        max_sum[c] = max_sum[c + 1] + top;
        max_sq[c] = max_sq[c + 1] + weights[c] * top * top;
    }
    let mut out = Vec::new();
    let mut row = alloc::vec![0usize; cols];
    #[allow(clippy::too_many_arguments)]
    fn rec(
        j: usize,
        sum: usize,
        sq: usize,
        k: usize,
        target: usize,
        values: &[Vec<usize>],
        weights: &[usize],
        max_sum: &[usize],
        max_sq: &[usize],
        row: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if j == row.len() {
            if sum == k && sq == target {
                out.push(row.clone());
            }
            return;
        }
        for &x in &values[j] {
            let (s, q) = (sum + x, sq + weights[j] * x * x);
            if s > k || q > target {
                break;
            }
            if s + max_sum[j + 1] < k || q + max_sq[j + 1] < target {
                continue;
            }
            row[j] = x;
            rec(j + 1, s, q, k, target, values, weights, max_sum, max_sq, row, out);
        }
        row[j] = 0;
    }
    rec(0, 0, 0, params.k, target, &values, &weights, &max_sum, &max_sq, &mut row, &mut out);
    out
}

struct Generator<'a> {
    params: DesignParams,
    omega_rows: &'a [usize],
    omega_cols: &'a [usize],
    /// Candidate rows for each row position.
    candidates: Vec<Vec<Vec<usize>>>,
    /// `top[i][j]`: largest admissible value in cell `(i, j)`.
    top: Vec<Vec<usize>>,
    weights: Vec<usize>,
    scale: usize,
    s: Vec<Vec<usize>>,
    col_sums: Vec<usize>,
    /// `tied[j]`: columns `j` and `j+1` have equal size and equal prefixes.
    tied: Vec<bool>,
    solutions: Vec<Vec<Vec<usize>>>,
}

impl<'a> Generator<'a> {
    fn new(params: DesignParams, n: usize, omega_rows: &'a [usize], omega_cols: &'a [usize]) -> Self {
        let mut by_size: Vec<(usize, Vec<Vec<usize>>)> = Vec::new();
        for &bo in omega_rows {
            if !by_size.iter().any(|(s, _)| *s == bo) {
                by_size.push((bo, candidate_rows(params, n, bo, omega_cols)));
            }
        }
        let candidates = omega_rows
            .iter()
            .map(|bo| by_size.iter().find(|(s, _)| s == bo).expect("inserted").1.clone())
            .collect();
        let top = omega_rows
            .iter()
            .map(|&bo| {
                omega_cols
                    .iter()
                    .map(|&po| *admissible_values(n, bo, po).expect("sizes checked").last().unwrap_or(&0))
                    .collect()
            })
            .collect();
        let scale = omega_cols.iter().fold(1, |a, &b| lcm(a, b));
        Generator {
            params,
            omega_rows,
            omega_cols,
            candidates,
            top,
            weights: omega_cols.iter().map(|&po| scale / po).collect(),
            scale,
            s: Vec::new(),
            col_sums: alloc::vec![0; omega_cols.len()],
            tied: (0..omega_cols.len())
                .map(|j| j + 1 < omega_cols.len() && omega_cols[j] == omega_cols[j + 1])
                .collect(),
            solutions: Vec::new(),
        }
    }

    fn row(&mut self, i: usize) {
        let t = self.omega_rows.len();
        let cols = self.omega_cols.len();
        let k = self.params.k;
        if i == t {
            if (0..cols).all(|j| self.col_sums[j] == k * self.omega_cols[j]) {
                self.solutions.push(self.s.clone());
            }
            return;
        }
        let inner_target = self.scale * self.params.lambda;
        let same_as_prev = i > 0 && self.omega_rows[i - 1] == self.omega_rows[i];
        // weighted column capacity of rows after this one
        let later: Vec<usize> = (0..cols)
            .map(|c| (i + 1..t).map(|r| self.omega_rows[r] * self.top[r][c]).sum())
            .collect();
        let bo = self.omega_rows[i];
        for ci in 0..self.candidates[i].len() {
            let ok = {
                let row = &self.candidates[i][ci];
                // rows of equal orbit size are non-decreasing
                (!same_as_prev || self.s[i - 1] <= *row)
                    // columns of equal orbit size are non-decreasing
                    && (0..cols.saturating_sub(1)).all(|c| !self.tied[c] || row[c] <= row[c + 1])
                    && (0..cols).all(|c| {
                        let have = self.col_sums[c] + bo * row[c];
                        let need = k * self.omega_cols[c];
                        have <= need && need - have <= later[c]
                    })
                    && self.s.iter().all(|prev| {
                        (0..cols).map(|c| self.weights[c] * prev[c] * row[c]).sum::<usize>() == inner_target
                    })
            };
            if !ok {
                continue;
            }
            let row = self.candidates[i][ci].clone();
            let saved = self.tied.clone();
            for c in 0..cols.saturating_sub(1) {
                self.tied[c] = self.tied[c] && row[c] == row[c + 1];
            }
            for c in 0..cols {
                self.col_sums[c] += bo * row[c];
            }
            self.s.push(row);
            self.row(i + 1);
            let row = self.s.pop().expect("pushed");
            for c in 0..cols {
                self.col_sums[c] -= bo * row[c];
            }
            self.tied = saved;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn appendix_matrices_are_valid() {
        for id in 1..=4 {
            let om = OrbitMatrix::appendix(id).unwrap();
            assert_eq!(om.violation(), None, "OM{id}");
        }
        assert!(OrbitMatrix::appendix(0).is_err());
        assert!(OrbitMatrix::appendix(5).is_err());
    }

    #[test]
    fn duals_are_valid_and_involutive() {
        for id in 1..=4 {
            let om = OrbitMatrix::appendix(id).unwrap();
            let d = om.dual().unwrap();
            assert_eq!(d.violation(), None, "OM{id}");
            assert_eq!(d.dual().unwrap(), om);
        }
        let om = OrbitMatrix::appendix(1).unwrap().dual().unwrap();
        assert_eq!(om.s[1], vec![1, 2, 2, 3, 3, 3, 3, 0, 0, 3, 3]);
    }

    #[test]
    fn appendix_rows() {
        assert_eq!(OrbitMatrix::appendix(1).unwrap().s[0], vec![0, 2, 0, 3, 0, 6, 6, 6, 0, 0, 0]);
        assert_eq!(OrbitMatrix::appendix(2).unwrap().s[5], vec![1, 1, 1, 1, 1, 3, 1, 5, 3, 3, 3]);
    }

    #[test]
    fn c4_first_row_of_om1() {
        let om = OrbitMatrix::appendix(1).unwrap();
        // 4/2 + 9/3 + 3 * 36/6 = 2 + 3 + 18
        assert_eq!(om.c4_value(0, 0), Some(23));
        assert_eq!(23, 11 + 12);
    }

    #[test]
    fn mutation_is_named() {
        let mut om = OrbitMatrix::appendix(1).unwrap();
        om.s[0][1] = 1;
        assert_eq!(om.violation(), Some(Violation::C2 { row: 0 }));
    }

    #[test]
    fn admissible_examples() {
        assert_eq!(admissible_values(6, 1, 6).unwrap(), vec![0, 6]);
        assert_eq!(admissible_values(6, 3, 6).unwrap(), vec![0, 2, 4, 6]);
        assert_eq!(admissible_values(6, 6, 6).unwrap(), vec![0, 1, 2, 3, 4, 5, 6]);
        assert_eq!(admissible_values(6, 1, 2).unwrap(), vec![0, 2]);
        assert!(admissible_values(6, 4, 6).is_err());
    }

    #[test]
    fn row_sums_identity_for_appendix() {
        for id in 1..=4 {
            let om = OrbitMatrix::appendix(id).unwrap();
            let p = om.params;
            let total: usize = (0..om.rows())
                .map(|i| om.block_orbit_sizes[i] * om.s[i].iter().sum::<usize>())
                .sum();
            assert_eq!(total, p.k * p.v);
            for i in 0..om.rows() {
                let o = om.block_orbit_sizes[i];
                let lhs: usize = (0..om.cols()).map(|j| o * om.s[i][j] * om.s[i][j] / om.point_orbit_sizes[j]).sum();
                let exact: usize = (0..om.cols()).map(|j| 6 / om.point_orbit_sizes[j] * o * om.s[i][j] * om.s[i][j]).sum();
                assert_eq!(exact % 6, 0);
                assert_eq!(exact / 6, p.lambda * o + p.k - p.lambda, "OM{id} row {i} ({lhs})");
            }
        }
    }

    #[test]
    fn canonical_is_class_invariant() {
        let om = OrbitMatrix::appendix(3).unwrap();
        let mut shuffled = om.clone();
        shuffled.s.swap(5, 9);
        for r in shuffled.s.iter_mut() {
            r.swap(6, 10);
            r.swap(1, 2);
        }
        assert!(shuffled.is_valid());
        assert_eq!(om.canonical(), shuffled.canonical());
        assert!(om.equivalent(&shuffled));
    }

    #[test]
    fn generation_rejects_bad_sizes() {
        let p = DesignParams::new(7, 3, 1).unwrap();
        assert!(generate_orbit_matrices(p, 1, &[1; 6], &[1; 7]).is_err());
        assert!(generate_orbit_matrices(p, 2, &[1, 1, 1, 4], &[1; 7]).is_err());
    }
}
