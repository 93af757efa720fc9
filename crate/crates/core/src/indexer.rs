//! Expansion of an orbit matrix into the designs it describes.
//!
//! Points and blocks are labeled orbit by orbit, the generator `g` of `Z_n`
//! shifting each run of labels cyclically. Block orbit `i` is generated by
//! the representative block `B_i` with label `off_i`, and `g^t B_i` carries
//! label `off_i + t`. The stabilizer of `B_i` is generated by `g^{Ω_i}`; on
//! point orbit `j` (read as `Z_{ω_j}`) its orbits are the residue classes
//! modulo `γ = gcd(Ω_i, ω_j)`, the cells. `B_i` meets point orbit `j` in
//! `s[i][j] / ℓ` cells, and that choice of cells is an [`IndexingChoice`].
//!
//! The search fixes the representatives row by row. Within a row, the
//! intersections with every realized block and with the row's own
//! translates are sums over columns, so the columns are split in two halves
//! that are enumerated separately and joined on the vector of sums. Point
//! pairs prune as well: no pair may lie on more than `λ` realized blocks, nor
//! on so few that later rows cannot make up the difference. Choice matrices related by a shift of a
//! representative, a shift inside a point orbit, or the inversion
//! `a ↦ -a` on every orbit describe isomorphic designs, and only the
//! lexicographically least member of each such class is expanded.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::design::{orbit_shift, validate_symmetric_design, CyclicAction, IncidenceStructure};
use crate::equivalence::canonical_design;
use crate::error::{bail, Result};
use crate::exec::Executor;
use crate::orbit_matrix::OrbitMatrix;
use crate::perm::{gcd, lcm};

/// Search prefixes are extended row by row until there are at least this
/// many of them.
pub const TASK_TARGET: usize = 256;

/// The cells of point orbit `point_orbit` chosen for the representative of
/// block orbit `block_orbit`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexingChoice {
    pub block_orbit: usize,
    pub point_orbit: usize,
    pub cells: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionResult {
    pub design: IncidenceStructure,
    pub action: CyclicAction,
    /// Label of the source orbit matrix.
    pub source: String,
    /// One choice per orbit-matrix entry, in row-major order.
    pub choices: Vec<IndexingChoice>,
}

impl ExpansionResult {
    /// The chosen cell indices of every entry, concatenated in row-major
    /// order; with the orbit matrix this determines the design.
    pub fn choice_vector(&self) -> Vec<usize> {
        self.choices.iter().flat_map(|c| c.cells.iter().copied()).collect()
    }
}

/// A position in the deterministic stream of an [`Expander`]: the task
/// index and the number of results of that task already emitted.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cursor {
    pub task: usize,
    pub skip: usize,
}

impl fmt::Display for Cursor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.task, self.skip)
    }
}

impl core::str::FromStr for Cursor {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        let parsed = s
            .split_once(':')
            .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)));
        match parsed {
            Some((task, skip)) => Ok(Cursor { task, skip }),
            None => bail!(Parameter, "resumption token {s:?} is not of the form task:skip"),
        }
    }
}

/// A slice of the stream and where it stopped.
#[derive(Clone, Debug)]
pub struct Expansion {
    pub results: Vec<ExpansionResult>,
    /// Where to resume, or `None` if the stream is exhausted.
    pub next: Option<Cursor>,
}

/// Per-entry data of the search.
#[derive(Clone, Debug)]
struct Entry {
    /// Number of cells, `gcd(Ω_i, ω_j)`.
    cells: usize,
    /// Admissible cell sets, as bit masks in lexicographic order.
    options: Vec<u64>,
    /// `points[o][t]`: points of `g^t B_i` in this orbit under option `o`.
    points: Vec<Vec<u128>>,
    /// `first[o]`: the `t` with point `0` of this orbit on `g^t B_i`, as a
    /// bit mask.
    first: Vec<u32>,
    /// `through[o][b]`: the `t` with point `b` on `g^t B_i`.
    through: Vec<Vec<u32>>,
}

/// Point pairs up to the group: point `0` of orbit `a` with point `b` of
/// orbit `c`, where `a ≤ c`, and `b` ranges over `1..ω_a` if `a = c` and over
/// `0..gcd(ω_a, ω_c)` otherwise.
#[derive(Clone, Debug)]
struct PairClasses {
    /// `span[a][c]`: index of the first class of the orbit pair, and the
    /// range of `b`.
    span: Vec<Vec<(usize, core::ops::Range<usize>)>>,
    len: usize,
}

impl PairClasses {
    fn new(sizes: &[usize]) -> Self {
        let mut len = 0;
        let span = (0..sizes.len())
            .map(|a| {
                (0..sizes.len())
                    .map(|c| {
                        let bs = match a.cmp(&c) {
                            Ordering::Less => 0..gcd(sizes[a], sizes[c]),
                            Ordering::Equal => 1..sizes[a],
                            Ordering::Greater => 0..0,
                        };
                        let at = len;
                        len += bs.len();
                        (at, bs)
                    })
                    .collect()
            })
            .collect();
        PairClasses { span, len }
    }

    /// Classes of orbits `a ≤ c`, as `(index, b)`.
    fn of(&self, a: usize, c: usize) -> impl Iterator<Item = (usize, usize)> {
        let (s, bs) = self.span[a][c].clone();
        let first = bs.start;
        bs.map(move |b| (s + b - first, b))
    }
}

/// Expands one orbit matrix under the canonical cyclic action.
#[derive(Clone, Debug)]
pub struct Expander {
    om: OrbitMatrix,
    label: String,
    block_offsets: Vec<usize>,
    entries: Vec<Vec<Entry>>,
    classes: PairClasses,
    /// `pair_rest[i][x]`: most blocks of orbits after `i` through a pair of
    /// class `x`.
    pair_rest: Vec<Vec<u8>>,
    /// Whether to keep only least choice matrices.
    reduce: bool,
    prefix_rows: usize,
    tasks: Vec<Vec<Vec<u64>>>,
}

fn offsets(sizes: &[usize]) -> Vec<usize> {
    sizes
        .iter()
        .scan(0, |acc, &s| {
            let o = *acc;
            *acc += s;
            Some(o)
        })
        .collect()
}

/// Lexicographic order of the sorted index lists of two cell sets of equal
/// size.
fn cmp_cells(mut a: u64, mut b: u64) -> Ordering {
    while a != 0 && b != 0 {
        let (x, y) = (a.trailing_zeros(), b.trailing_zeros());
        if x != y {
            return x.cmp(&y);
        }
        a &= a - 1;
        b &= b - 1;
    }
    a.count_ones().cmp(&b.count_ones())
}

fn rotate(mask: u64, by: usize, g: usize) -> u64 {
    let by = by % g;
    if by == 0 {
        return mask;
    }
    let full = (1u64 << g) - 1;
    ((mask << by) | (mask >> (g - by))) & full
}

fn negate(mask: u64, g: usize) -> u64 {
    let mut out = 0;
    let mut m = mask;
    while m != 0 {
        let a = m.trailing_zeros() as usize;
        out |= 1 << ((g - a) % g);
        m &= m - 1;
    }
    out
}

fn cells_of(mask: u64) -> Vec<usize> {
    (0..64).filter(|&a| mask >> a & 1 == 1).collect()
}

impl Expander {
    pub fn new(om: &OrbitMatrix) -> Result<Self> {
        Self::with_label(om, "")
    }

    /// `label` is recorded as the source of every result.
    pub fn with_label(om: &OrbitMatrix, label: &str) -> Result<Self> {
        if let Some(v) = om.violation() {
            bail!(Parameter, "orbit matrix is invalid: {v}");
        }
        let n = om.group_order;
        if n > 24 || om.params.v > 128 {
            bail!(Parameter, "expansion supports group orders up to 24 and at most 128 points");
        }
        let (rows, cols) = (om.rows(), om.cols());
        let point_offsets = offsets(&om.point_orbit_sizes);
        let block_offsets = offsets(&om.block_orbit_sizes);
        let entries: Vec<Vec<Entry>> = (0..rows)
            .map(|i| {
                let bo = om.block_orbit_sizes[i];
                (0..cols)
                    .map(|j| {
                        let po = om.point_orbit_sizes[j];
                        let g = gcd(bo, po);
                        let per_cell = po / g;
                        let want = om.s[i][j] / per_cell;
                        let mut options: Vec<u64> = (0..1u64 << g).filter(|m| m.count_ones() as usize == want).collect();
                        options.sort_by(|&a, &b| cmp_cells(a, b));
                        let points: Vec<Vec<u128>> = options
                            .iter()
                            .map(|&m| {
                                (0..bo)
                                    .map(|t| {
                                        (0..po)
                                            .filter(|&a| m >> ((a + g - t % g) % g) & 1 == 1)
                                            .fold(0u128, |acc, a| acc | 1u128 << (point_offsets[j] + a))
                                    })
                                    .collect()
                            })
                            .collect();
                        let through: Vec<Vec<u32>> = points
                            .iter()
                            .map(|pts| {
                                (0..po)
                                    .map(|b| {
                                        let bit = point_offsets[j] + b;
                                        (0..bo).filter(|&t| pts[t] >> bit & 1 == 1).fold(0u32, |m, t| m | 1 << t)
                                    })
                                    .collect()
                            })
                            .collect();
                        Entry {
                            cells: g,
                            options,
                            points,
                            first: through.iter().map(|t| t[0]).collect(),
                            through,
                        }
                    })
                    .collect()
            })
            .collect();
        let sizes = &om.point_orbit_sizes;
        let classes = PairClasses::new(sizes);
        let mut pair_rest = alloc::vec![Vec::new(); rows];
        let mut acc = alloc::vec![0u8; classes.len];
        for i in (0..rows).rev() {
            pair_rest[i] = acc.clone();
            for a in 0..cols {
                for c in a..cols {
                    let (ea, ec) = (&entries[i][a], &entries[i][c]);
                    for (x, b) in classes.of(a, c) {
                        let most = if a == c {
                            (0..ea.first.len()).map(|o| (ea.first[o] & ea.through[o][b]).count_ones()).max()
                        } else {
                            ea.first
                                .iter()
                                .flat_map(|&f| ec.through.iter().map(move |t| (f & t[b]).count_ones()))
                                .max()
                        };
                        acc[x] += most.unwrap_or(0) as u8;
                    }
                }
            }
        }
        let mut ex = Expander {
            om: om.clone(),
            label: label.into(),
            block_offsets,
            entries,
            classes,
            pair_rest,
            reduce: true,
            prefix_rows: 0,
            tasks: Vec::new(),
        };
        ex.plan_tasks();
        Ok(ex)
    }

    pub fn orbit_matrix(&self) -> &OrbitMatrix {
        &self.om
    }

    /// Number of independent search tasks; the stream is their results in
    /// task order.
    pub fn task_count(&self) -> usize {
        self.tasks.len()
    }

    /// The canonical action with the orbit sizes of the matrix.
    pub fn action(&self) -> CyclicAction {
        CyclicAction {
            order: self.om.group_order,
            point_perm: orbit_shift(&self.om.point_orbit_sizes),
            block_perm: orbit_shift(&self.om.block_orbit_sizes),
        }
    }

    fn plan_tasks(&mut self) {
        let rows = self.om.rows();
        let mut depth = 0;
        let mut tasks = alloc::vec![Vec::new()];
        while depth < rows && tasks.len() < TASK_TARGET {
            depth += 1;
            tasks.clear();
            let mut search = Search::new(self);
            search.row(0, depth, &mut |s: &Search| {
                tasks.push(s.x[..depth].to_vec());
                true
            });
        }
        self.prefix_rows = depth;
        self.tasks = tasks;
    }

    /// Runs task `task`, handing each result to `sink` until it returns
    /// `false`. Returns `false` if stopped early.
    pub fn run_task(&self, task: usize, sink: &mut dyn FnMut(ExpansionResult) -> bool) -> bool {
        let mut search = Search::new(self);
        for x in &self.tasks[task] {
            search.push_row(x.clone());
        }
        search.row(self.prefix_rows, self.om.rows(), &mut |s: &Search| sink(s.result()))
    }

    /// The whole stream on the calling thread, until `sink` returns `false`.
    pub fn for_each(&self, sink: &mut dyn FnMut(ExpansionResult) -> bool) {
        for task in 0..self.tasks.len() {
            if !self.run_task(task, sink) {
                return;
            }
        }
    }

    /// At most `limit` results of the stream starting at `start`, computed
    /// by `exec`. The output does not depend on the executor.
    pub fn expand<E: Executor>(&self, exec: &E, start: Cursor, limit: Option<usize>) -> Expansion {
        self.expand_tasks(exec, start, limit, None)
    }

    /// Like [`expand`](Self::expand) but stops after `max_tasks` tasks.
    pub fn expand_tasks<E: Executor>(
        &self,
        exec: &E,
        start: Cursor,
        limit: Option<usize>,
        max_tasks: Option<usize>,
    ) -> Expansion {
        let mut results = Vec::new();
        let mut cursor = start;
        let end = max_tasks.map_or(self.tasks.len(), |m| self.tasks.len().min(start.task.saturating_add(m)));
        while cursor.task < end {
            let room = limit.map(|l| l - results.len());
            let batch = if limit.is_some() { exec.threads().max(1) } else { end - cursor.task };
            let first = cursor.task;
            let last = (first + batch).min(end);
            let chunks = exec.map_reduce(
                last - first,
                Vec::new(),
                |k| {
                    let task = first + k;
                    let skip = if task == cursor.task { cursor.skip } else { 0 };
                    let mut out = Vec::new();
                    let mut seen = 0;
                    self.run_task(task, &mut |r| {
                        seen += 1;
                        if seen > skip {
                            out.push(r);
                        }
                        room.is_none_or(|room| out.len() <= room)
                    });
                    alloc::vec![(task, skip, out)]
                },
                |mut a, b| {
                    a.extend(b);
                    a
                },
            );
            let mut chunks = chunks;
            chunks.sort_by_key(|c| c.0);
            for (task, skip, out) in chunks {
                let room = limit.map_or(usize::MAX, |l| l - results.len());
                if out.len() > room {
                    results.extend(out.into_iter().take(room));
                    return Expansion {
                        results,
                        next: Some(Cursor {
                            task,
                            skip: skip + room,
                        }),
                    };
                }
                results.extend(out);
                cursor = Cursor { task: task + 1, skip: 0 };
                if limit == Some(results.len()) {
                    let next = (cursor.task < self.tasks.len()).then_some(cursor);
                    return Expansion { results, next };
                }
            }
        }
        let next = (cursor.task < self.tasks.len()).then_some(cursor);
        Expansion { results, next }
    }

    /// Rebuilds the result for a concatenated choice vector, checking that
    /// it realizes the orbit matrix as a design.
    pub fn replay(&self, cells: &[usize]) -> Result<ExpansionResult> {
        let mut it = cells.iter().copied();
        let mut x = Vec::new();
        for (i, row) in self.entries.iter().enumerate() {
            let mut xr = Vec::new();
            for (j, e) in row.iter().enumerate() {
                let want = self.om.s[i][j] / (self.om.point_orbit_sizes[j] / e.cells);
                let mut mask = 0u64;
                for _ in 0..want {
                    match it.next() {
                        Some(c) if c < e.cells && mask >> c & 1 == 0 => mask |= 1 << c,
                        Some(c) => bail!(Parameter, "cell {c} invalid or repeated at entry ({i},{j})"),
                        None => bail!(Parameter, "choice vector too short"),
                    }
                }
                xr.push(mask);
            }
            x.push(xr);
        }
        if it.next().is_some() {
            bail!(Parameter, "choice vector too long");
        }
        let mut search = Search::new(self);
        for xr in x {
            search.push_row(xr);
        }
        let r = search.result();
        if !validate_symmetric_design(&r.design, &self.om.params)? {
            bail!(Parameter, "choice vector does not give a symmetric design");
        }
        Ok(r)
    }

    fn identity_shifts(&self) -> Vec<Shift> {
        let c = alloc::vec![(1, 0); self.om.cols()];
        let mut out = alloc::vec![Shift { neg: false, c: c.clone() }];
        if self.om.group_order > 2 {
            out.push(Shift { neg: true, c });
        }
        out
    }

    /// The transformations in `shifts` that also fix row `i`, with every
    /// translate `t_i`; `None` if one of them maps the row lower.
    fn fix_row(&self, i: usize, row: &[u64], shifts: &[Shift]) -> Option<Vec<Shift>> {
        let mut out = Vec::new();
        for sh in shifts {
            let mut c = sh.c.clone();
            for t in 0..self.om.block_orbit_sizes[i] {
                if !self.fix_cell(i, row, sh.neg, &mut c, 0, t, &mut out) {
                    return None;
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        Some(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn fix_cell(&self, i: usize, row: &[u64], neg: bool, c: &mut Vec<(usize, usize)>, j: usize, t: usize, out: &mut Vec<Shift>) -> bool {
        if j == row.len() {
            out.push(Shift { neg, c: c.clone() });
            return true;
        }
        let g = self.entries[i][j].cells;
        let own = row[j];
        let base = if neg { negate(own, g) } else { own };
        let (m, r) = c[j];
        let m2 = lcm(m, g);
        for r2 in (r..m2).step_by(m) {
            let img = rotate(base, (t + r2) % g, g);
            match cmp_cells(img, own) {
                Ordering::Less => return false,
                Ordering::Greater => {}
                Ordering::Equal => {
                    c[j] = (m2, r2);
                    let deeper = self.fix_cell(i, row, neg, c, j + 1, t, out);
                    c[j] = (m, r);
                    if !deeper {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// A transformation `X ↦ εX + t_i + c_j` restricted to the rows seen so
/// far: the sign, and per column the modulus and residue `c_j` is pinned to.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Shift {
    neg: bool,
    c: Vec<(usize, usize)>,
}

struct Search<'a> {
    ex: &'a Expander,
    /// Chosen cell masks of completed rows, and of the current row so far.
    x: Vec<Vec<u64>>,
    /// Every block of every completed orbit, with its orbit index.
    realized: Vec<(u128, usize)>,
    /// Realized blocks through a pair of each class.
    pairs: Vec<u8>,
    /// Per row: option index chosen in each column of the current row.
    cur: Vec<Vec<usize>>,
    /// `shifts[r]`: transformations mapping rows `..r` onto themselves.
    shifts: Vec<Vec<Shift>>,
}

/// Per-row tables. Every constraint on a row (meeting each realized block,
/// and meeting its own translates, in `λ` points) is a sum over columns, so
/// the columns are split in two halves joined on the constraint vector.
struct RowPlan {
    i: usize,
    split: usize,
    /// Least and greatest number of this row's blocks through a pair of
    /// each class.
    window: Vec<(u8, u8)>,
    /// Options per column that keep every point pair inside the orbit
    /// within reach of `λ` blocks.
    opts: Vec<Vec<u32>>,
    /// `contrib[j][o]`: constraint vector of option `opts[j][o]`.
    contrib: Vec<Vec<Vec<u8>>>,
    /// Componentwise least and greatest sums over columns `j..`.
    lo: Vec<Vec<u8>>,
    hi: Vec<Vec<u8>>,
    /// Completions of columns `split..`, stably sorted by constraint vector.
    right: Vec<(Vec<u8>, Vec<u32>)>,
}

impl<'a> Search<'a> {
    fn new(ex: &'a Expander) -> Self {
        Search {
            ex,
            x: Vec::new(),
            realized: Vec::new(),
            pairs: alloc::vec![0u8; ex.classes.len],
            cur: alloc::vec![alloc::vec![0; ex.om.cols()]; ex.om.rows()],
            shifts: alloc::vec![ex.identity_shifts()],
        }
    }

    fn add_pairs(&mut self, i: usize, add: bool) {
        let ex = self.ex;
        let os: Vec<usize> = self.x[i]
            .iter()
            .enumerate()
            .map(|(j, &m)| ex.entries[i][j].options.iter().position(|&x| x == m).expect("admissible cell set"))
            .collect();
        for a in 0..os.len() {
            for c in a..os.len() {
                let f = ex.entries[i][a].first[os[a]];
                let th = &ex.entries[i][c].through[os[c]];
                for (x, b) in ex.classes.of(a, c) {
                    let m = (f & th[b]).count_ones() as u8;
                    if add {
                        self.pairs[x] += m;
                    } else {
                        self.pairs[x] -= m;
                    }
                }
            }
        }
    }

    /// Appends a completed row without checks.
    fn push_row(&mut self, xr: Vec<u64>) {
        let i = self.x.len();
        let bo = self.ex.om.block_orbit_sizes[i];
        let blocks: Vec<u128> = (0..bo)
            .map(|t| {
                xr.iter().enumerate().fold(0u128, |acc, (j, &m)| {
                    let e = &self.ex.entries[i][j];
                    let o = e.options.iter().position(|&x| x == m).expect("admissible cell set");
                    acc | e.points[o][t]
                })
            })
            .collect();
        self.realized.extend(blocks.into_iter().map(|b| (b, i)));
        let fixing = self.ex.fix_row(i, &xr, &self.shifts[i]).unwrap_or_default();
        self.shifts.push(fixing);
        self.x.push(xr);
        self.add_pairs(i, true);
    }

    fn plan(&self, i: usize) -> RowPlan {
        let ex = self.ex;
        let cols = ex.om.cols();
        let bo = ex.om.block_orbit_sizes[i];
        let lambda = ex.om.params.lambda as u8;
        let window: Vec<(u8, u8)> = self
            .pairs
            .iter()
            .zip(&ex.pair_rest[i])
            .map(|(&have, &rest)| ((lambda - have).saturating_sub(rest), lambda - have))
            .collect();
        let opts: Vec<Vec<u32>> = (0..cols)
            .map(|j| {
                let e = &ex.entries[i][j];
                (0..e.options.len() as u32)
                    .filter(|&o| {
                        let o = o as usize;
                        ex.classes.of(j, j).all(|(x, b)| {
                            let m = (e.first[o] & e.through[o][b]).count_ones() as u8;
                            window[x].0 <= m && m <= window[x].1
                        })
                    })
                    .collect()
            })
            .collect();
        let contrib: Vec<Vec<Vec<u8>>> = (0..cols)
            .map(|j| {
                opts[j]
                    .iter()
                    .map(|&o| &ex.entries[i][j].points[o as usize])
                    .map(|p| {
                        self.realized
                            .iter()
                            .map(|&(blk, _)| (p[0] & blk).count_ones() as u8)
                            .chain((1..bo).map(|t| (p[0] & p[t]).count_ones() as u8))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let k = self.realized.len() + bo - 1;
        let mut lo = alloc::vec![alloc::vec![0u8; k]; cols + 1];
        let mut hi = lo.clone();
        for j in (0..cols).rev() {
            for c in 0..k {
                let vals = contrib[j].iter().map(|v| v[c]);
                lo[j][c] = lo[j + 1][c] + vals.clone().min().unwrap_or(0);
                hi[j][c] = hi[j + 1][c].saturating_add(vals.max().unwrap_or(0));
            }
        }
        let sizes: Vec<u128> = contrib.iter().map(|c| c.len() as u128).collect();
        let product = |r: core::ops::Range<usize>| sizes[r].iter().fold(1u128, |a, &b| a.saturating_mul(b));
        let split = (0..=cols)
            .min_by_key(|&s| product(0..s).max(product(s..cols)))
            .unwrap_or(cols);
        let mut plan = RowPlan {
            i,
            split,
            window,
            opts,
            contrib,
            lo,
            hi,
            right: Vec::new(),
        };
        let mut sum = alloc::vec![0u8; k];
        let mut combo = Vec::new();
        right_half(ex, &mut plan, lambda, split, &mut sum, &mut combo);
        let mut right = core::mem::take(&mut plan.right);
        right.sort_by(|a, b| a.0.cmp(&b.0));
        plan.right = right;
        plan
    }

    /// Completes rows `i..stop`, calling `sink` at each leaf. Returns
    /// `false` once `sink` does.
    fn row(&mut self, i: usize, stop: usize, sink: &mut dyn FnMut(&Search) -> bool) -> bool {
        if i == stop {
            return sink(self);
        }
        let plan = self.plan(i);
        let k = plan.lo[0].len();
        let mut sums = alloc::vec![alloc::vec![0u8; k]; plan.split + 1];
        self.x.push(alloc::vec![0; self.ex.om.cols()]);
        let cont = self.left(i, 0, &plan, &mut sums, stop, sink);
        self.x.pop();
        cont
    }

    fn left(
        &mut self,
        i: usize,
        j: usize,
        plan: &RowPlan,
        sums: &mut [Vec<u8>],
        stop: usize,
        sink: &mut dyn FnMut(&Search) -> bool,
    ) -> bool {
        let ex = self.ex;
        let lambda = ex.om.params.lambda as u8;
        if j == plan.split {
            let mut need = [0u8; 256];
            let need = &mut need[..sums[j].len()];
            for (x, &m) in need.iter_mut().zip(&sums[j]) {
                *x = lambda - m;
            }
            let need = &*need;
            let from = plan.right.partition_point(|r| &r.0[..] < need);
            let to = from + plan.right[from..].partition_point(|r| &r.0[..] == need);
            'matches: for (_, combo) in &plan.right[from..to] {
                for (c, &k) in combo.iter().enumerate() {
                    let oc = plan.opts[j + c][k as usize] as usize;
                    for a in 0..j {
                        if !pairs_fit(ex, plan, a, self.cur[i][a], j + c, oc) {
                            continue 'matches;
                        }
                    }
                }
                for (c, &k) in combo.iter().enumerate() {
                    let oc = plan.opts[j + c][k as usize] as usize;
                    self.cur[i][j + c] = oc;
                    self.x[i][j + c] = ex.entries[i][j + c].options[oc];
                }
                if !self.complete_row(i, stop, sink) {
                    return false;
                }
            }
            return true;
        }
        let entry = &ex.entries[i][j];
        'options: for (o, v) in plan.contrib[j].iter().enumerate() {
            let (done, rest) = sums.split_at_mut(j + 1);
            let (cur, next) = (&done[j], &mut rest[0]);
            for c in 0..v.len() {
                let m = cur[c] + v[c];
                if m + plan.lo[j + 1][c] > lambda || m.saturating_add(plan.hi[j + 1][c]) < lambda {
                    continue 'options;
                }
                next[c] = m;
            }
            let oc = plan.opts[j][o] as usize;
            for a in 0..j {
                if !pairs_fit(ex, plan, a, self.cur[i][a], j, oc) {
                    continue 'options;
                }
            }
            self.cur[i][j] = oc;
            self.x[i][j] = entry.options[oc];
            if !self.left(i, j + 1, plan, sums, stop, sink) {
                return false;
            }
        }
        true
    }

    fn complete_row(&mut self, i: usize, stop: usize, sink: &mut dyn FnMut(&Search) -> bool) -> bool {
        let ex = self.ex;
        let fixing = if ex.reduce {
            match ex.fix_row(i, &self.x[i], &self.shifts[i]) {
                Some(f) => f,
                None => return true,
            }
        } else {
            Vec::new()
        };
        self.shifts.push(fixing);
        let bo = ex.om.block_orbit_sizes[i];
        for t in 0..bo {
            let blk = self.x[i].iter().enumerate().fold(0u128, |acc, (j, &m)| {
                let e = &ex.entries[i][j];
                let o = e.options.iter().position(|&x| x == m).expect("admissible cell set");
                acc | e.points[o][t]
            });
            self.realized.push((blk, i));
        }
        self.add_pairs(i, true);
        let cont = self.row(i + 1, stop, sink);
        self.add_pairs(i, false);
        self.shifts.pop();
        self.realized.truncate(self.realized.len() - bo);
        cont
    }

    fn result(&self) -> ExpansionResult {
        let ex = self.ex;
        let v = ex.om.params.v;
        let mut rows: Vec<Vec<u8>> = alloc::vec![alloc::vec![0u8; v]; v];
        for (k, &(blk, _)) in self.realized.iter().enumerate() {
            for (x, cell) in rows[k].iter_mut().enumerate() {
                *cell = (blk >> x & 1) as u8;
            }
        }
        debug_assert!(self.realized.iter().enumerate().all(|(k, &(_, r))| {
            let o = ex.block_offsets[r];
            k >= o && k < o + ex.om.block_orbit_sizes[r]
        }));
        let choices = self
            .x
            .iter()
            .enumerate()
            .flat_map(|(i, xr)| {
                xr.iter().enumerate().map(move |(j, &m)| IndexingChoice {
                    block_orbit: i,
                    point_orbit: j,
                    cells: cells_of(m),
                })
            })
            .collect();
        ExpansionResult {
            design: IncidenceStructure::from_rows(&rows).expect("0/1 entries"),
            action: ex.action(),
            source: ex.label.clone(),
            choices,
        }
    }
}

/// Whether options `oa` in column `a` and `oc` in column `c > a` keep the
/// pairs across the two orbits within the plan's window.
fn pairs_fit(ex: &Expander, plan: &RowPlan, a: usize, oa: usize, c: usize, oc: usize) -> bool {
    let f = ex.entries[plan.i][a].first[oa];
    let th = &ex.entries[plan.i][c].through[oc];
    ex.classes.of(a, c).all(|(x, b)| {
        let m = (f & th[b]).count_ones() as u8;
        plan.window[x].0 <= m && m <= plan.window[x].1
    })
}

fn right_half(ex: &Expander, plan: &mut RowPlan, lambda: u8, j: usize, sum: &mut Vec<u8>, combo: &mut Vec<u32>) {
    let cols = plan.contrib.len();
    if j == cols {
        plan.right.push((sum.clone(), combo.clone()));
        return;
    }
    let s = plan.split;
    for o in 0..plan.contrib[j].len() {
        let fits = (0..sum.len()).all(|c| {
            let m = sum[c] + plan.contrib[j][o][c];
            let least = m + plan.lo[j + 1][c] + (plan.lo[0][c] - plan.lo[s][c]);
            let most = m as usize + plan.hi[j + 1][c] as usize + (plan.hi[0][c] - plan.hi[s][c]) as usize;
            least <= lambda && most >= lambda as usize
        });
        if !fits {
            continue;
        }
        let oc = plan.opts[j][o] as usize;
        if !combo.iter().enumerate().all(|(a, &k)| pairs_fit(ex, plan, s + a, plan.opts[s + a][k as usize] as usize, j, oc)) {
            continue;
        }
        for c in 0..sum.len() {
            sum[c] += plan.contrib[j][o][c];
        }
        combo.push(o as u32);
        right_half(ex, plan, lambda, j + 1, sum, combo);
        combo.pop();
        for c in 0..sum.len() {
            sum[c] -= plan.contrib[j][o][c];
        }
    }
}

/// Orbit matrix of `d` for orbits given as consecutive label runs: entry
/// `(i, j)` counts the points of point orbit `j` on the first block of block
/// orbit `i`.
pub fn collapse(d: &IncidenceStructure, block_orbit_sizes: &[usize], point_orbit_sizes: &[usize]) -> Vec<Vec<usize>> {
    let (bo, po) = (offsets(block_orbit_sizes), offsets(point_orbit_sizes));
    bo.iter()
        .map(|&b| {
            po.iter()
                .zip(point_orbit_sizes)
                .map(|(&p, &w)| (p..p + w).filter(|&x| d.get(b, x)).count())
                .collect()
        })
        .collect()
}

/// One result per isomorphism class of designs, the first of each class in
/// input order.
pub fn isomorph_reject<I: IntoIterator<Item = ExpansionResult>>(results: I) -> Vec<ExpansionResult> {
    let mut seen = alloc::collections::BTreeSet::new();
    results
        .into_iter()
        .filter(|r| seen.insert(canonical_design(&r.design).canonical_matrix))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::DesignParams;
    use crate::exec::Sequential;
    use alloc::collections::BTreeSet;
    use alloc::string::ToString;
    use crate::orbit_matrix::generate_orbit_matrices;
    use alloc::vec;

    #[test]
    fn cell_order_and_moves() {
        assert_eq!(cmp_cells(0b011, 0b101), Ordering::Less);
        assert_eq!(cmp_cells(0b110, 0b101), Ordering::Greater);
        assert_eq!(rotate(0b000011, 1, 6), 0b000110);
        assert_eq!(rotate(0b100001, 1, 6), 0b000011);
        assert_eq!(negate(0b000110, 6), 0b110000);
        assert_eq!(negate(0b1, 3), 0b1);
        assert_eq!(cells_of(0b1010), vec![1, 3]);
    }

    #[test]
    fn cursor_round_trip() {
        let c = Cursor { task: 12, skip: 3 };
        assert_eq!(c.to_string().parse::<Cursor>().unwrap(), c);
        assert!("12".parse::<Cursor>().is_err());
    }

    #[test]
    fn trivial_group_gives_the_matrix_itself() {
        let fano = crate::design::fano_plane();
        let p = DesignParams::new(7, 3, 1).unwrap();
        let s: Vec<Vec<usize>> = fano.to_rows().iter().map(|r| r.iter().map(|&x| x as usize).collect()).collect();
        let om = OrbitMatrix::new(1, p, vec![1; 7], vec![1; 7], s).unwrap();
        let ex = Expander::new(&om).unwrap();
        let all = ex.expand(&Sequential, Cursor::default(), None);
        assert_eq!(all.results.len(), 1);
        assert_eq!(all.results[0].design, fano);
        assert!(all.next.is_none());
    }

    #[test]
    fn cyclic_fano() {
        let p = DesignParams::new(7, 3, 1).unwrap();
        let om = OrbitMatrix::new(7, p, vec![7], vec![7], vec![vec![3]]).unwrap();
        let ex = Expander::new(&om).unwrap();
        let all = ex.expand(&Sequential, Cursor::default(), None).results;
        // difference sets {0,1,3} and its negative {0,4,6} ~ {0,1,5}
        assert!(!all.is_empty());
        for r in &all {
            assert!(validate_symmetric_design(&r.design, &p).unwrap());
            assert!(r.action.fixes(&r.design));
        }
        assert_eq!(isomorph_reject(all).len(), 1);
    }

    fn classes(om: &OrbitMatrix, reduce: bool) -> (usize, BTreeSet<Vec<u8>>) {
        let mut ex = Expander::new(om).unwrap();
        ex.reduce = reduce;
        ex.plan_tasks();
        let all = ex.expand(&Sequential, Cursor::default(), None).results;
        let keys = all.iter().map(|r| canonical_key(&r.design)).collect();
        (all.len(), keys)
    }

    fn canonical_key(d: &IncidenceStructure) -> Vec<u8> {
        crate::equivalence::canonical_design(d).canonical_matrix.to_rows().concat()
    }

    #[test]
    fn reduction_keeps_every_isomorphism_class() {
        let cases = [
            ((15, 7, 3), 6, vec![3, 6, 6]),
            ((11, 5, 2), 5, vec![1, 5, 5]),
            ((13, 4, 1), 3, vec![1, 3, 3, 3, 3]),
        ];
        for ((v, k, l), n, sizes) in cases {
            let p = DesignParams::new(v, k, l).unwrap();
            for om in generate_orbit_matrices(p, n, &sizes, &sizes).unwrap() {
                let (m, reduced) = classes(&om, true);
                let (all, full) = classes(&om, false);
                assert_eq!(reduced, full, "{:?}", om.s);
                assert!(m <= all);
            }
        }
    }

    #[test]
    fn invalid_matrix_is_rejected() {
        let mut om = OrbitMatrix::appendix(1).unwrap();
        om.s[0][1] = 1;
        assert!(matches!(Expander::new(&om), Err(crate::Error::Parameter(_))));
    }
}
