//! Low-weight codeword enumeration over information sets.
//!
//! A code is put in systematic form on a sequence of information sets chosen
//! greedily so that each set uses as many coordinates not covered by earlier
//! sets as possible. Call `fresh_j` the number of such new coordinates in set
//! `j`. A codeword whose restriction to every set has weight above `p` has
//! total weight at least `Σ_j max(0, p + 1 − (k − fresh_j))`, since the fresh
//! parts are disjoint. Enumerating all messages of weight `≤ p` on every set
//! therefore finds every codeword of weight below that bound, and the
//! minimum-weight search stops as soon as the bound reaches the best weight
//! seen.
//!
//! Counts are exact: each `±` pair is enumerated once per set (leading
//! message coefficient fixed to 1) and a word is credited only to the first
//! set on which its restriction has weight `≤ p`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::code::{is_self_dual, TernaryCode};
use crate::error::{bail, Result};
use crate::exec::Executor;
use crate::gf3::{Trit, TritMatrix, TritVector, Word};

/// Default limit on the number of messages a single enumeration may visit.
/// At `[48, 24]` this admits counts up to weight 15.
pub const DEFAULT_MESSAGE_BUDGET: u64 = 100_000_000;

/// Widest supported code, in 64-trit words.
const MAX_WORDS: usize = 4;

/// One information set with the generator in systematic form on it.
#[derive(Clone, Debug)]
pub struct InfoSet {
    /// Pivot coordinates; row `r` of the systematic generator has a 1 at
    /// `columns[r]` and 0 at the other pivots.
    pub columns: Vec<usize>,
    /// Number of pivot coordinates not covered by earlier sets.
    pub fresh: usize,
    rows: Vec<Word>,
    mask: Vec<u64>,
}

/// Information-set enumerator for one code.
#[derive(Clone, Debug)]
pub struct Enumerator {
    n: usize,
    k: usize,
    words: usize,
    sets: Vec<InfoSet>,
    budget: u64,
}

impl Enumerator {
    pub fn new(code: &TernaryCode) -> Result<Self> {
        let (n, k) = (code.length(), code.dimension());
        if k == 0 {
            bail!(Parameter, "zero-dimensional code has no minimum weight");
        }
        let words = n.div_ceil(64);
        if words > MAX_WORDS {
            bail!(Ceiling, "length {n} exceeds the supported {}", MAX_WORDS * 64);
        }
        let mut covered = alloc::vec![false; n];
        let mut sets = Vec::new();
        loop {
            let order: Vec<usize> = (0..n)
                .filter(|&c| !covered[c])
                .chain((0..n).filter(|&c| covered[c]))
                .collect();
            let (g, columns) = systematic(code.generator(), &order);
            let fresh = columns.iter().filter(|&&c| !covered[c]).count();
            if fresh == 0 {
                break;
            }
            for &c in &columns {
                covered[c] = true;
            }
            let mut mask = alloc::vec![0u64; words];
            for &c in &columns {
                mask[c / 64] |= 1 << (c % 64);
            }
            let rows = (0..k).flat_map(|r| g.row(r).to_vec()).collect();
            sets.push(InfoSet {
                columns,
                fresh,
                rows,
                mask,
            });
            if covered.iter().all(|&c| c) {
                break;
            }
        }
        Ok(Enumerator {
            n,
            k,
            words,
            sets,
            budget: DEFAULT_MESSAGE_BUDGET,
        })
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn info_sets(&self) -> &[InfoSet] {
        &self.sets
    }

    /// Lower bound on the weight of any codeword missed when every set is
    /// enumerated to message weight `depth[j]`.
    pub fn missed_weight_bound(&self, depth: &[usize]) -> usize {
        self.sets
            .iter()
            .zip(depth)
            .map(|(s, &p)| (p + 1).saturating_sub(self.k - s.fresh))
            .sum()
    }

    fn uniform_bound(&self, p: usize) -> usize {
        self.missed_weight_bound(&alloc::vec![p; self.sets.len()])
    }

    /// Smallest uniform depth that finds every codeword of weight `≤ w`.
    pub fn depth_for_weight(&self, w: usize) -> Option<usize> {
        (0..=self.k).find(|&p| self.uniform_bound(p) > w)
    }

    /// Messages (one per `±` pair) visited by an enumeration to `depth`.
    pub fn messages(&self, depth: usize) -> u64 {
        let per_set: u64 = (1..=depth.min(self.k))
            .map(|t| binomial(self.k, t).saturating_mul(1u64 << (t - 1).min(63)))
            .fold(0u64, |a, b| a.saturating_add(b));
        per_set.saturating_mul(self.sets.len() as u64)
    }

    fn plan(&self, w: usize) -> Result<usize> {
        let Some(p) = self.depth_for_weight(w) else {
            // every message is enumerated; the search is trivially complete
            return Ok(self.k);
        };
        let cost = self.messages(p);
        if cost > self.budget {
            bail!(
                Ceiling,
                "weight {w} on a [{}, {}] code needs depth {p} ({cost} messages, budget {})",
                self.n,
                self.k,
                self.budget
            );
        }
        Ok(p)
    }

    /// Exact numbers `A_0 ..= A_max_w` of codewords of each weight.
    pub fn distribution<E: Executor>(&self, max_w: usize, exec: &E) -> Result<Vec<u64>> {
        let p = self.plan(max_w)?;
        let tasks = self.sets.len() * self.k;
        let mut counts = exec.map_reduce(
            tasks,
            alloc::vec![0u64; max_w + 1],
            |t| {
                let mut local = alloc::vec![0u64; max_w + 1];
                self.scan_task(t, p, |set, word| {
                    let wt = weight(word);
                    if wt <= max_w && self.first_hit(set, word, p) {
                        local[wt] += 2;
                    }
                });
                local
            },
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
        counts[0] = 1;
        Ok(counts)
    }

    /// All codewords of weight exactly `w`, one from each `±` pair (the one
    /// whose first nonzero entry is 1), sorted.
    pub fn words_of_weight<E: Executor>(&self, w: usize, exec: &E) -> Result<Vec<TritVector>> {
        let p = self.plan(w)?;
        let n = self.n;
        let mut out = exec.map_reduce(
            self.sets.len() * self.k,
            Vec::new(),
            |t| {
                let mut local = Vec::new();
                self.scan_task(t, p, |set, word| {
                    if weight(word) == w && self.first_hit(set, word, p) {
                        local.push(TritVector::from_words(n, word.to_vec()).normalized_sign());
                    }
                });
                local
            },
            |mut a, mut b| {
                a.append(&mut b);
                a
            },
        );
        out.sort();
        Ok(out)
    }

    /// Minimum nonzero weight, by increasing enumeration depth until the
    /// missed-weight bound reaches the best weight found.
    pub fn min_weight<E: Executor>(&self, exec: &E) -> Result<usize> {
        let mut best = self.n + 1;
        let mut depth = alloc::vec![0usize; self.sets.len()];
        for p in 1..=self.k {
            for j in 0..self.sets.len() {
                if self.missed_weight_bound(&depth) >= best {
                    return Ok(best);
                }
                let spent: u64 = self.messages(p);
                if spent > self.budget {
                    bail!(
                        Ceiling,
                        "minimum weight search on [{}, {}] needs depth {p} ({spent} messages, budget {}); best so far {best}",
                        self.n,
                        self.k,
                        self.budget
                    );
                }
                let found = exec.map_reduce(
                    self.k,
                    usize::MAX,
                    |first| {
                        let mut local = usize::MAX;
                        self.scan(j, first, p, true, |_, word| local = local.min(weight(word)));
                        local
                    },
                    usize::min,
                );
                best = best.min(found);
                depth[j] = p;
            }
        }
        Ok(best)
    }

    fn first_hit(&self, set: usize, word: &[Word], p: usize) -> bool {
        self.sets[..set].iter().all(|s| {
            let w: u32 = word.iter().zip(&s.mask).map(|(x, &m)| (x.support() & m).count_ones()).sum();
            w as usize > p
        })
    }

    fn scan_task(&self, task: usize, p: usize, visit: impl FnMut(usize, &[Word])) {
        self.scan(task / self.k, task % self.k, p, false, visit)
    }

    /// Visits every codeword whose message on set `set` has leading
    /// position `first`, leading coefficient 1, and weight `≤ p` (or exactly
    /// `p` when `exact`).
    fn scan(&self, set: usize, first: usize, p: usize, exact: bool, mut visit: impl FnMut(usize, &[Word])) {
        let rows = &self.sets[set].rows;
        match self.words {
            1 => scan_words::<1>(rows, self.k, first, p, exact, &mut |w| visit(set, w)),
            2 => scan_words::<2>(rows, self.k, first, p, exact, &mut |w| visit(set, w)),
            3 => scan_words::<3>(rows, self.k, first, p, exact, &mut |w| visit(set, w)),
            _ => scan_words::<4>(rows, self.k, first, p, exact, &mut |w| visit(set, w)),
        }
    }
}

/// Gauss-Jordan elimination choosing pivots in the given column order.
fn systematic(g: &TritMatrix, order: &[usize]) -> (TritMatrix, Vec<usize>) {
    let mut m = g.clone();
    let mut pivots = Vec::new();
    for &c in order {
        let rank = pivots.len();
        if rank == m.rows() {
            break;
        }
        let Some(r) = (rank..m.rows()).find(|&r| !m.get(r, c).is_zero()) else {
            continue;
        };
        m.swap_rows(rank, r);
        if m.get(rank, c) == Trit::TWO {
            m.scale_row(rank, Trit::TWO);
        }
        for other in 0..m.rows() {
            let a = m.get(other, c);
            if other != rank && !a.is_zero() {
                m.add_row_multiple(other, rank, -a);
            }
        }
        pivots.push(c);
    }
    (m, pivots)
}

#[inline(always)]
fn weight(w: &[Word]) -> usize {
    w.iter().map(|x| x.weight() as usize).sum()
}

fn scan_words<const W: usize>(
    flat: &[Word],
    k: usize,
    first: usize,
    p: usize,
    exact: bool,
    visit: &mut dyn FnMut(&[Word]),
) {
    if p == 0 {
        return;
    }
    let rows: Vec<[Word; W]> = (0..k)
        .map(|r| core::array::from_fn(|i| flat[r * W + i]))
        .collect();
    let start = rows[first];
    if !exact || p == 1 {
        visit(&start);
    }
    if p > 1 {
        extend::<W>(&rows, first + 1, &start, 1, p, exact, visit);
    }
}

fn extend<const W: usize>(
    rows: &[[Word; W]],
    from: usize,
    acc: &[Word; W],
    wt: usize,
    p: usize,
    exact: bool,
    visit: &mut dyn FnMut(&[Word]),
) {
    let next = wt + 1;
    let report = !exact || next == p;
    for i in from..rows.len() {
        let r = &rows[i];
        let plus: [Word; W] = core::array::from_fn(|x| acc[x].add(r[x]));
        let minus: [Word; W] = core::array::from_fn(|x| acc[x].sub(r[x]));
        if report {
            visit(&plus);
            visit(&minus);
        }
        if next < p {
            extend::<W>(rows, i + 1, &plus, next, p, exact, visit);
            extend::<W>(rows, i + 1, &minus, next, p, exact, visit);
        }
    }
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i as u64 + 1))
}

/// Minimum nonzero weight of `c`.
pub fn min_weight<E: Executor>(c: &TernaryCode, exec: &E) -> Result<usize> {
    Enumerator::new(c)?.min_weight(exec)
}

/// Number of codewords of weight exactly `w`.
pub fn count_weight<E: Executor>(c: &TernaryCode, w: usize, exec: &E) -> Result<u64> {
    Ok(Enumerator::new(c)?.distribution(w, exec)?[w])
}

/// Extremality with respect to the bound `d ≤ n/4 + 3` for self-dual ternary
/// codes of length divisible by 12.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    Extremal,
    NearExtremal,
    Neither,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::Extremal => "extremal",
            Classification::NearExtremal => "near_extremal",
            Classification::Neither => "neither",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "extremal" => Some(Classification::Extremal),
            "near_extremal" => Some(Classification::NearExtremal),
            "neither" => Some(Classification::Neither),
            _ => None,
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Largest `β = A₁₂/8` a near-extremal `[48, 24, 12]` code can have.
pub const MAX_BETA_48: u64 = 4324;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightReport {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    /// `A_w` for every computed weight `w`, zeros included.
    pub counts: BTreeMap<usize, u64>,
    pub classification: Classification,
    pub beta: Option<u64>,
}

impl WeightReport {
    pub fn count(&self, w: usize) -> Option<u64> {
        self.counts.get(&w).copied()
    }
}

pub fn classification_for(n: usize, d: usize) -> Classification {
    if !n.is_multiple_of(12) {
        Classification::Neither
    } else if d == n / 4 + 3 {
        Classification::Extremal
    } else if d == n / 4 {
        Classification::NearExtremal
    } else {
        Classification::Neither
    }
}

/// Minimum weight, low-weight counts up to `d`, and classification.
pub fn classify<E: Executor>(c: &TernaryCode, exec: &E) -> Result<WeightReport> {
    classify_with(&Enumerator::new(c)?, c, exec)
}

pub fn classify_with<E: Executor>(en: &Enumerator, c: &TernaryCode, exec: &E) -> Result<WeightReport> {
    let n = c.length();
    let mut dist = Vec::new();
    let mut d = None;
    if n.is_multiple_of(12) {
        dist = en.distribution(n / 4, exec)?;
        d = (1..dist.len()).find(|&w| dist[w] > 0);
    }
    let d = match d {
        Some(d) => d,
        None => {
            let d = en.min_weight(exec)?;
            dist = en.distribution(d, exec)?;
            d
        }
    };
    if is_self_dual(c) {
        if let Some(w) = (1..dist.len()).find(|&w| w % 3 != 0 && dist[w] > 0) {
            bail!(Invariant, "self-dual code has {} words of weight {w}", dist[w]);
        }
    }
    let classification = classification_for(n, d);
    let mut beta = None;
    if classification == Classification::NearExtremal && n == 48 {
        let a12 = dist[12];
        if a12 % 8 != 0 || !(1..=MAX_BETA_48).contains(&(a12 / 8)) {
            bail!(Invariant, "near-extremal [48,24,12] code with A12 = {a12}: expected 8*beta, 1 <= beta <= {MAX_BETA_48}");
        }
        beta = Some(a12 / 8);
    }
    Ok(WeightReport {
        n,
        k: c.dimension(),
        d,
        counts: dist.into_iter().enumerate().collect(),
        classification,
        beta,
    })
}

/// Whether the supports of the weight-`w` codewords (one per `±` pair,
/// repeated supports kept) form a 1-design, with the number of supports
/// through each coordinate.
pub fn support_one_design_check<E: Executor>(c: &TernaryCode, w: usize, exec: &E) -> Result<(bool, Vec<usize>)> {
    let words = Enumerator::new(c)?.words_of_weight(w, exec)?;
    Ok(support_degrees(c.length(), &words))
}

pub fn support_degrees(n: usize, words: &[TritVector]) -> (bool, Vec<usize>) {
    let mut deg = alloc::vec![0usize; n];
    for word in words {
        for i in word.support() {
            deg[i] += 1;
        }
    }
    let uniform = deg.windows(2).all(|x| x[0] == x[1]);
    (uniform, deg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{golay12, tetracode};
    use crate::exec::Sequential;
    use crate::gf3::naive;

    #[test]
    fn tetracode_weights() {
        let t = tetracode();
        assert_eq!(min_weight(&t, &Sequential).unwrap(), 3);
        assert_eq!(count_weight(&t, 3, &Sequential).unwrap(), 8);
        let dist = naive::weight_distribution(&t.generator().to_rows());
        assert_eq!(dist[3], 8);
    }

    #[test]
    fn golay_weights() {
        let g = golay12();
        assert_eq!(min_weight(&g, &Sequential).unwrap(), 6);
        assert_eq!(count_weight(&g, 6, &Sequential).unwrap(), 264);
        let r = classify(&g, &Sequential).unwrap();
        assert_eq!(r.classification, Classification::Extremal);
        assert_eq!(r.d, 6);
        assert_eq!(r.beta, None);
    }

    #[test]
    fn tetracode_supports_form_one_design() {
        let (ok, deg) = support_one_design_check(&tetracode(), 3, &Sequential).unwrap();
        assert!(ok);
        assert_eq!(deg, alloc::vec![3, 3, 3, 3]);
    }

    #[test]
    fn ceiling_refuses_expensive_counts() {
        let c = crate::code::code_from_design(&crate::design::paley_type1_design(47).unwrap()).unwrap();
        let e = Enumerator::new(&c).unwrap();
        assert_eq!(e.info_sets().len(), 2);
        assert_eq!(e.depth_for_weight(12), Some(6));
        assert!(matches!(e.distribution(18, &Sequential), Err(crate::Error::Ceiling(_))));
    }

    #[test]
    fn zero_dimensional_code_is_rejected() {
        let z = TernaryCode::from_generator(&TritMatrix::zeros(1, 5));
        assert!(matches!(min_weight(&z, &Sequential), Err(crate::Error::Parameter(_))));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(24, 6), 134_596);
        assert_eq!(binomial(5, 7), 0);
    }
}
