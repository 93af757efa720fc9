//! The steps the command line chains together, with deterministic output
//! under any executor.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use anyhow::{bail, Context};
use tern48_core::code::{augmented_design_code, code_from_design, TernaryCode};
use tern48_core::design::{DesignParams, IncidenceStructure};
use tern48_core::equivalence::{canonical_design, code_canon, transporter, CodeCanon, CodeFingerprint};
use tern48_core::exec::Executor;
use tern48_core::indexer::{Cursor, Expander, Expansion, ExpansionResult};
use tern48_core::orbit_matrix::OrbitMatrix;
use tern48_core::weight::{classify, WeightReport};

use crate::manifest::sha256_hex;

/// `f` over `items` on `exec`, results in input order.
pub fn par_map<T: Sync, R: Send, E: Executor>(exec: &E, items: &[T], f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let mut v = exec.map_reduce(
        items.len(),
        Vec::new(),
        |i| vec![(i, f(&items[i]))],
        |mut a, b| {
            a.extend(b);
            a
        },
    );
    v.sort_by_key(|x| x.0);
    v.into_iter().map(|x| x.1).collect()
}

/// The matrix expanded for appendix matrix `id`. The printed tables count,
/// for each point orbit, the blocks of each block orbit through one of its
/// points, so the expansion runs on the transpose.
pub fn appendix_for_expansion(id: usize) -> anyhow::Result<OrbitMatrix> {
    Ok(OrbitMatrix::appendix(id)?.dual()?)
}

pub struct Budgeted {
    pub expansion: Expansion,
    /// True when the budget ran out before the limit or the end.
    pub out_of_time: bool,
}

/// Up to `limit` results from `start`, stopping at the first task boundary
/// after `budget` has elapsed.
pub fn expand_within<E: Executor>(
    ex: &Expander,
    exec: &E,
    start: Cursor,
    limit: Option<usize>,
    budget: Option<Duration>,
) -> Budgeted {
    let t0 = Instant::now();
    let mut results = Vec::new();
    let mut cursor = Some(start);
    while let Some(at) = cursor {
        let room = limit.map(|l| l - results.len());
        if room == Some(0) {
            break;
        }
        if budget.is_some_and(|b| t0.elapsed() >= b) {
            return Budgeted {
                expansion: Expansion { results, next: cursor },
                out_of_time: true,
            };
        }
        let step = ex.expand_tasks(exec, at, room, Some(exec.threads().max(1)));
        results.extend(step.results);
        cursor = step.next;
    }
    Budgeted {
        expansion: Expansion { results, next: cursor },
        out_of_time: false,
    }
}

/// The self-dual code of a 2-(47,23,11) design, or the augmented incidence
/// code of any other design.
pub fn design_code(p: &DesignParams, d: &IncidenceStructure) -> anyhow::Result<TernaryCode> {
    if *p == DesignParams::SYM_47_23_11 {
        Ok(code_from_design(d)?)
    } else {
        Ok(augmented_design_code(d))
    }
}

/// Counts monomial equivalence classes of codes fed one at a time. Codes
/// whose minimum-weight words span are identified by their certificate;
/// the others are compared by explicit transporter search.
#[derive(Default)]
pub struct ClassCounter {
    spanning: BTreeMap<(CodeFingerprint, String), usize>,
    other: Vec<(TernaryCode, CodeCanon, usize)>,
    classes: usize,
}

impl ClassCounter {
    pub fn classes(&self) -> usize {
        self.classes
    }

    /// Class index of `c`, numbered in order of first appearance.
    pub fn add(&mut self, c: &TernaryCode, canon: CodeCanon) -> anyhow::Result<usize> {
        if canon.spans {
            let cert: Vec<u8> = canon.certificate.iter().flat_map(|x| x.to_le_bytes()).collect();
            let key = (canon.fingerprint.clone(), sha256_hex(&cert));
            let next = self.classes;
            let id = *self.spanning.entry(key).or_insert(next);
            if id == next {
                self.classes += 1;
            }
            return Ok(id);
        }
        for (rep, rc, id) in &self.other {
            if transporter(rep, rc, c, &canon)?.is_some() {
                return Ok(*id);
            }
        }
        let id = self.classes;
        self.classes += 1;
        self.other.push((c.clone(), canon, id));
        Ok(id)
    }
}

/// Table-1 style numbers for one orbit matrix, from a complete expansion.
#[derive(Clone, Debug, Default)]
pub struct OmStats {
    pub raw: usize,
    pub designs: usize,
    pub d12_codes: usize,
    pub betas: BTreeSet<u64>,
    pub inequivalent: usize,
    /// Canonical design keys, for counting classes across matrices.
    pub keys: BTreeSet<IncidenceStructure>,
    /// Automorphism group orders of the designs with `d = 12` codes, as
    /// order → number of designs.
    pub aut_orders: BTreeMap<u128, usize>,
}

/// Expands `om` completely, rejects isomorphs, and classifies the code of
/// every surviving design. `log` receives progress lines.
pub fn full_run<E: Executor>(om: &OrbitMatrix, label: &str, exec: &E, log: &mut dyn FnMut(&str)) -> anyhow::Result<OmStats> {
    let ex = Expander::with_label(om, label)?;
    let t0 = Instant::now();
    let mut stats = OmStats::default();
    let mut classes = ClassCounter::default();
    let step = exec.threads().max(1) * 4;
    let mut cursor = Some(Cursor::default());
    while let Some(at) = cursor {
        let chunk = ex.expand_tasks(exec, at, None, Some(step));
        cursor = chunk.next;
        stats.raw += chunk.results.len();
        let canon = par_map(exec, &chunk.results, |r: &ExpansionResult| canonical_design(&r.design));
        let fresh: Vec<(&ExpansionResult, u128)> = chunk
            .results
            .iter()
            .zip(canon)
            .filter(|(_, c)| stats.keys.insert(c.canonical_matrix.clone()))
            .map(|(r, c)| (r, c.aut_order))
            .collect();
        stats.designs += fresh.len();
        let analyzed = par_map(exec, &fresh, |(r, _)| -> anyhow::Result<_> {
            let code = code_from_design(&r.design)?;
            let report = classify(&code, &tern48_core::exec::Sequential)?;
            let canon = if report.d == 12 {
                Some(code_canon(&code, &tern48_core::exec::Sequential)?)
            } else {
                None
            };
            Ok((code, report, canon))
        });
        for ((_, aut), a) in fresh.iter().zip(analyzed) {
            let (code, report, canon) = a?;
            if let Some(canon) = canon {
                stats.d12_codes += 1;
                stats.betas.insert(report.beta.context("d = 12 code without beta")?);
                *stats.aut_orders.entry(*aut).or_default() += 1;
                classes.add(&code, canon)?;
            }
        }
        stats.inequivalent = classes.classes();
        let task = cursor.map_or(ex.task_count(), |c| c.task);
        log(&format!(
            "{label}: task {task}/{} raw {} designs {} d12 {} beta {} classes {} ({:.0?})",
            ex.task_count(),
            stats.raw,
            stats.designs,
            stats.d12_codes,
            stats.betas.len(),
            stats.inequivalent,
            t0.elapsed()
        ));
    }
    Ok(stats)
}

/// The code and weight report of a design.
pub fn analyze_design<E: Executor>(p: &DesignParams, d: &IncidenceStructure, exec: &E) -> anyhow::Result<(TernaryCode, WeightReport)> {
    let c = design_code(p, d)?;
    let r = classify(&c, exec)?;
    Ok((c, r))
}

/// Parses a whitespace-separated replay vector.
pub fn parse_cells(s: &str) -> anyhow::Result<Vec<usize>> {
    s.split_whitespace()
        .map(|t| t.parse().with_context(|| format!("bad cell index {t:?}")))
        .collect()
}

/// Checks that `om` can be expanded; names the first violated condition.
pub fn check_expandable(om: &OrbitMatrix) -> anyhow::Result<()> {
    if let Some(v) = om.violation() {
        bail!("orbit matrix is invalid: {v}");
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Pool;
    use tern48_core::exec::Sequential;

    #[test]
    fn budget_zero_stops_at_start() {
        let om = appendix_for_expansion(1).unwrap();
        let ex = Expander::new(&om).unwrap();
        let b = expand_within(&ex, &Sequential, Cursor::default(), Some(5), Some(Duration::ZERO));
        assert!(b.out_of_time);
        assert!(b.expansion.results.is_empty());
        assert_eq!(b.expansion.next, Some(Cursor::default()));
    }

    #[test]
    fn par_map_keeps_order() {
        let pool = Pool::new(Some(4)).unwrap();
        let v: Vec<usize> = (0..50).collect();
        assert_eq!(par_map(&pool, &v, |x| x * 2), (0..50).map(|x| x * 2).collect::<Vec<_>>());
    }

    #[test]
    fn cells_parse() {
        assert_eq!(parse_cells(" 0 2\n1 ").unwrap(), vec![0, 2, 1]);
        assert!(parse_cells("0 x").is_err());
    }
}
