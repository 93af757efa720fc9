use tern48_core::design::{validate_symmetric_design, DesignParams, IncidenceStructure};
use tern48_core::exec::{Executor, Sequential};
use tern48_core::indexer::{collapse, isomorph_reject, Cursor, Expander, ExpansionResult};
use tern48_core::orbit_matrix::{generate_orbit_matrices, OrbitMatrix};
use tern48_core::perm::Permutation;

/// Runs tasks last to first and reduces as a balanced tree with the
/// operands swapped, so any dependence on scheduling shows up.
struct Scrambled;

impl Executor for Scrambled {
    fn map_reduce<R, M, F>(&self, n: usize, identity: R, map: M, reduce: F) -> R
    where
        R: Send,
        M: Fn(usize) -> R + Sync,
        F: Fn(R, R) -> R + Sync,
    {
        let mut level: Vec<R> = (0..n).rev().map(&map).collect();
        while level.len() > 1 {
            let mut next = Vec::new();
            let mut it = level.into_iter();
            while let Some(a) = it.next() {
                next.push(match it.next() {
                    Some(b) => reduce(b, a),
                    None => a,
                });
            }
            level = next;
        }
        match level.pop() {
            Some(r) => reduce(r, identity),
            None => identity,
        }
    }

    fn threads(&self) -> usize {
        3
    }
}

fn small_matrices() -> Vec<OrbitMatrix> {
    let p = DesignParams::new(11, 5, 2).unwrap();
    generate_orbit_matrices(p, 5, &[1, 5, 5], &[1, 5, 5]).unwrap()
}

fn check_result(om: &OrbitMatrix, ex: &Expander, r: &ExpansionResult) {
    assert!(validate_symmetric_design(&r.design, &om.params).unwrap());
    assert!(r.action.fixes(&r.design));
    assert_eq!(collapse(&r.design, &om.block_orbit_sizes, &om.point_orbit_sizes), om.s);
    assert_eq!(&ex.replay(&r.choice_vector()).unwrap(), r);
}

#[test]
fn om1_head_designs_realize_the_matrix() {
    let om = OrbitMatrix::appendix(1).unwrap().dual().unwrap();
    let ex = Expander::with_label(&om, "OM1").unwrap();
    let head = ex.expand(&Sequential, Cursor::default(), Some(3));
    assert_eq!(head.results.len(), 3);
    for r in &head.results {
        assert_eq!(r.source, "OM1");
        check_result(&om, &ex, r);
    }
}

#[test]
fn small_streams_are_sound_and_schedule_free() {
    let all = small_matrices();
    assert!(!all.is_empty());
    let mut total = 0;
    for om in &all {
        let ex = Expander::new(om).unwrap();
        let seq = ex.expand(&Sequential, Cursor::default(), None);
        assert_eq!(seq.next, None);
        let scr = ex.expand(&Scrambled, Cursor::default(), None);
        assert_eq!(scr.results, seq.results);
        let mut streamed = Vec::new();
        ex.for_each(&mut |r| {
            streamed.push(r);
            true
        });
        assert_eq!(streamed, seq.results);
        for r in &seq.results {
            check_result(om, &ex, r);
        }
        total += seq.results.len();
    }
    assert!(total > 0);
}

#[test]
fn limit_and_cursor_partition_the_stream() {
    for om in small_matrices() {
        let ex = Expander::new(&om).unwrap();
        let whole = ex.expand(&Sequential, Cursor::default(), None).results;
        for step in 1..=3 {
            let mut got = Vec::new();
            let mut at = Some(Cursor::default());
            while let Some(c) = at {
                let part = ex.expand(&Scrambled, c, Some(step));
                assert!(part.results.len() <= step);
                assert!(part.next.is_none() || part.results.len() == step);
                got.extend(part.results);
                at = part.next;
            }
            assert_eq!(got, whole);
        }
    }
}

#[test]
fn replay_rejects_foreign_vectors() {
    let om = &small_matrices()[0];
    let ex = Expander::new(om).unwrap();
    let r = ex.expand(&Sequential, Cursor::default(), Some(1)).results.remove(0);
    let mut cells = r.choice_vector();
    assert!(ex.replay(&cells[1..]).is_err());
    cells.push(0);
    assert!(ex.replay(&cells).is_err());
}

fn shifted(n: usize, by: usize) -> Permutation {
    Permutation::new((0..n).map(|i| (i * 3 + by) % n).collect()).unwrap()
}

#[test]
fn isomorph_rejection_ignores_relabeled_copies() {
    for om in small_matrices() {
        let ex = Expander::new(&om).unwrap();
        let results = ex.expand(&Sequential, Cursor::default(), None).results;
        let kept = isomorph_reject(results.clone());
        assert!(!kept.is_empty() && kept.len() <= results.len());
        assert_eq!(kept[0], results[0]);
        let copies: Vec<ExpansionResult> = results
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let v = r.design.points();
                let design: IncidenceStructure = r.design.relabel(&shifted(v, i + 1), &shifted(v, 2 * i + 5));
                ExpansionResult { design, ..r.clone() }
            })
            .collect();
        let mixed = isomorph_reject(results.into_iter().chain(copies));
        assert_eq!(mixed, kept);
    }
}
