//! Published values of `β = A₁₂/8` and design counts for the four appendix
//! orbit matrices.
//!
//! The sets are kept as printed, `a, ..., b` meaning every integer from `a`
//! to `b`. The printed row for OM1 has 164 values while the published count
//! of distinct `A₁₂` for OM1 is 165; [`OM1_ERRATUM`] is the value that
//! closes the gap (it lies in the aggregate set and in the OM1 expansions).

use std::collections::BTreeSet;

const OM1: &str = "320, 323, 324, 326, 338, 340, 341, 346, 348, 349, 350, 352, 353, ..., 357, \
    359, 360, ..., 468, 470, 471, ..., 480, 482, 483, ..., 486, 489, 490, ..., 494, \
    496, 497, ..., 500, 504, 506, 512, 516, 518, 522, 524, 528, 536, 560";

const OM2: &str = "313, 329, 331, 332, 333, 334, 337, 338, 339, 343, 344, ..., 349, 351, 352, ..., 450, \
    452, 453, ..., 459, 461, 462, 464, 466, 467, 468, 470, 472, 474, 476, 478, 479, \
    480, 482, 484, 486, 488, 494, 496, 500, 503, 504, 506, 512, 524, 528, 554, 560";

const OM3: &str = "320, 323, 324, 326, 338, 340, 341, 346, 348, 349, 350, 353, ..., 357, 359, \
    360, ..., 464, 466, 467, 468, 470, 471, ..., 480, 482, 483, ..., 486, 488, 489, ..., 492, \
    494, 496, 497, ..., 500, 504, 506, 512, 516, 522, 524, 528, 536, 560";

const UNION: &str = "313, 320, 323, 324, 326, 329, 331, 332, 333, 334, 337, ..., 341, 343, 344, ..., 468, \
    470, 471, ..., 480, 482, 483, ..., 486, 488, 489, ..., 494, 496, 497, ..., 500, 503, \
    504, 506, 512, 516, 518, 522, 524, 528, 536, 554, 560";

/// Missing from the printed OM1 row; see the module notes.
pub const OM1_ERRATUM: u64 = 488;

/// Expands a printed list with `...` ranges.
pub fn parse_list(s: &str) -> BTreeSet<u64> {
    let toks: Vec<&str> = s.split(',').map(str::trim).filter(|t| !t.is_empty()).collect();
    let mut out = BTreeSet::new();
    for (i, t) in toks.iter().enumerate() {
        if *t == "..." {
            let a: u64 = toks[i - 1].parse().expect("range start");
            let b: u64 = toks[i + 1].parse().expect("range end");
            out.extend(a..=b);
        } else {
            out.insert(t.parse().expect("integer"));
        }
    }
    out
}

/// `Γ_OMi` exactly as printed, `i` in `1..=4`.
pub fn printed(om: usize) -> BTreeSet<u64> {
    match om {
        1 => parse_list(OM1),
        2 | 4 => parse_list(OM2),
        3 => parse_list(OM3),
        _ => panic!("no orbit matrix OM{om}"),
    }
}

/// `Γ_OMi` with [`OM1_ERRATUM`] restored for OM1.
pub fn corrected(om: usize) -> BTreeSet<u64> {
    let mut g = printed(om);
    if om == 1 {
        g.insert(OM1_ERRATUM);
    }
    g
}

/// The aggregate set `Γ` of the closing proposition.
pub fn union() -> BTreeSet<u64> {
    parse_list(UNION)
}

/// Published counts for one orbit matrix.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Table1 {
    pub designs: usize,
    pub d12_codes: usize,
    pub inequivalent: usize,
    pub distinct_a12: usize,
}

pub fn table1(om: usize) -> Table1 {
    let (designs, d12_codes, inequivalent, distinct_a12) = match om {
        1 => (70400, 43338, 1662, 165),
        2 | 4 => (24576, 11884, 1073, 152),
        3 => (63488, 22698, 1200, 161),
        _ => panic!("no orbit matrix OM{om}"),
    };
    Table1 {
        designs,
        d12_codes,
        inequivalent,
        distinct_a12,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_against_table1() {
        assert_eq!(printed(1).len(), 164);
        assert_eq!(corrected(1).len(), table1(1).distinct_a12);
        for om in 2..=4 {
            assert_eq!(printed(om).len(), table1(om).distinct_a12);
        }
    }

    #[test]
    fn union_is_the_aggregate() {
        let all: BTreeSet<u64> = (1..=4).flat_map(corrected).collect();
        assert_eq!(all, union());
        assert_eq!(all.len(), 181);
        assert!(!printed(1).contains(&OM1_ERRATUM));
    }

    #[test]
    fn ranges_are_inclusive() {
        assert_eq!(parse_list("1, 3, ..., 5, 9"), [1, 3, 4, 5, 9].into_iter().collect());
    }
}
