use proptest::prelude::*;
use tern48_core::code::{golay12, is_self_dual, tetracode, TernaryCode};
use tern48_core::exec::Sequential;
use tern48_core::gf3::{naive, TritMatrix};
use tern48_core::weight::{classify, count_weight, min_weight, support_degrees, Classification, Enumerator};

fn code(max_n: usize, max_k: usize) -> impl Strategy<Value = TernaryCode> {
    (2..=max_n, 1..=max_k).prop_flat_map(|(n, k)| {
        prop::collection::vec(prop::collection::vec(0u8..3, n), k)
            .prop_map(|rows| TernaryCode::from_generator(&TritMatrix::from_rows(&rows).unwrap()))
    })
}

/// Direct sum of codes given by generator rows.
fn direct_sum(parts: &[TernaryCode]) -> TernaryCode {
    let n: usize = parts.iter().map(|c| c.length()).sum();
    let mut rows = Vec::new();
    let mut at = 0;
    for c in parts {
        for r in c.generator().to_rows() {
            let mut row = vec![0u8; n];
            row[at..at + r.len()].copy_from_slice(&r);
            rows.push(row);
        }
        at += c.length();
    }
    TernaryCode::from_generator(&TritMatrix::from_rows(&rows).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn enumerator_matches_brute_force(c in code(20, 8)) {
        prop_assume!(c.dimension() > 0);
        let n = c.length();
        let brute = naive::weight_distribution(&c.generator().to_rows());
        let en = Enumerator::new(&c).unwrap();
        prop_assert_eq!(en.distribution(n, &Sequential).unwrap(), brute[..=n].to_vec());
        let d = (1..=n).find(|&w| brute[w] > 0).unwrap();
        prop_assert_eq!(en.min_weight(&Sequential).unwrap(), d);
        prop_assert_eq!(min_weight(&c, &Sequential).unwrap(), d);
        let words = en.words_of_weight(d, &Sequential).unwrap();
        prop_assert_eq!(2 * words.len() as u64, brute[d]);
        prop_assert!(words.iter().all(|w| w.weight() == d && c.contains(w)));
        prop_assert_eq!(count_weight(&c, d, &Sequential).unwrap(), brute[d]);
    }
}

#[test]
fn self_orthogonal_weights_are_multiples_of_three() {
    let c = direct_sum(&[tetracode(), golay12(), tetracode()]);
    assert!(is_self_dual(&c));
    let dist = naive::weight_distribution(&c.generator().to_rows());
    for (w, &a) in dist.iter().enumerate() {
        assert!(w % 3 == 0 || a == 0, "A{w} = {a}");
    }
    let en = Enumerator::new(&c).unwrap();
    assert_eq!(en.distribution(c.length(), &Sequential).unwrap(), dist);
}

#[test]
fn golay_report_and_design_supports() {
    let g = golay12();
    let r = classify(&g, &Sequential).unwrap();
    assert_eq!((r.n, r.k, r.d), (12, 6, 6));
    assert_eq!(r.count(6), Some(264));
    assert_eq!(r.classification, Classification::Extremal);
    let words = Enumerator::new(&g).unwrap().words_of_weight(6, &Sequential).unwrap();
    let (uniform, degrees) = support_degrees(12, &words);
    assert!(uniform);
    assert_eq!(degrees, vec![66; 12]);
}
