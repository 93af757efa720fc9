use proptest::prelude::*;
use tern48_core::code::{golay12, tetracode, Monomial, TernaryCode};
use tern48_core::design::{fano_plane, paley_type1_design, IncidenceStructure};
use tern48_core::equivalence::{canonical_design, equivalence_classes, monomially_equivalent};
use tern48_core::exec::Sequential;
use tern48_core::gf3::{Trit, TritMatrix};
use tern48_core::perm::Permutation;

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::new(v).unwrap())
}

fn monomial(n: usize) -> impl Strategy<Value = Monomial> {
    (perm(n), prop::collection::vec(1u8..3, n))
        .prop_map(|(p, s)| Monomial::new(p, s.into_iter().map(Trit::new).collect()).unwrap())
}

fn triple_tetracode() -> TernaryCode {
    let t = tetracode().generator().to_rows();
    let mut rows = Vec::new();
    for block in 0..3 {
        for r in &t {
            let mut row = vec![0u8; 12];
            row[4 * block..4 * block + 4].copy_from_slice(r);
            rows.push(row);
        }
    }
    TernaryCode::from_generator(&TritMatrix::from_rows(&rows).unwrap())
}

/// Point permutations of the Fano plane carrying its block set to itself.
fn fano_automorphisms_by_brute_force() -> usize {
    let f = fano_plane();
    let mut blocks: Vec<Vec<usize>> = (0..7).map(|i| f.block_points(i)).collect();
    blocks.sort();
    let mut p: Vec<usize> = (0..7).collect();
    let mut count = 0;
    loop {
        let mut image: Vec<Vec<usize>> = blocks
            .iter()
            .map(|b| {
                let mut m: Vec<usize> = b.iter().map(|&x| p[x]).collect();
                m.sort();
                m
            })
            .collect();
        image.sort();
        if image == blocks {
            count += 1;
        }
        // next permutation in lexicographic order
        let Some(i) = (0..6).rev().find(|&i| p[i] < p[i + 1]) else {
            return count;
        };
        let j = (i + 1..7).rev().find(|&j| p[j] > p[i]).unwrap();
        p.swap(i, j);
        p[i + 1..].reverse();
    }
}

#[test]
fn fano_group_matches_brute_force() {
    assert_eq!(fano_automorphisms_by_brute_force(), 168);
    assert_eq!(canonical_design(&fano_plane()).aut_order, 168);
}

#[test]
fn paley_11_group_order() {
    // PSL(2, 11)
    assert_eq!(canonical_design(&paley_type1_design(11).unwrap()).aut_order, 660);
}

fn relabeling_invariance(d: &IncidenceStructure, p: &Permutation, b: &Permutation) -> Result<(), TestCaseError> {
    let base = canonical_design(d);
    let moved = d.relabel(p, b);
    let c = canonical_design(&moved);
    prop_assert_eq!(&c.canonical_matrix, &base.canonical_matrix);
    prop_assert_eq!(c.aut_order, base.aut_order);
    prop_assert_eq!(moved.relabel(&c.point_perm, &c.block_perm), c.canonical_matrix.clone());
    prop_assert_eq!(c.key(), base.key());
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn fano_canonical_form_ignores_labels(p in perm(7), b in perm(7)) {
        relabeling_invariance(&fano_plane(), &p, &b)?;
    }

    #[test]
    fn paley_canonical_form_ignores_labels(p in perm(11), b in perm(11)) {
        relabeling_invariance(&paley_type1_design(11).unwrap(), &p, &b)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn equivalence_is_an_equivalence_relation(m1 in monomial(12), m2 in monomial(12), golay in any::<bool>()) {
        let a = if golay { golay12() } else { triple_tetracode() };
        let b = a.image(&m1);
        let c = b.image(&m2);
        let refl = monomially_equivalent(&a, &a, &Sequential).unwrap().expect("reflexive");
        prop_assert!(refl.maps_code(&a, &a));
        let ab = monomially_equivalent(&a, &b, &Sequential).unwrap().expect("planted");
        prop_assert!(ab.maps_code(&a, &b));
        let ba = monomially_equivalent(&b, &a, &Sequential).unwrap().expect("symmetric");
        prop_assert!(ba.maps_code(&b, &a));
        let bc = monomially_equivalent(&b, &c, &Sequential).unwrap().expect("planted");
        prop_assert!(bc.compose(&ab).maps_code(&a, &c));
        let ac = monomially_equivalent(&a, &c, &Sequential).unwrap().expect("transitive");
        prop_assert!(ac.maps_code(&a, &c));
        let other = if golay { triple_tetracode() } else { golay12() };
        prop_assert!(monomially_equivalent(&a, &other.image(&m1), &Sequential).unwrap().is_none());
    }
}

#[test]
fn classes_follow_first_appearance() {
    let g = golay12();
    let t = triple_tetracode();
    let m = Monomial::new(Permutation::new((0..12).map(|i| (i + 5) % 12).collect()).unwrap(), vec![Trit::TWO; 12]).unwrap();
    let codes = vec![t.clone(), g.clone(), g.image(&m), t.image(&m), g];
    assert_eq!(equivalence_classes(&codes, &Sequential).unwrap(), vec![0, 1, 1, 0, 1]);
}
