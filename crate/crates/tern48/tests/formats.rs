use proptest::prelude::*;
use tern48::format::*;
use tern48_core::code::TernaryCode;
use tern48_core::design::{DesignParams, IncidenceStructure};
use tern48_core::gf3::TritMatrix;
use tern48_core::orbit_matrix::OrbitMatrix;
use tern48_core::weight::{Classification, WeightReport};

const PARAMS: [(usize, usize, usize); 5] = [(3, 1, 0), (7, 3, 1), (11, 5, 2), (15, 7, 3), (47, 23, 11)];

fn orbit_matrix() -> impl Strategy<Value = OrbitMatrix> {
    (0..PARAMS.len(), 1usize..7, 1usize..6, 1usize..6).prop_flat_map(|(p, n, t, u)| {
        let (v, k, l) = PARAMS[p];
        (
            prop::collection::vec(1usize..7, t),
            prop::collection::vec(1usize..7, u),
            prop::collection::vec(prop::collection::vec(0usize..50, u), t),
        )
            .prop_map(move |(b, q, s)| OrbitMatrix::new(n, DesignParams::new(v, k, l).unwrap(), b, q, s).unwrap())
    })
}

fn design() -> impl Strategy<Value = (DesignParams, IncidenceStructure)> {
    (0..PARAMS.len()).prop_flat_map(|p| {
        let (v, k, l) = PARAMS[p];
        prop::collection::vec(prop::collection::vec(0u8..2, v), v)
            .prop_map(move |rows| (DesignParams::new(v, k, l).unwrap(), IncidenceStructure::from_rows(&rows).unwrap()))
    })
}

fn code() -> impl Strategy<Value = TernaryCode> {
    (1usize..50, 1usize..12).prop_flat_map(|(n, k)| {
        prop::collection::vec(prop::collection::vec(0u8..3, n), k.min(n))
            .prop_map(|rows| TernaryCode::from_generator(&TritMatrix::from_rows(&rows).unwrap()))
    })
}

fn report() -> impl Strategy<Value = WeightReport> {
    (
        1usize..100,
        0usize..50,
        0usize..30,
        prop::collection::btree_map(0usize..40, any::<u64>(), 0..20),
        0usize..3,
        prop::option::of(any::<u64>()),
    )
        .prop_map(|(n, k, d, counts, c, beta)| WeightReport {
            n,
            k,
            d,
            counts,
            classification: [Classification::Extremal, Classification::NearExtremal, Classification::Neither][c],
            beta,
        })
}

proptest! {
    #[test]
    fn orbit_matrices_round_trip(om in orbit_matrix()) {
        let text = write_orbit_matrix(&om);
        prop_assert_eq!(parse_orbit_matrix(&text).unwrap(), om);
    }

    #[test]
    fn designs_round_trip((p, d) in design()) {
        let text = write_design(&p, &d);
        prop_assert_eq!(text.lines().count(), p.v + 1);
        prop_assert_eq!(parse_design(&text).unwrap(), (p, d));
    }

    #[test]
    fn codes_round_trip(c in code()) {
        prop_assume!(c.dimension() > 0);
        let text = write_code(&c);
        let back = parse_code(&text).unwrap();
        prop_assert_eq!(write_code(&back), text);
        prop_assert_eq!(back, c);
    }

    #[test]
    fn reports_round_trip(r in report()) {
        prop_assert_eq!(parse_report(&write_report(&r)).unwrap(), r.clone());
        prop_assert_eq!(report_from_json(&report_to_json(&r)).unwrap(), r);
    }
}

#[test]
fn report_json_has_the_documented_keys() {
    let r = WeightReport {
        n: 4,
        k: 2,
        d: 3,
        counts: [(0, 1), (1, 0), (2, 0), (3, 8)].into_iter().collect(),
        classification: Classification::Neither,
        beta: None,
    };
    let v: serde_json::Value = serde_json::from_str(&report_to_json(&r)).unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys.len(), 6);
    for k in ["n", "k", "d", "classification", "counts", "beta"] {
        assert!(v.get(k).is_some(), "{k}");
    }
    assert_eq!(v["counts"]["3"], 8);
    assert!(v["beta"].is_null());
}
