use proptest::prelude::*;
use tern48_core::gf3::{naive, TritMatrix};

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Vec<Vec<u8>>> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(0u8..3, c), r)
    })
}

fn packed(m: &[Vec<u8>]) -> TritMatrix {
    TritMatrix::from_rows(m).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn packed_kernels_match_reference(a in matrix(64, 64), c in 0u8..3) {
        let p = packed(&a);
        prop_assert_eq!(p.to_rows(), a.clone());
        let (r, pivots) = naive::rref(&a);
        let pr = p.rref();
        prop_assert_eq!(pr.matrix.to_rows(), r);
        prop_assert_eq!(&pr.pivots, &pivots);
        prop_assert_eq!(pr.rank, pivots.len());
        prop_assert!(pr.pivots.windows(2).all(|w| w[0] < w[1]));
        prop_assert_eq!(p.transpose().to_rows(), naive::transpose(&a));
        prop_assert_eq!(p.transpose().transpose(), p.clone());

        // word-parallel row update against per-entry arithmetic
        if a.len() >= 2 {
            let mut q = p.clone();
            q.add_row_multiple(0, 1, tern48_core::gf3::Trit::new(c));
            prop_assert_eq!(q.to_rows()[0].clone(), naive::add_rows(&a[0], &a[1], c));
        }
    }

    #[test]
    fn product_matches_reference(a in matrix(32, 40), seed in proptest::collection::vec(0u8..3, 40 * 32)) {
        let cols = 1 + seed[0] as usize * 7 % 32;
        let b: Vec<Vec<u8>> = (0..a[0].len()).map(|i| (0..cols).map(|j| seed[(i * cols + j) % seed.len()]).collect()).collect();
        prop_assert_eq!(packed(&a).mul(&packed(&b)).unwrap().to_rows(), naive::mul(&a, &b));
        let bt = naive::transpose(&b);
        prop_assert_eq!(packed(&a).mul_transpose(&packed(&bt)).unwrap().to_rows(), naive::mul(&a, &b));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn multiplication_is_associative(n in 1usize..=8, m in 1usize..=8, vals in proptest::collection::vec(0u8..3, 3 * 64)) {
        let mk = |off: usize, r: usize, c: usize| -> TritMatrix {
            TritMatrix::from_fn(r, c, |i, j| tern48_core::gf3::Trit::new(vals[off + i * c + j]))
        };
        let a = mk(0, n, m);
        let b = mk(64, m, n);
        let c = mk(128, n, m);
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn rank_of_transpose(a in matrix(12, 12)) {
        let p = packed(&a);
        prop_assert_eq!(p.rank(), p.transpose().rank());
    }

    #[test]
    fn kernel_is_annihilated(a in matrix(10, 14)) {
        let p = packed(&a);
        let k = p.kernel_basis();
        prop_assert_eq!(k.rows(), p.cols() - p.rank());
        prop_assert_eq!(k.rank(), k.rows());
        prop_assert!(p.mul(&k.transpose()).unwrap().is_zero());
        // every vector of the row space is orthogonal to every kernel vector
        let span = p.rref().basis();
        for v in span.row_vectors() {
            for w in k.row_vectors() {
                prop_assert!(v.dot(&w).is_zero());
            }
        }
    }
}
