//! Randomized invariants over generated partitions and matrices.

use cousin_core::dyck::{
    bullet_cover_feasible, degree_patterns, enumerate_patterns, pattern_weight, BulletFilter,
    PatternFilter,
};
use cousin_core::linalg::{SparseIntMatrix, CROSS_CHECK_PRIMES};
use cousin_core::young::{GrassContext, Partition};
use proptest::prelude::*;

/// Weakly decreasing parts inside a 4 x 6 box.
fn arb_partition() -> impl Strategy<Value = Partition> {
    proptest::collection::vec(0usize..=6, 0..=4).prop_map(|mut parts| {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts).unwrap()
    })
}

fn arb_sign_matrix() -> impl Strategy<Value = SparseIntMatrix> {
    (1usize..=7, 1usize..=7).prop_flat_map(|(rows, cols)| {
        proptest::collection::vec(-1i64..=1, rows * cols).prop_map(move |vals| {
            let mut m = SparseIntMatrix::new(rows, cols);
            for (i, v) in vals.into_iter().enumerate() {
                m.push(i / cols, i % cols, v);
            }
            m
        })
    })
}

proptest! {
    #[test]
    fn complement_and_conjugate_are_involutions(a in arb_partition()) {
        let ctx = GrassContext::new(4, 10).unwrap();
        prop_assert_eq!(&a.complement(&ctx).unwrap().complement(&ctx).unwrap(), &a);
        prop_assert_eq!(&a.conjugate().conjugate(), &a);
        prop_assert_eq!(a.conjugate().size(), a.size());
    }

    #[test]
    fn enumerated_patterns_are_valid_and_unique(a in arb_partition()) {
        let pats = enumerate_patterns(&a, &PatternFilter {
            min_path_len: 3,
            bullets: BulletFilter::Any,
            path_count: None,
        });
        let mut seen = std::collections::BTreeSet::new();
        for pat in &pats {
            prop_assert!(pat.is_admissible());
            prop_assert!(bullet_cover_feasible(pat));
            prop_assert!(pat.paths().iter().all(|p| p.len() >= 3 && p.len() % 2 == 1));
            prop_assert!(seen.insert(pat.clone()));
        }
    }

    #[test]
    fn degree_sets_partition_by_path_count(a in arb_partition()) {
        let ctx = GrassContext::new(4, 10).unwrap();
        let d = ctx.dim() as i64;
        for q in 0..=ctx.dim() {
            for pat in degree_patterns(&ctx, &a, q).unwrap() {
                // weight is determined by degree and path count
                let w = pattern_weight(&ctx, &pat);
                prop_assert_eq!(w, d + q as i64 + pat.path_count() as i64);
                // twist integrality
                let quotient = pat.quotient().unwrap();
                prop_assert_eq!((quotient.size() as i64 - w).rem_euclid(2), 0);
            }
        }
    }

    #[test]
    fn fraction_free_rank_agrees_with_modular(m in arb_sign_matrix()) {
        let r = m.rank();
        for p in CROSS_CHECK_PRIMES {
            prop_assert_eq!(m.rank_mod(p), r);
        }
        prop_assert!(r <= m.rows().min(m.cols()));
    }
}
