//! Library-level invariants: property tests over randomized inputs plus a
//! couple of exhaustive range checks that pair implementations with
//! independent oracles.

use proptest::prelude::*;
use trisum::arith::{
    as_triangular, canonical_tri_index, is_sum_of_three_squares, odd_factorize, triangular,
};
use trisum::reps::{count_three_squares, enum_sq_sq_tri, enum_sq_tri_tri, r0, r1, Parity};
use trisum::{hurwitz_count, r_sum_expected};

#[test]
fn three_square_count_positive_iff_admissible() {
    for n in 0u64..=10_000 {
        assert_eq!(
            count_three_squares(n) > 0,
            is_sum_of_three_squares(n),
            "admissibility mismatch at {n}"
        );
    }
}

#[test]
fn r_sum_matches_parity_split_counts() {
    for m in 0u64..=150 {
        let target = 2 * triangular(m as i64).unwrap();
        assert_eq!(
            r_sum_expected(m).unwrap(),
            r0(target) + r1(target),
            "r-sum mismatch at m = {m}"
        );
    }
}

#[test]
fn hurwitz_rejects_even_and_zero() {
    assert!(hurwitz_count(0).is_err());
    for n in (2u64..=100).step_by(2) {
        assert!(hurwitz_count(n).is_err());
    }
}

proptest! {
    #[test]
    fn triangular_symmetry(i in -3_000_000_000i64..=3_000_000_000) {
        prop_assert_eq!(triangular(i).unwrap(), triangular(-i - 1).unwrap());
    }

    #[test]
    fn triangular_roundtrip_is_canonical(i in -3_000_000_000i64..=3_000_000_000) {
        let t = triangular(i).unwrap();
        prop_assert_eq!(as_triangular(t), Some(canonical_tri_index(i)));
        prop_assert_eq!(canonical_tri_index(i), i.max(-i - 1));
    }

    #[test]
    fn square_shift_identity(i in -2_000_000_000i64..=2_000_000_000) {
        // 8T_i + 1 = (2i+1)²
        let t = triangular(i).unwrap() as u128;
        let odd = (2 * i + 1).unsigned_abs() as u128;
        prop_assert_eq!(8 * t + 1, odd * odd);
    }

    #[test]
    fn enumerators_are_deterministic_valid_and_duplicate_free(n in 0u64..2_000) {
        let a = enum_sq_sq_tri(n, Parity::Any, Parity::Any, None);
        let b = enum_sq_sq_tri(n, Parity::Any, Parity::Any, None);
        prop_assert_eq!(&a, &b);
        let mut seen = std::collections::HashSet::new();
        for t in &a {
            prop_assert!(t.is_valid(), "invalid triple {t:?}");
            prop_assert!(seen.insert((t.x, t.y, t.z)), "duplicate {t:?}");
        }

        let c = enum_sq_tri_tri(n, Parity::Any);
        let mut seen = std::collections::HashSet::new();
        for t in &c {
            prop_assert!(t.is_valid(), "invalid triple {t:?}");
            prop_assert!(seen.insert((t.x, t.y, t.z)), "duplicate {t:?}");
        }
        // parity classes partition the solution set
        let even = enum_sq_tri_tri(n, Parity::Even).len();
        let odd = enum_sq_tri_tri(n, Parity::Odd).len();
        prop_assert_eq!(even + odd, c.len());
        prop_assert_eq!((r0(n) + r1(n)) as usize, c.len());
    }

    #[test]
    fn parity_filters_agree_with_same_parity_split(n in 0u64..1_500) {
        let all = enum_sq_sq_tri(n, Parity::Any, Parity::Any, None).len();
        let same = enum_sq_sq_tri(n, Parity::Any, Parity::Any, Some(true)).len();
        let mixed = enum_sq_sq_tri(n, Parity::Any, Parity::Any, Some(false)).len();
        prop_assert_eq!(same + mixed, all);
    }

    #[test]
    fn odd_factorization_reassembles(half in 0u64..500_000) {
        let n = 2 * half + 1;
        let f = odd_factorize(n).unwrap();
        prop_assert_eq!(f.product(), n);
        let mut last_p = 0;
        for &(p, alpha) in &f.factors3mod4 {
            prop_assert!(p % 4 == 3 && alpha > 0);
            prop_assert!(p > last_p, "factors must ascend");
            last_p = p;
        }
    }
}
