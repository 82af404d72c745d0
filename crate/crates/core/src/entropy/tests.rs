use std::collections::HashSet;

use proptest::prelude::*;

use super::*;
use crate::shiftspace::samples::*;

const GOLDEN: f64 = 0.694_241_913_630_617_3;

fn brute_counts(p: &Presentation, n_max: usize) -> Vec<u128> {
    (1..=n_max).map(|n| p.path_labels(n).into_iter().collect::<HashSet<_>>().len() as u128).collect()
}

#[test]
fn golden_mean_counts_are_fibonacci() {
    let prof = complexity(&golden_mean(), 20).unwrap();
    let mut fib = vec![2u128, 3];
    while fib.len() < 20 {
        fib.push(fib[fib.len() - 1] + fib[fib.len() - 2]);
    }
    assert_eq!(prof.counts, fib);
    assert!((prof.perron_estimate - GOLDEN).abs() < 1e-9);
    assert!(prof.entropy_upper >= GOLDEN);
    let tsv = prof.to_tsv();
    assert!(tsv.contains("\n3\t5\t"));
    assert!(tsv.ends_with("h\t-\t0.694242\n"));
}

#[test]
fn golden_mean_entropy_by_counting() {
    let est = entropy_estimate(&golden_mean(), 64, 1e-9).unwrap();
    assert!((est.counting - GOLDEN).abs() < 1e-4);
    assert!(est.lower <= GOLDEN && GOLDEN <= est.upper);
    assert!(est.counting_upper > GOLDEN);
}

#[test]
fn full_shifts() {
    let two = entropy_estimate(&full_shift(2), 30, 1e-12).unwrap();
    assert_eq!(two.value, 1.0);
    assert_eq!(two.counting, 1.0);
    let three = entropy_estimate(&full_shift(3), 30, 1e-12).unwrap();
    assert!((three.value - 3f64.log2()).abs() < 1e-12);
    assert!((three.counting - 3f64.log2()).abs() < 1e-9);
}

#[test]
fn periodic_shifts_have_zero_entropy() {
    for (k, distinct) in [(1, true), (2, true), (5, false), (4, true)] {
        let est = entropy_estimate(&cycle(k, distinct), 40, 1e-9).unwrap();
        assert_eq!(est.value, 0.0);
        assert_eq!(est.counting, 0.0);
        let prof = complexity(&cycle(k, distinct), 40).unwrap();
        assert!(prof.counts.iter().all(|&q| q <= k as u128));
    }
}

#[test]
fn even_shift_matches_golden_mean() {
    let even = entropy_estimate(&even_shift(), 64, 1e-9).unwrap();
    assert!((even.value - GOLDEN).abs() < 1e-9);
    assert!((even.counting - GOLDEN).abs() < 1e-4);
}

#[test]
fn gap_between_nested_shifts() {
    assert!(entropy_gap_check(&full_shift(2), &golden_mean(), 1e-9).unwrap());
    assert!(entropy_gap_check(&full_shift(2), &even_shift(), 1e-9).unwrap());
    assert!(entropy_gap_check(&golden_mean(), &period2(), 1e-9).unwrap());
    assert!(entropy_gap_check(&full_shift(3), &full_shift(2), 1e-9).unwrap());
}

#[test]
fn gap_check_rejects_non_subshifts() {
    let same = entropy_gap_check(&golden_mean(), &golden_mean(), 1e-9);
    assert!(matches!(same, Err(Error::NotASubshift(m)) if m.contains("equal")));
    let wider = entropy_gap_check(&golden_mean(), &full_shift(2), 1e-9);
    assert!(matches!(wider, Err(Error::NotASubshift(m)) if m.contains("bb")));
    let foreign = entropy_gap_check(&golden_mean(), &full_shift(3), 1e-9);
    assert!(matches!(foreign, Err(Error::NotASubshift(_))));
}

#[test]
fn bad_ranges_and_words() {
    assert!(complexity(&golden_mean(), 0).is_err());
    assert!(complexity(&golden_mean(), MAX_N + 1).is_err());
    assert_eq!(word_entropy(&[0, 1, 1]), 0.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn counts_match_path_enumeration(n in 1usize..=4, k in 1usize..=3, extra in 0usize..6, seed: u64) {
        let p = random_irreducible(n, k, extra, seed);
        let prof = complexity(&p, 8).unwrap();
        prop_assert_eq!(&prof.counts, &brute_counts(&p, 8));
    }

    #[test]
    fn perron_value_lies_below_counting_bounds(n in 1usize..=5, k in 1usize..=3, extra in 0usize..8, seed: u64) {
        let p = random_irreducible(n, k, extra, seed);
        let est = entropy_estimate(&p, 40, 1e-9).unwrap();
        prop_assert!(est.lower <= est.upper + 1e-12);
        prop_assert!(est.value <= est.counting_upper + 1e-9);
        prop_assert!(est.value >= 0.0 && est.value <= (k as f64).log2() + 1e-9);
    }
}
