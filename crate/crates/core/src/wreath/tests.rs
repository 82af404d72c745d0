use proptest::prelude::*;

use super::*;
use crate::error::Error;
use crate::finsemi::{Closure, FiniteSemigroup, PartialTransformation};
use crate::shiftspace::samples::*;
use crate::syntactic::{aggm_forward, is_aggm, syntactic_semigroup};

/// Semigroup generated by row-monomial matrices over `group`.
fn matrix_semigroup(gens: &[RowMonomialMatrix], group: &FiniteSemigroup) -> FiniteSemigroup {
    let c = Closure::generate(gens, |a, b| a.mul(b, group), 10_000).unwrap();
    FiniteSemigroup::from_closure(&c)
}

/// Period-two shift with a sign twist on one letter: the 0-minimal class has
/// maximal subgroups of order 2.
fn twisted_period2() -> FiniteSemigroup {
    let z2 = FiniteSemigroup::cyclic_group(2);
    let a = RowMonomialMatrix::from_rows([Some((1, 1)), None]);
    let b = RowMonomialMatrix::from_rows([None, Some((0, 0))]);
    matrix_semigroup(&[a, b], &z2)
}

#[test]
fn rees_coordinates_of_period2() {
    let d = syntactic_semigroup(&period2()).unwrap();
    let s = &d.semigroup;
    let green = s.green_structure();
    let j = is_aggm(s).unwrap().distinguished.unwrap();
    let rees = rees_coordinates(s, &green, j).unwrap();
    assert_eq!(rees.group.size(), 1);
    assert_eq!((rees.r_classes.len(), rees.l_classes.len()), (2, 2));
    for &m in green.j_members(j) {
        let c = rees.coordinatize(m).unwrap();
        assert_eq!(rees.decoordinatize(s, c), m);
    }
    // exactly one non-zero off-diagonal pattern per row
    for row in &rees.sandwich {
        assert_eq!(row.iter().filter(|c| c.is_some()).count(), 1);
    }
}

#[test]
fn twisted_semigroup_has_normalised_sandwich() {
    let s = twisted_period2();
    assert_eq!(s.size(), 9);
    let green = s.green_structure();
    let e = s.idempotents().into_iter().find(|&x| Some(x) != s.zero()).unwrap();
    let rees = rees_coordinates_at(&s, &green, e).unwrap();
    assert_eq!(rees.group.size(), 2);
    assert_eq!(rees.x[0], e);
    assert_eq!(rees.y[0], e);
    assert!(rees.sandwich[0].iter().flatten().all(|&g| g == 0));

    let emb = wreath_embed(&s, &green, e).unwrap();
    assert_eq!(emb.dim(), 2);
    assert_eq!(emb.lookup.len(), s.size());
    assert!(emb.matrices[s.zero().unwrap()].is_zero());
}

#[test]
fn schutzenberger_representations() {
    let s = twisted_period2();
    let green = s.green_structure();
    let j = green.j_class[s.idempotents().into_iter().find(|&x| Some(x) != s.zero()).unwrap()];
    let rm = rm_representation(&s, &green, j).unwrap();
    assert_eq!(rm.points.len(), 4);
    assert_eq!(rm.image.size(), s.size());
    let rlm = rlm_representation(&s, &green, j).unwrap();
    assert_eq!(rlm.points.len(), 2);
    // the sign is forgotten on L-classes
    assert_eq!(rlm.image.size(), 5);
    assert!(rlm.actions.iter().all(|a| a.rank() <= 1));
}

#[test]
fn wreath_products_of_transitive_rank_one_semigroups() {
    let z2 = FiniteSemigroup::cyclic_group(2);
    let constants = [PartialTransformation::total(&[0, 0]), PartialTransformation::total(&[1, 1])];
    let simple = wreath_product_0simple_check(&z2, &constants).unwrap();
    assert!(simple.simple);
    assert_eq!(simple.size, 8);
    assert_eq!(simple.subgroup_size, 2);

    let units = [
        PartialTransformation::new([None, Some(0)]),
        PartialTransformation::new([Some(1), None]),
    ];
    let brandt = wreath_product_0simple_check(&z2, &units).unwrap();
    assert!(!brandt.simple);
    assert_eq!(brandt.size, 9);

    let z3 = FiniteSemigroup::cyclic_group(3);
    let three = [PartialTransformation::total(&[1, 2, 0])];
    assert!(matches!(wreath_product_0simple_check(&z3, &three), Err(Error::RankTooHigh(_))));

    let stuck = [PartialTransformation::new([Some(0), None])];
    assert_eq!(wreath_product_0simple_check(&z2, &stuck), Err(Error::NotTransitive(0, 1)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(25))]

    #[test]
    fn aggm_semigroups_embed_in_wreath_products(n in 1usize..=4, k in 1usize..=2, extra in 0usize..5, seed: u64) {
        let (d, report) = aggm_forward(&random_irreducible(n, k, extra, seed)).unwrap();
        if let Some(j) = report.distinguished {
            let s = &d.semigroup;
            let green = s.green_structure();
            let rees = rees_coordinates(s, &green, j).unwrap();
            prop_assert_eq!(rees.group.size(), 1);
            let emb = wreath_embed(s, &green, rees.e).unwrap();
            for (t, m) in emb.matrices.iter().enumerate() {
                prop_assert_eq!(emb.lookup[m], t);
                prop_assert!(m.projection().rank() <= 1 || green.j_class[t] != j);
            }
        }
    }
}

/// Golden-mean matrices over `Z₂` with a sign on `a`, plus a zero letter.
fn twisted_golden_mean(group: &FiniteSemigroup) -> CoverBase {
    let a = RowMonomialMatrix::from_rows([Some((0, 1)), Some((0, 0))]);
    let b = RowMonomialMatrix::from_rows([Some((1, 0)), None]);
    let c = Closure::generate(&[a, b, RowMonomialMatrix::zero(2)], |x, y| x.mul(y, group), 1000).unwrap();
    let s = FiniteSemigroup::from_closure(&c);
    let letters: Vec<usize> = c.gen_index.iter().map(|&g| g as usize).collect();
    let e = s.omega_power(letters[0]);
    CoverBase { s, letters, alphabet: vec!["a".into(), "b".into(), "0".into()], e, z: vec![0] }
}

fn klein_four() -> FiniteSemigroup {
    let table = (0..4).flat_map(|a| (0..4).map(move |b| a ^ b)).collect();
    FiniteSemigroup::from_table(4, table, vec![1, 2], 0).unwrap()
}

#[test]
fn golden_mean_cover_with_trivial_groups() {
    let base = cover_base_for_shift(&golden_mean(), 1000).unwrap();
    assert_eq!(base.alphabet, vec!["a", "b", "0"]);
    assert_eq!(base.k_size(), 1);
    let plan = plan_cover(base.with_group(FiniteSemigroup::cyclic_group(1), vec![0])).unwrap();
    assert_eq!((plan.b, plan.ell, plan.m, plan.p), (2, 1, 1, 2));
    let res = plan.build(DEFAULT_COVER_CAP, 1).unwrap();
    assert_eq!(res.report.subgroup_size, 1);
    assert!(res.report.preimage_checks > 0);
    assert_eq!(res.report.preimage_mismatch, None);
}

#[test]
fn golden_mean_cover_with_kernel_of_order_two() {
    let base = cover_base_for_shift(&golden_mean(), 1000).unwrap();
    let plan = plan_cover(base.with_group(FiniteSemigroup::cyclic_group(2), vec![0, 0])).unwrap();
    assert_eq!((plan.b, plan.ell, plan.p), (2, 4, 5));
    let res = plan.build(DEFAULT_COVER_CAP, 2).unwrap();
    assert_eq!(res.report.subgroup_size, 2);
    // a then b: both rows of every block entry carry the same kernel element
    let gap = res.report.preimage_mismatch.clone().unwrap();
    assert_eq!((gap.word, gap.found, gap.expected), (vec![0, 1], 2, 4));
    let text = res.to_text();
    assert!(text.starts_with("cover b 2 ell 4 m 1 p 5"));
    assert!(text.contains("generator b\nblock 0 0\n"));
}

#[test]
fn twisted_cover_recovers_k() {
    let z2 = FiniteSemigroup::cyclic_group(2);
    let base = twisted_golden_mean(&z2);
    assert_eq!(base.k_size(), 2);
    let plan = plan_cover(base.with_group(z2, vec![0, 1])).unwrap();
    assert_eq!((plan.ell, plan.m, plan.p), (1, 2, 3));
    let res = plan.build(DEFAULT_COVER_CAP, 3).unwrap();
    assert_eq!(res.report.subgroup_size, 2);
}

#[test]
fn twisted_cover_with_larger_groups() {
    let z2 = FiniteSemigroup::cyclic_group(2);
    for (h, alpha) in [(FiniteSemigroup::cyclic_group(4), vec![0, 1, 0, 1]), (klein_four(), vec![0, 1, 0, 1])] {
        let plan = plan_cover(twisted_golden_mean(&z2).with_group(h, alpha)).unwrap();
        assert_eq!((plan.ell, plan.p), (4, 5));
        let res = plan.build(DEFAULT_COVER_CAP, 4).unwrap();
        assert_eq!(res.report.subgroup_size, 4);
    }
}

#[test]
fn cover_hypotheses_are_checked() {
    let base = cover_base_for_shift(&golden_mean(), 1000).unwrap();
    let mut bad = base.clone().with_group(FiniteSemigroup::cyclic_group(2), vec![0, 0]);
    bad.z = vec![1];
    assert!(matches!(plan_cover(bad), Err(Error::HypothesisViolated(_))));
    let mut bad = base.clone().with_group(FiniteSemigroup::cyclic_group(2), vec![0, 0]);
    bad.letters.swap(1, 2);
    assert!(matches!(plan_cover(bad), Err(Error::HypothesisViolated(_))));
    let twisted = twisted_golden_mean(&FiniteSemigroup::cyclic_group(2));
    let not_onto = twisted.with_group(FiniteSemigroup::cyclic_group(1), vec![0]);
    assert!(matches!(plan_cover(not_onto), Err(Error::HypothesisViolated(_))));
    let small_cap = plan_cover(base.with_group(FiniteSemigroup::cyclic_group(2), vec![0, 0])).unwrap();
    assert!(matches!(small_cap.build(10, 0), Err(Error::CapExceeded { .. })));
}
