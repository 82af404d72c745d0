use std::collections::BTreeSet;

use proptest::prelude::*;

use super::*;

fn pt(images: &[i64]) -> PartialTransformation {
    PartialTransformation::new(images.iter().map(|&x| (x >= 0).then_some(x as usize)))
}

/// Letter actions of the minimal complete automaton of the golden mean
/// factor language (states: start/after-a, after-b, sink).
fn golden_mean_actions() -> Vec<PartialTransformation> {
    vec![pt(&[0, 0, 2]), pt(&[1, 2, 2])]
}

/// Letter actions for the factors of (ab)^∞ (states: start, after-b,
/// after-a, sink).
fn period2_actions() -> Vec<PartialTransformation> {
    vec![pt(&[2, 2, 3, 3]), pt(&[1, 3, 1, 3])]
}

fn full_transformations(n: usize) -> FiniteSemigroup {
    let mut gens = Vec::new();
    let total = n.pow(n as u32);
    for code in 0..total {
        let mut c = code;
        let images: Vec<usize> = (0..n)
            .map(|_| {
                let x = c % n;
                c /= n;
                x
            })
            .collect();
        gens.push(PartialTransformation::total(&images));
    }
    close_generators(&gens, 10_000).unwrap()
}

/// Two-sided ideal S¹sS¹ straight from the table.
fn ideal_oracle(s: &FiniteSemigroup, x: usize) -> BTreeSet<usize> {
    let n = s.size();
    let mut out = BTreeSet::from([x]);
    for a in 0..n {
        out.insert(s.mul(a, x));
        out.insert(s.mul(x, a));
        for b in 0..n {
            out.insert(s.mul(s.mul(a, x), b));
        }
    }
    out
}

fn right_ideal_oracle(s: &FiniteSemigroup, x: usize) -> BTreeSet<usize> {
    let mut out: BTreeSet<usize> = (0..s.size()).map(|a| s.mul(x, a)).collect();
    out.insert(x);
    out
}

fn left_ideal_oracle(s: &FiniteSemigroup, x: usize) -> BTreeSet<usize> {
    let mut out: BTreeSet<usize> = (0..s.size()).map(|a| s.mul(a, x)).collect();
    out.insert(x);
    out
}

#[test]
fn constant_map_closes_to_one_element() {
    let s = close_generators(&[pt(&[1, 1])], 10).unwrap();
    assert_eq!(s.size(), 1);
    assert!(s.is_idempotent(0));
}

#[test]
fn golden_mean_actions_close_to_five() {
    let s = close_generators(&golden_mean_actions(), 100).unwrap();
    assert_eq!(s.size(), 5);
    assert!(s.zero().is_some());
}

#[test]
fn three_cycle_closes_to_cyclic_group() {
    let s = close_generators(&[pt(&[1, 2, 0])], 100).unwrap();
    assert_eq!(s.size(), 3);
    let e = s.group_identity().expect("is a group");
    assert_eq!(s.index_period(s.generators()[0]), (1, 3));
    assert_eq!(s.omega_power(s.generators()[0]), e);
}

#[test]
fn dimension_mismatch_rejected() {
    let err = close_generators(&[pt(&[0, 1]), pt(&[0, 1, 2])], 10).unwrap_err();
    assert_eq!(err, Error::DimensionMismatch { expected: 2, found: 3 });
}

#[test]
fn trivial_semigroup_has_one_regular_class() {
    let s = close_generators(&[pt(&[0])], 10).unwrap();
    let g = s.green_structure();
    assert_eq!(g.num_j_classes(), 1);
    assert!(g.regular[0]);
}

#[test]
fn period2_syntactic_semigroup_green_classes() {
    let s = close_generators(&period2_actions(), 100).unwrap();
    assert_eq!(s.size(), 5);
    let zero = s.zero().unwrap();
    let g = s.green_structure();
    assert_eq!(g.num_j_classes(), 2);
    let top = g.j_class[s.generators()[0]];
    assert_eq!(g.j_members(top).len(), 4);
    assert!(g.regular[top]);
    assert_eq!(g.j_members(g.j_class[zero]), &[zero]);
    assert!(g.j_leq(zero, s.generators()[0]));
    // 2x2 eggbox with trivial H-classes
    assert_eq!(g.r_classes_in(top).len(), 2);
    assert_eq!(g.l_classes_in(top).len(), 2);
    for &x in g.j_members(top) {
        assert_eq!(g.h_members(x), vec![x]);
    }
}

#[test]
fn full_transformation_monoid_on_two_points() {
    let s = full_transformations(2);
    assert_eq!(s.size(), 4);
    let g = s.green_structure();
    assert_eq!(g.num_j_classes(), 2);
    let mut sizes: Vec<usize> = (0..2).map(|j| g.j_members(j).len()).collect();
    sizes.sort();
    assert_eq!(sizes, vec![2, 2]);
    assert!(g.regular.iter().all(|&r| r));
}

#[test]
fn maximal_subgroups() {
    // aperiodic: trivial subgroup
    let s = close_generators(&period2_actions(), 100).unwrap();
    for e in s.idempotents() {
        let (g, emb) = s.maximal_subgroup(e).unwrap();
        assert_eq!(g.size(), 1);
        assert_eq!(emb, vec![e]);
    }
    // cyclic group: the whole group
    let c3 = FiniteSemigroup::cyclic_group(3);
    let (g, _) = c3.maximal_subgroup(0).unwrap();
    assert_eq!(g.size(), 3);
    assert!(g.group_identity().is_some());
    // rank-one idempotents of T3 have trivial subgroups
    let t3 = full_transformations(3);
    assert_eq!(t3.size(), 27);
    let consts: Vec<usize> = (0..27)
        .filter(|&x| {
            let g = t3.green_structure();
            g.j_members(g.j_class[x]).len() == 3 && t3.is_idempotent(x)
        })
        .collect();
    assert_eq!(consts.len(), 3);
    for e in consts {
        assert_eq!(t3.maximal_subgroup(e).unwrap().0.size(), 1);
    }
    assert_eq!(c3.maximal_subgroup(1).unwrap_err(), Error::NotIdempotent(1));
}

#[test]
fn apex_examples() {
    let s = close_generators(&period2_actions(), 100).unwrap();
    let zero = s.zero().unwrap();
    let g = s.green_structure();
    let all = vec![true; s.size()];
    assert_eq!(s.apex(&all).unwrap(), g.j_class[zero]);
    let nonzero: Vec<bool> = (0..s.size()).map(|x| x != zero).collect();
    let apex = s.apex(&nonzero).unwrap();
    assert_eq!(g.j_members(apex).len(), 4);

    let c3 = FiniteSemigroup::cyclic_group(3);
    assert_eq!(c3.apex(&[true, true, true]).unwrap(), 0);
}

#[test]
fn apex_rejects_bad_subsets() {
    let s = close_generators(&period2_actions(), 100).unwrap();
    let zero = s.zero().unwrap();
    let only_zero: Vec<bool> = (0..s.size()).map(|x| x == zero).collect();
    // {0} is factorial only if nothing lies above it
    assert!(matches!(s.apex(&only_zero), Err(Error::NotFactorial { .. })));

    // {1, 0} with 1·anything·0 ... use a two-element left-zero band with a
    // zero: factorial pieces {x, 0}? Instead: semilattice {e, f, 0}
    // with ef = 0; A = {e, f} is factorial but not irreducible.
    let table = vec![0, 2, 2, 2, 1, 2, 2, 2, 2];
    let sl = FiniteSemigroup::from_table(3, table, vec![0, 1, 2], 0).unwrap();
    let a = vec![true, true, false];
    assert!(matches!(sl.apex(&a), Err(Error::NotIrreducible { .. })));
}

fn free_band_2() -> FiniteSemigroup {
    // elements: a, b, ab, ba, aba, bab, determined by first letter, last
    // letter and content
    let key = |x: usize| -> (u8, u8, bool) {
        [(0, 0, false), (1, 1, false), (0, 1, true), (1, 0, true), (0, 0, true), (1, 1, true)][x]
    };
    let idx = |f: u8, l: u8, full: bool| -> usize {
        (0..6).find(|&x| key(x) == (f, l, full)).unwrap()
    };
    let mut table = Vec::new();
    for x in 0..6 {
        for y in 0..6 {
            let (fx, _, cx) = key(x);
            let (fy, ly, cy) = key(y);
            let full = cx || cy || fx != fy;
            table.push(idx(fx, ly, full));
        }
    }
    FiniteSemigroup::from_table(6, table, vec![0, 1], 0).unwrap()
}

#[test]
fn lift_identity_returns_same_class() {
    let s = close_generators(&period2_actions(), 100).unwrap();
    let id = SemigroupMorphism::identity(&s);
    let g = s.green_structure();
    for j in 0..g.num_j_classes() {
        let lifted = lift_jclass(&id, j).unwrap();
        assert_eq!(lifted.class, j);
    }
}

#[test]
fn lift_free_band_to_semilattice() {
    let fb = free_band_2();
    assert_eq!(fb.size(), 6);
    // semilattice {1, 0}: 0 = element 1
    let sl = FiniteSemigroup::from_table(2, vec![0, 1, 1, 1], vec![0, 1], 0).unwrap();
    let phi = SemigroupMorphism::from_generator_images(&fb, &sl, &[0, 1]).unwrap();
    let bottom = sl.green_structure().j_class[1];
    let lifted = lift_jclass(&phi, bottom).unwrap();
    let members: BTreeSet<usize> = lifted.members.iter().copied().collect();
    assert_eq!(members, BTreeSet::from([2, 3, 4, 5]));
}

#[test]
fn lift_rejects_non_surjective() {
    let fb = free_band_2();
    let sl = FiniteSemigroup::from_table(2, vec![0, 1, 1, 1], vec![0, 1], 0).unwrap();
    let phi = SemigroupMorphism::from_generator_images(&fb, &sl, &[0, 0]).unwrap();
    assert_eq!(lift_jclass(&phi, 0).unwrap_err(), Error::NotSurjective(1));
}

#[test]
fn omega_power_examples() {
    let s = close_generators(&period2_actions(), 100).unwrap();
    let a = s.generators()[0];
    assert_eq!(s.omega_power(a), s.zero().unwrap());
    for e in s.idempotents() {
        assert_eq!(s.omega_power(e), e);
    }
    let z4 = FiniteSemigroup::cyclic_group(4);
    assert_eq!(z4.omega_power(1), 0);
}

#[test]
fn text_format_round_trip() {
    let s = close_generators(&golden_mean_actions(), 100).unwrap();
    let parsed = FiniteSemigroup::parse(&s.to_text(), 7).unwrap();
    assert_eq!(parsed, s);
}

#[test]
fn parse_rejects_non_associative() {
    // x·y = y+1 mod 2 on two elements is not associative
    let text = "semigroup 2 2\n1 0\n1 0\ngenerators 0 1\n";
    assert!(matches!(FiniteSemigroup::parse(text, 0), Err(Error::NotAssociative(..))));
}

#[test]
fn sampled_associativity_above_limit() {
    let t4 = full_transformations(4);
    assert_eq!(t4.size(), 256);
    t4.check_associative(11).unwrap();
}

fn arb_semigroup() -> impl Strategy<Value = FiniteSemigroup> {
    (2usize..=4, 1usize..=3)
        .prop_flat_map(|(n, k)| {
            proptest::collection::vec(proptest::collection::vec(-1i64..n as i64, n), k)
        })
        .prop_filter_map("closure too large", |gens| {
            let gens: Vec<PartialTransformation> = gens.iter().map(|g| pt(g)).collect();
            close_generators(&gens, 60).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn green_matches_principal_ideals(s in arb_semigroup()) {
        let g = s.green_structure();
        let ideals: Vec<_> = (0..s.size()).map(|x| ideal_oracle(&s, x)).collect();
        let rights: Vec<_> = (0..s.size()).map(|x| right_ideal_oracle(&s, x)).collect();
        let lefts: Vec<_> = (0..s.size()).map(|x| left_ideal_oracle(&s, x)).collect();
        for x in 0..s.size() {
            for y in 0..s.size() {
                prop_assert_eq!(g.j_class[x] == g.j_class[y], ideals[x] == ideals[y]);
                prop_assert_eq!(g.r_class[x] == g.r_class[y], rights[x] == rights[y]);
                prop_assert_eq!(g.l_class[x] == g.l_class[y], lefts[x] == lefts[y]);
                prop_assert_eq!(
                    g.h_class[x] == g.h_class[y],
                    g.r_class[x] == g.r_class[y] && g.l_class[x] == g.l_class[y]
                );
                prop_assert_eq!(g.j_leq(x, y), ideals[y].contains(&x));
            }
        }
        for j in 0..g.num_j_classes() {
            let has_idem = g.j_members(j).iter().any(|&x| s.is_idempotent(x));
            prop_assert_eq!(g.regular[j], has_idem);
        }
    }

    #[test]
    fn omega_power_is_idempotent_power(s in arb_semigroup()) {
        for x in 0..s.size() {
            let w = s.omega_power(x);
            prop_assert!(s.is_idempotent(w));
            let mut p = x;
            let mut found = p == w;
            for _ in 0..s.size() {
                p = s.mul(p, x);
                found |= p == w;
            }
            prop_assert!(found);
        }
    }

    #[test]
    fn maximal_subgroups_are_groups(s in arb_semigroup()) {
        for e in s.idempotents() {
            let (g, emb) = s.maximal_subgroup(e).unwrap();
            prop_assert_eq!(emb[0], e);
            prop_assert_eq!(g.group_identity(), Some(0));
        }
    }

    #[test]
    fn witnesses_evaluate(s in arb_semigroup()) {
        for x in 0..s.size() {
            prop_assert_eq!(s.eval(s.witness(x)), x);
        }
        s.check_associative(0).unwrap();
    }
}
