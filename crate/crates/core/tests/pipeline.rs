use sofic::entropy::{complexity, entropy_estimate};
use sofic::idempotent::{evaluate_zimin, loop_language};
use sofic::shiftspace::samples::*;
use sofic::shiftspace::{conjugate_with_partial_alphabet, factor_dfa, higher_block};
use sofic::syntactic::{aggm_backward, aggm_forward, fischer_cover, syntactic_semigroup};
use sofic::wreath::{cover_base_for_shift, plan_cover, rees_coordinates, wreath_embed, DEFAULT_COVER_CAP};
use sofic::finsemi::FiniteSemigroup;

#[test]
fn shift_to_semigroup_and_back() {
    for p in [golden_mean(), even_shift(), period2(), random_irreducible(3, 2, 4, 5)] {
        let (d, report) = aggm_forward(&p).unwrap();
        let rec = aggm_backward(&d.semigroup, d.alphabet.clone()).unwrap();
        assert!(rec.language.equivalent(&factor_dfa(&p).unwrap()));
        assert_eq!(report.class_members.len(), rec.report.class_members.len());
        let fischer = fischer_cover(&d).unwrap();
        assert!(factor_dfa(&fischer).unwrap().equivalent(&d.dfa));
    }
}

#[test]
fn conjugacy_preserves_entropy_and_semigroup_size_bounds() {
    let p = even_shift();
    let (hb, z) = conjugate_with_partial_alphabet(&p).unwrap();
    assert!(!z.is_empty());
    let h = entropy_estimate(&p, 64, 1e-9).unwrap().value;
    let hb_h = entropy_estimate(&hb.presentation, 64, 1e-9).unwrap().value;
    assert!((h - hb_h).abs() < 1e-9);
    let three = higher_block(&p, 3).unwrap();
    let q = complexity(&p, 10).unwrap();
    let q3 = complexity(&three.presentation, 8).unwrap();
    assert_eq!(q3.q(8), q.q(10));
}

#[test]
fn distinguished_class_embeds_and_hosts_the_idempotent() {
    let p = golden_mean();
    let d = syntactic_semigroup(&p).unwrap();
    let s = &d.semigroup;
    let green = s.green_structure();
    let (_, report) = aggm_forward(&p).unwrap();
    let j = report.distinguished.unwrap();
    let rees = rees_coordinates(s, &green, j).unwrap();
    let emb = wreath_embed(s, &green, rees.e).unwrap();
    for v in 0..p.num_states {
        let res = evaluate_zimin(&loop_language(&p, v).unwrap(), s, &d.letter_map).unwrap();
        assert_eq!(green.j_class[res.rho], j);
        assert_eq!(emb.matrices[res.rho].projection().rank(), 1);
    }
}

#[test]
fn shift_to_cover() {
    let base = cover_base_for_shift(&even_shift(), 1000).unwrap();
    let k = base.k_size();
    let alpha = (0..2 * k).map(|h| h % k).collect();
    let h = FiniteSemigroup::cyclic_group(2 * k);
    let res = plan_cover(base.with_group(h, alpha)).unwrap().build(DEFAULT_COVER_CAP, 9).unwrap();
    assert_eq!(res.report.subgroup_size, 2 * k);
    assert!(res.to_text().starts_with("cover b "));
}
