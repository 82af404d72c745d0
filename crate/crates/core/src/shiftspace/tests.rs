use proptest::prelude::*;

use super::samples::*;
use super::*;

fn q(p: &Presentation, n: usize) -> Vec<u128> {
    factor_dfa(p).unwrap().count_words(n).unwrap()
}

#[test]
fn factor_dfa_sizes() {
    let full = factor_dfa(&full_shift(2)).unwrap();
    assert_eq!(full.num_states, 1);
    assert_eq!(full.sink(), None);

    let gm = factor_dfa(&golden_mean()).unwrap();
    assert_eq!(gm.num_states, 3);
    assert_eq!(gm.live_states().iter().filter(|&&l| l).count(), 2);
    assert!(!gm.accepts(&[0, 1, 1, 0]));
    assert!(gm.accepts(&[1, 0, 1]));
}

#[test]
fn period2_factors() {
    let d = factor_dfa(&period2()).unwrap();
    for n in 1..=6 {
        let expect: Vec<Word> = {
            let mut v = vec![(0..n).map(|i| i % 2).collect::<Word>(), (0..n).map(|i| (i + 1) % 2).collect()];
            v.sort();
            v
        };
        assert_eq!(d.words_of_length(n), expect);
    }
}

#[test]
fn periodicity() {
    assert_eq!(is_periodic(&period2()).unwrap(), Some(vec![0, 1]));
    assert_eq!(is_periodic(&cycle(4, false)).unwrap(), Some(vec![0, 0, 0, 1]));
    assert_eq!(is_periodic(&full_shift(2)).unwrap(), None);
    assert_eq!(is_periodic(&golden_mean()).unwrap(), None);
    assert_eq!(is_periodic(&even_shift()).unwrap(), None);
    assert_eq!(is_periodic(&full_shift(1)).unwrap(), Some(vec![0]));
}

#[test]
fn golden_mean_counts_are_fibonacci() {
    assert_eq!(&q(&golden_mean(), 4)[1..], &[2, 3, 5, 8]);
}

#[test]
fn higher_block_examples() {
    let hb = higher_block(&full_shift(2), 1).unwrap();
    assert!(factor_dfa(&hb.presentation).unwrap().equivalent(&factor_dfa(&full_shift(2)).unwrap()));

    let hb = higher_block(&period2(), 2).unwrap();
    assert_eq!(hb.presentation.alphabet, vec!["[ab]", "[ba]"]);
    assert_eq!(is_periodic(&hb.presentation).unwrap(), Some(vec![0, 1]));

    let hb = higher_block(&golden_mean(), 2).unwrap();
    assert_eq!(hb.presentation.alphabet, vec!["[aa]", "[ab]", "[ba]"]);
    assert_eq!(q(&hb.presentation, 1)[1], 3);
    assert_eq!(hb.recode(&[0, 1, 0]), Some(vec![1, 2]));
}

#[test]
fn witnesses() {
    assert_eq!(non_minimal_witness(&golden_mean()).unwrap(), (vec![0], vec![1]));
    assert_eq!(non_minimal_witness(&full_shift(2)).unwrap(), (vec![0], vec![1]));
    // the even shift also admits the one-letter pair
    assert_eq!(non_minimal_witness(&even_shift()).unwrap(), (vec![0], vec![1]));
    assert_eq!(non_minimal_witness(&period2()), Err(Error::ShiftIsMinimal(vec![0, 1])));
}

#[test]
fn partial_alphabet_conjugates() {
    let (hb, z) = conjugate_with_partial_alphabet(&golden_mean()).unwrap();
    assert_eq!(hb.n, 1);
    assert_eq!(z, vec![0]);
    assert_eq!(hb.presentation.alphabet, vec!["a", "b"]);

    // a shift whose shortest power-closed word has length 2
    let p = Presentation::from_chars(3, "ab", &[(0, 'a', 1), (1, 'b', 0), (1, 'a', 2), (2, 'b', 0)]).unwrap();
    let (w, v) = non_minimal_witness(&p).unwrap();
    assert_eq!(w.len(), 2);
    assert_eq!(v.len(), 2);
    let (hb, z) = conjugate_with_partial_alphabet(&p).unwrap();
    assert_eq!(hb.n, 2);
    assert_eq!(z.len(), 2);
    let all: Vec<usize> = (0..hb.presentation.alphabet_size()).collect();
    assert!(all.iter().any(|x| !z.contains(x)));
}

#[test]
fn sync_delay_examples() {
    assert!(check_sync_delay(&[0, 1], 2, 6, 2).unwrap());
    assert!(check_sync_delay(&[0], 3, 6, 2).unwrap());
    assert!(check_sync_delay(&[0, 0, 1], 1, 6, 2).unwrap());
    assert_eq!(check_sync_delay(&[0, 0], 1, 3, 2), Err(Error::NotPrimitive(vec![0, 0])));
}

#[test]
fn text_round_trip() {
    let p = golden_mean();
    let back = Presentation::parse(&p.to_text()).unwrap();
    assert_eq!(back, p);
    assert!(Presentation::parse("presentation 2 a\nedge 0 a 5\n").is_err());
    assert!(Presentation::parse("presentation 2 a b\nedge 0 a 1\nedge 1 a 0\n").is_err());
    let reducible = Presentation::parse("presentation 2 a\nedge 0 a 1\nedge 1 a 1\n").unwrap();
    assert_eq!(factor_dfa(&reducible), Err(Error::NotStronglyConnected));
}

fn arb_presentation() -> impl Strategy<Value = Presentation> {
    (1usize..=4, 1usize..=3, 0usize..6, any::<u64>())
        .prop_map(|(n, k, extra, seed)| random_irreducible(n, k, extra, seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn factor_dfa_accepts_exactly_path_labels(p in arb_presentation()) {
        let d = factor_dfa(&p).unwrap();
        for len in 1..=6 {
            prop_assert_eq!(d.words_of_length(len), p.path_labels(len));
        }
    }

    #[test]
    fn language_is_factorial_and_prolongable(p in arb_presentation()) {
        let d = factor_dfa(&p).unwrap();
        for len in 1..=5 {
            for w in d.words_of_length(len) {
                for i in 0..len {
                    for j in i + 1..=len {
                        prop_assert!(d.accepts(&w[i..j]));
                    }
                }
                let right = (0..d.alphabet_size).any(|x| { let mut e = w.clone(); e.push(x); d.accepts(&e) });
                let left = (0..d.alphabet_size).any(|x| { let mut e = vec![x]; e.extend(&w); d.accepts(&e) });
                prop_assert!(right && left);
            }
        }
    }

    #[test]
    fn higher_block_shifts_complexity(p in arb_presentation(), n in 1usize..=3) {
        let hb = higher_block(&p, n).unwrap();
        let qx = q(&p, 8 + n);
        let qy = q(&hb.presentation, 8);
        for m in 1..=8 {
            prop_assert_eq!(qy[m], qx[m + n - 1]);
        }
    }

    #[test]
    fn periodic_complexity_is_constant(p in arb_presentation()) {
        let d = factor_dfa(&p).unwrap();
        let counts = d.count_words(3 * d.num_states + 2).unwrap();
        match is_periodic(&p).unwrap() {
            Some(u) => {
                for c in &counts[d.num_states.max(1)..] {
                    prop_assert_eq!(*c, u.len() as u128);
                }
            }
            None => {
                let (w, v) = non_minimal_witness(&p).unwrap();
                prop_assert!(d.accepts_all_powers(&w));
                prop_assert!(d.accepts(&v));
                prop_assert_eq!(v.len(), w.len());
                prop_assert!(!is_rotation(&v, &w));
            }
        }
    }
}
