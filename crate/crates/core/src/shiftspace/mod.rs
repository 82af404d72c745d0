//! Sofic shifts given by labelled graphs: factor automata, periodicity,
//! higher-block recoding and witnesses of non-minimality.

pub mod dfa;
pub mod presentation;

pub use dfa::Dfa;
pub use presentation::Presentation;

use indexmap::IndexSet;

use crate::error::{Error, Result};
use crate::Word;

/// Minimal complete automaton of the non-empty factors of the presented shift.
pub fn factor_dfa(p: &Presentation) -> Result<Dfa> {
    p.require_irreducible()?;
    Ok(p.subset_dfa((0..p.num_states).collect(), |s| !s.is_empty()).minimize())
}

pub fn is_primitive(w: &[usize]) -> bool {
    let n = w.len();
    n > 0 && (1..n).filter(|d| n.is_multiple_of(*d)).all(|d| (d..n).any(|i| w[i] != w[i - d]))
}

/// `v` is a cyclic rotation of `w`.
pub fn is_rotation(v: &[usize], w: &[usize]) -> bool {
    v.len() == w.len() && (0..w.len().max(1)).any(|r| (0..w.len()).all(|i| v[i] == w[(i + r) % w.len()]))
}

/// `v` occurs in the bi-infinite word `…www…`.
pub fn occurs_in_periodic(v: &[usize], w: &[usize]) -> bool {
    (0..w.len()).any(|r| v.iter().enumerate().all(|(i, &x)| x == w[(r + i) % w.len()]))
}

/// Lexicographically least rotation.
pub fn least_rotation(w: &[usize]) -> Word {
    (0..w.len())
        .map(|r| w[r..].iter().chain(&w[..r]).copied().collect::<Word>())
        .min()
        .unwrap_or_default()
}

/// Period word of the shift when it is a single periodic orbit.
///
/// The shift is periodic exactly when `q(n) ≤ n` for some `n`; the number of
/// states of the factor automaton bounds both the first such `n` and the
/// period, so `2·|D|` lengths suffice.
pub fn is_periodic(p: &Presentation) -> Result<Option<Word>> {
    let d = factor_dfa(p)?;
    let n_max = 2 * d.num_states.max(1);
    let q = d.count_words(n_max)?;
    if !(1..=n_max).any(|n| q[n] <= n as u128) {
        return Ok(None);
    }
    let period = q[n_max] as usize;
    let u = d
        .words_of_length(period)
        .into_iter()
        .find(|w| d.accepts_all_powers(w))
        .expect("a periodic shift has a cycle of its period length");
    let u = least_rotation(&u);
    debug_assert!(is_primitive(&u));
    for n in 1..=3 * period {
        let mut expected: Vec<Word> = (0..period)
            .map(|r| (0..n).map(|i| u[(r + i) % period]).collect())
            .collect();
        expected.sort();
        expected.dedup();
        assert_eq!(d.words_of_length(n), expected, "factor set of the periodic orbit");
    }
    Ok(Some(u))
}

/// Presentation of the N-block shift, together with the N-block read by
/// each new letter.
#[derive(Debug, Clone)]
pub struct HigherBlock {
    pub presentation: Presentation,
    pub blocks: Vec<Word>,
    pub n: usize,
}

impl HigherBlock {
    /// Image of a word of length ≥ N under the sliding block code.
    pub fn recode(&self, w: &[usize]) -> Option<Word> {
        if w.len() < self.n {
            return None;
        }
        w.windows(self.n)
            .map(|b| self.blocks.iter().position(|x| x == b))
            .collect()
    }
}

pub fn higher_block(p: &Presentation, n: usize) -> Result<HigherBlock> {
    p.require_irreducible()?;
    assert!(n >= 1, "block length must be positive");
    // states: paths of n−1 edges, identified by (start, edge list)
    let mut paths: IndexSet<(usize, Vec<usize>)> = (0..p.num_states).map(|q| (q, Vec::new())).collect();
    for _ in 1..n {
        let mut next = IndexSet::new();
        for (q, path) in &paths {
            let end = path.last().map_or(*q, |&e| p.edges[e].2);
            for (e, &(s, _, _)) in p.edges.iter().enumerate() {
                if s == end {
                    let mut ext = path.clone();
                    ext.push(e);
                    next.insert((*q, ext));
                }
            }
        }
        paths = next;
    }
    let mut raw_edges = Vec::new();
    for (i, (q, path)) in paths.iter().enumerate() {
        let end = path.last().map_or(*q, |&e| p.edges[e].2);
        for (e, &(s, x, t)) in p.edges.iter().enumerate() {
            if s != end {
                continue;
            }
            let (target, block) = if path.is_empty() {
                ((t, Vec::new()), vec![x])
            } else {
                let mut rest = path[1..].to_vec();
                rest.push(e);
                let mut block: Word = path.iter().map(|&f| p.edges[f].1).collect();
                block.push(x);
                ((p.edges[path[0]].2, rest), block)
            };
            let j = paths.get_index_of(&target).expect("shifted path is a path");
            raw_edges.push((i, block, j));
        }
    }
    let mut blocks: Vec<Word> = raw_edges.iter().map(|(_, b, _)| b.clone()).collect();
    blocks.sort();
    blocks.dedup();
    let alphabet = blocks
        .iter()
        .map(|b| {
            let name: String = b.iter().map(|&x| p.alphabet[x].as_str()).collect();
            if n == 1 {
                name
            } else {
                format!("[{name}]")
            }
        })
        .collect();
    let edges = raw_edges
        .iter()
        .map(|(s, b, t)| (*s, blocks.binary_search(b).unwrap(), *t))
        .collect();
    let presentation = Presentation::new(paths.len(), alphabet, edges)?;
    Ok(HigherBlock { presentation, blocks, n })
}

/// A pair `(w, v)` with `w⁺ ⊆ L`, `|v| = |w|`, `v ∈ L` and `v` not a
/// rotation of `w`. `w` is the shortest (then least) word whose powers all
/// lie in the language, `v` the shortest (then least) factor outside the
/// orbit of `w`, after padding to equal length.
pub fn non_minimal_witness(p: &Presentation) -> Result<(Word, Word)> {
    if let Some(u) = is_periodic(p)? {
        return Err(Error::ShiftIsMinimal(u));
    }
    let d = factor_dfa(p)?;
    let mut w = (1..=d.num_states)
        .find_map(|len| d.words_of_length(len).into_iter().find(|w| d.accepts_all_powers(w)))
        .expect("a cycle through a live state yields a power-closed word");
    let mut v = (1..)
        .find_map(|len| d.words_of_length(len).into_iter().find(|v| !occurs_in_periodic(v, &w)))
        .expect("a non-periodic shift leaves the orbit of w");
    if v.len() > w.len() {
        let k = v.len().div_ceil(w.len());
        w = w.repeat(k);
    }
    while v.len() < w.len() {
        let x = (0..d.alphabet_size)
            .find(|&x| {
                let mut ext = v.clone();
                ext.push(x);
                d.accepts(&ext)
            })
            .expect("factor languages are prolongable");
        v.push(x);
    }
    assert!(d.accepts_all_powers(&w));
    assert!(d.accepts(&v) && v.len() == w.len() && !is_rotation(&v, &w));
    Ok((w, v))
}

/// Recodes the shift by `|w|`-blocks so that a word `z` over a proper
/// subalphabet has all its powers in the language.
pub fn conjugate_with_partial_alphabet(p: &Presentation) -> Result<(HigherBlock, Word)> {
    let (w, v) = non_minimal_witness(p)?;
    let n = w.len();
    let hb = higher_block(p, n)?;
    let z: Word = (0..n)
        .map(|r| {
            let rot: Word = w[r..].iter().chain(&w[..r]).copied().collect();
            hb.blocks.iter().position(|b| *b == rot).expect("rotation of w is an n-block")
        })
        .collect();
    let d = factor_dfa(&hb.presentation)?;
    assert!(d.accepts_all_powers(&z));
    let v_letter = hb.blocks.iter().position(|b| *b == v).expect("v is an n-block");
    assert!(!z.contains(&v_letter));
    Ok((hb, z))
}

/// Brute-force check that `x uᵐ y ∈ u⁺` holds exactly when `x, y ∈ u*`,
/// for all words `x, y` of length at most `bound` over `alphabet_size`
/// letters.
pub fn check_sync_delay(u: &[usize], m: usize, bound: usize, alphabet_size: usize) -> Result<bool> {
    if !is_primitive(u) {
        return Err(Error::NotPrimitive(u.to_vec()));
    }
    assert!(m >= 1);
    let words = all_words(alphabet_size, bound);
    let in_u_star = |x: &[usize]| x.len().is_multiple_of(u.len()) && x.iter().enumerate().all(|(i, &c)| c == u[i % u.len()]);
    let um = u.repeat(m);
    let mut buf = Vec::new();
    for x in &words {
        let x_in = in_u_star(x);
        for y in &words {
            buf.clear();
            buf.extend_from_slice(x);
            buf.extend_from_slice(&um);
            buf.extend_from_slice(y);
            let lhs = !buf.is_empty() && in_u_star(&buf);
            if lhs != (x_in && in_u_star(y)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// All words of length `0..=max_len`, shortlex.
pub fn all_words(alphabet_size: usize, max_len: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    let mut start = 0;
    for _ in 0..max_len {
        let end = out.len();
        for i in start..end {
            for x in 0..alphabet_size {
                let mut w = out[i].clone();
                w.push(x);
                out.push(w);
            }
        }
        start = end;
    }
    out
}

/// Sample presentations used throughout tests and examples.
pub mod samples {
    use super::Presentation;

    pub fn full_shift(k: usize) -> Presentation {
        let alphabet = (0..k).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
        Presentation::new(1, alphabet, (0..k).map(|x| (0, x, 0)).collect()).unwrap()
    }

    pub fn golden_mean() -> Presentation {
        Presentation::from_chars(2, "ab", &[(0, 'a', 0), (0, 'b', 1), (1, 'a', 0)]).unwrap()
    }

    pub fn even_shift() -> Presentation {
        Presentation::from_chars(2, "ab", &[(0, 'a', 0), (0, 'b', 1), (1, 'b', 0)]).unwrap()
    }

    /// The orbit of `(a b … )^∞` with period `k` over `k` letters when
    /// `distinct`, or of `(a^{k-1} b)^∞` over two letters otherwise.
    pub fn cycle(k: usize, distinct: bool) -> Presentation {
        let (alphabet, labels): (Vec<String>, Vec<usize>) = if distinct || k <= 2 {
            let letters = (0..k).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
            (letters, (0..k).collect())
        } else {
            let mut labels = vec![0; k - 1];
            labels.push(1);
            (vec!["a".into(), "b".into()], labels)
        };
        let edges = (0..k).map(|i| (i, labels[i], (i + 1) % k)).collect();
        Presentation::new(k, alphabet, edges).unwrap()
    }

    /// Period-2 orbit of `(ab)^∞`.
    pub fn period2() -> Presentation {
        cycle(2, true)
    }

    /// A strongly connected presentation on `n` states over `k` letters:
    /// a labelled Hamiltonian cycle plus `extra` random edges.
    pub fn random_irreducible(n: usize, k: usize, extra: usize, seed: u64) -> Presentation {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut edges: Vec<(usize, usize, usize)> = (0..n).map(|i| (i, i % k, (i + 1) % n)).collect();
        for _ in 0..extra {
            edges.push((rng.gen_range(0..n), rng.gen_range(0..k), rng.gen_range(0..n)));
        }
        // every letter must label an edge
        for x in 0..k {
            if !edges.iter().any(|e| e.1 == x) {
                edges.push((rng.gen_range(0..n), x, rng.gen_range(0..n)));
            }
        }
        edges.sort_unstable();
        edges.dedup();
        let alphabet = (0..k).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
        Presentation::new(n, alphabet, edges).unwrap()
    }
}

#[cfg(test)]
mod tests;
