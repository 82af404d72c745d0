//! A computable idempotent in the minimal ideal of the closure of a rational
//! subsemigroup `T ⊆ X⁺`, evaluated in finite semigroups.

use std::collections::VecDeque;
use std::rc::Rc;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::finsemi::FiniteSemigroup;
use crate::shiftspace::{Dfa, Presentation};
use crate::Word;

/// Labels of closed paths at one vertex of a presentation.
#[derive(Debug, Clone)]
pub struct LoopLanguage {
    pub dfa: Dfa,
    pub vertex: usize,
    /// Live states of the minimal automaton.
    pub m: usize,
}

/// Number of live states of a minimal automaton.
pub fn live_state_count(dfa: &Dfa) -> usize {
    dfa.live_states().iter().filter(|&&l| l).count()
}

pub fn loop_language(p: &Presentation, v: usize) -> Result<LoopLanguage> {
    p.require_irreducible()?;
    if v >= p.num_states {
        return Err(Error::InvalidState(v));
    }
    let dfa = p.subset_dfa(vec![v], |set| set.contains(&v)).minimize();
    let m = live_state_count(&dfa);
    Ok(LoopLanguage { dfa, vertex: v, m })
}

/// Words of a language in shortlex order.
#[derive(Debug, Clone)]
pub struct ShortlexStream<'a> {
    dfa: &'a Dfa,
    len: usize,
    last_found: usize,
    buffer: VecDeque<Word>,
}

impl Iterator for ShortlexStream<'_> {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        while self.buffer.is_empty() {
            // no word in num_states consecutive lengths means none beyond
            if self.len > self.last_found + self.dfa.num_states {
                return None;
            }
            self.len += 1;
            self.buffer.extend(self.dfa.words_of_length(self.len));
            if !self.buffer.is_empty() {
                self.last_found = self.len;
            }
        }
        self.buffer.pop_front()
    }
}

pub fn shortlex_stream(dfa: &Dfa) -> ShortlexStream<'_> {
    ShortlexStream { dfa, len: 0, last_found: 0, buffer: VecDeque::new() }
}

/// `s^{n!}`, via the index and period of `s`.
pub fn power_factorial(s: &FiniteSemigroup, x: usize, n: u64) -> usize {
    let (i, q) = s.index_period(x);
    let (i, q) = (i as u64, q as u64);
    let small = (2..=n).try_fold(1u64, |acc, k| acc.checked_mul(k)).filter(|&f| f < i);
    if let Some(f) = small {
        return s.power(x, f);
    }
    let fact_mod = (2..=n).fold(1 % q, |acc, k| acc * (k % q) % q);
    s.power(x, i + (fact_mod + q - i % q) % q)
}

/// The term `w_n`: `w_1 = v_1`, `w_{n+1} = (w_n v_{n+1} w_n)^{(n+1)!}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZiminTerm {
    Leaf(Word),
    Power { prev: Rc<ZiminTerm>, v: Word, n: u64 },
}

impl ZiminTerm {
    pub fn depth(&self) -> u64 {
        match self {
            ZiminTerm::Leaf(_) => 1,
            ZiminTerm::Power { n, .. } => *n,
        }
    }

    /// Length of the denoted word, without expanding it.
    pub fn len(&self) -> BigUint {
        match self {
            ZiminTerm::Leaf(w) => BigUint::from(w.len()),
            ZiminTerm::Power { prev, v, n } => {
                let fact: BigUint = (1..=*n).map(BigUint::from).product();
                (prev.len() * 2u32 + BigUint::from(v.len())) * fact
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, ZiminTerm::Leaf(w) if w.is_empty())
    }

    /// One line per level, e.g. `w2 = (w1 ab w1)^2!`.
    pub fn pretty(&self, letters: &[String]) -> String {
        let word = |w: &[usize]| w.iter().map(|&x| letters[x].as_str()).collect::<Vec<_>>().join("");
        let mut lines = Vec::new();
        let mut cur = self;
        loop {
            match cur {
                ZiminTerm::Leaf(w) => {
                    lines.push(format!("w1 = {}", word(w)));
                    break;
                }
                ZiminTerm::Power { prev, v, n } => {
                    lines.push(format!("w{n} = (w{m} {} w{m})^{n}!", word(v), m = n - 1));
                    cur = prev;
                }
            }
        }
        lines.reverse();
        lines.join("\n")
    }
}

/// Outcome of the Zimin iteration in a finite semigroup.
#[derive(Debug, Clone)]
pub struct ZiminResult {
    pub rho: usize,
    pub n_star: u64,
    /// `N = |X| + … + |X|^r` with `r = m(|S|+1) − 1`.
    pub bound: BigUint,
    pub r: usize,
    /// `φ(w_n)` for `n = 1..=n*`.
    pub chain: Vec<usize>,
    pub term: ZiminTerm,
    /// `φ(T)`, sorted.
    pub image: Vec<usize>,
}

/// Elements of `φ(L)` with the length of a shortest word of `L` reaching each,
/// by breadth-first search over `(state, element of S¹)`.
pub fn rational_image(dfa: &Dfa, s: &FiniteSemigroup, gens: &[usize]) -> Vec<(usize, usize)> {
    let n = s.size();
    // element index n stands for the adjoined identity
    let idx = |q: usize, x: usize| q * (n + 1) + x;
    let mut dist = vec![usize::MAX; dfa.num_states * (n + 1)];
    let mut queue = VecDeque::new();
    dist[idx(dfa.initial, n)] = 0;
    queue.push_back((dfa.initial, n));
    let mut best = vec![usize::MAX; n];
    while let Some((q, x)) = queue.pop_front() {
        let d = dist[idx(q, x)];
        for (a, &g) in gens.iter().enumerate() {
            let (q2, x2) = (dfa.step(q, a), if x == n { g } else { s.mul(x, g) });
            if dist[idx(q2, x2)] == usize::MAX {
                dist[idx(q2, x2)] = d + 1;
                queue.push_back((q2, x2));
                if dfa.accepting[q2] && best[x2] == usize::MAX {
                    best[x2] = d + 1;
                }
            }
        }
    }
    (0..n).filter(|&x| best[x] != usize::MAX).map(|x| (x, best[x])).collect()
}

/// Every element of `φ(L)` is reached by a word of `L` of length at most
/// `m(|S|+1) − 1`, `m` the live-state count of the minimal automaton of `L`.
pub fn rational_bound_check(dfa: &Dfa, s: &FiniteSemigroup, gens: &[usize]) -> bool {
    let bound = live_state_count(&dfa.minimize()) * (s.size() + 1) - 1;
    rational_image(dfa, s, gens).iter().all(|&(_, d)| d <= bound)
}

/// Minimal ideal of the subsemigroup `sub` (sorted, closed) of `s`.
pub fn minimal_ideal_of(s: &FiniteSemigroup, sub: &[usize]) -> Vec<usize> {
    let t = s.restrict(sub);
    let green = t.green_structure();
    let bottom = green.minimal_j_classes();
    debug_assert_eq!(bottom.len(), 1);
    let mut out: Vec<usize> = green.j_members(bottom[0]).iter().map(|&i| sub[i]).collect();
    out.sort_unstable();
    out
}

fn eval(s: &FiniteSemigroup, gens: &[usize], w: &[usize]) -> usize {
    w[1..].iter().fold(gens[w[0]], |a, &x| s.mul(a, gens[x]))
}

/// Evaluates `φ(w_n)` for `n = 1, 2, …` and stops at the first `n ≥ |S|`
/// where the value is an idempotent of the minimal ideal of `φ(T)`.
pub fn evaluate_zimin(t: &LoopLanguage, s: &FiniteSemigroup, gens: &[usize]) -> Result<ZiminResult> {
    evaluate_zimin_dfa(&t.dfa, s, gens)
}

/// As [`evaluate_zimin`] for any automaton of a subsemigroup of `X⁺`.
pub fn evaluate_zimin_dfa(dfa: &Dfa, s: &FiniteSemigroup, gens: &[usize]) -> Result<ZiminResult> {
    if gens.len() != dfa.alphabet_size {
        return Err(Error::DimensionMismatch { expected: dfa.alphabet_size, found: gens.len() });
    }
    let k = s.size();
    let m = live_state_count(&dfa.minimize());
    let r = m * (k + 1) - 1;
    let bound: BigUint = (1..=r).map(|i| BigUint::from(gens.len()).pow(i as u32)).sum();
    let mut image: Vec<usize> = rational_image(dfa, s, gens).into_iter().map(|(x, _)| x).collect();
    image.sort_unstable();
    if image.is_empty() {
        return Err(Error::CheckFailed("T is empty".into()));
    }
    let bottom = minimal_ideal_of(s, &image);

    let mut stream = shortlex_stream(dfa);
    let v1 = stream.next().unwrap();
    let mut value = eval(s, gens, &v1);
    let mut term = ZiminTerm::Leaf(v1);
    let mut chain = vec![value];
    let mut n: u64 = 1;
    loop {
        if n >= k as u64 && s.is_idempotent(value) && bottom.binary_search(&value).is_ok() {
            break;
        }
        if BigUint::from(n) > bound {
            return Err(Error::CheckFailed(format!("no certificate by n = {n} > N")));
        }
        let v = stream.next().ok_or_else(|| Error::CheckFailed("T is finite".into()))?;
        let inner = s.product(&[value, eval(s, gens, &v), value]);
        n += 1;
        value = power_factorial(s, inner, n);
        term = ZiminTerm::Power { prev: Rc::new(term), v, n };
        chain.push(value);
    }
    Ok(ZiminResult { rho: value, n_star: n, bound, r, chain, term, image })
}
