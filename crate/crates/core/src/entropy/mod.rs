//! Complexity functions and entropy of sofic shifts, in bits.

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use crate::error::{Error, Result};
use crate::shiftspace::{factor_dfa, Dfa, Presentation};

/// Largest supported `n_max`.
pub const MAX_N: usize = 64;
const MAX_ITERATIONS: usize = 200_000;

/// `q(n)` for `n = 1..=n_max` with the derived entropy figures.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexityProfile {
    /// `counts[n - 1] = q(n)`.
    pub counts: Vec<u128>,
    /// `min (1/n) log₂ q(n)` over the computed range.
    pub entropy_upper: f64,
    pub perron_estimate: f64,
}

impl ComplexityProfile {
    pub fn q(&self, n: usize) -> u128 {
        self.counts[n - 1]
    }

    /// Rows `n, q(n), (1/n) log₂ q(n)` followed by the Perron estimate.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("n\tq(n)\tlog2(q(n))/n\n");
        for (i, &q) in self.counts.iter().enumerate() {
            let n = i + 1;
            out.push_str(&format!("{n}\t{q}\t{:.6}\n", (q as f64).log2() / n as f64));
        }
        out.push_str(&format!("h\t-\t{:.6}\n", self.perron_estimate));
        out
    }
}

/// Perron value with a certified bracket, plus the counting estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct EntropyEstimate {
    pub value: f64,
    pub lower: f64,
    pub upper: f64,
    /// `(1/P) log₂(q(N)/q(N−P))` at `N = n_max`, `P` the period of the
    /// automaton's cyclic part.
    pub counting: f64,
    /// `min (1/n) log₂ q(n)`.
    pub counting_upper: f64,
}

fn live_adjacency(dfa: &Dfa) -> (Vec<usize>, Vec<Vec<u32>>) {
    let live = dfa.live_states();
    let states: Vec<usize> = (0..dfa.num_states).filter(|&q| live[q]).collect();
    let pos = |q: usize| states.iter().position(|&s| s == q);
    let mut a = vec![vec![0u32; states.len()]; states.len()];
    for (i, &q) in states.iter().enumerate() {
        for x in 0..dfa.alphabet_size {
            if let Some(j) = pos(dfa.step(q, x)) {
                a[i][j] += 1;
            }
        }
    }
    (states, a)
}

fn components(a: &[Vec<u32>]) -> Vec<Vec<usize>> {
    let mut g = DiGraph::<(), ()>::new();
    let nodes: Vec<_> = (0..a.len()).map(|_| g.add_node(())).collect();
    for (i, row) in a.iter().enumerate() {
        for (j, &c) in row.iter().enumerate() {
            if c > 0 {
                g.add_edge(nodes[i], nodes[j], ());
            }
        }
    }
    tarjan_scc(&g)
        .into_iter()
        .map(|c| c.into_iter().map(|n| n.index()).collect::<Vec<_>>())
        .filter(|c| c.iter().any(|&i| c.iter().any(|&j| a[i][j] > 0)))
        .collect()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// Period of a strongly connected block, from BFS levels.
fn period(a: &[Vec<u32>], comp: &[usize]) -> usize {
    let mut level = vec![usize::MAX; a.len()];
    level[comp[0]] = 0;
    let mut queue = std::collections::VecDeque::from([comp[0]]);
    let mut g = 0;
    while let Some(i) = queue.pop_front() {
        for &j in comp {
            if a[i][j] > 0 {
                if level[j] == usize::MAX {
                    level[j] = level[i] + 1;
                    queue.push_back(j);
                } else {
                    g = gcd(g, (level[i] + 1).abs_diff(level[j]));
                }
            }
        }
    }
    g.max(1)
}

/// Collatz–Wielandt bracket for the spectral radius of an irreducible
/// non-negative block, by power iteration on `A + I`.
fn spectral_bracket(a: &[Vec<u32>], comp: &[usize], tol: f64) -> (f64, f64, bool) {
    let n = comp.len();
    let mut x = vec![1.0f64; n];
    let (mut lo, mut hi) = (0.0, f64::INFINITY);
    for _ in 0..MAX_ITERATIONS {
        let y: Vec<f64> =
            (0..n).map(|r| x[r] + (0..n).map(|c| a[comp[r]][comp[c]] as f64 * x[c]).sum::<f64>()).collect();
        let ratios = (0..n).map(|r| y[r] / x[r]);
        lo = ratios.clone().fold(f64::INFINITY, f64::min) - 1.0;
        hi = ratios.fold(0.0, f64::max) - 1.0;
        if lo > 0.0 && hi.log2() - lo.log2() <= tol {
            return (lo, hi, true);
        }
        let norm = y.iter().cloned().fold(0.0, f64::max);
        x = y.into_iter().map(|v| v / norm).collect();
    }
    (lo.max(0.0), hi, false)
}

fn perron(dfa: &Dfa, tol: f64) -> Result<(f64, f64, usize)> {
    let (_, a) = live_adjacency(dfa);
    let comps = components(&a);
    let (mut lower, mut upper) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    let mut p = 1;
    for comp in &comps {
        let (lo, hi, ok) = spectral_bracket(&a, comp, tol);
        if !ok {
            return Err(Error::ToleranceNotReached { lower: lo.log2(), upper: hi.log2() });
        }
        lower = lower.max(lo.log2());
        upper = upper.max(hi.log2());
        let d = period(&a, comp);
        p = p / gcd(p, d) * d;
    }
    if comps.is_empty() {
        return Err(Error::NotASubshift("the language is finite".into()));
    }
    Ok((lower, upper, p))
}

pub fn complexity(p: &Presentation, n_max: usize) -> Result<ComplexityProfile> {
    complexity_with_tol(p, n_max, 1e-9)
}

pub fn complexity_with_tol(p: &Presentation, n_max: usize, tol: f64) -> Result<ComplexityProfile> {
    if n_max == 0 || n_max > MAX_N {
        return Err(Error::CheckFailed(format!("n_max must lie in 1..={MAX_N}")));
    }
    let dfa = factor_dfa(p)?;
    let counts = dfa.count_words(n_max)?[1..].to_vec();
    let entropy_upper = counts
        .iter()
        .enumerate()
        .map(|(i, &q)| (q as f64).log2() / (i + 1) as f64)
        .fold(f64::INFINITY, f64::min);
    let (lo, hi, _) = perron(&dfa, tol)?;
    let profile = ComplexityProfile { counts, entropy_upper, perron_estimate: (lo + hi) / 2.0 };
    for n in 1..=n_max {
        for m in 1..=n_max - n {
            if profile.q(n + m) > profile.q(n).saturating_mul(profile.q(m)) {
                return Err(Error::CheckFailed(format!("q is not submultiplicative at ({n}, {m})")));
            }
        }
    }
    if profile.entropy_upper < lo - tol {
        return Err(Error::CheckFailed("a counting upper bound lies below the Perron bracket".into()));
    }
    Ok(profile)
}

pub fn entropy_estimate(p: &Presentation, n_max: usize, tol: f64) -> Result<EntropyEstimate> {
    let dfa = factor_dfa(p)?;
    let (lower, upper, period) = perron(&dfa, tol)?;
    let n_max = n_max.clamp(1, MAX_N);
    let counts = dfa.count_words(n_max)?;
    let counting_upper =
        (1..=n_max).map(|n| (counts[n] as f64).log2() / n as f64).fold(f64::INFINITY, f64::min);
    let counting = if period < n_max {
        ((counts[n_max] as f64).log2() - (counts[n_max - period] as f64).log2()) / period as f64
    } else {
        counting_upper
    };
    Ok(EntropyEstimate { value: (lower + upper) / 2.0, lower, upper, counting, counting_upper })
}

/// Factor automaton of `sub` over the alphabet of `p`, matching letters by name.
fn factor_dfa_over(sub: &Presentation, p: &Presentation) -> Result<Dfa> {
    sub.require_irreducible()?;
    let edges = sub
        .edges
        .iter()
        .map(|&(s, x, t)| {
            p.letter(&sub.alphabet[x])
                .map(|y| (s, y, t))
                .ok_or_else(|| Error::NotASubshift(format!("letter {} is not in the larger alphabet", sub.alphabet[x])))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Dfa::determinize(sub.num_states, p.alphabet_size(), &edges, (0..sub.num_states).collect(), |s| !s.is_empty())
        .minimize())
}

/// For a proper subshift `sub` of `p`: whether `h(sub) < h(p)`, decided by
/// separating the two Perron brackets.
pub fn entropy_gap_check(p: &Presentation, sub: &Presentation, tol: f64) -> Result<bool> {
    let big = factor_dfa(p)?;
    let small = factor_dfa_over(sub, p)?;
    if let Some(w) = small.difference_witness(&big) {
        return Err(Error::NotASubshift(format!("{} is not in the larger language", p.format_word(&w))));
    }
    if big.difference_witness(&small).is_none() {
        return Err(Error::NotASubshift("the languages are equal".into()));
    }
    let (_, sub_hi, _) = perron(&small, tol)?;
    let (p_lo, _, _) = perron(&big, tol)?;
    Ok(sub_hi < p_lo)
}

/// The entropy of a finite word is 0.
pub fn word_entropy(_w: &[usize]) -> f64 {
    0.0
}

#[cfg(test)]
mod tests;
