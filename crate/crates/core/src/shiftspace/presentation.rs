use std::fmt::Write as _;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use super::dfa::Dfa;
use crate::error::{Error, Result};

/// A labelled directed graph presenting a sofic shift.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub num_states: usize,
    pub alphabet: Vec<String>,
    /// `(src, label, dst)`
    pub edges: Vec<(usize, usize, usize)>,
    /// The underlying graph is strongly connected.
    pub irreducible: bool,
}

impl Presentation {
    pub fn new(num_states: usize, alphabet: Vec<String>, edges: Vec<(usize, usize, usize)>) -> Result<Self> {
        if num_states == 0 || edges.is_empty() {
            return Err(Error::Parse { line: 0, msg: "presentation needs states and edges".into() });
        }
        let mut used = vec![false; alphabet.len()];
        for &(s, x, t) in &edges {
            if s >= num_states || t >= num_states {
                return Err(Error::InvalidState(s.max(t)));
            }
            if x >= alphabet.len() {
                return Err(Error::Parse { line: 0, msg: format!("label index {x} out of range") });
            }
            used[x] = true;
        }
        if let Some(x) = used.iter().position(|&u| !u) {
            return Err(Error::Parse { line: 0, msg: format!("letter {} labels no edge", alphabet[x]) });
        }
        let mut g: DiGraph<(), ()> = DiGraph::new();
        for _ in 0..num_states {
            g.add_node(());
        }
        for &(s, _, t) in &edges {
            g.add_edge(NodeIndex::new(s), NodeIndex::new(t), ());
        }
        let irreducible = tarjan_scc(&g).len() == 1;
        Ok(Presentation { num_states, alphabet, edges, irreducible })
    }

    /// Builds a presentation from single-character letter names.
    pub fn from_chars(num_states: usize, letters: &str, edges: &[(usize, char, usize)]) -> Result<Self> {
        let alphabet: Vec<String> = letters.chars().map(String::from).collect();
        let edges = edges
            .iter()
            .map(|&(s, c, t)| {
                let x = letters.chars().position(|l| l == c).expect("letter in alphabet");
                (s, x, t)
            })
            .collect();
        Self::new(num_states, alphabet, edges)
    }

    pub fn require_irreducible(&self) -> Result<()> {
        if self.irreducible {
            Ok(())
        } else {
            Err(Error::NotStronglyConnected)
        }
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet.len()
    }

    pub fn letter(&self, name: &str) -> Option<usize> {
        self.alphabet.iter().position(|l| l == name)
    }

    /// Parses whitespace-separated letter names, or a run of single-character
    /// names when the alphabet allows it.
    pub fn parse_word(&self, text: &str) -> Result<Vec<usize>> {
        let bad = |t: &str| Error::Parse { line: 0, msg: format!("unknown letter {t}") };
        if text.contains(char::is_whitespace) || self.alphabet.iter().any(|l| l.chars().count() != 1) {
            text.split_whitespace().map(|t| self.letter(t).ok_or_else(|| bad(t))).collect()
        } else {
            text.chars()
                .map(|c| {
                    let s = c.to_string();
                    self.letter(&s).ok_or_else(|| bad(&s))
                })
                .collect()
        }
    }

    pub fn format_word(&self, word: &[usize]) -> String {
        let sep = if self.alphabet.iter().all(|l| l.chars().count() == 1) { "" } else { " " };
        word.iter().map(|&x| self.alphabet[x].as_str()).collect::<Vec<_>>().join(sep)
    }

    /// Labels of all paths with exactly `len` edges, deduplicated and sorted.
    pub fn path_labels(&self, len: usize) -> Vec<Vec<usize>> {
        let mut frontier: Vec<(usize, Vec<usize>)> = (0..self.num_states).map(|q| (q, Vec::new())).collect();
        for _ in 0..len {
            let mut next = Vec::new();
            for (q, w) in &frontier {
                for &(s, x, t) in &self.edges {
                    if s == *q {
                        let mut w2 = w.clone();
                        w2.push(x);
                        next.push((t, w2));
                    }
                }
            }
            next.sort();
            next.dedup();
            frontier = next;
        }
        let mut out: Vec<Vec<usize>> = frontier.into_iter().map(|(_, w)| w).collect();
        out.sort();
        out.dedup();
        out
    }

    /// Subset automaton started from `start`, unminimised.
    pub fn subset_dfa(&self, start: Vec<usize>, accept: impl Fn(&[usize]) -> bool) -> Dfa {
        Dfa::determinize(self.num_states, self.alphabet_size(), &self.edges, start, accept)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut header: Option<(usize, Vec<String>)> = None;
        let mut edges = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Parse { line: i + 1, msg };
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks[0] {
                "presentation" => {
                    let n = toks
                        .get(1)
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| err("expected state count".into()))?;
                    let letters: Vec<String> = toks[2..].iter().map(|s| s.to_string()).collect();
                    if letters.is_empty() {
                        return Err(err("empty alphabet".into()));
                    }
                    header = Some((n, letters));
                }
                "edge" => {
                    let (_, letters) = header.as_ref().ok_or_else(|| err("edge before header".into()))?;
                    if toks.len() != 4 {
                        return Err(err("expected `edge src label dst`".into()));
                    }
                    let s: usize = toks[1].parse().map_err(|_| err(format!("bad state {}", toks[1])))?;
                    let t: usize = toks[3].parse().map_err(|_| err(format!("bad state {}", toks[3])))?;
                    let x = letters
                        .iter()
                        .position(|l| l == toks[2])
                        .ok_or_else(|| err(format!("unknown letter {}", toks[2])))?;
                    edges.push((s, x, t));
                }
                other => return Err(err(format!("unexpected keyword {other}"))),
            }
        }
        let (n, letters) = header.ok_or(Error::Parse { line: 0, msg: "missing header".into() })?;
        Self::new(n, letters, edges)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("presentation {} {}\n", self.num_states, self.alphabet.join(" "));
        for &(s, x, t) in &self.edges {
            let _ = writeln!(out, "edge {s} {} {t}", self.alphabet[x]);
        }
        out
    }
}
