use std::collections::{HashMap, VecDeque};

use indexmap::IndexSet;

use crate::error::{Error, Result};
use crate::Word;

/// Complete deterministic automaton over letters `0..alphabet_size`.
///
/// Languages are taken inside `X⁺`: the empty word is never considered,
/// whatever the acceptance status of the initial state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    pub num_states: usize,
    pub alphabet_size: usize,
    /// `trans[q * alphabet_size + x]`
    pub trans: Vec<u32>,
    pub initial: usize,
    pub accepting: Vec<bool>,
}

impl Dfa {
    #[inline]
    pub fn step(&self, q: usize, x: usize) -> usize {
        self.trans[q * self.alphabet_size + x] as usize
    }

    pub fn run(&self, q: usize, word: &[usize]) -> usize {
        word.iter().fold(q, |q, &x| self.step(q, x))
    }

    /// Membership of a non-empty word.
    pub fn accepts(&self, word: &[usize]) -> bool {
        !word.is_empty() && self.accepting[self.run(self.initial, word)]
    }

    /// Subset construction of a labelled graph from `start`, accepting the
    /// subsets selected by `accept`.
    pub fn determinize(
        num_states: usize,
        alphabet_size: usize,
        edges: &[(usize, usize, usize)],
        start: Vec<usize>,
        accept: impl Fn(&[usize]) -> bool,
    ) -> Dfa {
        let mut succ = vec![Vec::new(); num_states * alphabet_size];
        for &(s, x, t) in edges {
            succ[s * alphabet_size + x].push(t);
        }
        let mut subsets: IndexSet<Vec<usize>> = IndexSet::new();
        let mut start = start;
        start.sort_unstable();
        start.dedup();
        subsets.insert(start);
        let mut trans = Vec::new();
        let mut i = 0;
        while i < subsets.len() {
            for x in 0..alphabet_size {
                let mut next: Vec<usize> = subsets[i]
                    .iter()
                    .flat_map(|&s| succ[s * alphabet_size + x].iter().copied())
                    .collect();
                next.sort_unstable();
                next.dedup();
                let (idx, _) = subsets.insert_full(next);
                trans.push(idx as u32);
            }
            i += 1;
        }
        let accepting = subsets.iter().map(|s| accept(s)).collect();
        Dfa {
            num_states: subsets.len(),
            alphabet_size,
            trans,
            initial: 0,
            accepting,
        }
    }

    fn reachable(&self) -> Vec<usize> {
        let mut seen = vec![false; self.num_states];
        let mut order = vec![self.initial];
        seen[self.initial] = true;
        let mut i = 0;
        while i < order.len() {
            let q = order[i];
            for x in 0..self.alphabet_size {
                let t = self.step(q, x);
                if !seen[t] {
                    seen[t] = true;
                    order.push(t);
                }
            }
            i += 1;
        }
        order
    }

    /// Hopcroft minimisation. States of the result are numbered in
    /// breadth-first order from the initial state (letters in order), so two
    /// automata for the same language minimise to identical values.
    pub fn minimize(&self) -> Dfa {
        let k = self.alphabet_size;
        let order = self.reachable();
        let n = order.len();
        let mut local = vec![usize::MAX; self.num_states];
        for (i, &q) in order.iter().enumerate() {
            local[q] = i;
        }
        let step = |i: usize, x: usize| local[self.step(order[i], x)];
        let mut inverse = vec![Vec::new(); n * k];
        for i in 0..n {
            for x in 0..k {
                inverse[step(i, x) * k + x].push(i);
            }
        }

        let mut block_of = vec![0usize; n];
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let (acc, rej): (Vec<usize>, Vec<usize>) =
            (0..n).partition(|&i| self.accepting[order[i]]);
        for b in [acc, rej] {
            if !b.is_empty() {
                for &i in &b {
                    block_of[i] = blocks.len();
                }
                blocks.push(b);
            }
        }
        let mut in_work = vec![true; blocks.len()];
        let mut work: VecDeque<usize> = (0..blocks.len()).collect();
        while let Some(a) = work.pop_front() {
            in_work[a] = false;
            for x in 0..k {
                let mut pre: Vec<usize> = blocks[a]
                    .iter()
                    .flat_map(|&t| inverse[t * k + x].iter().copied())
                    .collect();
                if pre.is_empty() {
                    continue;
                }
                pre.sort_unstable();
                pre.dedup();
                let mut hit: HashMap<usize, Vec<usize>> = HashMap::new();
                for &i in &pre {
                    hit.entry(block_of[i]).or_default().push(i);
                }
                let mut touched: Vec<usize> = hit.keys().copied().collect();
                touched.sort_unstable();
                for y in touched {
                    let inside = &hit[&y];
                    if inside.len() == blocks[y].len() {
                        continue;
                    }
                    let outside: Vec<usize> = blocks[y]
                        .iter()
                        .copied()
                        .filter(|i| inside.binary_search(i).is_err())
                        .collect();
                    let new_id = blocks.len();
                    for &i in inside {
                        block_of[i] = new_id;
                    }
                    blocks[y] = outside;
                    blocks.push(inside.clone());
                    in_work.push(false);
                    if in_work[y] {
                        in_work[new_id] = true;
                        work.push_back(new_id);
                    } else {
                        let smaller = if blocks[y].len() <= blocks[new_id].len() { y } else { new_id };
                        in_work[smaller] = true;
                        work.push_back(smaller);
                    }
                }
            }
        }

        // canonical numbering by BFS over blocks
        let mut canon = vec![usize::MAX; blocks.len()];
        let mut queue = VecDeque::from([block_of[0]]);
        canon[block_of[0]] = 0;
        let mut reps = vec![0usize];
        let mut next = 1;
        while let Some(b) = queue.pop_front() {
            let rep = blocks[b][0];
            for x in 0..k {
                let t = block_of[step(rep, x)];
                if canon[t] == usize::MAX {
                    canon[t] = next;
                    next += 1;
                    reps.push(blocks[t][0]);
                    queue.push_back(t);
                }
            }
        }
        let mut trans = Vec::with_capacity(next * k);
        for &rep in &reps {
            for x in 0..k {
                trans.push(canon[block_of[step(rep, x)]] as u32);
            }
        }
        Dfa {
            num_states: next,
            alphabet_size: k,
            trans,
            initial: 0,
            accepting: reps.iter().map(|&r| self.accepting[order[r]]).collect(),
        }
    }

    /// States from which some non-empty accepted continuation exists, or
    /// which are accepting.
    pub fn live_states(&self) -> Vec<bool> {
        let mut live = self.accepting.clone();
        loop {
            let mut changed = false;
            for q in 0..self.num_states {
                if !live[q] && (0..self.alphabet_size).any(|x| live[self.step(q, x)]) {
                    live[q] = true;
                    changed = true;
                }
            }
            if !changed {
                return live;
            }
        }
    }

    /// Rejecting state with no way out, if any.
    pub fn sink(&self) -> Option<usize> {
        let live = self.live_states();
        (0..self.num_states).find(|&q| !live[q])
    }

    /// Number of accepted words of each length `1..=n_max` (index 0 unused).
    pub fn count_words(&self, n_max: usize) -> Result<Vec<u128>> {
        let mut counts = vec![0u128; n_max + 1];
        let mut dist = vec![0u128; self.num_states];
        dist[self.initial] = 1;
        for (n, slot) in counts.iter_mut().enumerate().skip(1) {
            let mut next = vec![0u128; self.num_states];
            for q in 0..self.num_states {
                if dist[q] == 0 {
                    continue;
                }
                for x in 0..self.alphabet_size {
                    let t = self.step(q, x);
                    next[t] = next[t].checked_add(dist[q]).ok_or(Error::CountOverflow(n))?;
                }
            }
            dist = next;
            let mut total = 0u128;
            for q in 0..self.num_states {
                if self.accepting[q] {
                    total = total.checked_add(dist[q]).ok_or(Error::CountOverflow(n))?;
                }
            }
            *slot = total;
        }
        Ok(counts)
    }

    /// All accepted words of length exactly `len`, in lexicographic order.
    pub fn words_of_length(&self, len: usize) -> Vec<Word> {
        // can[r][q]: an accepting state is reachable from q in exactly r steps
        let mut can = vec![self.accepting.clone()];
        for r in 1..=len {
            let prev = &can[r - 1];
            let row = (0..self.num_states)
                .map(|q| (0..self.alphabet_size).any(|x| prev[self.step(q, x)]))
                .collect();
            can.push(row);
        }
        let mut out = Vec::new();
        if len == 0 || !can[len][self.initial] {
            return out;
        }
        let mut word = Vec::with_capacity(len);
        self.collect_words(self.initial, len, &can, &mut word, &mut out);
        out
    }

    fn collect_words(&self, q: usize, rem: usize, can: &[Vec<bool>], word: &mut Word, out: &mut Vec<Word>) {
        if rem == 0 {
            out.push(word.clone());
            return;
        }
        for x in 0..self.alphabet_size {
            let t = self.step(q, x);
            if can[rem - 1][t] {
                word.push(x);
                self.collect_words(t, rem - 1, can, word, out);
                word.pop();
            }
        }
    }

    /// Shortest (then lexicographically least) non-empty word accepted by
    /// `self` and rejected by `other`.
    pub fn difference_witness(&self, other: &Dfa) -> Option<Word> {
        assert_eq!(self.alphabet_size, other.alphabet_size);
        let k = self.alphabet_size;
        let mut parent: HashMap<(usize, usize), ((usize, usize), usize)> = HashMap::new();
        let mut queue = VecDeque::new();
        let root = (self.initial, other.initial);
        let mut seen = std::collections::HashSet::from([root]);
        queue.push_back(root);
        while let Some((p, q)) = queue.pop_front() {
            for x in 0..k {
                let next = (self.step(p, x), other.step(q, x));
                let fresh = seen.insert(next);
                if fresh {
                    parent.insert(next, ((p, q), x));
                }
                if self.accepting[next.0] && !other.accepting[next.1] {
                    let mut word = vec![x];
                    let mut cur = (p, q);
                    while cur != root {
                        let (prev, y) = parent[&cur];
                        word.push(y);
                        cur = prev;
                    }
                    word.reverse();
                    return Some(word);
                }
                if fresh {
                    queue.push_back(next);
                }
            }
        }
        None
    }

    /// Shortest (then least) word leading from the initial state to each
    /// state; `None` for unreachable states.
    pub fn access_words(&self) -> Vec<Option<Word>> {
        let mut words: Vec<Option<Word>> = vec![None; self.num_states];
        words[self.initial] = Some(Vec::new());
        let mut queue = VecDeque::from([self.initial]);
        while let Some(q) = queue.pop_front() {
            for x in 0..self.alphabet_size {
                let t = self.step(q, x);
                if words[t].is_none() {
                    let mut w = words[q].clone().unwrap();
                    w.push(x);
                    words[t] = Some(w);
                    queue.push_back(t);
                }
            }
        }
        words
    }

    /// Shortest (then least) possibly empty word `y` such that exactly one
    /// of `p·y`, `q·y` is accepting.
    pub fn distinguishing_word(&self, p: usize, q: usize) -> Option<Word> {
        let mut parent: HashMap<(usize, usize), ((usize, usize), usize)> = HashMap::new();
        let root = (p, q);
        let mut queue = VecDeque::from([root]);
        let mut seen = std::collections::HashSet::from([root]);
        while let Some(cur) = queue.pop_front() {
            if self.accepting[cur.0] != self.accepting[cur.1] {
                let mut word = Vec::new();
                let mut c = cur;
                while c != root {
                    let (prev, y) = parent[&c];
                    word.push(y);
                    c = prev;
                }
                word.reverse();
                return Some(word);
            }
            for x in 0..self.alphabet_size {
                let next = (self.step(cur.0, x), self.step(cur.1, x));
                if seen.insert(next) {
                    parent.insert(next, (cur, x));
                    queue.push_back(next);
                }
            }
        }
        None
    }

    /// The same automaton with `extra` further letters, all leading to a
    /// rejecting sink (added if absent).
    pub fn with_dead_letters(&self, extra: usize) -> Dfa {
        let (sink, num_states) = match self.sink() {
            Some(s) => (s, self.num_states),
            None => (self.num_states, self.num_states + 1),
        };
        let k = self.alphabet_size + extra;
        let mut trans = Vec::with_capacity(num_states * k);
        for q in 0..num_states {
            for x in 0..k {
                let t = if q < self.num_states && x < self.alphabet_size { self.step(q, x) } else { sink };
                trans.push(t as u32);
            }
        }
        let mut accepting = self.accepting.clone();
        accepting.resize(num_states, false);
        Dfa { num_states, alphabet_size: k, trans, initial: self.initial, accepting }
    }

    /// Language equality on non-empty words.
    pub fn equivalent(&self, other: &Dfa) -> bool {
        self.difference_witness(other).is_none() && other.difference_witness(self).is_none()
    }

    /// `w⁺` is contained in the language.
    pub fn accepts_all_powers(&self, w: &[usize]) -> bool {
        if w.is_empty() {
            return false;
        }
        let mut seen = vec![false; self.num_states];
        let mut q = self.initial;
        loop {
            q = self.run(q, w);
            if !self.accepting[q] {
                return false;
            }
            if seen[q] {
                return true;
            }
            seen[q] = true;
        }
    }
}
