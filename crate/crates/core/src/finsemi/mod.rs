//! Finite semigroups given by multiplication tables.
//!
//! Elements are the indices `0..n`. Every semigroup carries a generator list
//! and, for each element, the shortlex-least generator word evaluating to it.

mod closure;
mod green;
mod morphism;
mod transform;

use std::collections::VecDeque;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use closure::Closure;
pub use green::{CayleyGraph, GreenStructure};
pub use morphism::{lift_jclass, LiftedClass, SemigroupMorphism};
pub use transform::PartialTransformation;

use crate::error::{Error, Result};
use crate::Word;

/// Tables above this size are checked for associativity by sampling.
pub const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSemigroup {
    n: usize,
    table: Vec<u32>,
    generators: Vec<usize>,
    witness: Vec<Word>,
    zero: Option<usize>,
    identity: Option<usize>,
}

/// Closure of concrete generators, keeping the concrete element values.
#[derive(Debug, Clone)]
pub struct Generated<T> {
    pub semigroup: FiniteSemigroup,
    pub elements: Vec<T>,
}

/// Closes a list of partial transformations under composition.
pub fn close_generators(gens: &[PartialTransformation], cap: usize) -> Result<FiniteSemigroup> {
    close_transformations(gens, cap).map(|g| g.semigroup)
}

/// As [`close_generators`], also returning the transformation of each element.
pub fn close_transformations(
    gens: &[PartialTransformation],
    cap: usize,
) -> Result<Generated<PartialTransformation>> {
    let dim = gens.first().ok_or(Error::NoGenerators)?.dim();
    if let Some(bad) = gens.iter().find(|g| g.dim() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: bad.dim(),
        });
    }
    let closure = Closure::generate(gens, |a, b| a.then(b), cap)?;
    Ok(Generated {
        semigroup: FiniteSemigroup::from_closure(&closure),
        elements: closure.elements.iter().cloned().collect(),
    })
}

impl FiniteSemigroup {
    pub fn from_closure<T>(closure: &Closure<T>) -> Self {
        let n = closure.len();
        let mut s = FiniteSemigroup {
            n,
            table: closure.table(),
            generators: closure.gen_index.iter().map(|&g| g as usize).collect(),
            witness: (0..n).map(|i| closure.witness(i)).collect(),
            zero: None,
            identity: None,
        };
        s.zero = s.find_zero();
        s.identity = s.find_identity();
        s
    }

    /// Builds a semigroup from a raw table, checking closure, associativity
    /// (sampled with `seed` above [`EXHAUSTIVE_ASSOCIATIVITY_LIMIT`]) and that
    /// the generators generate everything.
    pub fn from_table(
        n: usize,
        table: Vec<usize>,
        generators: Vec<usize>,
        seed: u64,
    ) -> Result<Self> {
        if table.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: table.len(),
            });
        }
        if let Some(&bad) = table.iter().chain(&generators).find(|&&x| x >= n) {
            return Err(Error::CheckFailed(format!("index {bad} out of range 0..{n}")));
        }
        if generators.is_empty() {
            return Err(Error::NoGenerators);
        }
        let table: Vec<u32> = table.into_iter().map(|x| x as u32).collect();
        let mut s = FiniteSemigroup {
            n,
            table,
            generators,
            witness: Vec::new(),
            zero: None,
            identity: None,
        };
        s.check_associative(seed)?;
        s.witness = s.compute_witnesses()?;
        s.zero = s.find_zero();
        s.identity = s.find_identity();
        Ok(s)
    }

    fn compute_witnesses(&self) -> Result<Vec<Word>> {
        let mut witness: Vec<Option<Word>> = vec![None; self.n];
        let mut queue = VecDeque::new();
        for (g, &x) in self.generators.iter().enumerate() {
            if witness[x].is_none() {
                witness[x] = Some(vec![g]);
                queue.push_back(x);
            }
        }
        while let Some(s) = queue.pop_front() {
            for (g, &x) in self.generators.iter().enumerate() {
                let t = self.mul(s, x);
                if witness[t].is_none() {
                    let mut w = witness[s].clone().unwrap();
                    w.push(g);
                    witness[t] = Some(w);
                    queue.push_back(t);
                }
            }
        }
        witness
            .into_iter()
            .enumerate()
            .map(|(i, w)| {
                w.ok_or_else(|| {
                    Error::CheckFailed(format!("element {i} is not a product of generators"))
                })
            })
            .collect()
    }

    pub fn check_associative(&self, seed: u64) -> Result<()> {
        let n = self.n;
        let check = |a: usize, b: usize, c: usize| {
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                Err(Error::NotAssociative(a, b, c))
            } else {
                Ok(())
            }
        };
        if n <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..10 * n * n {
                check(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))?;
            }
        }
        Ok(())
    }

    fn find_zero(&self) -> Option<usize> {
        (0..self.n).find(|&z| (0..self.n).all(|s| self.mul(z, s) == z && self.mul(s, z) == z))
    }

    fn find_identity(&self) -> Option<usize> {
        (0..self.n).find(|&e| (0..self.n).all(|s| self.mul(e, s) == s && self.mul(s, e) == s))
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn witness(&self, s: usize) -> &[usize] {
        &self.witness[s]
    }

    pub fn zero(&self) -> Option<usize> {
        self.zero
    }

    pub fn identity(&self) -> Option<usize> {
        self.identity
    }

    pub fn is_trivial(&self) -> bool {
        self.n == 1
    }

    /// Value of a non-empty generator word.
    pub fn eval(&self, word: &[usize]) -> usize {
        let mut it = word.iter();
        let first = self.generators[*it.next().expect("non-empty word")];
        it.fold(first, |acc, &g| self.mul(acc, self.generators[g]))
    }

    pub fn product(&self, elems: &[usize]) -> usize {
        elems
            .iter()
            .copied()
            .reduce(|a, b| self.mul(a, b))
            .expect("non-empty product")
    }

    pub fn is_idempotent(&self, s: usize) -> bool {
        self.mul(s, s) == s
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.n).filter(|&s| self.is_idempotent(s)).collect()
    }

    pub fn power(&self, s: usize, k: u64) -> usize {
        assert!(k >= 1);
        let mut result = s;
        let mut base = s;
        let mut e = k - 1;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    /// Index and period of `s`: the least `i ≥ 1`, `q ≥ 1` with `s^(i+q) = s^i`.
    pub fn index_period(&self, s: usize) -> (usize, usize) {
        let mut seen = vec![0usize; self.n];
        let mut cur = s;
        let mut k = 1;
        loop {
            if seen[cur] != 0 {
                return (seen[cur], k - seen[cur]);
            }
            seen[cur] = k;
            cur = self.mul(cur, s);
            k += 1;
        }
    }

    /// The unique idempotent power of `s`.
    pub fn omega_power(&self, s: usize) -> usize {
        let (i, q) = self.index_period(s);
        let k = i.div_ceil(q) * q;
        self.power(s, k as u64)
    }

    pub fn cayley(&self) -> CayleyGraph {
        let k = self.generators.len();
        let mut right = Vec::with_capacity(self.n * k);
        let mut left = Vec::with_capacity(self.n * k);
        for s in 0..self.n {
            for &g in &self.generators {
                right.push(self.mul(s, g) as u32);
                left.push(self.mul(g, s) as u32);
            }
        }
        CayleyGraph {
            n: self.n,
            k,
            right,
            left,
        }
    }

    pub fn green_structure(&self) -> GreenStructure {
        let idem: Vec<bool> = (0..self.n).map(|s| self.is_idempotent(s)).collect();
        GreenStructure::compute(&self.cayley(), &idem, true)
    }

    /// `S¹ s S¹` as a membership vector.
    pub fn principal_ideal(&self, s: usize) -> Vec<bool> {
        let mut inside = vec![false; self.n];
        inside[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(t) = queue.pop_front() {
            for &g in &self.generators {
                for u in [self.mul(t, g), self.mul(g, t)] {
                    if !inside[u] {
                        inside[u] = true;
                        queue.push_back(u);
                    }
                }
            }
        }
        inside
    }

    /// Maximal subgroup at idempotent `e`: the H-class of `e` with the
    /// induced product. Element 0 of the result is `e`; the second component
    /// maps result indices back into `self`.
    pub fn maximal_subgroup(&self, e: usize) -> Result<(FiniteSemigroup, Vec<usize>)> {
        if !self.is_idempotent(e) {
            return Err(Error::NotIdempotent(e));
        }
        let green = self.green_structure();
        let mut members = green.h_members(e);
        members.retain(|&s| s != e);
        members.insert(0, e);
        Ok((self.restrict(&members), members))
    }

    /// Subsemigroup on `members` (which must be closed), generated by all of
    /// its elements in the given order.
    pub fn restrict(&self, members: &[usize]) -> FiniteSemigroup {
        let m = members.len();
        let mut pos = vec![usize::MAX; self.n];
        for (i, &s) in members.iter().enumerate() {
            pos[s] = i;
        }
        let table: Vec<usize> = members
            .iter()
            .flat_map(|&a| members.iter().map(move |&b| (a, b)))
            .map(|(a, b)| pos[self.mul(a, b)])
            .collect();
        assert!(table.iter().all(|&x| x != usize::MAX), "subset is not closed");
        FiniteSemigroup::from_table(m, table, (0..m).collect(), 0)
            .expect("restriction of an associative table is valid")
    }

    /// Checks the group axioms exhaustively; returns the identity.
    pub fn group_identity(&self) -> Option<usize> {
        let e = self.identity?;
        (0..self.n)
            .all(|s| (0..self.n).any(|t| self.mul(s, t) == e && self.mul(t, s) == e))
            .then_some(e)
    }

    pub fn inverse(&self, s: usize) -> Option<usize> {
        let e = self.identity?;
        (0..self.n).find(|&t| self.mul(s, t) == e && self.mul(t, s) == e)
    }

    /// Apex of a factorial irreducible subset `a` (membership vector): the
    /// unique minimal J-class contained in it.
    pub fn apex(&self, a: &[bool]) -> Result<usize> {
        let green = self.green_structure();
        self.apex_with(&green, a)
    }

    pub fn apex_with(&self, green: &GreenStructure, a: &[bool]) -> Result<usize> {
        let members: Vec<usize> = (0..self.n).filter(|&s| a[s]).collect();
        if members.is_empty() {
            return Err(Error::CheckFailed("apex of the empty set".into()));
        }
        // factorial: every factor of a member is a member
        for &s in &members {
            for t in 0..self.n {
                if !a[t] && green.j_leq(s, t) {
                    return Err(Error::NotFactorial { element: s, factor: t });
                }
            }
        }
        for &u in &members {
            let mut right: Vec<bool> = vec![false; self.n];
            for w in 0..self.n {
                right[self.mul(u, w)] = true;
            }
            for &v in &members {
                if !(0..self.n).any(|x| right[x] && a[self.mul(x, v)]) {
                    return Err(Error::NotIrreducible { u, v });
                }
            }
        }
        let inside: Vec<usize> = (0..green.num_j_classes())
            .filter(|&j| a[green.j_members(j)[0]])
            .collect();
        let minimal: Vec<usize> = inside
            .iter()
            .copied()
            .filter(|&j| inside.iter().all(|&d| d == j || !green.j_class_leq(d, j)))
            .collect();
        if minimal.len() != 1 {
            return Err(Error::CheckFailed(format!(
                "expected a unique minimal J-class, found {}",
                minimal.len()
            )));
        }
        let apex = minimal[0];
        if !green.regular[apex] {
            return Err(Error::NotRegular(apex));
        }
        // Fact(apex) = A
        let rep = green.j_members(apex)[0];
        for s in 0..self.n {
            if a[s] != green.j_leq(rep, s) {
                return Err(Error::CheckFailed(format!(
                    "Fact(apex) differs from the subset at {s}"
                )));
            }
        }
        Ok(apex)
    }

    pub fn parse(text: &str, seed: u64) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
            .filter(|(_, l)| !l.is_empty());
        let err = |line: usize, msg: &str| Error::Parse {
            line,
            msg: msg.to_string(),
        };
        let nums = |line: usize, toks: &[&str]| -> Result<Vec<usize>> {
            toks.iter()
                .map(|t| t.parse::<usize>().map_err(|_| err(line, &format!("bad integer {t:?}"))))
                .collect()
        };
        let (hl, header) = lines.next().ok_or_else(|| err(0, "empty input"))?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        if toks.len() != 3 || toks[0] != "semigroup" {
            return Err(err(hl, "expected `semigroup n k`"));
        }
        let hk = nums(hl, &toks[1..])?;
        let (n, k) = (hk[0], hk[1]);
        let mut table = Vec::with_capacity(n * n);
        for _ in 0..n {
            let (ln, row) = lines.next().ok_or_else(|| err(hl, "missing table rows"))?;
            let row = nums(ln, &row.split_whitespace().collect::<Vec<_>>())?;
            if row.len() != n {
                return Err(err(ln, "table row has wrong length"));
            }
            table.extend(row);
        }
        let mut generators = None;
        let mut zero = None;
        let mut identity = None;
        for (ln, l) in lines {
            let toks: Vec<&str> = l.split_whitespace().collect();
            match toks[0] {
                "generators" => {
                    let g = nums(ln, &toks[1..])?;
                    if g.len() != k {
                        return Err(err(ln, "generator count differs from header"));
                    }
                    generators = Some(g);
                }
                "zero" if toks.len() == 2 => zero = Some(nums(ln, &toks[1..])?[0]),
                "identity" if toks.len() == 2 => identity = Some(nums(ln, &toks[1..])?[0]),
                _ => return Err(err(ln, "unrecognised line")),
            }
        }
        let generators = generators.ok_or_else(|| err(hl, "missing `generators` line"))?;
        let s = FiniteSemigroup::from_table(n, table, generators, seed)?;
        if zero.is_some() && zero != s.zero {
            return Err(Error::CheckFailed(format!("declared zero {zero:?} is not a zero")));
        }
        if identity.is_some() && identity != s.identity {
            return Err(Error::CheckFailed(format!(
                "declared identity {identity:?} is not an identity"
            )));
        }
        Ok(s)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "semigroup {} {}", self.n, self.generators.len()).unwrap();
        for a in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|b| self.mul(a, b).to_string()).collect();
            writeln!(out, "{}", row.join(" ")).unwrap();
        }
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        writeln!(out, "generators {}", gens.join(" ")).unwrap();
        if let Some(z) = self.zero {
            writeln!(out, "zero {z}").unwrap();
        }
        if let Some(e) = self.identity {
            writeln!(out, "identity {e}").unwrap();
        }
        out
    }

    /// Cyclic group of order `n` generated by element 1 (element 0 is the identity).
    pub fn cyclic_group(n: usize) -> Self {
        assert!(n >= 1);
        let table = (0..n).flat_map(|a| (0..n).map(move |b| (a + b) % n)).collect();
        let gens = if n == 1 { vec![0] } else { vec![1] };
        FiniteSemigroup::from_table(n, table, gens, 0).unwrap()
    }

    /// `self` with a new zero element adjoined (index `n`).
    pub fn with_zero(&self) -> Self {
        let m = self.n + 1;
        let table = (0..m)
            .flat_map(|a| (0..m).map(move |b| (a, b)))
            .map(|(a, b)| if a == self.n || b == self.n { self.n } else { self.mul(a, b) })
            .collect();
        let mut gens = self.generators.clone();
        gens.push(self.n);
        FiniteSemigroup::from_table(m, table, gens, 0).unwrap()
    }
}

#[cfg(test)]
mod tests;
