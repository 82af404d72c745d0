use std::hash::Hash;

use indexmap::IndexSet;

use crate::error::{Error, Result};
use crate::Word;

/// The subsemigroup generated by a list of concrete elements, discovered by
/// breadth-first search on the right Cayley graph.
///
/// Element `i` is the `i`-th element found. Because the queue is ordered by
/// shortlex witness and generators are tried in input order, the recorded
/// witness of each element is its shortlex-least generator word.
#[derive(Debug, Clone)]
pub struct Closure<T> {
    pub elements: IndexSet<T>,
    /// `right[i * k + g]` is the index of `elements[i] · gens[g]`.
    pub right: Vec<u32>,
    /// Element index of each generator (duplicates share an index).
    pub gen_index: Vec<u32>,
    parent: Vec<(Option<u32>, u32)>,
    k: usize,
}

impl<T: Clone + Eq + Hash> Closure<T> {
    pub fn generate<F>(gens: &[T], mul: F, cap: usize) -> Result<Self>
    where
        F: Fn(&T, &T) -> T,
    {
        if gens.is_empty() {
            return Err(Error::NoGenerators);
        }
        let k = gens.len();
        let mut elements = IndexSet::new();
        let mut parent = Vec::new();
        let mut gen_index = Vec::with_capacity(k);
        for (g, x) in gens.iter().enumerate() {
            let (idx, fresh) = elements.insert_full(x.clone());
            if fresh {
                parent.push((None, g as u32));
            }
            gen_index.push(idx as u32);
        }
        if elements.len() > cap {
            return Err(Error::CapExceeded { cap });
        }
        let mut right = Vec::new();
        let mut i = 0;
        while i < elements.len() {
            for (g, x) in gens.iter().enumerate() {
                let prod = mul(&elements[i], x);
                let (idx, fresh) = elements.insert_full(prod);
                if fresh {
                    if elements.len() > cap {
                        return Err(Error::CapExceeded { cap });
                    }
                    parent.push((Some(i as u32), g as u32));
                }
                right.push(idx as u32);
            }
            i += 1;
        }
        Ok(Closure {
            elements,
            right,
            gen_index,
            parent,
            k,
        })
    }

    /// `left[i * k + g]` is the index of `gens[g] · elements[i]`.
    pub fn left_cayley<F>(&self, gens: &[T], mul: F) -> Vec<u32>
    where
        F: Fn(&T, &T) -> T,
    {
        let mut left = Vec::with_capacity(self.len() * self.k);
        for x in &self.elements {
            for g in gens {
                let prod = mul(g, x);
                let idx = self
                    .elements
                    .get_index_of(&prod)
                    .expect("closure is closed under left multiplication by generators");
                left.push(idx as u32);
            }
        }
        left
    }

    pub fn index_of(&self, x: &T) -> Option<usize> {
        self.elements.get_index_of(x)
    }
}

impl<T> Closure<T> {
    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn num_generators(&self) -> usize {
        self.k
    }

    pub fn right_mul(&self, i: usize, g: usize) -> usize {
        self.right[i * self.k + g] as usize
    }

    /// Shortlex-least generator word for element `i`.
    pub fn witness(&self, i: usize) -> Word {
        let mut word = Vec::new();
        let mut cur = Some(i as u32);
        while let Some(c) = cur {
            let (p, g) = self.parent[c as usize];
            word.push(g as usize);
            cur = p;
        }
        word.reverse();
        word
    }

    /// Evaluates a non-empty generator word.
    pub fn eval(&self, word: &[usize]) -> usize {
        let mut it = word.iter();
        let first = *it.next().expect("non-empty word");
        it.fold(self.gen_index[first] as usize, |acc, &g| self.right_mul(acc, g))
    }

    /// Full multiplication table, derived from the right Cayley graph and
    /// the witness tree without touching the concrete elements.
    pub fn table(&self) -> Vec<u32> {
        let n = self.len();
        let mut table = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                let (p, g) = self.parent[j];
                let base = match p {
                    None => i,
                    Some(p) => table[i * n + p as usize] as usize,
                };
                table[i * n + j] = self.right[base * self.k + g as usize];
            }
        }
        table
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finsemi::PartialTransformation;

    #[test]
    fn witnesses_are_shortlex_least() {
        let a = PartialTransformation::total(&[1, 2, 0]);
        let b = PartialTransformation::total(&[1, 0, 2]);
        let c = Closure::generate(&[a, b], |x, y| x.then(y), 100).unwrap();
        assert_eq!(c.len(), 6);
        for i in 0..c.len() {
            let w = c.witness(i);
            assert_eq!(c.eval(&w), i);
        }
        // witnesses appear in shortlex order
        let ws: Vec<Word> = (0..c.len()).map(|i| c.witness(i)).collect();
        for pair in ws.windows(2) {
            assert!((pair[0].len(), &pair[0]) < (pair[1].len(), &pair[1]));
        }
    }

    #[test]
    fn cap_is_enforced() {
        let a = PartialTransformation::total(&[1, 2, 3, 4, 0]);
        let b = PartialTransformation::total(&[1, 0, 2, 3, 4]);
        let err = Closure::generate(&[a, b], |x, y| x.then(y), 50).unwrap_err();
        assert_eq!(err, Error::CapExceeded { cap: 50 });
    }
}
