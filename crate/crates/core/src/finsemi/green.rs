use std::collections::HashMap;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

/// Left and right Cayley graphs of a generated semigroup.
#[derive(Debug, Clone)]
pub struct CayleyGraph {
    pub n: usize,
    pub k: usize,
    /// `right[s * k + g] = s · g`
    pub right: Vec<u32>,
    /// `left[s * k + g] = g · s`
    pub left: Vec<u32>,
}

/// Green's relations of a finite semigroup, with the J-order on J-classes.
///
/// Class ids are numbered by the smallest element they contain.
#[derive(Debug, Clone)]
pub struct GreenStructure {
    pub r_class: Vec<usize>,
    pub l_class: Vec<usize>,
    pub j_class: Vec<usize>,
    pub h_class: Vec<usize>,
    /// `regular[j]` iff J-class `j` contains an idempotent.
    pub regular: Vec<bool>,
    j_members: Vec<Vec<usize>>,
    /// `below[j]` is a bitset of the J-classes `≤_J j` (including `j`).
    below: Option<Vec<Vec<u64>>>,
}

struct Partition {
    class: Vec<usize>,
    /// components in Tarjan emission order (successors first), as class ids
    emission: Vec<usize>,
}

fn scc_partition(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> Partition {
    let mut g: DiGraph<(), ()> = DiGraph::with_capacity(n, 0);
    for _ in 0..n {
        g.add_node(());
    }
    for (u, v) in edges {
        if u != v {
            g.add_edge(NodeIndex::new(u), NodeIndex::new(v), ());
        }
    }
    let comps = tarjan_scc(&g);
    let mut by_min: Vec<(usize, usize)> = comps
        .iter()
        .enumerate()
        .map(|(ci, c)| (c.iter().map(|x| x.index()).min().unwrap(), ci))
        .collect();
    by_min.sort_unstable();
    let mut renumber = vec![0; comps.len()];
    for (id, &(_, ci)) in by_min.iter().enumerate() {
        renumber[ci] = id;
    }
    let mut class = vec![0; n];
    for (ci, c) in comps.iter().enumerate() {
        for x in c {
            class[x.index()] = renumber[ci];
        }
    }
    Partition {
        class,
        emission: (0..comps.len()).map(|ci| renumber[ci]).collect(),
    }
}

fn renumber_by_min(keys: &[(usize, usize)]) -> Vec<usize> {
    let mut ids: HashMap<(usize, usize), usize> = HashMap::new();
    keys.iter()
        .map(|k| {
            let next = ids.len();
            *ids.entry(*k).or_insert(next)
        })
        .collect()
}

impl GreenStructure {
    /// Computes R, L, J (= D), H from strongly connected components of the
    /// Cayley graphs. `idempotent[s]` flags idempotent elements.
    pub fn compute(cayley: &CayleyGraph, idempotent: &[bool], with_order: bool) -> Self {
        let (n, k) = (cayley.n, cayley.k);
        let right_edges = || (0..n * k).map(move |i| (i / k, cayley.right[i] as usize));
        let left_edges = || (0..n * k).map(move |i| (i / k, cayley.left[i] as usize));
        let r = scc_partition(n, right_edges());
        let l = scc_partition(n, left_edges());
        let j = scc_partition(n, right_edges().chain(left_edges()));

        let pairs: Vec<(usize, usize)> = (0..n).map(|s| (r.class[s], l.class[s])).collect();
        let h_class = renumber_by_min(&pairs);

        let nj = j.emission.len();
        let mut j_members = vec![Vec::new(); nj];
        for s in 0..n {
            j_members[j.class[s]].push(s);
        }
        let regular = j_members
            .iter()
            .map(|m| m.iter().any(|&s| idempotent[s]))
            .collect();

        let below = with_order.then(|| {
            let words = nj.div_ceil(64);
            let mut below = vec![vec![0u64; words]; nj];
            for &c in &j.emission {
                let mut bits = vec![0u64; words];
                bits[c / 64] |= 1 << (c % 64);
                for &s in &j_members[c] {
                    for g in 0..k {
                        for t in [cayley.right[s * k + g], cayley.left[s * k + g]] {
                            let d = j.class[t as usize];
                            if d != c {
                                for (b, x) in bits.iter_mut().zip(&below[d]) {
                                    *b |= x;
                                }
                            }
                        }
                    }
                }
                below[c] = bits;
            }
            below
        });

        GreenStructure {
            r_class: r.class,
            l_class: l.class,
            j_class: j.class,
            h_class,
            regular,
            j_members,
            below,
        }
    }

    pub fn num_j_classes(&self) -> usize {
        self.j_members.len()
    }

    pub fn j_members(&self, j: usize) -> &[usize] {
        &self.j_members[j]
    }

    /// `J-class a ≤_J J-class b`. Requires the order to have been computed.
    pub fn j_class_leq(&self, a: usize, b: usize) -> bool {
        let below = self.below.as_ref().expect("J-order was not computed");
        below[b][a / 64] >> (a % 64) & 1 == 1
    }

    /// `s ≤_J t`
    pub fn j_leq(&self, s: usize, t: usize) -> bool {
        self.j_class_leq(self.j_class[s], self.j_class[t])
    }

    pub fn has_order(&self) -> bool {
        self.below.is_some()
    }

    /// Elements of the H-class of `s`.
    pub fn h_members(&self, s: usize) -> Vec<usize> {
        let h = self.h_class[s];
        (0..self.h_class.len()).filter(|&t| self.h_class[t] == h).collect()
    }

    /// R-class ids occurring in J-class `j`, in increasing order.
    pub fn r_classes_in(&self, j: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self.j_members[j].iter().map(|&s| self.r_class[s]).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// L-class ids occurring in J-class `j`, in increasing order.
    pub fn l_classes_in(&self, j: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self.j_members[j].iter().map(|&s| self.l_class[s]).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// J-classes with no strictly smaller J-class.
    pub fn minimal_j_classes(&self) -> Vec<usize> {
        (0..self.num_j_classes())
            .filter(|&a| (0..self.num_j_classes()).all(|b| b == a || !self.j_class_leq(b, a)))
            .collect()
    }
}
