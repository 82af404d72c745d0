use std::collections::{BTreeSet, HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::matrix::{RowMonomialMatrix, MAX_DIM};
use super::rees::{wreath_embed, WreathEmbedding};
use crate::error::{Error, Result};
use crate::finsemi::{CayleyGraph, Closure, FiniteSemigroup, GreenStructure};
use crate::shiftspace::{conjugate_with_partial_alphabet, Presentation};
use crate::syntactic::{is_aggm_with, syntactic_semigroup_capped};
use crate::Word;

/// Default bound on the size of the cover semigroup.
pub const DEFAULT_COVER_CAP: usize = 2_000_000;

/// Data for the cover construction. Letters are `x_1, …, x_{n+1}` in order;
/// `letters[i]` is the image of `x_{i+1}` in `s`, and the last letter must
/// map to zero. `alpha` sends each element of `h` to an element of the
/// maximal subgroup of `s` at `e`, indexed as by
/// [`FiniteSemigroup::maximal_subgroup`].
#[derive(Debug, Clone)]
pub struct CoverInput {
    pub s: FiniteSemigroup,
    pub letters: Vec<usize>,
    pub alphabet: Vec<String>,
    pub e: usize,
    pub z: Word,
    pub h: FiniteSemigroup,
    pub alpha: Vec<usize>,
}

/// Everything but `H` and `α`: a finite semigroup over letters
/// `x_1, …, x_n, 0`, an idempotent `e` and a word `z`.
#[derive(Debug, Clone)]
pub struct CoverBase {
    pub s: FiniteSemigroup,
    pub letters: Vec<usize>,
    pub alphabet: Vec<String>,
    pub e: usize,
    pub z: Word,
}

impl CoverBase {
    /// Order of the maximal subgroup `K` at `e`.
    pub fn k_size(&self) -> usize {
        self.s.green_structure().h_members(self.e).len()
    }

    pub fn with_group(self, h: FiniteSemigroup, alpha: Vec<usize>) -> CoverInput {
        CoverInput { s: self.s, letters: self.letters, alphabet: self.alphabet, e: self.e, z: self.z, h, alpha }
    }
}

/// Base data for an irreducible shift: passes to a higher-block conjugate in
/// which some `z` with `z⁺ ⊆ L` misses a letter, adjoins a zero letter, puts
/// the letters of `z` first and the zero letter last, and picks the least
/// idempotent `e` of the distinguished class with `z^ω e = e`.
pub fn cover_base_for_shift(p: &Presentation, cap: usize) -> Result<CoverBase> {
    let (hb, z) = conjugate_with_partial_alphabet(p)?;
    let names = &hb.presentation.alphabet;
    let zero_name = (0..).map(|i| format!("0{}", "'".repeat(i))).find(|c| !names.contains(c)).unwrap();
    let d = syntactic_semigroup_capped(&hb.presentation, cap)?.with_zero_letters(&[zero_name.as_str()], cap)?;
    let k = names.len();
    let in_z: Vec<usize> = (0..k).filter(|x| z.contains(x)).collect();
    let order: Vec<usize> = in_z.iter().copied().chain((0..k).filter(|x| !z.contains(x))).chain([k]).collect();
    let rename: HashMap<usize, usize> = order.iter().enumerate().map(|(new, &old)| (old, new)).collect();
    let s = d.semigroup;
    let green = s.green_structure();
    let j = is_aggm_with(&s, &green)
        .and_then(|r| r.distinguished)
        .ok_or_else(|| violated("syntactic semigroup has no distinguished J-class"))?;
    let zs = z[1..].iter().fold(d.letter_map[z[0]], |a, &x| s.mul(a, d.letter_map[x]));
    let zw = s.omega_power(zs);
    let e = green
        .j_members(j)
        .iter()
        .map(|&x| s.omega_power(s.mul(zw, x)))
        .filter(|&x| green.j_class[x] == j)
        .min()
        .ok_or_else(|| violated("no idempotent of the distinguished class is fixed by z^ω"))?;
    Ok(CoverBase {
        letters: order.iter().map(|&x| d.letter_map[x]).collect(),
        alphabet: order.iter().map(|&x| d.alphabet[x].clone()).collect(),
        e,
        z: z.iter().map(|x| rename[x]).collect(),
        s,
    })
}

/// Parameters and generators of the cover, before closure.
#[derive(Debug, Clone)]
pub struct CoverPlan {
    pub input: CoverInput,
    pub embedding: WreathEmbedding,
    pub h_identity: usize,
    /// Section `K → H`.
    pub sigma: Vec<usize>,
    /// `ker α`, identity first.
    pub kernel: Vec<usize>,
    /// `b = |B|`.
    pub b: usize,
    /// `ℓ = |N|^b`.
    pub ell: usize,
    /// Least positive `m` with `Z^m` idempotent.
    pub m: usize,
    pub p: usize,
    /// `(M^σ_{x_i})`.
    pub lifted: Vec<RowMonomialMatrix>,
    /// Flattened `(p·b)`-dimensional generators `x̃_i`.
    pub generators: Vec<RowMonomialMatrix>,
}

fn violated(msg: impl Into<String>) -> Error {
    Error::HypothesisViolated(msg.into())
}

/// Index and period of `x` under `mul`.
fn index_period<T: Clone + Eq + std::hash::Hash>(x: &T, mul: impl Fn(&T, &T) -> T) -> (usize, usize) {
    let mut seen: HashMap<T, usize> = HashMap::new();
    let mut cur = x.clone();
    let mut k = 1;
    loop {
        if let Some(&i) = seen.get(&cur) {
            return (i, k - i);
        }
        seen.insert(cur.clone(), k);
        cur = mul(&cur, x);
        k += 1;
    }
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Checks the standing hypotheses on `S`, `e`, `z` and `α`.
fn check_hypotheses(input: &CoverInput, green: &GreenStructure) -> Result<()> {
    let s = &input.s;
    let n1 = input.letters.len();
    if n1 < 3 {
        return Err(violated(format!("need at least 3 letters, got {n1}")));
    }
    if input.alphabet.len() != n1 {
        return Err(violated("alphabet and letter images differ in length"));
    }
    let zero = s.zero().ok_or_else(|| violated("S has no zero"))?;
    if input.letters[n1 - 1] != zero {
        return Err(violated("last letter does not map to zero"));
    }
    if let Some(i) = input.letters[..n1 - 1].iter().position(|&x| x == zero) {
        return Err(violated(format!("letter {} maps to zero", input.alphabet[i])));
    }
    let mut reached: HashSet<usize> = input.letters.iter().copied().collect();
    let mut stack: Vec<usize> = reached.iter().copied().collect();
    while let Some(x) = stack.pop() {
        for &g in &input.letters {
            if reached.insert(s.mul(x, g)) {
                stack.push(s.mul(x, g));
            }
        }
    }
    if reached.len() != s.size() {
        return Err(violated("letters do not generate S"));
    }
    let e = input.e;
    if e == zero || !s.is_idempotent(e) {
        return Err(violated(format!("{e} is not a non-zero idempotent")));
    }
    let zc = green.j_class[zero];
    let nonzero: Vec<usize> = (0..green.num_j_classes()).filter(|&c| c != zc).collect();
    let zero_minimal: Vec<usize> = nonzero
        .iter()
        .copied()
        .filter(|&c| nonzero.iter().all(|&d| d == c || !green.j_class_leq(d, c)))
        .collect();
    if zero_minimal != [green.j_class[e]] {
        return Err(violated("the J-class of e is not the unique 0-minimal J-class"));
    }
    let n = n1 - 1;
    if input.z.is_empty() || !input.z.contains(&0) {
        return Err(violated("z must contain the first letter"));
    }
    if let Some(&x) = input.z.iter().find(|&&x| x + 1 >= n) {
        return Err(violated(format!("z uses letter {} outside x_1..x_(n-1)", input.alphabet.get(x).map_or("?", |s| s))));
    }
    let zs = input.z.iter().fold(None, |acc: Option<usize>, &x| {
        Some(acc.map_or(input.letters[x], |a| s.mul(a, input.letters[x])))
    });
    if s.mul(s.omega_power(zs.unwrap()), e) != e {
        return Err(violated("z^ω e differs from e"));
    }
    Ok(())
}

/// Validates the input and builds the generators `x̃_1, …, x̃_{n+1}`.
pub fn plan_cover(input: CoverInput) -> Result<CoverPlan> {
    let green = input.s.green_structure();
    check_hypotheses(&input, &green)?;
    let embedding = match wreath_embed(&input.s, &green, input.e) {
        Err(Error::NotFaithful(a, b)) => {
            return Err(violated(format!("Schützenberger representation identifies {a} and {b}")))
        }
        other => other?,
    };
    let k = &embedding.rees.group;
    let h = &input.h;
    let h_identity = h.group_identity().ok_or_else(|| violated("H is not a group"))?;
    let alpha = &input.alpha;
    if alpha.len() != h.size() || alpha.iter().any(|&x| x >= k.size()) {
        return Err(violated("α is not a map H → K"));
    }
    for a in 0..h.size() {
        for c in 0..h.size() {
            if alpha[h.mul(a, c)] != k.mul(alpha[a], alpha[c]) {
                return Err(violated(format!("α is not a homomorphism at ({a}, {c})")));
            }
        }
    }
    let sigma: Vec<usize> = (0..k.size())
        .map(|x| if x == 0 { Some(h_identity) } else { (0..h.size()).find(|&g| alpha[g] == x) })
        .collect::<Option<_>>()
        .ok_or_else(|| violated("α is not surjective"))?;
    let mut kernel: Vec<usize> = (0..h.size()).filter(|&g| alpha[g] == 0 && g != h_identity).collect();
    kernel.insert(0, h_identity);

    let b = embedding.dim();
    let ell = kernel.len().checked_pow(b as u32).filter(|&l| l < MAX_DIM).ok_or(Error::PrimeSearchFailed(MAX_DIM))?;
    let lifted: Vec<RowMonomialMatrix> =
        input.letters.iter().map(|&x| embedding.matrices[x].map_entries(|g| sigma[g])).collect();
    let z_mat = input.z[1..].iter().fold(lifted[input.z[0]].clone(), |acc, &x| acc.mul(&lifted[x], h));
    let (idx, per) = index_period(&z_mat, |a, c| a.mul(c, h));
    let m = idx.div_ceil(per) * per;
    let zx1 = input.z.iter().filter(|&&x| x == 0).count();
    let bound = m.max(ell).max(zx1);
    let p = (bound + 1..).find(|&q| is_prime(q)).unwrap();
    if p * b >= MAX_DIM {
        return Err(Error::PrimeSearchFailed(bound));
    }

    let n = input.letters.len() - 1;
    let tuple = |j: usize| -> Vec<usize> {
        let mut d = vec![0; b];
        let mut r = j;
        for slot in d.iter_mut().rev() {
            *slot = kernel[r % kernel.len()];
            r /= kernel.len();
        }
        d
    };
    let mut generators = Vec::with_capacity(n + 1);
    generators.push(RowMonomialMatrix::from_blocks(
        p,
        b,
        &(0..p).map(|i| (i, (i + 1) % p, &lifted[0])).collect::<Vec<_>>(),
    ));
    for m_x in &lifted[1..n - 1] {
        generators.push(RowMonomialMatrix::from_blocks(p, b, &(0..p).map(|i| (i, i, m_x)).collect::<Vec<_>>()));
    }
    let twisted: Vec<RowMonomialMatrix> =
        (0..p).map(|j| if j < ell { lifted[n - 1].left_diagonal(&tuple(j), h) } else { lifted[n - 1].clone() }).collect();
    generators.push(RowMonomialMatrix::from_blocks(p, b, &twisted.iter().enumerate().map(|(j, t)| (j, 0, t)).collect::<Vec<_>>()));
    generators.push(RowMonomialMatrix::zero(p * b));

    Ok(CoverPlan { input, embedding, h_identity, sigma, kernel, b, ell, m, p, lifted, generators })
}

/// Text form of a flattened block matrix: a `block i j` header per non-zero
/// block, followed by its rows.
pub fn block_matrix_text(m: &RowMonomialMatrix, b: usize) -> String {
    let mut out = String::new();
    for (i, j, blk) in m.nonzero_blocks(b) {
        out.push_str(&format!("block {i} {j}\n"));
        for r in blk.rows() {
            match r {
                Some((c, g)) => out.push_str(&format!("{c}:{g}\n")),
                None => out.push_str("-\n"),
            }
        }
    }
    if out.is_empty() {
        out.push_str("zero\n");
    }
    out
}

/// Counts of what the verification covered.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverReport {
    pub size: usize,
    pub j_prime_size: usize,
    /// Number of words of length ≤ 10 on which `ρ∘η = φ` was checked.
    pub words_checked: u128,
    pub sampled_words: usize,
    /// Distinct values `η(w)` compared against the `ᾱ`-preimages of `M_w`.
    pub preimage_checks: usize,
    /// First word containing `x_n` whose block entries are a proper subset
    /// of the preimages. Words starting with `x_n` never appear here.
    pub preimage_mismatch: Option<PreimageGap>,
    pub subgroup_size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreimageGap {
    pub word: Word,
    pub found: usize,
    pub expected: usize,
}

/// The cover semigroup `S'` with `ρ: S' → S` and `θ: G_f → H`, where `f`
/// plays the role of `η(e)`.
#[derive(Debug, Clone)]
pub struct CoverResult {
    pub plan: CoverPlan,
    pub closure: Closure<RowMonomialMatrix>,
    pub rho: Vec<usize>,
    pub zero: usize,
    pub j_prime: Vec<usize>,
    /// Idempotent of `J'` over `e`, fixed by `η(z)^ω`.
    pub f: usize,
    /// Block column of `f`; block indices are renamed by subtracting it.
    pub column_shift: usize,
    /// `(element of G_f, θ of it)`, `f` first.
    pub theta: Vec<(usize, usize)>,
    pub report: CoverReport,
}

const EXHAUSTIVE_LEN: usize = 10;
const PREIMAGE_LEN: usize = 8;
const SAMPLES: usize = 10_000;
const SAMPLE_MAX_LEN: usize = 24;

impl CoverPlan {
    fn phi_word(&self, w: &[usize]) -> usize {
        let s = &self.input.s;
        w[1..].iter().fold(self.input.letters[w[0]], |a, &x| s.mul(a, self.input.letters[x]))
    }

    /// `ᾱ`-image of a block, looked up in `S`.
    fn alpha_bar(&self, u: &RowMonomialMatrix) -> Option<usize> {
        self.embedding.lookup.get(&u.map_entries(|g| self.input.alpha[g])).copied()
    }

    /// All `ᾱ`-preimages of `M_t`.
    fn preimages(&self, t: usize) -> BTreeSet<RowMonomialMatrix> {
        let base = self.embedding.matrices[t].map_entries(|g| self.sigma[g]);
        let nk = self.kernel.len();
        (0..self.ell)
            .map(|j| {
                let mut d = vec![0; self.b];
                let mut r = j;
                for slot in d.iter_mut().rev() {
                    *slot = self.kernel[r % nk];
                    r /= nk;
                }
                base.left_diagonal(&d, &self.input.h)
            })
            .collect()
    }

    /// Closes the generators (at most `cap` elements) and verifies the cover.
    pub fn build(self, cap: usize, seed: u64) -> Result<CoverResult> {
        let h = self.input.h.clone();
        let s = self.input.s.clone();
        let mul = |a: &RowMonomialMatrix, c: &RowMonomialMatrix| a.mul(c, &h);
        let closure = Closure::generate(&self.generators, mul, cap)?;
        let size = closure.len();
        let k = self.generators.len();
        let n = k - 1;
        let b = self.b;
        let elem = |i: usize| closure.elements.get_index(i).unwrap();
        let zero = closure.gen_index[n] as usize;
        let s_zero = s.zero().unwrap();
        let fail = |msg: String| Err(Error::CheckFailed(msg));

        // ρ from block entries
        let mut rho = Vec::with_capacity(size);
        for i in 0..size {
            let m = elem(i);
            if m.is_zero() {
                rho.push(s_zero);
                continue;
            }
            let blocks = m.nonzero_blocks(b);
            if blocks.len() != self.p || !m.is_block_row_monomial(b) {
                return fail(format!("element {i} has a zero block row"));
            }
            let images: BTreeSet<Option<usize>> = blocks.iter().map(|(_, _, u)| self.alpha_bar(u)).collect();
            match images.into_iter().collect::<Vec<_>>()[..] {
                [Some(t)] if t != s_zero => rho.push(t),
                _ => return fail(format!("block entries of element {i} disagree under ᾱ")),
            }
        }
        for g in 0..k {
            if rho[closure.gen_index[g] as usize] != self.input.letters[g] {
                return fail(format!("ρ(x̃_{}) differs from φ", g + 1));
            }
        }
        for i in 0..size {
            for g in 0..k {
                if rho[closure.right_mul(i, g)] != s.mul(rho[i], self.input.letters[g]) {
                    return Err(Error::NotHomomorphism(i, g));
                }
            }
        }

        // ρ∘η = φ on all words of length ≤ 10, by level sets of (η(w), φ(w))
        let mut level: HashSet<(usize, usize)> =
            (0..k).map(|g| (closure.gen_index[g] as usize, self.input.letters[g])).collect();
        let mut words_checked: u128 = 0;
        for len in 1..=EXHAUSTIVE_LEN {
            words_checked += (k as u128).pow(len as u32);
            if let Some(&(x, t)) = level.iter().find(|&&(x, t)| rho[x] != t) {
                return fail(format!("ρ(η(w)) = {} but φ(w) = {t} at length {len}", rho[x]));
            }
            if len < EXHAUSTIVE_LEN {
                level = level
                    .iter()
                    .flat_map(|&(x, t)| (0..k).map(move |g| (x, t, g)))
                    .map(|(x, t, g)| (closure.right_mul(x, g), s.mul(t, self.input.letters[g])))
                    .collect();
            }
        }

        // η(u) = 0 ⟺ φ(u) = 0 on sampled words
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..SAMPLES {
            let len = rng.gen_range(1..=SAMPLE_MAX_LEN);
            let w: Word = (0..len).map(|_| rng.gen_range(0..k)).collect();
            if (closure.eval(&w) == zero) != (self.phi_word(&w) == s_zero) {
                return fail(format!("zero pattern differs on {w:?}"));
            }
        }

        // block entries of η(w) against the ᾱ-preimages of M_w, for words
        // containing x_n (tracked as 1) or starting with it (tracked as 2)
        let xn = n - 1;
        let mut seen: HashSet<(usize, u8)> =
            (0..k).map(|g| (closure.gen_index[g] as usize, if g == xn { 2 } else { 0 })).collect();
        let mut frontier: Vec<(usize, u8)> = seen.iter().copied().collect();
        for _ in 1..PREIMAGE_LEN {
            let mut next = Vec::new();
            for &(x, tag) in &frontier {
                for g in 0..k {
                    let st = (closure.right_mul(x, g), if tag == 0 && g == xn { 1 } else { tag });
                    if seen.insert(st) {
                        next.push(st);
                    }
                }
            }
            frontier = next;
        }
        let mut preimage_checks = 0;
        let mut preimage_mismatch = None;
        let by_tag = |t: u8| -> BTreeSet<usize> { seen.iter().filter(|&&(x, tag)| tag == t && x != zero).map(|&(x, _)| x).collect() };
        let (leading, containing) = (by_tag(2), by_tag(1));
        for (&x, lead) in leading.iter().map(|x| (x, true)).chain(containing.iter().map(|x| (x, false))) {
            let entries: BTreeSet<RowMonomialMatrix> = elem(x).nonzero_blocks(b).into_iter().map(|(_, _, u)| u).collect();
            let expected = self.preimages(rho[x]);
            if !entries.is_subset(&expected) {
                return fail(format!("a block entry of element {x} is not an ᾱ-preimage"));
            }
            if entries != expected {
                if lead {
                    return fail(format!("block entries of {:?} miss ᾱ-preimages", closure.witness(x)));
                }
                preimage_mismatch.get_or_insert_with(|| PreimageGap {
                    word: closure.witness(x),
                    found: entries.len(),
                    expected: expected.len(),
                });
            }
            preimage_checks += 1;
        }

        // J' and its image
        let left = closure.left_cayley(&self.generators, mul);
        let cayley = CayleyGraph { n: size, k, right: closure.right.clone(), left };
        let idem: Vec<bool> = (0..size).map(|i| mul(elem(i), elem(i)) == *elem(i)).collect();
        let green = GreenStructure::compute(&cayley, &idem, false);
        let zc = green.j_class[zero];
        let zero_minimal: Vec<usize> = (0..green.num_j_classes())
            .filter(|&c| c != zc)
            .filter(|&c| {
                green.j_members(c).iter().all(|&x| {
                    (0..k).all(|g| {
                        let d = green.j_class[cayley.right[x * k + g] as usize];
                        let l = green.j_class[cayley.left[x * k + g] as usize];
                        (d == c || d == zc) && (l == c || l == zc)
                    })
                })
            })
            .collect();
        let [jp] = zero_minimal[..] else {
            return fail(format!("S' has {} 0-minimal J-classes", zero_minimal.len()));
        };
        let j_prime = green.j_members(jp).to_vec();
        let s_green = s.green_structure();
        let j = s_green.j_class[self.input.e];
        let image: BTreeSet<usize> = j_prime.iter().map(|&x| rho[x]).collect();
        if image.iter().copied().collect::<Vec<_>>() != s_green.j_members(j) {
            return fail("ρ(J') differs from J".into());
        }
        for &x in &j_prime {
            let cols: BTreeSet<usize> = elem(x).nonzero_blocks(b).iter().map(|&(_, c, _)| c).collect();
            if cols.len() != 1 {
                return fail(format!("block entries of {x} ∈ J' span several columns"));
            }
        }

        // the idempotent over e fixed by η(z)^ω
        let ez = elem(closure.eval(&self.input.z)).clone();
        let (zi, zp) = index_period(&ez, mul);
        let z_omega = (1..zi.div_ceil(zp) * zp).fold(ez.clone(), |acc, _| mul(&acc, &ez));
        let f = *j_prime
            .iter()
            .find(|&&x| idem[x] && rho[x] == self.input.e && mul(&z_omega, elem(x)) == *elem(x))
            .ok_or_else(|| Error::CheckFailed("no idempotent of J' over e is fixed by η(z)^ω".into()))?;
        let column_shift = elem(f).nonzero_blocks(b)[0].1;
        let corner = column_shift * b;
        let kgroup = &self.embedding.rees.group_members;

        // θ on the maximal subgroup at f
        let mut subgroup: Vec<usize> = (0..size).filter(|&x| green.h_class[x] == green.h_class[f]).collect();
        subgroup.retain(|&x| x != f);
        subgroup.insert(0, f);
        let theta: Vec<(usize, usize)> = subgroup
            .iter()
            .map(|&x| {
                elem(x)
                    .entry(corner, corner)
                    .map(|g| (x, g))
                    .ok_or_else(|| Error::CheckFailed(format!("θ undefined at {x}")))
            })
            .collect::<Result<_>>()?;
        if theta[0].1 != self.h_identity {
            return fail("θ(f) is not the identity".into());
        }
        let distinct: BTreeSet<usize> = theta.iter().map(|&(_, g)| g).collect();
        if distinct.len() != theta.len() || theta.len() != h.size() {
            return fail(format!("θ is not a bijection: |G_f| = {}, |H| = {}", theta.len(), h.size()));
        }
        let pos: HashMap<&RowMonomialMatrix, usize> = theta.iter().map(|&(x, g)| (elem(x), g)).collect();
        for &(x, gx) in &theta {
            for &(y, gy) in &theta {
                let xy = mul(elem(x), elem(y));
                if pos.get(&xy) != Some(&h.mul(gx, gy)) {
                    return fail(format!("θ is not multiplicative at ({x}, {y})"));
                }
            }
        }
        for &(x, g) in &theta {
            if kgroup.get(self.input.alpha[g]) != Some(&rho[x]) {
                return fail(format!("αθ differs from ρ at {x}"));
            }
        }

        let report = CoverReport {
            size,
            j_prime_size: j_prime.len(),
            words_checked,
            sampled_words: SAMPLES,
            preimage_checks,
            preimage_mismatch,
            subgroup_size: theta.len(),
        };
        Ok(CoverResult { plan: self, closure, rho, zero, j_prime, f, column_shift, theta, report })
    }
}

impl CoverResult {
    /// Generators in block form, then the tables of `ρ` and `θ`.
    pub fn to_text(&self) -> String {
        let plan = &self.plan;
        let mut out = format!(
            "cover b {} ell {} m {} p {} size {} column_shift {}\n",
            plan.b, plan.ell, plan.m, plan.p, self.report.size, self.column_shift
        );
        for (name, g) in plan.input.alphabet.iter().zip(&plan.generators) {
            out.push_str(&format!("generator {name}\n"));
            out.push_str(&block_matrix_text(g, plan.b));
        }
        out.push_str("rho");
        for t in &self.rho {
            out.push_str(&format!(" {t}"));
        }
        out.push_str("\ntheta");
        for (x, g) in &self.theta {
            out.push_str(&format!(" {x}:{g}"));
        }
        out.push('\n');
        out
    }
}
