//! Syntactic semigroups of sofic shifts, the AGGM test, backward
//! reconstruction of a shift from an AGGM semigroup, and Fischer covers.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::finsemi::{
    close_transformations, lift_jclass, FiniteSemigroup, GreenStructure, LiftedClass, PartialTransformation,
    SemigroupMorphism,
};
use crate::shiftspace::{factor_dfa, Dfa, Presentation};
use crate::Word;

/// Largest semigroup materialised with a full multiplication table.
pub const DEFAULT_SEMIGROUP_CAP: usize = 4096;

/// A separating context `(x, y)` for a pair of distinct elements.
pub type Context = (Word, Word);

/// Transition semigroup of a language automaton: letter actions as partial
/// maps on the live states, the semigroup they generate, and one separating
/// context per pair of distinct elements.
#[derive(Debug, Clone)]
pub struct SyntacticData {
    pub semigroup: FiniteSemigroup,
    /// Element of each letter.
    pub letter_map: Vec<usize>,
    pub alphabet: Vec<String>,
    pub source: Option<Presentation>,
    /// Minimal automaton of the language over `alphabet`.
    pub dfa: Dfa,
    /// Action of each element on the live states of `dfa`.
    pub actions: Vec<PartialTransformation>,
    /// `separating[i]` separates the `i`-th pair `(s, t)`, `s < t`, in
    /// lexicographic pair order.
    separating: Vec<Context>,
}

/// Syntactic semigroup of the factor language of an irreducible presentation.
pub fn syntactic_semigroup(p: &Presentation) -> Result<SyntacticData> {
    syntactic_semigroup_capped(p, DEFAULT_SEMIGROUP_CAP)
}

pub fn syntactic_semigroup_capped(p: &Presentation, cap: usize) -> Result<SyntacticData> {
    let dfa = factor_dfa(p)?;
    let mut data = SyntacticData::from_dfa(&dfa, p.alphabet.clone(), cap)?;
    data.source = Some(p.clone());
    Ok(data)
}

impl SyntacticData {
    /// Syntactic data of the language of a minimal automaton.
    pub fn from_dfa(dfa: &Dfa, alphabet: Vec<String>, cap: usize) -> Result<Self> {
        let dfa = dfa.minimize();
        let live = dfa.live_states();
        let mut index = vec![None; dfa.num_states];
        let mut live_states = Vec::new();
        for q in 0..dfa.num_states {
            if live[q] {
                index[q] = Some(live_states.len());
                live_states.push(q);
            }
        }
        let gens: Vec<PartialTransformation> = (0..dfa.alphabet_size)
            .map(|x| PartialTransformation::new(live_states.iter().map(|&q| index[dfa.step(q, x)])))
            .collect();
        let generated = close_transformations(&gens, cap)?;
        let letter_map = generated.semigroup.generators().to_vec();
        let mut data = SyntacticData {
            semigroup: generated.semigroup,
            letter_map,
            alphabet,
            source: None,
            dfa,
            actions: generated.elements,
            separating: Vec::new(),
        };
        data.separating = data.compute_separating(&live_states)?;
        Ok(data)
    }

    fn compute_separating(&self, live_states: &[usize]) -> Result<Vec<Context>> {
        let n = self.semigroup.size();
        let access = self.dfa.access_words();
        let sink = self.dfa.sink();
        let image = |s: usize, i: usize| self.actions[s].apply(i).map(|j| live_states[j]).or(sink);
        let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for s in 0..n {
            for t in s + 1..n {
                let i = (0..live_states.len())
                    .find(|&i| self.actions[s].apply(i) != self.actions[t].apply(i))
                    .ok_or_else(|| Error::CheckFailed(format!("elements {s} and {t} act identically")))?;
                let (ps, pt) = (image(s, i).unwrap(), image(t, i).unwrap());
                let x = access[live_states[i]].clone().expect("minimal automata are accessible");
                let y = self
                    .dfa
                    .distinguishing_word(ps, pt)
                    .ok_or_else(|| Error::CheckFailed(format!("states {ps} and {pt} are equivalent")))?;
                out.push((x, y));
            }
        }
        Ok(out)
    }

    /// Separating context of two distinct elements.
    pub fn separating_context(&self, s: usize, t: usize) -> &Context {
        let (s, t) = if s < t { (s, t) } else { (t, s) };
        let n = self.semigroup.size();
        // pairs (a, b), a < b, are listed row by row
        let offset = s * n - s * (s + 1) / 2;
        &self.separating[offset + (t - s - 1)]
    }

    /// Confirms every stored context separates its pair in the language.
    pub fn verify_separating_contexts(&self) -> Result<()> {
        let n = self.semigroup.size();
        for s in 0..n {
            for t in s + 1..n {
                let (x, y) = self.separating_context(s, t);
                let word = |e: usize| [x.as_slice(), self.semigroup.witness(e), y.as_slice()].concat();
                if self.dfa.accepts(&word(s)) == self.dfa.accepts(&word(t)) {
                    return Err(Error::CheckFailed(format!("context fails to separate {s} and {t}")));
                }
            }
        }
        Ok(())
    }

    /// Image of a word under the syntactic morphism.
    pub fn lambda(&self, word: &[usize]) -> usize {
        self.semigroup.eval(word)
    }

    pub fn zero(&self) -> Option<usize> {
        self.semigroup.zero()
    }

    /// Adds `names.len()` letters sent to zero (the empty action).
    pub fn with_zero_letters(&self, names: &[&str], cap: usize) -> Result<Self> {
        let dfa = self.dfa.with_dead_letters(names.len());
        let mut alphabet = self.alphabet.clone();
        alphabet.extend(names.iter().map(|s| s.to_string()));
        let mut data = SyntacticData::from_dfa(&dfa, alphabet, cap)?;
        data.source = self.source.clone();
        Ok(data)
    }

    pub fn format_word(&self, w: &[usize]) -> String {
        let sep = if self.alphabet.iter().all(|l| l.chars().count() == 1) { "" } else { " " };
        w.iter().map(|&x| self.alphabet[x].as_str()).collect::<Vec<_>>().join(sep)
    }
}

/// Outcome of a successful AGGM test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AggmReport {
    /// The distinguished J-class; `None` for the trivial semigroup.
    pub distinguished: Option<usize>,
    pub class_members: Vec<usize>,
}

/// `s ↦ (s·x)_{x ∈ ideal}` (or `(x·s)` when `left` is false) is injective.
fn acts_faithfully(s: &FiniteSemigroup, ideal: &[usize], on_left: bool) -> bool {
    let mut seen = HashSet::with_capacity(s.size());
    (0..s.size()).all(|a| {
        let sig: Vec<usize> = ideal
            .iter()
            .map(|&x| if on_left { s.mul(a, x) } else { s.mul(x, a) })
            .collect();
        seen.insert(sig)
    })
}

/// Returns the distinguished J-class when `s` is an AGGM semigroup: it has
/// a (0-)minimal regular ideal on which it acts faithfully on both sides and
/// whose non-zero H-classes are trivial.
pub fn is_aggm(s: &FiniteSemigroup) -> Option<AggmReport> {
    if s.is_trivial() {
        return Some(AggmReport { distinguished: None, class_members: vec![0] });
    }
    let green = s.green_structure();
    is_aggm_with(s, &green)
}

pub fn is_aggm_with(s: &FiniteSemigroup, green: &GreenStructure) -> Option<AggmReport> {
    if s.is_trivial() {
        return Some(AggmReport { distinguished: None, class_members: vec![0] });
    }
    let zero_class = s.zero().map(|z| green.j_class[z]);
    let candidates: Vec<usize> = match zero_class {
        Some(zc) => (0..green.num_j_classes())
            .filter(|&j| j != zc)
            .filter(|&j| (0..green.num_j_classes()).all(|d| d == j || d == zc || !green.j_class_leq(d, j)))
            .collect(),
        None => green.minimal_j_classes(),
    };
    candidates.into_iter().find_map(|j| {
        if !green.regular[j] {
            return None;
        }
        let members = green.j_members(j).to_vec();
        if members.iter().any(|&m| green.h_members(m).len() != 1) {
            return None;
        }
        let mut ideal = members.clone();
        ideal.extend(s.zero());
        (acts_faithfully(s, &ideal, true) && acts_faithfully(s, &ideal, false))
            .then_some(AggmReport { distinguished: Some(j), class_members: members })
    })
}

/// `s = t` iff `xsy ∈ J ⟺ xty ∈ J` for all `x, y ∈ J`, checked exhaustively.
pub fn j_contexts_separate(s: &FiniteSemigroup, green: &GreenStructure, j: usize) -> bool {
    let members = green.j_members(j);
    let mut seen = HashSet::new();
    (0..s.size()).all(|a| {
        let sig: Vec<bool> = members
            .iter()
            .flat_map(|&x| members.iter().map(move |&y| (x, y)))
            .map(|(x, y)| green.j_class[s.mul(s.mul(x, a), y)] == j)
            .collect();
        seen.insert(sig)
    })
}

/// Forward direction: the syntactic semigroup of an irreducible shift is AGGM.
pub fn aggm_forward(p: &Presentation) -> Result<(SyntacticData, AggmReport)> {
    let data = syntactic_semigroup(p)?;
    let report = is_aggm(&data.semigroup)
        .ok_or_else(|| Error::CheckFailed("syntactic semigroup is not AGGM".into()))?;
    Ok((data, report))
}

/// Result of reconstructing a shift from an AGGM semigroup.
#[derive(Debug, Clone)]
pub struct Reconstruction {
    pub report: AggmReport,
    /// Minimal automaton of the words not sent to zero.
    pub language: Dfa,
    /// Syntactic data of that language; its semigroup is isomorphic to the input.
    pub syntactic: SyntacticData,
    /// Isomorphism from the input onto `syntactic.semigroup`.
    pub iso: Vec<usize>,
}

/// Backward direction: for an AGGM semigroup generated by the letters
/// (one generator per letter), the words not sent to zero form a factorial,
/// prolongable, irreducible language whose syntactic semigroup is `s`.
pub fn aggm_backward(s: &FiniteSemigroup, alphabet: Vec<String>) -> Result<Reconstruction> {
    let report = is_aggm(s).ok_or(Error::NotAggm)?;
    let k = s.generators().len();
    if alphabet.len() != k {
        return Err(Error::DimensionMismatch { expected: k, found: alphabet.len() });
    }
    let n = s.size();
    // the trivial semigroup recognises the full shift
    let nonzero = |a: usize| s.is_trivial() || Some(a) != s.zero();
    // irreducible: every two non-zero elements are connected inside S¹
    for a in (0..n).filter(|&a| nonzero(a)) {
        for b in (0..n).filter(|&b| nonzero(b)) {
            let connected = nonzero(s.mul(a, b)) || (0..n).any(|r| nonzero(s.mul(s.mul(a, r), b)));
            if !connected {
                return Err(Error::CheckFailed(format!(
                    "not irreducible: {} · w · {} is zero for every w",
                    fmt_witness(s, a, &alphabet),
                    fmt_witness(s, b, &alphabet)
                )));
            }
        }
    }
    // prolongable on both sides by a letter
    for a in (0..n).filter(|&a| nonzero(a)) {
        let gens = s.generators();
        if !gens.iter().any(|&g| nonzero(s.mul(a, g))) || !gens.iter().any(|&g| nonzero(s.mul(g, a))) {
            return Err(Error::CheckFailed(format!("not prolongable at {}", fmt_witness(s, a, &alphabet))));
        }
    }
    // automaton on S¹ (state n is the adjoined identity)
    let mut trans = Vec::with_capacity((n + 1) * k);
    for q in 0..=n {
        for &g in s.generators() {
            trans.push(if q == n { g } else { s.mul(q, g) } as u32);
        }
    }
    let mut accepting: Vec<bool> = (0..n).map(nonzero).collect();
    accepting.push(true);
    let language = Dfa { num_states: n + 1, alphabet_size: k, trans, initial: n, accepting }.minimize();
    let syntactic = SyntacticData::from_dfa(&language, alphabet, DEFAULT_SEMIGROUP_CAP.max(n))?;
    let phi = SemigroupMorphism::generator_compatible(s, &syntactic.semigroup)
        .map_err(|e| Error::CheckFailed(format!("input does not map onto the syntactic semigroup: {e}")))?;
    if syntactic.semigroup.size() != n || !phi.is_surjective() {
        return Err(Error::CheckFailed(format!(
            "syntactic semigroup has {} elements, input has {n}",
            syntactic.semigroup.size()
        )));
    }
    let iso = phi.map.clone();
    Ok(Reconstruction { report, language, syntactic, iso })
}

fn fmt_witness(s: &FiniteSemigroup, a: usize, alphabet: &[String]) -> String {
    s.witness(a).iter().map(|&x| alphabet[x].as_str()).collect()
}

/// Right-resolving presentation on an R-class of the distinguished J-class:
/// vertices are the members of the R-class of the least idempotent, with an
/// edge `r → r·λ(x)` labelled `x` whenever the product stays in the class.
pub fn fischer_cover(d: &SyntacticData) -> Result<Presentation> {
    let s = &d.semigroup;
    let k = d.alphabet.len();
    let used: Vec<usize> = (0..k)
        .filter(|&x| s.is_trivial() || Some(d.letter_map[x]) != s.zero())
        .collect();
    let names: Vec<String> = used.iter().map(|&x| d.alphabet[x].clone()).collect();
    if s.is_trivial() {
        let edges = (0..used.len()).map(|x| (0, x, 0)).collect();
        return Presentation::new(1, names, edges);
    }
    let green = s.green_structure();
    let report = is_aggm_with(s, &green).ok_or(Error::NotAggm)?;
    let e = *report
        .class_members
        .iter()
        .find(|&&m| s.is_idempotent(m))
        .expect("distinguished class is regular");
    let r: Vec<usize> = report
        .class_members
        .iter()
        .copied()
        .filter(|&m| green.r_class[m] == green.r_class[e])
        .collect();
    let mut edges = Vec::new();
    for (i, &v) in r.iter().enumerate() {
        for (xi, &x) in used.iter().enumerate() {
            if let Ok(t) = r.binary_search(&s.mul(v, d.letter_map[x])) {
                edges.push((i, xi, t));
            }
        }
    }
    let cover = Presentation::new(r.len(), names, edges)?;
    // checks: deterministic, strongly connected, same language
    let mut labels = HashSet::new();
    if !cover.edges.iter().all(|&(src, x, _)| labels.insert((src, x))) {
        return Err(Error::CheckFailed("cover is not right-resolving".into()));
    }
    cover.require_irreducible()?;
    let cover_dfa = factor_dfa(&cover)?;
    let own = restrict_alphabet(&d.dfa, &used);
    if !cover_dfa.equivalent(&own) {
        return Err(Error::CheckFailed("cover presents a different language".into()));
    }
    Ok(cover)
}

/// Automaton over the sub-alphabet `letters` (renumbered in order).
fn restrict_alphabet(d: &Dfa, letters: &[usize]) -> Dfa {
    let k = letters.len();
    let mut trans = Vec::with_capacity(d.num_states * k);
    for q in 0..d.num_states {
        for &x in letters {
            trans.push(d.step(q, x) as u32);
        }
    }
    Dfa { num_states: d.num_states, alphabet_size: k, trans, initial: d.initial, accepting: d.accepting.clone() }
        .minimize()
}

/// The least J-class of `psi.source` mapping into the distinguished class,
/// for a generator-compatible surjection onto the syntactic semigroup.
pub fn image_apex(psi: &SemigroupMorphism<'_>, d: &SyntacticData) -> Result<LiftedClass> {
    if psi.target != &d.semigroup {
        return Err(Error::NoCompatibleTriangle("target is not the syntactic semigroup".into()));
    }
    let gens = psi.source.generators();
    if gens.len() != d.letter_map.len() {
        return Err(Error::NoCompatibleTriangle("generator counts differ".into()));
    }
    if let Some(x) = (0..gens.len()).find(|&x| psi.apply(gens[x]) != d.letter_map[x]) {
        return Err(Error::NoCompatibleTriangle(format!("letter {} is not respected", d.alphabet[x])));
    }
    let report = is_aggm(&d.semigroup).ok_or(Error::NotAggm)?;
    let tg = d.semigroup.green_structure();
    let j = match report.distinguished {
        Some(j) => j,
        None => tg.j_class[0],
    };
    lift_jclass(psi, j)
}

/// Transition semigroup of an arbitrary complete automaton (total maps on
/// all states), letters as generators.
pub fn transition_semigroup(dfa: &Dfa, cap: usize) -> Result<FiniteSemigroup> {
    let gens: Vec<PartialTransformation> = (0..dfa.alphabet_size)
        .map(|x| PartialTransformation::total(&(0..dfa.num_states).map(|q| dfa.step(q, x)).collect::<Vec<_>>()))
        .collect();
    Ok(close_transformations(&gens, cap)?.semigroup)
}
