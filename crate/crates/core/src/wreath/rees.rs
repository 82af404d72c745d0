use std::collections::{BTreeSet, HashMap};

use super::matrix::RowMonomialMatrix;
use crate::error::{Error, Result};
use crate::finsemi::{close_transformations, FiniteSemigroup, GreenStructure, PartialTransformation};

/// A semigroup of partial maps obtained by letting `S` act on some set, with
/// the quotient map `S → image`.
#[derive(Debug, Clone)]
pub struct ActionRepresentation {
    /// Image semigroup, generated by the images of the generators of `S`.
    pub image: FiniteSemigroup,
    /// Partial map of each element of `image`.
    pub actions: Vec<PartialTransformation>,
    /// Quotient map from `S` into `image`.
    pub map: Vec<usize>,
    /// The set acted on: members of an R-class, or L-class ids.
    pub points: Vec<usize>,
}

fn least_idempotent(s: &FiniteSemigroup, green: &GreenStructure, j: usize) -> Result<usize> {
    if !green.regular[j] {
        return Err(Error::NotRegular(j));
    }
    Ok(*green.j_members(j).iter().find(|&&m| s.is_idempotent(m)).unwrap())
}

fn represent(s: &FiniteSemigroup, points: Vec<usize>, act: impl Fn(usize, usize) -> Option<usize>) -> Result<ActionRepresentation> {
    let per_element: Vec<PartialTransformation> = (0..s.size())
        .map(|t| PartialTransformation::new((0..points.len()).map(|i| act(i, t))))
        .collect();
    let gens: Vec<PartialTransformation> = s.generators().iter().map(|&g| per_element[g].clone()).collect();
    let generated = close_transformations(&gens, s.size().max(1))?;
    let index: HashMap<&PartialTransformation, usize> =
        generated.elements.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let map = per_element
        .iter()
        .map(|a| index.get(a).copied().ok_or_else(|| Error::CheckFailed("action image not generated".into())))
        .collect::<Result<Vec<_>>>()?;
    Ok(ActionRepresentation { image: generated.semigroup, actions: generated.elements, map, points })
}

/// Right Schützenberger representation of `S` on the R-class of the least
/// idempotent of the regular J-class `j`.
pub fn rm_representation(s: &FiniteSemigroup, green: &GreenStructure, j: usize) -> Result<ActionRepresentation> {
    let e = least_idempotent(s, green, j)?;
    let r: Vec<usize> = green.j_members(j).iter().copied().filter(|&m| green.r_class[m] == green.r_class[e]).collect();
    let rep = represent(s, r.clone(), |i, t| r.binary_search(&s.mul(r[i], t)).ok())?;
    // injective on every maximal subgroup of J
    for &f in green.j_members(j).iter().filter(|&&m| s.is_idempotent(m)) {
        let h = green.h_members(f);
        let images: BTreeSet<usize> = h.iter().map(|&x| rep.map[x]).collect();
        if images.len() != h.len() {
            return Err(Error::CheckFailed(format!("representation collapses the maximal subgroup at {f}")));
        }
    }
    Ok(rep)
}

/// Right action of `S` on the L-classes of the regular J-class `j`, listed
/// with `first` (an L-class of `j`) leading and the rest in increasing order.
pub fn rlm_representation_from(
    s: &FiniteSemigroup,
    green: &GreenStructure,
    j: usize,
    first: usize,
) -> Result<ActionRepresentation> {
    if !green.regular[j] {
        return Err(Error::NotRegular(j));
    }
    let mut classes = green.l_classes_in(j);
    let pos = classes.iter().position(|&l| l == first).expect("first L-class lies in J");
    classes.remove(pos);
    classes.insert(0, first);
    let rep_of: Vec<usize> = classes
        .iter()
        .map(|&l| *green.j_members(j).iter().find(|&&m| green.l_class[m] == l).unwrap())
        .collect();
    let act = |i: usize, t: usize| {
        let x = s.mul(rep_of[i], t);
        (green.j_class[x] == j).then(|| classes.iter().position(|&l| l == green.l_class[x]).unwrap())
    };
    represent(s, classes.clone(), act)
}

/// As [`rlm_representation_from`], starting from the L-class of the least idempotent.
pub fn rlm_representation(s: &FiniteSemigroup, green: &GreenStructure, j: usize) -> Result<ActionRepresentation> {
    let e = least_idempotent(s, green, j)?;
    let rep = rlm_representation_from(s, green, j, green.l_class[e])?;
    // elements of J act with rank ≤ 1 when J is the only 0-minimal class
    let zero_class = s.zero().map(|z| green.j_class[z]);
    let zero_minimal = (0..green.num_j_classes())
        .filter(|&c| Some(c) != zero_class)
        .filter(|&c| (0..green.num_j_classes()).all(|d| d == c || Some(d) == zero_class || !green.j_class_leq(d, c)))
        .collect::<Vec<_>>();
    if zero_minimal == [j] {
        if let Some(&m) = green.j_members(j).iter().find(|&&m| rep.actions[rep.map[m]].rank() > 1) {
            return Err(Error::RankTooHigh(m));
        }
    }
    Ok(rep)
}

/// Normalised Rees coordinates of a regular J-class: every element is
/// `x_a · g · y_b` with `x_a ∈ R_a ∩ L_e`, `y_b ∈ R_e ∩ L_b` and `g` in the
/// maximal subgroup `G` at `e`, and `y_b x_a` (when in `J`) is the
/// sandwich entry `C[b][a]`.
#[derive(Debug, Clone)]
pub struct ReesCoordinates {
    pub j: usize,
    pub e: usize,
    /// Maximal subgroup at `e`; element 0 is `e`.
    pub group: FiniteSemigroup,
    /// `group` element → element of `S`.
    pub group_members: Vec<usize>,
    /// R-class ids (index 0 is the class of `e`).
    pub r_classes: Vec<usize>,
    /// L-class ids (index 0 is the class of `e`).
    pub l_classes: Vec<usize>,
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    /// `sandwich[b][a]`
    pub sandwich: Vec<Vec<Option<usize>>>,
    coords: HashMap<usize, (usize, usize, usize)>,
}

impl ReesCoordinates {
    pub fn coordinatize(&self, s: usize) -> Option<(usize, usize, usize)> {
        self.coords.get(&s).copied()
    }

    /// Element of `S` at `(a, g, b)`.
    pub fn decoordinatize(&self, s: &FiniteSemigroup, (a, g, b): (usize, usize, usize)) -> usize {
        s.product(&[self.x[a], self.group_members[g], self.y[b]])
    }

    /// Product in `M⁰(G, A, B, C)`; `None` is zero.
    pub fn rees_mul(&self, p: (usize, usize, usize), q: (usize, usize, usize)) -> Option<(usize, usize, usize)> {
        let c = self.sandwich[p.2][q.0]?;
        Some((p.0, self.group.product(&[p.1, c, q.1]), q.2))
    }
}

/// Rees coordinates of the J-class of the idempotent `e`.
pub fn rees_coordinates_at(s: &FiniteSemigroup, green: &GreenStructure, e: usize) -> Result<ReesCoordinates> {
    if !s.is_idempotent(e) {
        return Err(Error::NotIdempotent(e));
    }
    let j = green.j_class[e];
    let mut group_members = green.h_members(e);
    group_members.retain(|&m| m != e);
    group_members.insert(0, e);
    let group = s.restrict(&group_members);
    let gpos: HashMap<usize, usize> = group_members.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let inv = |g: usize| group.inverse(g).expect("maximal subgroups are groups");

    let lead = |mut v: Vec<usize>, first: usize| {
        v.retain(|&c| c != first);
        v.insert(0, first);
        v
    };
    let r_classes = lead(green.r_classes_in(j), green.r_class[e]);
    let l_classes = lead(green.l_classes_in(j), green.l_class[e]);
    let members = green.j_members(j);
    let pick = |r: usize, l: usize| *members.iter().find(|&&m| green.r_class[m] == r && green.l_class[m] == l).unwrap();

    let mut x: Vec<usize> = r_classes.iter().map(|&r| pick(r, green.l_class[e])).collect();
    let mut y: Vec<usize> = l_classes.iter().map(|&l| pick(green.r_class[e], l)).collect();
    x[0] = e;
    y[0] = e;
    for xa in x.iter_mut() {
        if let Some(&g) = gpos.get(&s.mul(e, *xa)) {
            *xa = s.mul(*xa, group_members[inv(g)]);
        }
    }
    for yb in y.iter_mut() {
        if let Some(&g) = gpos.get(&s.mul(*yb, e)) {
            *yb = s.mul(group_members[inv(g)], *yb);
        }
    }
    let sandwich: Vec<Vec<Option<usize>>> =
        y.iter().map(|&yb| x.iter().map(|&xa| gpos.get(&s.mul(yb, xa)).copied()).collect()).collect();

    let mut coords = HashMap::new();
    for a in 0..x.len() {
        for (g, &gm) in group_members.iter().enumerate() {
            for b in 0..y.len() {
                let el = s.product(&[x[a], gm, y[b]]);
                if green.j_class[el] != j || coords.insert(el, (a, g, b)).is_some() {
                    return Err(Error::CheckFailed(format!("coordinates are not a bijection at {el}")));
                }
            }
        }
    }
    if coords.len() != members.len() {
        return Err(Error::CheckFailed("coordinates miss part of the J-class".into()));
    }
    let rees = ReesCoordinates { j, e, group, group_members, r_classes, l_classes, x, y, sandwich, coords };

    // normalisation of row b0 and column a0
    let normal = |c: &Option<usize>| c.is_none_or(|g| g == 0);
    if !rees.sandwich[0].iter().all(normal) || !rees.sandwich.iter().all(|row| normal(&row[0])) {
        return Err(Error::CheckFailed("sandwich matrix is not normalised".into()));
    }
    // J⁰ → M⁰(G, A, B, C) is a homomorphism
    for &p in members {
        for &q in members {
            let pq = s.mul(p, q);
            let expect = (green.j_class[pq] == j).then(|| rees.coords[&pq]);
            if rees.rees_mul(rees.coords[&p], rees.coords[&q]) != expect {
                return Err(Error::CheckFailed(format!("Rees product differs at ({p}, {q})")));
            }
        }
    }
    Ok(rees)
}

/// Rees coordinates of a regular J-class at its least idempotent.
pub fn rees_coordinates(s: &FiniteSemigroup, green: &GreenStructure, j: usize) -> Result<ReesCoordinates> {
    let e = least_idempotent(s, green, j)?;
    rees_coordinates_at(s, green, e)
}

/// The map `s ↦ M(s)` into `G ≀ (B, RLM)`: row `b` of `M(s)` records
/// `y_b · s = h · y_{b'}` as entry `h` in column `b'`.
#[derive(Debug, Clone)]
pub struct WreathEmbedding {
    pub rees: ReesCoordinates,
    pub matrices: Vec<RowMonomialMatrix>,
    pub lookup: HashMap<RowMonomialMatrix, usize>,
}

impl WreathEmbedding {
    pub fn dim(&self) -> usize {
        self.rees.l_classes.len()
    }
}

pub fn wreath_embed(s: &FiniteSemigroup, green: &GreenStructure, e: usize) -> Result<WreathEmbedding> {
    let rees = rees_coordinates_at(s, green, e)?;
    let j = rees.j;
    let matrices: Vec<RowMonomialMatrix> = (0..s.size())
        .map(|t| {
            RowMonomialMatrix::from_rows(rees.y.iter().map(|&yb| {
                let v = s.mul(yb, t);
                (green.j_class[v] == j).then(|| {
                    let (a, g, b) = rees.coordinatize(v).unwrap();
                    debug_assert_eq!(a, 0);
                    (b, g)
                })
            }))
        })
        .collect();
    let mut lookup = HashMap::with_capacity(s.size());
    for (t, m) in matrices.iter().enumerate() {
        if let Some(prev) = lookup.insert(m.clone(), t) {
            return Err(Error::NotFaithful(prev, t));
        }
    }
    for a in 0..s.size() {
        for b in 0..s.size() {
            if matrices[a].mul(&matrices[b], &rees.group) != matrices[s.mul(a, b)] {
                return Err(Error::NotHomomorphism(a, b));
            }
        }
    }
    // subgroup elements: constant first column, (0,0)-entry equal to k
    for (k, &km) in rees.group_members.iter().enumerate() {
        let m = &matrices[km];
        if m.entry(0, 0) != Some(k) || m.rows().any(|r| r.is_some_and(|x| x != (0, k))) {
            return Err(Error::CheckFailed(format!("matrix of subgroup element {km} is not in normal form")));
        }
    }
    Ok(WreathEmbedding { rees, matrices, lookup })
}

/// Outcome of the structure check for `G ≀ (B, T)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WreathStructure {
    pub size: usize,
    /// Simple (T total) rather than 0-simple.
    pub simple: bool,
    /// The chosen non-zero idempotent, as a matrix, with image point `b`.
    pub idempotent: RowMonomialMatrix,
    pub point: usize,
    pub subgroup_size: usize,
}

/// Builds `G ≀ (B, T)` for a transitive `T` of rank ≤ 1, checks it is simple
/// exactly when `T` is total and 0-simple otherwise, and that `s ↦ s_bb` is
/// an isomorphism from the maximal subgroup at a non-zero idempotent with
/// image `{b}` onto `G`.
pub fn wreath_product_0simple_check(g: &FiniteSemigroup, t_gens: &[PartialTransformation]) -> Result<WreathStructure> {
    if g.group_identity().is_none() {
        return Err(Error::CheckFailed("G is not a group".into()));
    }
    let t = close_transformations(t_gens, 1 << 16)?.elements;
    let dim = t[0].dim();
    if let Some(i) = t.iter().position(|m| m.rank() > 1) {
        return Err(Error::RankTooHigh(i));
    }
    for b in 0..dim {
        for c in 0..dim {
            if !t.iter().any(|m| m.apply(b) == Some(c)) {
                return Err(Error::NotTransitive(b, c));
            }
        }
    }
    // all matrices over G⁰ projecting into T
    let mut elems: Vec<RowMonomialMatrix> = Vec::new();
    for m in &t {
        let dom: Vec<usize> = m.domain().collect();
        let combos = g.size().pow(dom.len() as u32);
        for code in 0..combos {
            let mut rows = vec![None; dim];
            let mut c = code;
            for &r in &dom {
                rows[r] = Some((m.apply(r).unwrap(), c % g.size()));
                c /= g.size();
            }
            elems.push(RowMonomialMatrix::from_rows(rows));
        }
    }
    elems.sort();
    elems.dedup();
    let index: HashMap<&RowMonomialMatrix, usize> = elems.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let n = elems.len();
    let mut table = Vec::with_capacity(n * n);
    for a in &elems {
        for b in &elems {
            let prod = a.mul(b, g);
            table.push(*index.get(&prod).ok_or_else(|| Error::CheckFailed("wreath product not closed".into()))?);
        }
    }
    let s = FiniteSemigroup::from_table(n, table, (0..n).collect(), 0)?;
    let green = s.green_structure();
    let total = t.iter().all(|m| m.is_total());
    let zero = s.zero();
    let nonzero_classes: BTreeSet<usize> = (0..n).filter(|&x| Some(x) != zero).map(|x| green.j_class[x]).collect();
    let simple = green.num_j_classes() == 1;
    let zero_simple = zero.is_some() && nonzero_classes.len() == 1 && green.num_j_classes() == 2;
    if total != simple || (!total && !zero_simple) {
        return Err(Error::CheckFailed(format!(
            "expected a {} semigroup, found {} J-classes",
            if total { "simple" } else { "0-simple" },
            green.num_j_classes()
        )));
    }
    let e = (0..n).find(|&x| Some(x) != zero && s.is_idempotent(x)).expect("a regular class has an idempotent");
    let em = &elems[e];
    let image = em.projection().image();
    let point = image[0];
    let subgroup = green.h_members(e);
    let psi: Vec<usize> = subgroup
        .iter()
        .map(|&x| elems[x].entry(point, point).ok_or_else(|| Error::CheckFailed("ψ undefined".into())))
        .collect::<Result<_>>()?;
    let distinct: BTreeSet<usize> = psi.iter().copied().collect();
    if distinct.len() != g.size() || subgroup.len() != g.size() {
        return Err(Error::CheckFailed("ψ is not a bijection onto G".into()));
    }
    for (i, &x) in subgroup.iter().enumerate() {
        for (k, &y) in subgroup.iter().enumerate() {
            let xy = s.mul(x, y);
            let pos = subgroup.iter().position(|&h| h == xy).expect("H-class of an idempotent is closed");
            if psi[pos] != g.mul(psi[i], psi[k]) {
                return Err(Error::CheckFailed("ψ is not multiplicative".into()));
            }
        }
    }
    Ok(WreathStructure { size: n, simple, idempotent: em.clone(), point, subgroup_size: subgroup.len() })
}
