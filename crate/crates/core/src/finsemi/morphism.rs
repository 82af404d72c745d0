use std::collections::BTreeSet;

use super::{FiniteSemigroup, GreenStructure};
use crate::error::{Error, Result};

/// A homomorphism between two finite semigroups, checked on all pairs.
#[derive(Debug, Clone)]
pub struct SemigroupMorphism<'a> {
    pub source: &'a FiniteSemigroup,
    pub target: &'a FiniteSemigroup,
    pub map: Vec<usize>,
}

impl<'a> SemigroupMorphism<'a> {
    pub fn new(
        source: &'a FiniteSemigroup,
        target: &'a FiniteSemigroup,
        map: Vec<usize>,
    ) -> Result<Self> {
        if map.len() != source.size() {
            return Err(Error::DimensionMismatch {
                expected: source.size(),
                found: map.len(),
            });
        }
        for x in 0..source.size() {
            for y in 0..source.size() {
                if map[source.mul(x, y)] != target.mul(map[x], map[y]) {
                    return Err(Error::NotHomomorphism(x, y));
                }
            }
        }
        Ok(SemigroupMorphism { source, target, map })
    }

    /// The morphism sending generator `i` of `source` to `images[i]`,
    /// extended along witness words.
    pub fn from_generator_images(
        source: &'a FiniteSemigroup,
        target: &'a FiniteSemigroup,
        images: &[usize],
    ) -> Result<Self> {
        if images.len() != source.generators().len() {
            return Err(Error::DimensionMismatch {
                expected: source.generators().len(),
                found: images.len(),
            });
        }
        let map = (0..source.size())
            .map(|s| target.product(&source.witness(s).iter().map(|&g| images[g]).collect::<Vec<_>>()))
            .collect();
        Self::new(source, target, map)
    }

    /// The morphism respecting the designated generators on both sides.
    pub fn generator_compatible(
        source: &'a FiniteSemigroup,
        target: &'a FiniteSemigroup,
    ) -> Result<Self> {
        Self::from_generator_images(source, target, target.generators())
    }

    pub fn apply(&self, s: usize) -> usize {
        self.map[s]
    }

    pub fn is_surjective(&self) -> bool {
        self.missing_image().is_none()
    }

    fn missing_image(&self) -> Option<usize> {
        let mut hit = vec![false; self.target.size()];
        for &t in &self.map {
            hit[t] = true;
        }
        hit.iter().position(|&h| !h)
    }

    pub fn identity(s: &'a FiniteSemigroup) -> Self {
        SemigroupMorphism {
            source: s,
            target: s,
            map: (0..s.size()).collect(),
        }
    }
}

/// Result of lifting a regular J-class along a surjection.
#[derive(Debug, Clone)]
pub struct LiftedClass {
    /// J-class id in the source.
    pub class: usize,
    pub members: Vec<usize>,
    pub source_green: GreenStructure,
}

/// The unique minimal J-class `J'` of the source with `φ(J') ⊆ J`, together
/// with direct checks that `J'` is regular, `φ(J') = J`, that R-, L- and
/// H-classes of `J'` map onto classes of `J`, that idempotents map onto
/// idempotents, and that each maximal subgroup maps onto a maximal subgroup.
pub fn lift_jclass(phi: &SemigroupMorphism<'_>, target_class: usize) -> Result<LiftedClass> {
    if let Some(t) = phi.missing_image() {
        return Err(Error::NotSurjective(t));
    }
    let (src, tgt) = (phi.source, phi.target);
    let tg = tgt.green_structure();
    if !tg.regular[target_class] {
        return Err(Error::NotRegular(target_class));
    }
    let sg = src.green_structure();
    let target_rep = tg.j_members(target_class)[0];
    // φ⁻¹(Fact(J))
    let a: Vec<bool> = (0..src.size())
        .map(|s| tg.j_leq(target_rep, phi.apply(s)))
        .collect();
    let class = src.apex_with(&sg, &a)?;
    let members = sg.j_members(class).to_vec();
    let fail = |msg: String| Err(Error::CheckFailed(msg));

    // (1) minimality among classes mapping into J
    for j in 0..sg.num_j_classes() {
        let maps_in = sg.j_members(j).iter().all(|&s| tg.j_class[phi.apply(s)] == target_class);
        if maps_in && !sg.j_class_leq(class, j) {
            return fail(format!("J-class {j} maps into J but is not above the lift"));
        }
    }
    // (2) regular and onto
    if !sg.regular[class] {
        return Err(Error::NotRegular(class));
    }
    let image: BTreeSet<usize> = members.iter().map(|&s| phi.apply(s)).collect();
    let target_members: BTreeSet<usize> = tg.j_members(target_class).iter().copied().collect();
    if image != target_members {
        return fail("φ(J') ≠ J".into());
    }
    // (3) R-, L-, H-classes map onto classes
    type ClassOf = fn(&GreenStructure) -> &Vec<usize>;
    let relations: [(&str, ClassOf); 3] = [
        ("R", |g| &g.r_class),
        ("L", |g| &g.l_class),
        ("H", |g| &g.h_class),
    ];
    for (name, rel) in relations {
        let (sc, tc) = (rel(&sg), rel(&tg));
        for &s in &members {
            let img: BTreeSet<usize> = members
                .iter()
                .filter(|&&x| sc[x] == sc[s])
                .map(|&x| phi.apply(x))
                .collect();
            let t0 = phi.apply(s);
            let cls: BTreeSet<usize> = (0..tgt.size()).filter(|&t| tc[t] == tc[t0]).collect();
            if img != cls {
                return fail(format!("{name}-class of {s} does not map onto a {name}-class"));
            }
        }
    }
    // (4) E(J') maps onto E(J)
    let e_img: BTreeSet<usize> = members
        .iter()
        .filter(|&&s| src.is_idempotent(s))
        .map(|&s| phi.apply(s))
        .collect();
    let e_tgt: BTreeSet<usize> = target_members
        .iter()
        .copied()
        .filter(|&t| tgt.is_idempotent(t))
        .collect();
    if e_img != e_tgt {
        return fail("φ(E(J')) ≠ E(J)".into());
    }
    Ok(LiftedClass {
        class,
        members,
        source_green: sg,
    })
}
