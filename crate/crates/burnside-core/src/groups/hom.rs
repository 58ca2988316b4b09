use std::collections::BTreeSet;

use super::group::{FiniteGroup, Subgroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomKind {
    All,
    Epi,
    Iso,
    ConjugationInduced,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MorphismKind {
    General,
    Epimorphism,
    Isomorphism,
}

/// A homomorphism `V -> U` between subgroups, stored as a value table on `V`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupHom {
    domain: Vec<usize>,
    images: Vec<usize>,
    codomain: Vec<usize>,
    kind: MorphismKind,
}

impl GroupHom {
    /// `domain` must be sorted; `images[i]` is the image of `domain[i]`.
    pub fn new(domain: Vec<usize>, images: Vec<usize>, codomain: Vec<usize>) -> Self {
        debug_assert_eq!(domain.len(), images.len());
        let image: BTreeSet<usize> = images.iter().copied().collect();
        let epi = image.len() == codomain.len() && image.iter().all(|x| codomain.binary_search(x).is_ok());
        let kind = if epi && domain.len() == codomain.len() {
            MorphismKind::Isomorphism
        } else if epi {
            MorphismKind::Epimorphism
        } else {
            MorphismKind::General
        };
        GroupHom {
            domain,
            images,
            codomain,
            kind,
        }
    }

    pub fn domain(&self) -> &[usize] {
        &self.domain
    }

    pub fn codomain(&self) -> &[usize] {
        &self.codomain
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn kind(&self) -> MorphismKind {
        self.kind
    }

    pub fn apply(&self, x: usize) -> usize {
        let i = self.domain.binary_search(&x).expect("element outside the domain");
        self.images[i]
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.domain.iter().copied().zip(self.images.iter().copied())
    }

    pub fn image(&self) -> Vec<usize> {
        let s: BTreeSet<usize> = self.images.iter().copied().collect();
        s.into_iter().collect()
    }

    pub fn kernel(&self) -> Vec<usize> {
        self.pairs().filter(|&(_, y)| y == 0).map(|(x, _)| x).collect()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().len() == 1
    }

    /// `self ∘ other`; requires the image of `other` to lie in the domain of `self`.
    pub fn compose(&self, other: &GroupHom) -> GroupHom {
        let images = other.images.iter().map(|&y| self.apply(y)).collect();
        GroupHom::new(other.domain.clone(), images, self.codomain.clone())
    }

    /// Inverse of an isomorphism.
    pub fn inverse(&self) -> Option<GroupHom> {
        if self.kind != MorphismKind::Isomorphism {
            return None;
        }
        let mut pairs: Vec<(usize, usize)> = self.pairs().map(|(x, y)| (y, x)).collect();
        pairs.sort_unstable();
        let (d, i): (Vec<usize>, Vec<usize>) = pairs.into_iter().unzip();
        Some(GroupHom::new(d, i, self.domain.clone()))
    }

    /// Restriction to a subgroup of the domain, keeping the codomain.
    pub fn restrict(&self, sub: &[usize]) -> GroupHom {
        let images = sub.iter().map(|&x| self.apply(x)).collect();
        GroupHom::new(sub.to_vec(), images, self.codomain.clone())
    }

    /// Same map with codomain replaced by its image.
    pub fn corestrict_to_image(&self) -> GroupHom {
        GroupHom::new(self.domain.clone(), self.images.clone(), self.image())
    }

    /// Checks `f(ab) = f(a) f(b)` on every pair of domain elements.
    pub fn is_homomorphism(&self, src: &FiniteGroup, dst: &FiniteGroup) -> bool {
        self.pairs().all(|(a, fa)| {
            self.pairs()
                .all(|(b, fb)| self.apply(src.mul(a, b)) == dst.mul(fa, fb))
        })
    }
}

/// Enumerates homomorphisms from `V ≤ src` to `U ≤ dst` of the requested kind.
///
/// Images of a small generating set of `V` are searched by backtracking; every candidate
/// is extended along the Cayley graph of `V` and rejected on the first inconsistency.
pub fn homomorphisms(
    src: &FiniteGroup,
    v: &Subgroup,
    dst: &FiniteGroup,
    u: &Subgroup,
    kind: HomKind,
) -> Vec<GroupHom> {
    if kind == HomKind::ConjugationInduced {
        assert!(
            src.same_table(dst),
            "conjugation-induced maps need a common ambient group"
        );
        return conjugation_homomorphisms(src, v, u);
    }
    if matches!(kind, HomKind::Iso) && v.order() != u.order() {
        return Vec::new();
    }
    if matches!(kind, HomKind::Epi | HomKind::Iso) && u.order() > v.order() {
        return Vec::new();
    }
    let gens = src.generators_of(v);
    let cands: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            let o = src.element_order(g);
            u.elements()
                .iter()
                .copied()
                .filter(|&y| o.is_multiple_of(dst.element_order(y)))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(gens.len());
    search(src, v, dst, u, &gens, &cands, &mut chosen, kind, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn search(
    src: &FiniteGroup,
    v: &Subgroup,
    dst: &FiniteGroup,
    u: &Subgroup,
    gens: &[usize],
    cands: &[Vec<usize>],
    chosen: &mut Vec<usize>,
    kind: HomKind,
    out: &mut Vec<GroupHom>,
) {
    let k = chosen.len();
    if k > 0 && extend(src, dst, &gens[..k], chosen).is_none() {
        return;
    }
    if k == gens.len() {
        let map = extend(src, dst, gens, chosen).expect("checked above");
        let images: Vec<usize> = v.elements().iter().map(|&x| map[x]).collect();
        let h = GroupHom::new(v.elements().to_vec(), images, u.elements().to_vec());
        let keep = match kind {
            HomKind::All => true,
            HomKind::Epi => h.kind() != MorphismKind::General,
            HomKind::Iso => h.kind() == MorphismKind::Isomorphism,
            HomKind::ConjugationInduced => unreachable!(),
        };
        if keep {
            out.push(h);
        }
        return;
    }
    for &y in &cands[k] {
        chosen.push(y);
        search(src, v, dst, u, gens, cands, chosen, kind, out);
        chosen.pop();
    }
}

/// Extends `gens[i] -> imgs[i]` to the generated subgroup; `None` if inconsistent.
fn extend(src: &FiniteGroup, dst: &FiniteGroup, gens: &[usize], imgs: &[usize]) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; src.order()];
    map[0] = 0;
    let mut queue = vec![0];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        let fx = map[x];
        for (&g, &fg) in gens.iter().zip(imgs) {
            let y = src.mul(x, g);
            let fy = dst.mul(fx, fg);
            if map[y] == usize::MAX {
                map[y] = fy;
                queue.push(y);
            } else if map[y] != fy {
                return None;
            }
        }
        i += 1;
    }
    Some(map)
}

/// Distinct maps `c_g|_V : V -> U` for `g ∈ G` with `gVg^-1 ≤ U`.
pub fn conjugation_homomorphisms(g: &FiniteGroup, v: &Subgroup, u: &Subgroup) -> Vec<GroupHom> {
    let mut seen = BTreeSet::new();
    for x in 0..g.order() {
        let images: Vec<usize> = v.elements().iter().map(|&y| g.conj(x, y)).collect();
        if images.iter().all(|&y| u.contains(y)) {
            seen.insert(images);
        }
    }
    seen.into_iter()
        .map(|images| GroupHom::new(v.elements().to_vec(), images, u.elements().to_vec()))
        .collect()
}

/// Whether two subgroups (possibly of different groups) are isomorphic.
pub fn are_isomorphic(src: &FiniteGroup, v: &Subgroup, dst: &FiniteGroup, u: &Subgroup) -> bool {
    if v.order() != u.order() || order_profile(src, v) != order_profile(dst, u) {
        return false;
    }
    first_isomorphism(src, v, dst, u).is_some()
}

/// Some isomorphism `V -> U`, if one exists.
pub fn first_isomorphism(
    src: &FiniteGroup,
    v: &Subgroup,
    dst: &FiniteGroup,
    u: &Subgroup,
) -> Option<GroupHom> {
    if v.order() != u.order() {
        return None;
    }
    homomorphisms(src, v, dst, u, HomKind::Iso).into_iter().next()
}

/// Sorted multiset of element orders.
pub fn order_profile(g: &FiniteGroup, s: &Subgroup) -> Vec<usize> {
    let mut v: Vec<usize> = s.elements().iter().map(|&x| g.element_order(x)).collect();
    v.sort_unstable();
    v
}
