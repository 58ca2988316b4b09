use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num::{BigRational, Zero};

use super::element::{rat, BurnsideElement};
use super::system::SubgroupSystem;
use crate::error::{Error, Result};
use crate::goursat::ProductGroup;
use crate::groups::{homomorphisms, FiniteGroup, GroupHom, HomKind, MorphismKind, Subgroup};

/// A finite `(G,H)`-biset on the points `0..size`.
///
/// `left[g][x] = g·x` and `right[h][x] = x·h`.
#[derive(Clone, Debug)]
pub struct ExplicitBiset {
    left_group: Arc<FiniteGroup>,
    right_group: Arc<FiniteGroup>,
    left: Vec<Vec<usize>>,
    right: Vec<Vec<usize>>,
}

impl ExplicitBiset {
    /// Validates that both tables are actions and that they commute.
    pub fn new(
        g: Arc<FiniteGroup>,
        h: Arc<FiniteGroup>,
        left: Vec<Vec<usize>>,
        right: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let m = left.first().map_or(0, |r| r.len());
        let bad = |s: &str| Err(Error::Precondition(format!("not a biset: {s}")));
        if left.len() != g.order() || right.len() != h.order() {
            return bad("one table per group element is required");
        }
        if left.iter().chain(right.iter()).any(|r| r.len() != m || r.iter().any(|&p| p >= m)) {
            return bad("rows must map points to points");
        }
        if left[0].iter().enumerate().any(|(i, &p)| p != i) || right[0].iter().enumerate().any(|(i, &p)| p != i) {
            return bad("the identity must act trivially");
        }
        for a in 0..g.order() {
            for b in 0..g.order() {
                let ab = g.mul(a, b);
                if (0..m).any(|x| left[ab][x] != left[a][left[b][x]]) {
                    return bad("left table is not an action");
                }
            }
        }
        for a in 0..h.order() {
            for b in 0..h.order() {
                let ab = h.mul(a, b);
                if (0..m).any(|x| right[ab][x] != right[b][right[a][x]]) {
                    return bad("right table is not an action");
                }
            }
        }
        for row in &left {
            for col in &right {
                if (0..m).any(|x| row[col[x]] != col[row[x]]) {
                    return bad("left and right actions do not commute");
                }
            }
        }
        Ok(ExplicitBiset {
            left_group: g,
            right_group: h,
            left,
            right,
        })
    }

    /// The transitive biset `(G×H)/L`, points being the left cosets of `L` ordered by
    /// their least element.
    pub fn transitive(prod: &ProductGroup, l: &[usize]) -> Self {
        let pg = prod.group();
        let n = pg.order();
        let mut coset = vec![usize::MAX; n];
        let mut count = 0;
        for z in 0..n {
            if coset[z] == usize::MAX {
                for &y in l {
                    coset[pg.mul(z, y)] = count;
                }
                count += 1;
            }
        }
        let mut rep = vec![0; count];
        for z in (0..n).rev() {
            rep[coset[z]] = z;
        }
        let (g, h) = (prod.left(), prod.right());
        let left = (0..g.order())
            .map(|a| {
                let e = prod.embed_left(a);
                rep.iter().map(|&z| coset[pg.mul(e, z)]).collect()
            })
            .collect();
        let right = (0..h.order())
            .map(|b| {
                let e = prod.embed_right(h.inv(b));
                rep.iter().map(|&z| coset[pg.mul(e, z)]).collect()
            })
            .collect();
        ExplicitBiset {
            left_group: g.clone(),
            right_group: h.clone(),
            left,
            right,
        }
    }

    /// `H` as an `(H,H)`-biset.
    pub fn identity(h: Arc<FiniteGroup>) -> Self {
        let n = h.order();
        let left = (0..n).map(|a| (0..n).map(|x| h.mul(a, x)).collect()).collect();
        let right = (0..n).map(|b| (0..n).map(|x| h.mul(x, b)).collect()).collect();
        ExplicitBiset {
            left_group: h.clone(),
            right_group: h,
            left,
            right,
        }
    }

    pub fn size(&self) -> usize {
        self.left[0].len()
    }

    pub fn left_group(&self) -> &Arc<FiniteGroup> {
        &self.left_group
    }

    pub fn right_group(&self) -> &Arc<FiniteGroup> {
        &self.right_group
    }

    pub fn act_left(&self, g: usize, x: usize) -> usize {
        self.left[g][x]
    }

    pub fn act_right(&self, x: usize, h: usize) -> usize {
        self.right[h][x]
    }

    pub fn disjoint_union(&self, other: &Self) -> Result<Self> {
        if !self.left_group.same_table(&other.left_group) || !self.right_group.same_table(&other.right_group) {
            return Err(Error::Composition("disjoint union of bisets over different groups".into()));
        }
        let m = self.size();
        let glue = |a: &[Vec<usize>], b: &[Vec<usize>]| -> Vec<Vec<usize>> {
            a.iter()
                .zip(b)
                .map(|(r, s)| r.iter().copied().chain(s.iter().map(|&p| p + m)).collect())
                .collect()
        };
        Ok(ExplicitBiset {
            left_group: self.left_group.clone(),
            right_group: self.right_group.clone(),
            left: glue(&self.left, &other.left),
            right: glue(&self.right, &other.right),
        })
    }

    /// `X°`: the `(H,G)`-biset with `h·x·g = g^-1 x h^-1`.
    pub fn opposite(&self) -> Self {
        let (g, h) = (&self.left_group, &self.right_group);
        ExplicitBiset {
            left_group: h.clone(),
            right_group: g.clone(),
            left: (0..h.order()).map(|b| self.right[h.inv(b)].clone()).collect(),
            right: (0..g.order()).map(|a| self.left[g.inv(a)].clone()).collect(),
        }
    }

    /// `X ×_H Y`: `H`-orbits of `X × Y` under `(x, y) ~ (x·h^-1, h·y)`.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if !self.right_group.same_table(&other.left_group) {
            return Err(Error::Composition(format!(
                "middle groups differ: {} vs {}",
                self.right_group.name(),
                other.left_group.name()
            )));
        }
        let h = &self.right_group;
        let (mx, my) = (self.size(), other.size());
        let mut parent: Vec<usize> = (0..mx * my).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &b in h.lattice().group_generators() {
            let binv = h.inv(b);
            for x in 0..mx {
                let xb = self.right[binv][x];
                for y in 0..my {
                    let a = find(&mut parent, x * my + y);
                    let c = find(&mut parent, xb * my + other.left[b][y]);
                    if a != c {
                        let (lo, hi) = if a < c { (a, c) } else { (c, a) };
                        parent[hi] = lo;
                    }
                }
            }
        }
        let mut label = vec![usize::MAX; mx * my];
        let mut reps = Vec::new();
        for z in 0..mx * my {
            let r = find(&mut parent, z);
            if label[r] == usize::MAX {
                label[r] = reps.len();
                reps.push(z);
            }
            label[z] = label[r];
        }
        let left = (0..self.left_group.order())
            .map(|a| {
                reps.iter()
                    .map(|&z| label[self.left[a][z / my] * my + z % my])
                    .collect()
            })
            .collect();
        let right = (0..other.right_group.order())
            .map(|c| {
                reps.iter()
                    .map(|&z| label[(z / my) * my + other.right[c][z % my]])
                    .collect()
            })
            .collect();
        Ok(ExplicitBiset {
            left_group: self.left_group.clone(),
            right_group: other.right_group.clone(),
            left,
            right,
        })
    }

    /// Number of points with `g·x = x·h` for every pair `(g,h)`.
    pub fn fixed_points(&self, pairs: &[(usize, usize)]) -> usize {
        (0..self.size())
            .filter(|&x| pairs.iter().all(|&(g, h)| self.left[g][x] == self.right[h][x]))
            .count()
    }

    /// `|X^L|` for `L ≤ G×H` given by its elements in `prod`.
    pub fn fixed_points_of(&self, prod: &ProductGroup, l: &[usize]) -> usize {
        let pairs: Vec<(usize, usize)> = l.iter().map(|&z| (prod.p1(z), prod.p2(z))).collect();
        self.fixed_points(&pairs)
    }

    /// `|X^{◁(U,α,V)}|` for `α: V -> U`.
    pub fn fixed_points_of_graph(&self, alpha: &GroupHom) -> usize {
        let pairs: Vec<(usize, usize)> = alpha.pairs().map(|(v, u)| (u, v)).collect();
        self.fixed_points(&pairs)
    }

    /// Orbit decomposition `Σ [G×H/stab(x)]` in `system`.
    pub fn decompose(&self, system: &Arc<SubgroupSystem>) -> Result<BurnsideElement> {
        let prod = system.product();
        if !prod.left().same_table(&self.left_group) || !prod.right().same_table(&self.right_group) {
            return Err(Error::Composition("system and biset are over different groups".into()));
        }
        let (g, h) = (&self.left_group, &self.right_group);
        let m = self.size();
        let mut seen = vec![false; m];
        let mut out = BurnsideElement::zero(system);
        let ggens = g.lattice().group_generators().to_vec();
        let hgens = h.lattice().group_generators().to_vec();
        for x in 0..m {
            if seen[x] {
                continue;
            }
            let mut orbit = vec![x];
            seen[x] = true;
            let mut k = 0;
            while k < orbit.len() {
                let y = orbit[k];
                let nexts = ggens
                    .iter()
                    .map(|&a| self.left[a][y])
                    .chain(hgens.iter().map(|&b| self.right[b][y]));
                for z in nexts.collect::<Vec<_>>() {
                    if !seen[z] {
                        seen[z] = true;
                        orbit.push(z);
                    }
                }
                k += 1;
            }
            let stab: Vec<usize> = (0..prod.order())
                .filter(|&z| self.left[prod.p1(z)][x] == self.right[prod.p2(z)][x])
                .collect();
            let c = system.class_of_elems(&stab).ok_or_else(|| {
                Error::SystemClosure(format!(
                    "stabilizer {} is not a member of the `{}` system",
                    system.describe(&stab),
                    system.flavor()
                ))
            })?;
            out.add_term(c, rat(1));
        }
        Ok(out)
    }
}

/// `X ×_H Y`.
pub fn tensor_oracle(x: &ExplicitBiset, y: &ExplicitBiset) -> Result<ExplicitBiset> {
    x.tensor(y)
}

pub fn decompose_biset(x: &ExplicitBiset, system: &Arc<SubgroupSystem>) -> Result<BurnsideElement> {
    x.decompose(system)
}

/// A factorization `γ = α∘β` through `V ≤ H`, standing for its `H`-orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub alpha: GroupHom,
    pub v: Subgroup,
    pub beta: GroupHom,
    /// `|C_H(V)|`, the order of the stabilizer of the factorization in `H`.
    pub stabilizer_order: usize,
    pub orbit_size: usize,
}

/// `H`-orbit representatives of the factorizations `γ = αβ` with `β: W ↠ V ≤ H` and
/// `α: V ↠ U`, under `h·(α,V,β) = (α c_h^-1, hVh^-1, c_h β)`.
///
/// `gamma` is an epimorphism from `W ≤ K` onto `U`. The representative of each orbit is
/// the member with least `(V, β)`.
pub fn fixed_point_factorizations(
    h: &FiniteGroup,
    k: &FiniteGroup,
    gamma: &GroupHom,
) -> Result<Vec<Factorization>> {
    if gamma.kind() == MorphismKind::General {
        return Err(Error::Precondition("γ must be an epimorphism onto U".into()));
    }
    let w = Subgroup::from_sorted(k.order(), gamma.domain().to_vec());
    let kernel: BTreeSet<usize> = gamma.kernel().into_iter().collect();
    let hl = h.lattice();
    let mut all: BTreeSet<(Subgroup, Vec<usize>)> = BTreeSet::new();
    for v in hl.subgroups() {
        if v.order() > w.order() || v.order() < gamma.codomain().len() {
            continue;
        }
        for beta in homomorphisms(k, &w, h, v, HomKind::Epi) {
            if beta.kernel().iter().all(|x| kernel.contains(x)) {
                all.insert((v.clone(), beta.images().to_vec()));
            }
        }
    }
    let mut done: BTreeSet<(Subgroup, Vec<usize>)> = BTreeSet::new();
    let mut out = Vec::new();
    for key in &all {
        if done.contains(key) {
            continue;
        }
        let mut orbit = 0;
        for c in 0..h.order() {
            let v2 = h.conjugate_subgroup(c, &key.0);
            let b2: Vec<usize> = key.1.iter().map(|&y| h.conj(c, y)).collect();
            if done.insert((v2, b2)) {
                orbit += 1;
            }
        }
        let (v, images) = key.clone();
        let beta = GroupHom::new(w.elements().to_vec(), images, v.elements().to_vec());
        let mut table: BTreeMap<usize, usize> = BTreeMap::new();
        for (x, y) in beta.pairs() {
            table.insert(y, gamma.apply(x));
        }
        let (d, i): (Vec<usize>, Vec<usize>) = table.into_iter().unzip();
        let alpha = GroupHom::new(d, i, gamma.codomain().to_vec());
        out.push(Factorization {
            alpha,
            stabilizer_order: hl.centralizer_order(hl.id(&v)),
            v,
            beta,
            orbit_size: orbit,
        });
    }
    Ok(out)
}

/// `|(X ×_H Y)^{◁(U,γ,W)}|` from fixed points of the factors, summed over orbit
/// representatives of factorizations of `γ`.
pub fn factorization_fixed_point_count(
    x: &ExplicitBiset,
    y: &ExplicitBiset,
    gamma: &GroupHom,
) -> Result<BigRational> {
    let facts = fixed_point_factorizations(x.right_group(), y.right_group(), gamma)?;
    let mut total = BigRational::zero();
    for f in facts {
        let a = x.fixed_points_of_graph(&f.alpha) as i64;
        let b = y.fixed_points_of_graph(&f.beta) as i64;
        total += rat(a * b) / rat(f.stabilizer_order as i64);
    }
    Ok(total)
}
