//! Subgroups of direct products `G × H`.
//!
//! A subgroup `L ≤ G × H` is described by its Goursat data `(k1 ⊴ p1, η, k2 ⊴ p2)`;
//! left-free subgroups (`k1 = 1`) are exactly the graphs `◁(U, α, V) = {(α(v), v)}` of
//! epimorphisms `α: V ↠ U`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, GroupHom, Subgroup};

/// `G × H` with the pair `(g, h)` stored at index `g·|H| + h`.
#[derive(Debug, Clone)]
pub struct ProductGroup {
    left: Arc<FiniteGroup>,
    right: Arc<FiniteGroup>,
    group: Arc<FiniteGroup>,
}

impl ProductGroup {
    pub fn new(left: Arc<FiniteGroup>, right: Arc<FiniteGroup>) -> Self {
        let (a, b) = (left.order(), right.order());
        let n = a * b;
        let mut table = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                let g = left.mul(x / b, y / b);
                let h = right.mul(x % b, y % b);
                table[x * n + y] = g * b + h;
            }
        }
        let labels = Some(
            (0..n)
                .map(|x| format!("({},{})", left.label(x / b), right.label(x % b)))
                .collect(),
        );
        let name = format!("{} x {}", left.name(), right.name());
        let group = Arc::new(FiniteGroup::from_trusted_table(name, n, table, labels));
        ProductGroup { left, right, group }
    }

    pub fn left(&self) -> &Arc<FiniteGroup> {
        &self.left
    }

    pub fn right(&self) -> &Arc<FiniteGroup> {
        &self.right
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    #[inline]
    pub fn pair(&self, g: usize, h: usize) -> usize {
        g * self.right.order() + h
    }

    #[inline]
    pub fn p1(&self, x: usize) -> usize {
        x / self.right.order()
    }

    #[inline]
    pub fn p2(&self, x: usize) -> usize {
        x % self.right.order()
    }

    pub fn embed_left(&self, g: usize) -> usize {
        self.pair(g, 0)
    }

    pub fn embed_right(&self, h: usize) -> usize {
        self.pair(0, h)
    }

    /// Generators of `G × H`: generators of `G × 1` followed by those of `1 × H`.
    pub fn generators(&self) -> Vec<usize> {
        let gl = self.left.lattice();
        let hl = self.right.lattice();
        gl.group_generators()
            .iter()
            .map(|&g| self.embed_left(g))
            .chain(hl.group_generators().iter().map(|&h| self.embed_right(h)))
            .collect()
    }

    /// `(g,h) L (g,h)^-1` as a sorted element list.
    pub fn conjugate(&self, c: usize, elems: &[usize]) -> Vec<usize> {
        let mut v: Vec<usize> = elems.iter().map(|&x| self.group.conj(c, x)).collect();
        v.sort_unstable();
        v
    }

    /// `{(g, h) : g ∈ U, h ∈ V}`.
    pub fn product_subgroup(&self, u: &Subgroup, v: &Subgroup) -> Vec<usize> {
        let mut out: Vec<usize> = u
            .elements()
            .iter()
            .flat_map(|&g| v.elements().iter().map(move |&h| (g, h)))
            .map(|(g, h)| self.pair(g, h))
            .collect();
        out.sort_unstable();
        out
    }

    /// Graph `{(α(v), v)}` of a homomorphism `α: V -> G`, sorted.
    pub fn graph(&self, alpha: &GroupHom) -> Vec<usize> {
        let mut out: Vec<usize> = alpha.pairs().map(|(v, g)| self.pair(g, v)).collect();
        out.sort_unstable();
        out
    }

    /// Diagonal `Δ(U) = {(u, u)}`; requires `G = H`.
    pub fn diagonal(&self, u: &Subgroup) -> Vec<usize> {
        let mut out: Vec<usize> = u.elements().iter().map(|&x| self.pair(x, x)).collect();
        out.sort_unstable();
        out
    }
}

/// Direct product with its projections.
pub fn direct_product(g: Arc<FiniteGroup>, h: Arc<FiniteGroup>) -> ProductGroup {
    ProductGroup::new(g, h)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Classification {
    General,
    LeftFree,
    RightFree,
    Bifree,
}

impl Classification {
    pub fn is_left_free(self) -> bool {
        matches!(self, Classification::LeftFree | Classification::Bifree)
    }

    pub fn is_right_free(self) -> bool {
        matches!(self, Classification::RightFree | Classification::Bifree)
    }
}

/// A subgroup of `G × H` with its cached Goursat invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductSubgroup {
    elems: Vec<usize>,
    k1: Subgroup,
    p1: Subgroup,
    k2: Subgroup,
    p2: Subgroup,
    /// least element of a coset `h·k2` in `p2` ↦ least element of the coset `η(h·k2)` in `p1`
    eta: BTreeMap<usize, usize>,
}

fn coset_rep(g: &FiniteGroup, x: usize, k: &Subgroup) -> usize {
    k.elements().iter().map(|&y| g.mul(x, y)).min().unwrap()
}

impl ProductSubgroup {
    /// Goursat data of the subgroup with the given elements.
    pub fn new(prod: &ProductGroup, elems: &[usize]) -> Result<Self> {
        let l = prod.group().subgroup_from_elements(elems)?;
        let elems = l.elements().to_vec();
        let (g, h) = (prod.left(), prod.right());
        let proj = |f: &dyn Fn(usize) -> usize, n: usize| {
            let mut v: Vec<usize> = elems.iter().map(|&x| f(x)).collect();
            v.sort_unstable();
            v.dedup();
            Subgroup::from_sorted(n, v)
        };
        let p1 = proj(&|x| prod.p1(x), g.order());
        let p2 = proj(&|x| prod.p2(x), h.order());
        let k1 = Subgroup::from_sorted(
            g.order(),
            elems.iter().filter(|&&x| prod.p2(x) == 0).map(|&x| prod.p1(x)).collect(),
        );
        let k2 = Subgroup::from_sorted(
            h.order(),
            elems.iter().filter(|&&x| prod.p1(x) == 0).map(|&x| prod.p2(x)).collect(),
        );
        let mut eta = BTreeMap::new();
        for &x in &elems {
            let a = coset_rep(h, prod.p2(x), &k2);
            let b = coset_rep(g, prod.p1(x), &k1);
            eta.insert(a, b);
        }
        Ok(ProductSubgroup {
            elems,
            k1,
            p1,
            k2,
            p2,
            eta,
        })
    }

    pub fn elements(&self) -> &[usize] {
        &self.elems
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn k1(&self) -> &Subgroup {
        &self.k1
    }

    pub fn p1(&self) -> &Subgroup {
        &self.p1
    }

    pub fn k2(&self) -> &Subgroup {
        &self.k2
    }

    pub fn p2(&self) -> &Subgroup {
        &self.p2
    }

    /// `η` on least coset representatives, `p2/k2 -> p1/k1`.
    pub fn eta(&self) -> &BTreeMap<usize, usize> {
        &self.eta
    }

    /// Membership law `(g,h) ∈ L ⟺ η(h k2) = g k1`.
    pub fn satisfies_membership_law(&self, prod: &ProductGroup, g: usize, h: usize) -> bool {
        if !self.p1.contains(g) || !self.p2.contains(h) {
            return false;
        }
        let a = coset_rep(prod.right(), h, &self.k2);
        let b = coset_rep(prod.left(), g, &self.k1);
        self.eta.get(&a) == Some(&b)
    }

    /// Rebuilds the element list from the quintuple alone.
    pub fn from_quintuple(prod: &ProductGroup, q: &Quintuple) -> Vec<usize> {
        let mut out = Vec::new();
        for &h in q.p2.elements() {
            let a = coset_rep(prod.right(), h, &q.k2);
            let b = q.eta[&a];
            for &k in q.k1.elements() {
                out.push(prod.pair(prod.left().mul(b, k), h));
            }
        }
        out.sort_unstable();
        out
    }

    pub fn quintuple(&self) -> Quintuple {
        Quintuple {
            k1: self.k1.clone(),
            p1: self.p1.clone(),
            eta: self.eta.clone(),
            k2: self.k2.clone(),
            p2: self.p2.clone(),
        }
    }

    pub fn classify(&self) -> Classification {
        match (self.k1.is_trivial(), self.k2.is_trivial()) {
            (true, true) => Classification::Bifree,
            (true, false) => Classification::LeftFree,
            (false, true) => Classification::RightFree,
            (false, false) => Classification::General,
        }
    }
}

/// Goursat quintuple `(k1, p1, η, k2, p2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quintuple {
    pub k1: Subgroup,
    pub p1: Subgroup,
    pub eta: BTreeMap<usize, usize>,
    pub k2: Subgroup,
    pub p2: Subgroup,
}

/// Goursat quintuple of `L`.
pub fn goursat(l: &ProductSubgroup) -> Quintuple {
    l.quintuple()
}

pub fn classify(l: &ProductSubgroup) -> Classification {
    l.classify()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    LeftFree,
    TwistedDiagonal,
}

/// `(U, α, V)` with `α: V ↠ U`, `U ≤ G`, `V ≤ H`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub u: Subgroup,
    pub alpha: GroupHom,
    pub v: Subgroup,
}

impl Triple {
    pub fn new(u: Subgroup, alpha: GroupHom, v: Subgroup) -> Result<Self> {
        if alpha.domain() != v.elements() || alpha.image() != u.elements() {
            return Err(Error::Precondition(
                "α must be an epimorphism from V onto U".into(),
            ));
        }
        Ok(Triple { u, alpha, v })
    }

    pub fn flavor(&self) -> Flavor {
        if self.alpha.is_injective() {
            Flavor::TwistedDiagonal
        } else {
            Flavor::LeftFree
        }
    }

    /// `^{(g,h)}(U, α, V) = (^gU, c_g α c_h^-1, ^hV)`.
    pub fn conjugate(&self, prod: &ProductGroup, g: usize, h: usize) -> Triple {
        let (gg, hh) = (prod.left(), prod.right());
        let u = gg.conjugate_subgroup(g, &self.u);
        let v = hh.conjugate_subgroup(h, &self.v);
        let mut pairs: Vec<(usize, usize)> = self
            .alpha
            .pairs()
            .map(|(x, y)| (hh.conj(h, x), gg.conj(g, y)))
            .collect();
        pairs.sort_unstable();
        let (d, i): (Vec<usize>, Vec<usize>) = pairs.into_iter().unzip();
        Triple {
            alpha: GroupHom::new(d, i, u.elements().to_vec()),
            u,
            v,
        }
    }
}

/// `◁(U, α, V) = {(α(v), v) : v ∈ V}`.
pub fn from_triple(prod: &ProductGroup, t: &Triple) -> ProductSubgroup {
    ProductSubgroup::new(prod, &prod.graph(&t.alpha)).expect("graph of a homomorphism is a subgroup")
}

/// Inverse of [`from_triple`] on left-free subgroups.
pub fn to_triple(prod: &ProductGroup, l: &ProductSubgroup) -> Result<Triple> {
    if !l.k1().is_trivial() {
        return Err(Error::Classification(format!(
            "k1 has order {}, so the subgroup is not left-free",
            l.k1().order()
        )));
    }
    let mut pairs: Vec<(usize, usize)> = l
        .elements()
        .iter()
        .map(|&x| (prod.p2(x), prod.p1(x)))
        .collect();
    pairs.sort_unstable();
    let (d, i): (Vec<usize>, Vec<usize>) = pairs.into_iter().unzip();
    let alpha = GroupHom::new(d, i, l.p1().elements().to_vec());
    Triple::new(l.p1().clone(), alpha, l.p2().clone())
}

/// `L * M = {(g, k) : ∃ h, (g,h) ∈ L, (h,k) ∈ M}` for `L ≤ G×H`, `M ≤ H×K`.
pub fn star(gh: &ProductGroup, l: &[usize], hk: &ProductGroup, m: &[usize]) -> Result<Vec<usize>> {
    if !gh.right().same_table(hk.left()) {
        return Err(Error::Composition(format!(
            "middle groups differ: {} vs {}",
            gh.right().name(),
            hk.left().name()
        )));
    }
    Ok(star_unchecked(gh, l, hk, m))
}

pub(crate) fn star_unchecked(gh: &ProductGroup, l: &[usize], hk: &ProductGroup, m: &[usize]) -> Vec<usize> {
    let nh = gh.right().order();
    let nk = hk.right().order();
    let mut by_mid: Vec<Vec<usize>> = vec![Vec::new(); nh];
    for &y in m {
        by_mid[hk.p1(y)].push(hk.p2(y));
    }
    let mut out: Vec<usize> = Vec::new();
    for &x in l {
        let g = gh.p1(x);
        for &k in &by_mid[gh.p2(x)] {
            out.push(g * nk + k);
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// `L° = {(h, g) : (g, h) ∈ L}`, as a subgroup of `hg = H × G`.
pub fn opposite(gh: &ProductGroup, l: &[usize], hg: &ProductGroup) -> Vec<usize> {
    let mut out: Vec<usize> = l.iter().map(|&x| hg.pair(gh.p2(x), gh.p1(x))).collect();
    out.sort_unstable();
    out
}
