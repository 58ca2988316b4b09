use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::burnside::SubgroupSystem;
use crate::error::{Error, Result};
use crate::goursat::ProductGroup;
use crate::groups::{max_fusion_order, ElemSet, FiniteGroup, GroupHom, Subgroup};

/// All twisted diagonals `Δ(φ(P), φ, P) ≤ S × S` of a `p`-group `S`, indexed once so that
/// fusion systems become bitsets over them.
pub struct TwistedDiagonals {
    base: Arc<FiniteGroup>,
    prime: usize,
    full: Arc<SubgroupSystem>,
    /// `maps[i][x] = φ_i(x)` for `x ∈ P_i`, `usize::MAX` elsewhere
    maps: Vec<Vec<usize>>,
    opposite: Vec<usize>,
    restrictions: Vec<Vec<usize>>,
    conjugates: Vec<Vec<usize>>,
    by_p1: Vec<Vec<usize>>,
    delta_s: usize,
    compose_cache: std::sync::Mutex<HashMap<(usize, usize), usize>>,
}

impl fmt::Debug for TwistedDiagonals {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TwistedDiagonals({}, {} members)", self.base.name(), self.len())
    }
}

fn prime_of_p_group(n: usize) -> Option<usize> {
    if n == 1 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    (m == 1).then_some(p)
}

impl TwistedDiagonals {
    pub fn new(base: Arc<FiniteGroup>, prime: usize) -> Result<Arc<Self>> {
        let n = base.order();
        if n > 1 && prime_of_p_group(n) != Some(prime) {
            return Err(Error::Precondition(format!(
                "{} has order {n}, which is not a power of {prime}",
                base.name()
            )));
        }
        let bound = max_fusion_order();
        if n > bound {
            return Err(Error::Capacity {
                what: format!("fusion systems on {}", base.name()),
                order: n,
                bound,
            });
        }
        let full = SubgroupSystem::bifree(base.clone(), base.clone())?;
        let prod = full.product();
        let gl = base.lattice();
        let members = full.members();
        let maps: Vec<Vec<usize>> = members
            .iter()
            .map(|m| {
                let mut v = vec![usize::MAX; n];
                for &z in &m.elems {
                    v[prod.p2(z)] = prod.p1(z);
                }
                v
            })
            .collect();
        let id = |elems: &[usize]| full.member_id(elems).expect("twisted diagonals are closed");
        let gens = prod.generators();
        let mut opposite = Vec::with_capacity(members.len());
        let mut restrictions = Vec::with_capacity(members.len());
        let mut conjugates = Vec::with_capacity(members.len());
        for (i, m) in members.iter().enumerate() {
            let o = crate::goursat::opposite(prod, &m.elems, prod);
            opposite.push(id(&o));
            let rs = gl
                .subgroups_of(m.p2)
                .into_iter()
                .filter(|&r| r != m.p2)
                .map(|r| {
                    let mut e: Vec<usize> = gl
                        .subgroup(r)
                        .elements()
                        .iter()
                        .map(|&x| prod.pair(maps[i][x], x))
                        .collect();
                    e.sort_unstable();
                    id(&e)
                })
                .collect();
            restrictions.push(rs);
            conjugates.push(gens.iter().map(|&c| id(&prod.conjugate(c, &m.elems))).collect());
        }
        let mut by_p1 = vec![Vec::new(); gl.len()];
        for (i, m) in members.iter().enumerate() {
            by_p1[m.p1].push(i);
        }
        let delta_s = id(&prod.diagonal(&base.whole()));
        Ok(Arc::new(TwistedDiagonals {
            base,
            prime,
            full,
            maps,
            opposite,
            restrictions,
            conjugates,
            by_p1,
            delta_s,
            compose_cache: Default::default(),
        }))
    }

    pub fn base(&self) -> &Arc<FiniteGroup> {
        &self.base
    }

    pub fn prime(&self) -> usize {
        self.prime
    }

    /// The system of all twisted diagonals, the ambient basis for idempotents.
    pub fn full_system(&self) -> &Arc<SubgroupSystem> {
        &self.full
    }

    pub fn product(&self) -> &ProductGroup {
        self.full.product()
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn elements(&self, i: usize) -> &[usize] {
        &self.full.member(i).elems
    }

    /// Lattice id of the domain `P` of member `i`.
    pub fn domain(&self, i: usize) -> usize {
        self.full.member(i).p2
    }

    /// Lattice id of the image `φ(P)` of member `i`.
    pub fn image(&self, i: usize) -> usize {
        self.full.member(i).p1
    }

    pub fn index_of(&self, elems: &[usize]) -> Option<usize> {
        self.full.member_id(elems)
    }

    /// The member `i` as a homomorphism `P -> φ(P)`.
    pub fn hom(&self, i: usize) -> GroupHom {
        let gl = self.base.lattice();
        let dom = gl.subgroup(self.domain(i)).elements().to_vec();
        let images = dom.iter().map(|&x| self.maps[i][x]).collect();
        GroupHom::new(dom, images, gl.subgroup(self.image(i)).elements().to_vec())
    }

    /// Index of the graph of an injective map given on the elements of `P`.
    pub fn index_of_map(&self, domain: &[usize], images: &[usize]) -> Option<usize> {
        let prod = self.product();
        let mut e: Vec<usize> = domain.iter().zip(images).map(|(&x, &y)| prod.pair(y, x)).collect();
        e.sort_unstable();
        self.index_of(&e)
    }

    pub fn apply(&self, i: usize, x: usize) -> usize {
        self.maps[i][x]
    }

    /// `L_i * L_j`, for `φ_j(P_j) = P_i`.
    fn compose(&self, i: usize, j: usize) -> usize {
        if let Some(&k) = self.compose_cache.lock().unwrap().get(&(i, j)) {
            return k;
        }
        let prod = self.product();
        let mut e: Vec<usize> = self
            .elements(j)
            .iter()
            .map(|&z| prod.pair(self.maps[i][prod.p1(z)], prod.p2(z)))
            .collect();
        e.sort_unstable();
        let k = self.index_of(&e).expect("composites are twisted diagonals");
        self.compose_cache.lock().unwrap().insert((i, j), k);
        k
    }

    /// Smallest set containing `seed` and `Δ(S)` that is closed under `S×S`-conjugation,
    /// subgroups, opposites and composition.
    pub fn closure(&self, seed: impl IntoIterator<Item = usize>) -> ElemSet {
        let mut set = ElemSet::new(self.len());
        let mut queue = VecDeque::new();
        let add = |x: usize, set: &mut ElemSet, queue: &mut VecDeque<usize>| {
            if !set.contains(x) {
                set.insert(x);
                queue.push_back(x);
            }
        };
        add(self.delta_s, &mut set, &mut queue);
        for x in seed {
            add(x, &mut set, &mut queue);
        }
        while let Some(i) = queue.pop_front() {
            add(self.opposite[i], &mut set, &mut queue);
            for &r in &self.restrictions[i] {
                add(r, &mut set, &mut queue);
            }
            for &c in &self.conjugates[i] {
                add(c, &mut set, &mut queue);
            }
            let (dom, img) = (self.domain(i), self.image(i));
            let after: Vec<usize> = self.by_p1[dom].iter().copied().filter(|&j| set.contains(j)).collect();
            for j in after {
                let k = self.compose(i, j);
                add(k, &mut set, &mut queue);
            }
            let before: Vec<usize> = (0..self.len())
                .filter(|&j| set.contains(j) && self.domain(j) == img)
                .collect();
            for j in before {
                let k = self.compose(j, i);
                add(k, &mut set, &mut queue);
            }
        }
        set
    }
}

/// A fusion system on `S`, stored as the set `S(F)` of twisted diagonals
/// `Δ(φ(P), φ, P)` with `φ ∈ Hom_F(P, S)`.
#[derive(Clone)]
pub struct FusionSystem {
    universe: Arc<TwistedDiagonals>,
    members: ElemSet,
    label: String,
    system: OnceLock<Arc<SubgroupSystem>>,
}

impl PartialEq for FusionSystem {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.universe, &other.universe) && self.members == other.members
    }
}

impl Eq for FusionSystem {}

impl fmt::Debug for FusionSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FusionSystem({} on {}, {} morphisms)",
            self.label,
            self.universe.base.name(),
            self.members.len()
        )
    }
}

impl FusionSystem {
    /// Wraps a set of twisted diagonals after checking the closure conditions.
    pub fn from_set(universe: &Arc<TwistedDiagonals>, members: ElemSet, label: impl Into<String>) -> Result<Self> {
        let closed = universe.closure(members.iter());
        if closed != members {
            return Err(Error::SystemClosure(
                "the set is not closed under subgroups, conjugation, opposites and composition, or misses Δ(S)"
                    .into(),
            ));
        }
        Ok(Self::trusted(universe, members, label))
    }

    fn trusted(universe: &Arc<TwistedDiagonals>, members: ElemSet, label: impl Into<String>) -> Self {
        FusionSystem {
            universe: universe.clone(),
            members,
            label: label.into(),
            system: OnceLock::new(),
        }
    }

    pub fn universe(&self) -> &Arc<TwistedDiagonals> {
        &self.universe
    }

    pub fn base(&self) -> &Arc<FiniteGroup> {
        &self.universe.base
    }

    pub fn prime(&self) -> usize {
        self.universe.prime
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn set_label(&mut self, label: impl Into<String>) {
        self.label = label.into();
    }

    pub fn member_set(&self) -> &ElemSet {
        &self.members
    }

    /// Universe indices of the members of `S(F)`.
    pub fn members(&self) -> Vec<usize> {
        self.members.iter().collect()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, elems: &[usize]) -> bool {
        self.universe.index_of(elems).is_some_and(|i| self.members.contains(i))
    }

    pub fn is_subsystem_of(&self, other: &FusionSystem) -> bool {
        Arc::ptr_eq(&self.universe, &other.universe) && self.members.is_subset(&other.members)
    }

    /// `S(F)` as a subgroup system over `(S,S)`.
    pub fn system(&self) -> Result<Arc<SubgroupSystem>> {
        if let Some(s) = self.system.get() {
            return Ok(s.clone());
        }
        let u = &self.universe;
        let elems: Vec<Vec<usize>> = self.members.iter().map(|i| u.elements(i).to_vec()).collect();
        let sys = SubgroupSystem::custom(u.base.clone(), u.base.clone(), &format!("S({})", self.label), elems)?;
        Ok(self.system.get_or_init(|| sys).clone())
    }

    /// `Hom_F(P, Q)` for lattice ids `P`, `Q`.
    pub fn hom(&self, p: usize, q: usize) -> Vec<GroupHom> {
        let gl = self.base().lattice();
        self.members
            .iter()
            .filter(|&i| self.universe.domain(i) == p && gl.contains(q, self.universe.image(i)))
            .map(|i| self.universe.hom(i))
            .collect()
    }

    /// Universe indices of the members with domain `P`, i.e. `Hom_F(P, S)`.
    pub fn hom_indices(&self, p: usize) -> Vec<usize> {
        self.members.iter().filter(|&i| self.universe.domain(i) == p).collect()
    }

    /// `|Hom_F(P, S)|`.
    pub fn hom_count(&self, p: usize) -> usize {
        self.members.iter().filter(|&i| self.universe.domain(i) == p).count()
    }

    /// `Aut_F(P)`.
    pub fn aut(&self, p: usize) -> Vec<GroupHom> {
        self.hom(p, p)
    }

    pub fn aut_order(&self, p: usize) -> usize {
        self.members
            .iter()
            .filter(|&i| self.universe.domain(i) == p && self.universe.image(i) == p)
            .count()
    }

    /// `F`-isomorphism classes of subgroups of `S`, as sorted lattice id lists.
    pub fn iso_classes(&self) -> Vec<Vec<usize>> {
        let mut classes: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
        let n = self.base().lattice().len();
        let mut seen = vec![false; n];
        for p in 0..n {
            if seen[p] {
                continue;
            }
            let class: BTreeSet<usize> = self.hom_indices(p).into_iter().map(|i| self.universe.image(i)).collect();
            for &q in &class {
                seen[q] = true;
            }
            classes.insert(p, class);
        }
        classes.into_values().map(|c| c.into_iter().collect()).collect()
    }

    /// The `F`-isomorphism class of `P`.
    pub fn iso_class_of(&self, p: usize) -> Vec<usize> {
        let c: BTreeSet<usize> = self.hom_indices(p).into_iter().map(|i| self.universe.image(i)).collect();
        c.into_iter().collect()
    }

    pub fn is_fully_normalized(&self, p: usize) -> bool {
        let gl = self.base().lattice();
        let n = gl.normalizer_order(p);
        self.iso_class_of(p).into_iter().all(|q| gl.normalizer_order(q) <= n)
    }

    pub fn is_fully_centralized(&self, p: usize) -> bool {
        let gl = self.base().lattice();
        let c = gl.centralizer_order(p);
        self.iso_class_of(p).into_iter().all(|q| gl.centralizer_order(q) <= c)
    }

    /// `N_φ = {y ∈ N_S(P) : ∃ z ∈ N_S(φP), φ(yuy^-1) = zφ(u)z^-1 ∀u ∈ P}` for member `i`.
    pub fn n_phi(&self, i: usize) -> Subgroup {
        let u = &self.universe;
        let s = &u.base;
        let gl = s.lattice();
        let (p, q) = (gl.subgroup(u.domain(i)), gl.subgroup(u.image(i)));
        let np = s.normalizer(p);
        let nq = s.normalizer(q);
        let elems: Vec<usize> = np
            .elements()
            .iter()
            .copied()
            .filter(|&y| {
                nq.elements().iter().any(|&z| {
                    p.elements()
                        .iter()
                        .all(|&x| u.apply(i, s.conj(y, x)) == s.conj(z, u.apply(i, x)))
                })
            })
            .collect();
        s.subgroup_from_elements(&elems).expect("N_φ is a subgroup")
    }
}

/// The inner fusion system `F_S(S)`.
pub fn inner_fusion_system(universe: &Arc<TwistedDiagonals>) -> FusionSystem {
    FusionSystem::trusted(universe, universe.closure([]), "inner")
}

/// Smallest fusion system containing the given injective maps between subgroups of `S`.
pub fn fusion_generate(universe: &Arc<TwistedDiagonals>, morphisms: &[GroupHom]) -> Result<FusionSystem> {
    let mut seed = Vec::with_capacity(morphisms.len());
    for f in morphisms {
        if !f.is_injective() || !f.is_homomorphism(&universe.base, &universe.base) {
            return Err(Error::Precondition("generators must be injective homomorphisms".into()));
        }
        let i = universe
            .index_of_map(f.domain(), f.images())
            .ok_or_else(|| Error::Precondition("generator domain is not a subgroup of S".into()))?;
        seed.push(i);
    }
    Ok(FusionSystem::trusted(universe, universe.closure(seed), "generated"))
}

/// `F_S(G)` with `S` identified with a Sylow `p`-subgroup `P` of `G` through an
/// isomorphism `ι: S -> P`.
pub fn fusion_from_group_via(
    universe: &Arc<TwistedDiagonals>,
    g: &FiniteGroup,
    p_sub: &Subgroup,
    iota: &GroupHom,
) -> Result<FusionSystem> {
    check_sylow(g, p_sub, universe.prime)?;
    let s = universe.base();
    if p_sub.order() != s.order() {
        return Err(Error::Precondition(format!(
            "{} is not isomorphic to a Sylow {}-subgroup of {}",
            s.name(),
            universe.prime,
            g.name()
        )));
    }
    let back: HashMap<usize, usize> = iota.pairs().map(|(x, y)| (y, x)).collect();
    let mut seed = BTreeSet::new();
    for r in s.lattice().subgroups() {
        let dom = r.elements();
        let im: Vec<usize> = dom.iter().map(|&x| iota.apply(x)).collect();
        for c in 0..g.order() {
            let conj: Option<Vec<usize>> = im.iter().map(|&y| back.get(&g.conj(c, y)).copied()).collect();
            if let Some(images) = conj {
                seed.insert(universe.index_of_map(dom, &images).expect("conjugation maps are injective"));
            }
        }
    }
    let mut set = ElemSet::new(universe.len());
    for i in seed {
        set.insert(i);
    }
    FusionSystem::from_set(universe, set, format!("F({})", g.name()))
}

fn check_sylow(g: &FiniteGroup, s: &Subgroup, p: usize) -> Result<()> {
    let n = s.order();
    let index = g.order() / n;
    let ok = (n == 1 || prime_of_p_group(n) == Some(p)) && !index.is_multiple_of(p);
    if !ok {
        return Err(Error::Precondition(format!(
            "subgroup of order {n} is not a Sylow {p}-subgroup of {}",
            g.name()
        )));
    }
    Ok(())
}

/// `F_S(G)` for a Sylow `p`-subgroup `S ≤ G`; `S` becomes a group of its own.
pub fn fusion_from_group(g: &FiniteGroup, s: &Subgroup, p: usize) -> Result<FusionSystem> {
    check_sylow(g, s, p)?;
    let (base, embed) = g.subgroup_as_group(s, format!("Syl{p}({})", g.name()));
    let base = Arc::new(base);
    let universe = TwistedDiagonals::new(base.clone(), p)?;
    let iota = GroupHom::new(base.whole().elements().to_vec(), embed, s.elements().to_vec());
    fusion_from_group_via(&universe, g, s, &iota)
}

/// `F_S(G)` on the given base group `S`, using some Sylow `p`-subgroup of `G` isomorphic
/// to `S`.
pub fn fusion_from_group_on(universe: &Arc<TwistedDiagonals>, g: &FiniteGroup) -> Result<FusionSystem> {
    let s = universe.base();
    let p = universe.prime;
    let sylow = g
        .lattice()
        .subgroups()
        .iter()
        .find(|u| u.order() == s.order() && !(g.order() / u.order()).is_multiple_of(p))
        .ok_or_else(|| {
            Error::Precondition(format!(
                "{} is not isomorphic to a Sylow {p}-subgroup of {}",
                s.name(),
                g.name()
            ))
        })?;
    let iota = crate::groups::first_isomorphism(s, &s.whole(), g, sylow).ok_or_else(|| {
        Error::Precondition(format!(
            "{} is not isomorphic to a Sylow {p}-subgroup of {}",
            s.name(),
            g.name()
        ))
    })?;
    fusion_from_group_via(universe, g, sylow, &iota)
}

/// All fusion systems on `S`, found by adding one twisted diagonal at a time to already
/// known systems and closing, starting from the inner system. Sorted by size, then by
/// member set.
pub fn enumerate_fusion_systems(universe: &Arc<TwistedDiagonals>) -> Vec<FusionSystem> {
    let inner = universe.closure([]);
    let mut seen: HashSet<ElemSet> = HashSet::new();
    seen.insert(inner.clone());
    let mut queue = VecDeque::from([inner]);
    let mut found = Vec::new();
    while let Some(cur) = queue.pop_front() {
        for x in 0..universe.len() {
            if cur.contains(x) {
                continue;
            }
            let mut seed: Vec<usize> = cur.iter().collect();
            seed.push(x);
            let next = universe.closure(seed);
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
        found.push(cur);
    }
    let mut keyed: Vec<(usize, Vec<usize>, ElemSet)> =
        found.into_iter().map(|s| (s.len(), s.iter().collect(), s)).collect();
    keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    keyed
        .into_iter()
        .enumerate()
        .map(|(k, (_, _, s))| FusionSystem::trusted(universe, s, if k == 0 { "inner".to_string() } else { format!("F{k}") }))
        .collect()
}
