use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::goursat::ProductGroup;
use crate::groups::{homomorphisms, ElemSet, FiniteGroup, HomKind};

/// Largest product group `G × H` accepted by [`SubgroupSystem`].
pub const MAX_PRODUCT_ORDER: usize = 4096;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SystemFlavor {
    /// every subgroup of `G × H`
    All,
    /// `◁_{G,H}`: subgroups with `k1 = 1`
    LeftFree,
    /// `Δ_{G,H}`: twisted diagonals
    Bifree,
    Custom(String),
}

impl SystemFlavor {
    pub fn name(&self) -> &str {
        match self {
            SystemFlavor::All => "all",
            SystemFlavor::LeftFree => "leftfree",
            SystemFlavor::Bifree => "bifree",
            SystemFlavor::Custom(s) => s,
        }
    }
}

impl fmt::Display for SystemFlavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One subgroup `L ≤ G × H` of a system, with projections and kernels as lattice ids of
/// `G` (`p1`, `k1`) and `H` (`p2`, `k2`).
#[derive(Debug, Clone)]
pub struct Member {
    pub elems: Vec<usize>,
    pub set: ElemSet,
    pub p1: usize,
    pub k1: usize,
    pub p2: usize,
    pub k2: usize,
    pub class: usize,
}

pub(crate) type ProductTable = Arc<Vec<(usize, u64)>>;
pub(crate) type GhostTable = Arc<Vec<Vec<(usize, usize, num::BigRational)>>>;

/// A set of subgroups of `G × H`, closed under conjugation and under taking subgroups,
/// grouped into `G × H`-conjugacy classes.
///
/// Classes are numbered by their least member in the order `(|L|, element list)`; the
/// class index is the position in the standard basis.
pub struct SubgroupSystem {
    id: u64,
    prod: ProductGroup,
    flavor: SystemFlavor,
    members: Vec<Member>,
    index: HashMap<Vec<usize>, usize>,
    classes: Vec<Vec<usize>>,
    by_p2: Vec<Vec<usize>>,
    marks: OnceLock<Vec<Vec<u64>>>,
    pub(crate) mackey_cache: Mutex<HashMap<(u64, u64, usize, usize), ProductTable>>,
    pub(crate) ghost_cache: Mutex<HashMap<(u64, u64), GhostTable>>,
}

impl fmt::Debug for SubgroupSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SubgroupSystem({} x {}, {}, {} classes)",
            self.prod.left().name(),
            self.prod.right().name(),
            self.flavor,
            self.classes.len()
        )
    }
}

impl SubgroupSystem {
    /// One of the built-in systems over `(G, H)`.
    pub fn new(g: Arc<FiniteGroup>, h: Arc<FiniteGroup>, flavor: SystemFlavor) -> Result<Arc<Self>> {
        let n = g.order() * h.order();
        if n > MAX_PRODUCT_ORDER {
            return Err(Error::Capacity {
                what: format!("product {} x {}", g.name(), h.name()),
                order: n,
                bound: MAX_PRODUCT_ORDER,
            });
        }
        let prod = ProductGroup::new(g.clone(), h.clone());
        let mut elems: Vec<Vec<usize>> = match &flavor {
            SystemFlavor::All => {
                prod.group().all_subgroups()?;
                prod.group()
                    .lattice()
                    .subgroups()
                    .iter()
                    .map(|s| s.elements().to_vec())
                    .collect()
            }
            SystemFlavor::LeftFree | SystemFlavor::Bifree => {
                let inj = flavor == SystemFlavor::Bifree;
                let mut out = Vec::new();
                for v in h.lattice().subgroups() {
                    for a in homomorphisms(&h, v, &g, &g.whole(), HomKind::All) {
                        if !inj || a.is_injective() {
                            out.push(prod.graph(&a));
                        }
                    }
                }
                out
            }
            SystemFlavor::Custom(_) => {
                return Err(Error::Precondition(
                    "custom systems are built with SubgroupSystem::custom".into(),
                ))
            }
        };
        elems.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        elems.dedup();
        Self::assemble(prod, flavor, elems).map(Arc::new)
    }

    pub fn all(g: Arc<FiniteGroup>, h: Arc<FiniteGroup>) -> Result<Arc<Self>> {
        Self::new(g, h, SystemFlavor::All)
    }

    pub fn left_free(g: Arc<FiniteGroup>, h: Arc<FiniteGroup>) -> Result<Arc<Self>> {
        Self::new(g, h, SystemFlavor::LeftFree)
    }

    pub fn bifree(g: Arc<FiniteGroup>, h: Arc<FiniteGroup>) -> Result<Arc<Self>> {
        Self::new(g, h, SystemFlavor::Bifree)
    }

    /// A system given by its members; closure under conjugation and subgroups is checked.
    pub fn custom(
        g: Arc<FiniteGroup>,
        h: Arc<FiniteGroup>,
        label: &str,
        members: Vec<Vec<usize>>,
    ) -> Result<Arc<Self>> {
        let prod = ProductGroup::new(g, h);
        let mut elems: Vec<Vec<usize>> = Vec::with_capacity(members.len());
        for m in members {
            elems.push(prod.group().subgroup_from_elements(&m)?.elements().to_vec());
        }
        elems.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        elems.dedup();
        let sys = Self::assemble(prod, SystemFlavor::Custom(label.to_string()), elems)?;
        sys.check_subgroup_closed()?;
        Ok(Arc::new(sys))
    }

    fn assemble(prod: ProductGroup, flavor: SystemFlavor, elems: Vec<Vec<usize>>) -> Result<Self> {
        let (g, h) = (prod.left().clone(), prod.right().clone());
        let (gl, hl) = (g.lattice(), h.lattice());
        let n = prod.order();
        let index: HashMap<Vec<usize>, usize> =
            elems.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let mut members: Vec<Member> = elems
            .into_iter()
            .map(|e| {
                let proj = |f: &dyn Fn(usize) -> Option<usize>| {
                    let mut v: Vec<usize> = e.iter().filter_map(|&x| f(x)).collect();
                    v.sort_unstable();
                    v.dedup();
                    v
                };
                let p1 = proj(&|x| Some(prod.p1(x)));
                let p2 = proj(&|x| Some(prod.p2(x)));
                let k1 = proj(&|x| (prod.p2(x) == 0).then(|| prod.p1(x)));
                let k2 = proj(&|x| (prod.p1(x) == 0).then(|| prod.p2(x)));
                Member {
                    set: ElemSet::from_elems(n, &e),
                    elems: e,
                    p1: gl.id_of(&p1).expect("projection is a subgroup"),
                    k1: gl.id_of(&k1).expect("kernel is a subgroup"),
                    p2: hl.id_of(&p2).expect("projection is a subgroup"),
                    k2: hl.id_of(&k2).expect("kernel is a subgroup"),
                    class: usize::MAX,
                }
            })
            .collect();

        let gens = prod.generators();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for i in 0..members.len() {
            if members[i].class != usize::MAX {
                continue;
            }
            let c = classes.len();
            members[i].class = c;
            let mut orbit = vec![i];
            let mut k = 0;
            while k < orbit.len() {
                let s = orbit[k];
                for &x in &gens {
                    let conj = prod.conjugate(x, &members[s].elems);
                    let t = *index.get(&conj).ok_or_else(|| {
                        Error::SystemClosure(format!(
                            "system `{flavor}` is not closed under conjugation by {}",
                            prod.group().label(x)
                        ))
                    })?;
                    if members[t].class == usize::MAX {
                        members[t].class = c;
                        orbit.push(t);
                    }
                }
                k += 1;
            }
            orbit.sort_unstable();
            classes.push(orbit);
        }
        let mut by_p2 = vec![Vec::new(); hl.len()];
        for (i, m) in members.iter().enumerate() {
            by_p2[m.p2].push(i);
        }
        Ok(SubgroupSystem {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            prod,
            flavor,
            members,
            index,
            classes,
            by_p2,
            marks: OnceLock::new(),
            mackey_cache: Mutex::new(HashMap::new()),
            ghost_cache: Mutex::new(HashMap::new()),
        })
    }

    fn check_subgroup_closed(&self) -> Result<()> {
        let hl = self.right().lattice();
        for m in &self.members {
            if m.k1 == 0 {
                // a left-free L is the graph of α: p2(L) -> G, so its subgroups are the
                // graphs of the restrictions of α
                let alpha: HashMap<usize, usize> =
                    m.elems.iter().map(|&x| (self.prod.p2(x), self.prod.p1(x))).collect();
                for w in hl.subgroups_of(m.p2) {
                    let mut sub: Vec<usize> = hl
                        .subgroup(w)
                        .elements()
                        .iter()
                        .map(|&y| self.prod.pair(alpha[&y], y))
                        .collect();
                    sub.sort_unstable();
                    if !self.index.contains_key(&sub) {
                        return Err(self.not_closed(&m.elems, &sub));
                    }
                }
            } else {
                let (sg, emb) = self.prod.group().subgroup_as_group(
                    &crate::groups::Subgroup::from_sorted(self.prod.order(), m.elems.clone()),
                    "L",
                );
                sg.all_subgroups()?;
                for s in sg.lattice().subgroups() {
                    let mut sub: Vec<usize> = s.elements().iter().map(|&x| emb[x]).collect();
                    sub.sort_unstable();
                    if !self.index.contains_key(&sub) {
                        return Err(self.not_closed(&m.elems, &sub));
                    }
                }
            }
        }
        Ok(())
    }

    fn not_closed(&self, l: &[usize], sub: &[usize]) -> Error {
        let g = self.prod.group();
        let show = |v: &[usize]| v.iter().map(|&x| g.label(x)).collect::<Vec<_>>().join(" ");
        Error::SystemClosure(format!(
            "system `{}` is not closed under taking subgroups: {{{}}} lies in {{{}}}",
            self.flavor,
            show(sub),
            show(l)
        ))
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn product(&self) -> &ProductGroup {
        &self.prod
    }

    pub fn left(&self) -> &Arc<FiniteGroup> {
        self.prod.left()
    }

    pub fn right(&self) -> &Arc<FiniteGroup> {
        self.prod.right()
    }

    pub fn flavor(&self) -> &SystemFlavor {
        &self.flavor
    }

    pub fn members(&self) -> &[Member] {
        &self.members
    }

    pub fn member(&self, i: usize) -> &Member {
        &self.members[i]
    }

    pub fn member_id(&self, elems: &[usize]) -> Option<usize> {
        self.index.get(elems).copied()
    }

    /// Class index of the subgroup with the given (sorted) elements.
    pub fn class_of_elems(&self, elems: &[usize]) -> Option<usize> {
        self.member_id(elems).map(|i| self.members[i].class)
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// Number of classes, the rank of the standard basis.
    pub fn rank(&self) -> usize {
        self.classes.len()
    }

    pub fn rep(&self, class: usize) -> &Member {
        &self.members[self.classes[class][0]]
    }

    /// Class representatives in basis order.
    pub fn standard_basis(&self) -> Vec<&[usize]> {
        self.classes.iter().map(|c| self.members[c[0]].elems.as_slice()).collect()
    }

    /// `|N_{G×H}(L)|` for any `L` in the class.
    pub fn normalizer_order(&self, class: usize) -> usize {
        self.prod.order() / self.classes[class].len()
    }

    /// Members `L` with `p2(L) = W`, for a lattice id `W` of `H`.
    pub fn members_with_p2(&self, w: usize) -> &[usize] {
        &self.by_p2[w]
    }

    pub fn is_left_free(&self) -> bool {
        self.members.iter().all(|m| m.k1 == 0)
    }

    pub fn is_bifree(&self) -> bool {
        self.members.iter().all(|m| m.k1 == 0 && m.k2 == 0)
    }

    /// `Φ_R([G×H/L])` for `R` in class `i` and `L` in class `j`.
    pub fn mark(&self, i: usize, j: usize) -> u64 {
        self.mark_matrix()[i][j]
    }

    /// Table of marks `M[i][j] = Φ_{R_i}([G×H/L_j])`.
    pub fn mark_matrix(&self) -> &Vec<Vec<u64>> {
        self.marks.get_or_init(|| {
            let r = self.rank();
            (0..r)
                .map(|i| {
                    let rep = self.rep(i);
                    (0..r).map(|j| self.mark_of_set(&rep.set, rep.elems.len(), j)).collect()
                })
                .collect()
        })
    }

    pub(crate) fn mark_of_set(&self, set: &ElemSet, order: usize, j: usize) -> u64 {
        let cls = &self.classes[j];
        let l = self.members[cls[0]].elems.len();
        if l < order || !l.is_multiple_of(order) {
            return 0;
        }
        let count = cls
            .iter()
            .filter(|&&m| set.is_subset(&self.members[m].set))
            .count() as u64;
        count * (self.normalizer_order(j) / l) as u64
    }

    /// `Φ_R([G×H/L_j])` for an arbitrary subgroup `R ≤ G×H`.
    pub fn mark_at(&self, r: &[usize], j: usize) -> u64 {
        let set = ElemSet::from_elems(self.prod.order(), r);
        self.mark_of_set(&set, r.len(), j)
    }

    /// Human-readable label of a subgroup of `G × H`, e.g. `{(e,e) (a,a)}`.
    pub fn describe(&self, elems: &[usize]) -> String {
        let g = self.prod.group();
        let parts: Vec<String> = elems.iter().map(|&x| g.label(x)).collect();
        format!("{{{}}}", parts.join(" "))
    }
}
