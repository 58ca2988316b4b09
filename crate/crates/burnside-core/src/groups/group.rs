use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use super::lattice::Lattice;
use crate::error::{Error, Result};

pub const DEFAULT_MAX_ORDER: usize = 256;
pub const DEFAULT_MAX_FUSION_ORDER: usize = 16;

/// Upper bound on group orders accepted by the enumeration routines.
pub fn max_group_order() -> usize {
    env_bound().unwrap_or(DEFAULT_MAX_ORDER)
}

/// Upper bound on `|S|` for exhaustive fusion system enumeration.
pub fn max_fusion_order() -> usize {
    env_bound().unwrap_or(DEFAULT_MAX_FUSION_ORDER)
}

fn env_bound() -> Option<usize> {
    std::env::var("BURNSIDE_MAX_ORDER")
        .ok()
        .and_then(|s| s.trim().parse().ok())
}

/// Fixed-size bitset over element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ElemSet {
    words: Vec<u64>,
}

impl ElemSet {
    pub fn new(n: usize) -> Self {
        ElemSet {
            words: vec![0; n.div_ceil(64).max(1)],
        }
    }

    pub fn from_elems(n: usize, elems: &[usize]) -> Self {
        let mut s = ElemSet::new(n);
        for &x in elems {
            s.insert(x);
        }
        s
    }

    pub fn insert(&mut self, x: usize) {
        self.words[x / 64] |= 1 << (x % 64);
    }

    pub fn contains(&self, x: usize) -> bool {
        self.words
            .get(x / 64)
            .is_some_and(|w| w & (1 << (x % 64)) != 0)
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            (0..64).filter(move |b| w & (1 << b) != 0).map(move |b| i * 64 + b)
        })
    }
}

/// A subgroup, stored as its sorted element list together with a membership bitset.
///
/// Subgroups of one parent are totally ordered by `(order, element list)`; this is the
/// canonical id used for every choice of representative in the crate.
#[derive(Clone)]
pub struct Subgroup {
    elems: Vec<usize>,
    set: ElemSet,
}

impl Subgroup {
    /// Builds a subgroup record from a sorted, duplicate-free element list of a group of
    /// order `n`. Closure is not checked here.
    pub fn from_sorted(n: usize, elems: Vec<usize>) -> Self {
        debug_assert!(elems.windows(2).all(|w| w[0] < w[1]));
        let set = ElemSet::from_elems(n, &elems);
        Subgroup { elems, set }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elems
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.set.contains(x)
    }

    pub fn set(&self) -> &ElemSet {
        &self.set
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.order() <= other.order() && self.set.is_subset(&other.set)
    }

    pub fn is_trivial(&self) -> bool {
        self.elems.len() == 1
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elems == other.elems
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.elems.hash(state);
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.elems
            .len()
            .cmp(&other.elems.len())
            .then_with(|| self.elems.cmp(&other.elems))
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{:?}", self.elems)
    }
}

/// A finite group given by its multiplication table; the identity is always index 0.
pub struct FiniteGroup {
    name: String,
    n: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
    labels: Option<Vec<String>>,
    lattice: OnceLock<Lattice>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.n)
            .finish()
    }
}

impl Clone for FiniteGroup {
    fn clone(&self) -> Self {
        FiniteGroup {
            name: self.name.clone(),
            n: self.n,
            table: self.table.clone(),
            inverse: self.inverse.clone(),
            labels: self.labels.clone(),
            lattice: OnceLock::new(),
        }
    }
}

impl FiniteGroup {
    /// Validates a Cayley table and renames the identity to index 0.
    pub fn from_table(
        name: impl Into<String>,
        rows: Vec<Vec<usize>>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let name = name.into();
        let n = rows.len();
        if n == 0 {
            return Err(Error::Load("table is empty".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Load(format!(
                    "row {i} has length {} but the table has {n} rows",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(Error::Load(format!("row {i} contains out-of-range entry {bad}")));
            }
        }
        if let Some(l) = &labels {
            if l.len() != n {
                return Err(Error::Load(format!(
                    "{} labels given for {n} elements",
                    l.len()
                )));
            }
        }
        let is_perm = |it: &mut dyn Iterator<Item = usize>| {
            let mut seen = vec![false; n];
            for x in it {
                if std::mem::replace(&mut seen[x], true) {
                    return false;
                }
            }
            true
        };
        for i in 0..n {
            if !is_perm(&mut rows[i].iter().copied()) {
                return Err(Error::Load(format!(
                    "row {i} is not a bijection (Latin square / cancellation axiom)"
                )));
            }
            if !is_perm(&mut (0..n).map(|j| rows[j][i])) {
                return Err(Error::Load(format!(
                    "column {i} is not a bijection (Latin square / cancellation axiom)"
                )));
            }
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|x| rows[e][x] == x && rows[x][e] == x))
            .ok_or_else(|| Error::Load("no two-sided identity element".into()))?;
        for a in 0..n {
            for b in 0..n {
                let ab = rows[a][b];
                for c in 0..n {
                    if rows[ab][c] != rows[a][rows[b][c]] {
                        return Err(Error::Load(format!(
                            "associativity fails for ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        // swap e and 0
        let perm = |x: usize| {
            if x == e {
                0
            } else if x == 0 {
                e
            } else {
                x
            }
        };
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[perm(a) * n + perm(b)] = perm(rows[a][b]);
            }
        }
        let labels = labels.map(|mut l| {
            l.swap(0, e);
            l
        });
        let mut inverse = vec![0; n];
        for a in 0..n {
            inverse[a] = (0..n).find(|&b| table[a * n + b] == 0).unwrap();
        }
        Ok(FiniteGroup {
            name,
            n,
            table,
            inverse,
            labels,
            lattice: OnceLock::new(),
        })
    }

    /// Builds a group from a table already known to be valid with identity 0.
    pub(crate) fn from_trusted_table(
        name: impl Into<String>,
        n: usize,
        table: Vec<usize>,
        labels: Option<Vec<String>>,
    ) -> Self {
        debug_assert_eq!(table.len(), n * n);
        let mut inverse = vec![0; n];
        for a in 0..n {
            inverse[a] = (0..n).find(|&b| table[a * n + b] == 0).unwrap();
        }
        FiniteGroup {
            name: name.into(),
            n,
            table,
            inverse,
            labels,
            lattice: OnceLock::new(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `g x g^-1`
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inverse[g])
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn same_table(&self, other: &FiniteGroup) -> bool {
        self.n == other.n && self.table == other.table
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Sorted element list of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut out = vec![0];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    pub fn subgroup(&self, gens: &[usize]) -> Subgroup {
        Subgroup::from_sorted(self.n, self.closure(gens))
    }

    /// Interprets `elems` as a subgroup, checking closure.
    pub fn subgroup_from_elements(&self, elems: &[usize]) -> Result<Subgroup> {
        let mut v = elems.to_vec();
        v.sort_unstable();
        v.dedup();
        if v.iter().any(|&x| x >= self.n) {
            return Err(Error::Precondition("element index out of range".into()));
        }
        let s = Subgroup::from_sorted(self.n, v);
        if !s.contains(0) || !self.is_closed(&s) {
            return Err(Error::Precondition(format!(
                "{:?} is not a subgroup of {}",
                s.elements(),
                self.name
            )));
        }
        Ok(s)
    }

    fn is_closed(&self, s: &Subgroup) -> bool {
        s.elements()
            .iter()
            .all(|&a| s.elements().iter().all(|&b| s.contains(self.mul(a, b))))
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_sorted(self.n, (0..self.n).collect())
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup::from_sorted(self.n, vec![0])
    }

    /// A small generating set, chosen greedily from elements of large order.
    pub fn generators_of(&self, s: &Subgroup) -> Vec<usize> {
        let mut cands: Vec<usize> = s.elements().iter().copied().filter(|&x| x != 0).collect();
        cands.sort_by_key(|&x| (std::cmp::Reverse(self.element_order(x)), x));
        let mut gens = Vec::new();
        let mut cur = ElemSet::from_elems(self.n, &[0]);
        let mut size = 1;
        for x in cands {
            if size == s.order() {
                break;
            }
            if !cur.contains(x) {
                gens.push(x);
                let c = self.closure(&gens);
                size = c.len();
                cur = ElemSet::from_elems(self.n, &c);
            }
        }
        gens
    }

    pub fn conjugate_subgroup(&self, g: usize, s: &Subgroup) -> Subgroup {
        let mut v: Vec<usize> = s.elements().iter().map(|&x| self.conj(g, x)).collect();
        v.sort_unstable();
        Subgroup::from_sorted(self.n, v)
    }

    pub fn normalizer(&self, s: &Subgroup) -> Subgroup {
        let gens = self.generators_of(s);
        let elems: Vec<usize> = (0..self.n)
            .filter(|&g| gens.iter().all(|&u| s.contains(self.conj(g, u))))
            .collect();
        Subgroup::from_sorted(self.n, elems)
    }

    pub fn centralizer(&self, s: &Subgroup) -> Subgroup {
        let gens = self.generators_of(s);
        let elems: Vec<usize> = (0..self.n)
            .filter(|&g| gens.iter().all(|&u| self.mul(g, u) == self.mul(u, g)))
            .collect();
        Subgroup::from_sorted(self.n, elems)
    }

    /// `U` is normal in `V` (and contained in it).
    pub fn is_normal_in(&self, u: &Subgroup, v: &Subgroup) -> bool {
        u.is_subgroup_of(v)
            && self
                .generators_of(v)
                .iter()
                .all(|&g| u.elements().iter().all(|&x| u.contains(self.conj(g, x))))
    }

    /// `C_G(U,V)`: elements of `N_G(U) ∩ N_G(V)` acting trivially on `V/U`.
    pub fn relative_centralizer(&self, u: &Subgroup, v: &Subgroup) -> Result<Subgroup> {
        if !self.is_normal_in(u, v) {
            return Err(Error::Precondition(format!(
                "{:?} is not normal in {:?}",
                u.elements(),
                v.elements()
            )));
        }
        let nu = self.normalizer(u);
        let nv = self.normalizer(v);
        let elems: Vec<usize> = (0..self.n)
            .filter(|&g| nu.contains(g) && nv.contains(g))
            .filter(|&g| {
                v.elements().iter().all(|&x| {
                    // g x g^-1 x^-1 in U
                    u.contains(self.mul(self.conj(g, x), self.inv(x)))
                })
            })
            .collect();
        Ok(Subgroup::from_sorted(self.n, elems))
    }

    pub fn is_p_group(&self, p: usize) -> bool {
        let mut m = self.n;
        while m.is_multiple_of(p) {
            m /= p;
        }
        m == 1 && p > 1
    }

    /// The subgroup `s` as a group in its own right, with the embedding `new index -> old index`.
    pub fn subgroup_as_group(&self, s: &Subgroup, name: impl Into<String>) -> (FiniteGroup, Vec<usize>) {
        let elems = s.elements().to_vec();
        let k = elems.len();
        let mut pos = vec![usize::MAX; self.n];
        for (i, &x) in elems.iter().enumerate() {
            pos[x] = i;
        }
        let mut table = vec![0; k * k];
        for i in 0..k {
            for j in 0..k {
                table[i * k + j] = pos[self.mul(elems[i], elems[j])];
            }
        }
        let labels = self.labels.as_ref().map(|l| elems.iter().map(|&x| l[x].clone()).collect());
        (FiniteGroup::from_trusted_table(name, k, table, labels), elems)
    }

    /// The subgroup lattice, computed once and cached.
    pub fn lattice(&self) -> &Lattice {
        self.lattice.get_or_init(|| Lattice::build(self))
    }

    /// All subgroups in canonical order, subject to the configured order bound.
    pub fn all_subgroups(&self) -> Result<&[Subgroup]> {
        let bound = max_group_order();
        if self.n > bound {
            return Err(Error::Capacity {
                what: format!("group {}", self.name),
                order: self.n,
                bound,
            });
        }
        Ok(self.lattice().subgroups())
    }

    /// Composition length of the whole group.
    pub fn composition_length(&self) -> usize {
        let l = self.lattice();
        l.composition_length(l.len() - 1)
    }
}
