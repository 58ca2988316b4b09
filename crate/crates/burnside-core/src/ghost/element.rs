use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num::{BigRational, One, Zero};

use crate::burnside::{rat, BurnsideElement, SubgroupSystem};
use crate::error::{Error, Result};
use crate::burnside::GhostTable;

/// A rational combination of orbit sums `[U,α,V]⁺` over a left-free system.
///
/// Orbits of triples correspond to conjugacy classes of the left-free subgroups
/// `◁(U,α,V)`, so coefficients are keyed by the class index of the system.
#[derive(Clone)]
pub struct GhostElement {
    system: Arc<SubgroupSystem>,
    coeffs: BTreeMap<usize, BigRational>,
}

impl PartialEq for GhostElement {
    fn eq(&self, other: &Self) -> bool {
        self.system.id() == other.system.id() && self.coeffs == other.coeffs
    }
}

impl Eq for GhostElement {}

impl fmt::Debug for GhostElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GhostElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|(c, v)| format!("{v}*[{c}]⁺")).collect();
        f.write_str(&parts.join(" + "))
    }
}

fn require_left_free(system: &SubgroupSystem) -> Result<()> {
    if !system.is_left_free() {
        return Err(Error::Domain(format!(
            "the `{}` system over {} x {} is not left-free",
            system.flavor(),
            system.left().name(),
            system.right().name()
        )));
    }
    Ok(())
}

impl GhostElement {
    pub fn zero(system: &Arc<SubgroupSystem>) -> Result<Self> {
        require_left_free(system)?;
        Ok(GhostElement {
            system: system.clone(),
            coeffs: BTreeMap::new(),
        })
    }

    /// The orbit sum `[U,α,V]⁺` of the class `class`.
    pub fn orbit_sum(system: &Arc<SubgroupSystem>, class: usize) -> Result<Self> {
        Self::from_terms(system, [(class, BigRational::one())])
    }

    pub fn from_terms(
        system: &Arc<SubgroupSystem>,
        terms: impl IntoIterator<Item = (usize, BigRational)>,
    ) -> Result<Self> {
        let mut e = Self::zero(system)?;
        for (c, v) in terms {
            assert!(c < system.rank(), "class index {c} out of range");
            e.add_term(c, v);
        }
        Ok(e)
    }

    pub(crate) fn add_term(&mut self, c: usize, v: BigRational) {
        if v.is_zero() {
            return;
        }
        let e = self.coeffs.entry(c).or_insert_with(BigRational::zero);
        *e += v;
        if e.is_zero() {
            self.coeffs.remove(&c);
        }
    }

    pub fn system(&self) -> &Arc<SubgroupSystem> {
        &self.system
    }

    pub fn coeff(&self, class: usize) -> BigRational {
        self.coeffs.get(&class).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigRational)> {
        self.coeffs.iter().map(|(c, v)| (*c, v))
    }

    pub fn to_dense(&self) -> Vec<BigRational> {
        (0..self.system.rank()).map(|c| self.coeff(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lies in the lattice `B̃` spanned by the orbit sums.
    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|v| v.is_integer())
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        let mut out = GhostElement {
            system: self.system.clone(),
            coeffs: BTreeMap::new(),
        };
        for (c, v) in &self.coeffs {
            out.add_term(*c, v * s);
        }
        out
    }

    /// `l(ker α)` for the class of `(U,α,V)`.
    pub fn degree_of(system: &SubgroupSystem, class: usize) -> usize {
        system.right().lattice().composition_length(system.rep(class).k2)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        ghost_product(self, other, &self.system.clone())
    }
}

impl Add for &GhostElement {
    type Output = GhostElement;
    fn add(self, rhs: &GhostElement) -> GhostElement {
        assert_eq!(self.system.id(), rhs.system.id(), "elements of different systems");
        let mut out = self.clone();
        for (c, v) in &rhs.coeffs {
            out.add_term(*c, v.clone());
        }
        out
    }
}

impl Neg for &GhostElement {
    type Output = GhostElement;
    fn neg(self) -> GhostElement {
        self.scale(&-BigRational::one())
    }
}

impl Sub for &GhostElement {
    type Output = GhostElement;
    fn sub(self, rhs: &GhostElement) -> GhostElement {
        self + &(-rhs)
    }
}

fn centralizer_left(system: &SubgroupSystem, class: usize) -> BigRational {
    let gl = system.left().lattice();
    rat(gl.centralizer_order(system.rep(class).p1) as i64)
}

/// `ρ(a)`: coefficient `|X^{◁(U,α,V)}| / |C_G(U)|` at the orbit of `(U,α,V)`.
pub fn rho(a: &BurnsideElement) -> Result<GhostElement> {
    let sys = a.system();
    let mut out = GhostElement::zero(sys)?;
    for (c, m) in a.marks().into_iter().enumerate() {
        out.add_term(c, m / centralizer_left(sys, c));
    }
    Ok(out)
}

/// Matrix of `ρ` in the standard bases: column `j` is `ρ([G×H/L_j])`.
pub fn rho_matrix(system: &SubgroupSystem) -> Result<Vec<Vec<BigRational>>> {
    require_left_free(system)?;
    let m = system.mark_matrix();
    Ok((0..system.rank())
        .map(|i| {
            let c = centralizer_left(system, i);
            (0..system.rank()).map(|j| rat(m[i][j] as i64) / &c).collect()
        })
        .collect())
}

/// `ρ^-1` by Möbius inversion on the subgroup lattice of `H`:
/// `ρ^-1([U,α,V]⁺) = |C_G(U)|/|N(◁(U,α,V))| Σ_{W≤V} |W| μ(W,V) [G×H/◁(α(W),α|_W,W)]`.
pub fn rho_inverse(x: &GhostElement) -> Result<BurnsideElement> {
    let sys = x.system();
    let prod = sys.product();
    let hl = sys.right().lattice();
    let mut out = BurnsideElement::zero(sys);
    for (c, v) in x.terms() {
        let rep = sys.rep(c);
        let alpha: HashMap<usize, usize> = rep.elems.iter().map(|&z| (prod.p2(z), prod.p1(z))).collect();
        let f = v * centralizer_left(sys, c) / rat(sys.normalizer_order(c) as i64);
        for (w, mu) in hl.mobius_below(rep.p2) {
            if mu == 0 {
                continue;
            }
            let ws = hl.subgroup(w);
            let mut sub: Vec<usize> = ws.elements().iter().map(|&y| prod.pair(alpha[&y], y)).collect();
            sub.sort_unstable();
            let d = sys.class_of_elems(&sub).ok_or_else(|| {
                Error::SystemClosure(format!("{} is missing from the system", sys.describe(&sub)))
            })?;
            let term = BurnsideElement::basis(sys, d).scale(&(&f * rat(ws.order() as i64 * mu)));
            out = &out + &term;
        }
    }
    Ok(out)
}

/// Structure constants of the ghost product `s1 × s2 -> target`: for each target class,
/// the list of `(class in s1, class in s2, weight)`.
fn ghost_table(s1: &SubgroupSystem, s2: &SubgroupSystem, target: &SubgroupSystem) -> GhostTable {
    let key = (s1.id(), s2.id());
    if let Some(t) = target.ghost_cache.lock().unwrap().get(&key) {
        return t.clone();
    }
    let (gh, hk, gk) = (s1.product(), s2.product(), target.product());
    let h = s2.left();
    let kl = s2.right().lattice();
    let hl = h.lattice();
    let hord = rat(h.order() as i64);
    let mut table = Vec::with_capacity(target.rank());
    for t in 0..target.rank() {
        let r = target.rep(t);
        let gamma: HashMap<usize, usize> = r.elems.iter().map(|&z| (gk.p2(z), gk.p1(z))).collect();
        let mut acc: BTreeMap<(usize, usize), BigRational> = BTreeMap::new();
        for &mi in s2.members_with_p2(r.p2) {
            let m = s2.member(mi);
            if !kl.contains(r.k2, m.k2) {
                continue;
            }
            // ◁(U,γ,W) * ◁(V,β,W)° = {(γ(w), β(w))}
            let mut l: Vec<usize> = m
                .elems
                .iter()
                .map(|&z| gh.pair(gamma[&hk.p2(z)], hk.p1(z)))
                .collect();
            l.sort_unstable();
            l.dedup();
            let Some(c1) = s1.class_of_elems(&l) else {
                continue;
            };
            let w = rat(hl.centralizer_order(m.p1) as i64) / &hord;
            *acc.entry((c1, m.class)).or_insert_with(BigRational::zero) += w;
        }
        table.push(acc.into_iter().map(|((a, b), w)| (a, b, w)).collect());
    }
    let table: GhostTable = Arc::new(table);
    target.ghost_cache.lock().unwrap().insert(key, table.clone());
    table
}

/// Product `B̃(G,H) × B̃(H,K) -> B̃(G,K)` with
/// `(U,α,V)·(V,β,W) = |C_H(V)|/|H| (U,αβ,W)` on single triples.
///
/// The coefficient at an orbit `[U,γ,W]⁺` is read off at the representative triple by
/// summing over all factorizations `γ = αβ`.
pub fn ghost_product(x: &GhostElement, y: &GhostElement, target: &Arc<SubgroupSystem>) -> Result<GhostElement> {
    let (s1, s2) = (x.system(), y.system());
    if !s1.right().same_table(s2.left()) {
        return Err(Error::Composition(format!(
            "middle groups differ: {} vs {}",
            s1.right().name(),
            s2.left().name()
        )));
    }
    if !target.left().same_table(s1.left()) || !target.right().same_table(s2.right()) {
        return Err(Error::Composition("target system is over the wrong pair of groups".into()));
    }
    let table = ghost_table(s1, s2, target);
    let mut out = GhostElement::zero(target)?;
    for (t, row) in table.iter().enumerate() {
        let mut s = BigRational::zero();
        for (a, b, w) in row {
            if let (Some(u), Some(v)) = (x.coeffs.get(a), y.coeffs.get(b)) {
                s += u * v * w;
            }
        }
        out.add_term(t, s);
    }
    Ok(out)
}

/// `Σ_U [U, id_U, U]⁺` over conjugacy classes of subgroups `U` of `G`.
pub fn ghost_identity(system: &Arc<SubgroupSystem>) -> Result<GhostElement> {
    let g = system.left();
    if !g.same_table(system.right()) {
        return Err(Error::Domain("the ghost identity needs a system over (G,G)".into()));
    }
    let prod = system.product();
    let gl = g.lattice();
    let mut out = GhostElement::zero(system)?;
    for rep in gl.class_reps() {
        let d = prod.diagonal(gl.subgroup(rep));
        let c = system.class_of_elems(&d).ok_or_else(|| {
            Error::SystemClosure(format!("Δ({:?}) is missing from the system", gl.subgroup(rep).elements()))
        })?;
        out.add_term(c, BigRational::one());
    }
    Ok(out)
}

/// `[U,α,V]⁺° = |C_G(U)|/|C_H(V)| [V,α^-1,U]⁺` on bifree elements, collected in
/// `target` (over `(H,G)`). This is the scaling for which `ρ(a°) = ρ(a)°`.
pub fn ghost_opposite(x: &GhostElement, target: &Arc<SubgroupSystem>) -> Result<GhostElement> {
    let s = x.system();
    if !target.left().same_table(s.right()) || !target.right().same_table(s.left()) {
        return Err(Error::Composition("target system is not over the opposite pair".into()));
    }
    let hl = s.right().lattice();
    let mut out = GhostElement::zero(target)?;
    for (c, v) in x.terms() {
        let rep = s.rep(c);
        if rep.k2 != 0 {
            return Err(Error::Domain("the ghost opposite is defined on twisted diagonals".into()));
        }
        let o = crate::goursat::opposite(s.product(), &rep.elems, target.product());
        let d = target
            .class_of_elems(&o)
            .ok_or_else(|| Error::SystemClosure(format!("{} is missing from the system", target.describe(&o))))?;
        let f = centralizer_left(s, c) / rat(hl.centralizer_order(rep.p2) as i64);
        out.add_term(d, v * f);
    }
    Ok(out)
}
