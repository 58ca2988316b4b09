use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num::{BigInt, BigRational, One, Signed, Zero};

use super::system::{ProductTable, SubgroupSystem};
use crate::error::{Error, Result};
use crate::goursat::star_unchecked;

/// A rational combination of standard basis elements `[G×H/L]` of a subgroup system.
#[derive(Clone)]
pub struct BurnsideElement {
    system: Arc<SubgroupSystem>,
    coeffs: BTreeMap<usize, BigRational>,
}

impl fmt::Debug for BurnsideElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for BurnsideElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|(c, v)| format!("{v}*[{c}]")).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl PartialEq for BurnsideElement {
    fn eq(&self, other: &Self) -> bool {
        self.system.id() == other.system.id() && self.coeffs == other.coeffs
    }
}

impl Eq for BurnsideElement {}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl BurnsideElement {
    pub fn zero(system: &Arc<SubgroupSystem>) -> Self {
        BurnsideElement {
            system: system.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    /// `[G×H/L]` for the class `class`.
    pub fn basis(system: &Arc<SubgroupSystem>, class: usize) -> Self {
        Self::from_terms(system, [(class, BigRational::one())])
    }

    pub fn from_terms(
        system: &Arc<SubgroupSystem>,
        terms: impl IntoIterator<Item = (usize, BigRational)>,
    ) -> Self {
        let mut e = Self::zero(system);
        for (c, v) in terms {
            assert!(c < system.rank(), "class index {c} out of range");
            e.add_term(c, v);
        }
        e
    }

    pub fn from_dense(system: &Arc<SubgroupSystem>, v: &[BigRational]) -> Self {
        Self::from_terms(system, v.iter().cloned().enumerate())
    }

    /// `[G×H/L]` for the class containing the subgroup `elems`.
    pub fn transitive(system: &Arc<SubgroupSystem>, elems: &[usize]) -> Result<Self> {
        let mut v = elems.to_vec();
        v.sort_unstable();
        let c = system.class_of_elems(&v).ok_or_else(|| {
            Error::SystemClosure(format!(
                "{} is not a member of the `{}` system",
                system.describe(&v),
                system.flavor()
            ))
        })?;
        Ok(Self::basis(system, c))
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

    /// All coefficients are integers, i.e. the element is a virtual biset.
    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|v| v.is_integer())
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Self::from_terms(&self.system, self.coeffs.iter().map(|(c, v)| (*c, v * s)))
    }

    /// The same coefficients read in another system over the same pair; every class
    /// representative must belong to `target`.
    pub fn embed(&self, target: &Arc<SubgroupSystem>) -> Result<Self> {
        check_same_pair(&self.system, target)?;
        let mut out = Self::zero(target);
        for (c, v) in &self.coeffs {
            let rep = &self.system.rep(*c).elems;
            let d = target.class_of_elems(rep).ok_or_else(|| {
                Error::SystemClosure(format!(
                    "{} is not a member of the `{}` system",
                    target.describe(rep),
                    target.flavor()
                ))
            })?;
            out.add_term(d, v.clone());
        }
        Ok(out)
    }

    /// `Φ_L(a)` for `L` the representative of every class, in basis order.
    pub fn marks(&self) -> Vec<BigRational> {
        let m = self.system.mark_matrix();
        (0..self.system.rank())
            .map(|i| {
                self.coeffs
                    .iter()
                    .map(|(j, v)| v * rat(m[i][*j] as i64))
                    .fold(BigRational::zero(), |a, b| a + b)
            })
            .collect()
    }

    /// `Φ_R(a)` for an arbitrary subgroup `R ≤ G×H` given by its elements.
    pub fn mark_at(&self, r: &[usize]) -> BigRational {
        self.coeffs
            .iter()
            .map(|(j, v)| v * rat(self.system.mark_at(r, *j) as i64))
            .fold(BigRational::zero(), |a, b| a + b)
    }

    /// Largest `p`-adic valuation deficit: the minimum valuation over the coefficients
    /// (`None` for the zero element).
    pub fn min_valuation(&self, p: u64) -> Option<i64> {
        self.coeffs.values().map(|v| valuation(v, p)).min()
    }

    /// Product in `B(G,G)` when both factors live in one system over `(G,G)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        mackey_product(self, other, &self.system.clone())
    }
}

/// `p`-adic valuation of a non-zero rational.
pub fn valuation(v: &BigRational, p: u64) -> i64 {
    let p = BigInt::from(p);
    let count = |x: &BigInt| {
        let mut x = x.abs();
        let mut k = 0;
        while !x.is_zero() && (&x % &p).is_zero() {
            x /= &p;
            k += 1;
        }
        k
    };
    count(v.numer()) - count(v.denom())
}

fn check_same_pair(a: &SubgroupSystem, b: &SubgroupSystem) -> Result<()> {
    if !a.left().same_table(b.left()) || !a.right().same_table(b.right()) {
        return Err(Error::Composition(format!(
            "systems over {} x {} and {} x {} differ",
            a.left().name(),
            a.right().name(),
            b.left().name(),
            b.right().name()
        )));
    }
    Ok(())
}

impl Add for &BurnsideElement {
    type Output = BurnsideElement;
    fn add(self, rhs: &BurnsideElement) -> BurnsideElement {
        assert_eq!(self.system.id(), rhs.system.id(), "elements of different systems");
        let mut out = self.clone();
        for (c, v) in &rhs.coeffs {
            out.add_term(*c, v.clone());
        }
        out
    }
}

impl Sub for &BurnsideElement {
    type Output = BurnsideElement;
    fn sub(self, rhs: &BurnsideElement) -> BurnsideElement {
        self + &(-rhs)
    }
}

impl Neg for &BurnsideElement {
    type Output = BurnsideElement;
    fn neg(self) -> BurnsideElement {
        self.scale(&-BigRational::one())
    }
}

impl Mul<&BigRational> for &BurnsideElement {
    type Output = BurnsideElement;
    fn mul(self, s: &BigRational) -> BurnsideElement {
        self.scale(s)
    }
}

/// Double coset representatives `A\H/B`, each the least element of its double coset.
pub(crate) fn double_coset_reps(
    h: &crate::groups::FiniteGroup,
    a: &crate::groups::Subgroup,
    b: &crate::groups::Subgroup,
) -> Vec<usize> {
    let mut seen = vec![false; h.order()];
    let mut reps = Vec::new();
    for x in 0..h.order() {
        if seen[x] {
            continue;
        }
        reps.push(x);
        for &u in a.elements() {
            let ux = h.mul(u, x);
            for &v in b.elements() {
                seen[h.mul(ux, v)] = true;
            }
        }
    }
    reps
}

/// Mackey product of two basis elements, as `(class in target, multiplicity)` pairs.
pub(crate) fn basis_product(
    s1: &SubgroupSystem,
    i: usize,
    s2: &SubgroupSystem,
    j: usize,
    target: &SubgroupSystem,
) -> Result<ProductTable> {
    let key = (s2.id(), target.id(), i, j);
    if let Some(t) = s1.mackey_cache.lock().unwrap().get(&key) {
        return Ok(t.clone());
    }
    let (gh, hk) = (s1.product(), s2.product());
    let h = gh.right();
    let l = s1.rep(i);
    let m = s2.rep(j);
    let hl = h.lattice();
    let mut acc: BTreeMap<usize, u64> = BTreeMap::new();
    for x in double_coset_reps(h, hl.subgroup(l.p2), hl.subgroup(m.p1)) {
        let mc = hk.conjugate(hk.embed_left(x), &m.elems);
        let lm = star_unchecked(gh, &l.elems, hk, &mc);
        let c = target.class_of_elems(&lm).ok_or_else(|| {
            Error::SystemClosure(format!(
                "the product leaves the `{}` system: {} is not a member",
                target.flavor(),
                target.describe(&lm)
            ))
        })?;
        *acc.entry(c).or_insert(0) += 1;
    }
    let t: ProductTable = Arc::new(acc.into_iter().collect());
    s1.mackey_cache.lock().unwrap().insert(key, t.clone());
    Ok(t)
}

/// `a ·_H b` by the Mackey formula, collected in `target` (a system over `(G,K)`).
pub fn mackey_product(
    a: &BurnsideElement,
    b: &BurnsideElement,
    target: &Arc<SubgroupSystem>,
) -> Result<BurnsideElement> {
    let (s1, s2) = (a.system(), b.system());
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
    let mut out = BurnsideElement::zero(target);
    for (i, x) in a.terms() {
        for (j, y) in b.terms() {
            let xy = x * y;
            for &(c, k) in basis_product(s1, i, s2, j, target)?.iter() {
                out.add_term(c, &xy * rat(k as i64));
            }
        }
    }
    Ok(out)
}

/// `[G×H/L] ↦ [H×G/L°]`, collected in `target` (a system over `(H,G)`).
pub fn opposite_element(a: &BurnsideElement, target: &Arc<SubgroupSystem>) -> Result<BurnsideElement> {
    let s = a.system();
    if !target.left().same_table(s.right()) || !target.right().same_table(s.left()) {
        return Err(Error::Composition("target system is not over the opposite pair".into()));
    }
    let mut out = BurnsideElement::zero(target);
    for (c, v) in a.terms() {
        let o = crate::goursat::opposite(s.product(), &s.rep(c).elems, target.product());
        let d = target.class_of_elems(&o).ok_or_else(|| {
            Error::SystemClosure(format!(
                "opposite {} is not a member of the `{}` system",
                target.describe(&o),
                target.flavor()
            ))
        })?;
        out.add_term(d, v.clone());
    }
    Ok(out)
}

pub fn marks(a: &BurnsideElement) -> Vec<BigRational> {
    a.marks()
}

pub fn mark_matrix(system: &SubgroupSystem) -> &Vec<Vec<u64>> {
    system.mark_matrix()
}

pub fn standard_basis(system: &SubgroupSystem) -> Vec<&[usize]> {
    system.standard_basis()
}
