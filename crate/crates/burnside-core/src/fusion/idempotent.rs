use std::sync::Arc;

use num::{BigRational, Zero};

use super::system::{enumerate_fusion_systems, FusionSystem, TwistedDiagonals};
use crate::burnside::{opposite_element, rat, valuation, BurnsideElement, SubgroupSystem};
use crate::error::{Error, Result};
use crate::ghost::{rho, rho_inverse, sigma_tilde, GhostElement};

/// `|S| / (|Hom_F(P,S)|·|C_S(P)|)` at one subgroup `P`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatFsValue {
    /// lattice id of `P`
    pub subgroup: usize,
    pub value: BigRational,
    pub p_integral: bool,
}

#[derive(Debug, Clone)]
pub struct IdempotentReport {
    pub omega_ghost: GhostElement,
    pub omega_standard: BurnsideElement,
    pub is_idempotent: bool,
    pub is_frobenius_left: bool,
    pub is_frobenius_right: bool,
    /// `ω° = ω`
    pub is_symmetric: bool,
    /// `{L : Φ_L(ω) ≠ 0}`
    pub fix_set: Arc<SubgroupSystem>,
    pub fix_equals_system: bool,
    pub p_integral_standard: bool,
    /// least `p`-adic valuation of a standard coefficient
    pub worst_valuation: Option<i64>,
    /// one entry per conjugacy class representative of subgroups of `S`
    pub sat_fs: Vec<SatFsValue>,
}

/// Marks of `a` at every twisted diagonal of `G × G`, indexed like `delta.members()`.
fn delta_marks(a: &BurnsideElement, delta: &SubgroupSystem) -> Vec<BigRational> {
    if a.system().id() == delta.id() {
        let by_class = a.marks();
        return delta.members().iter().map(|m| by_class[m.class].clone()).collect();
    }
    delta.members().iter().map(|m| a.mark_at(&m.elems)).collect()
}

fn bifree_over_one_group(a: &BurnsideElement) -> Result<Arc<SubgroupSystem>> {
    let sys = a.system();
    if !sys.left().same_table(sys.right()) {
        return Err(Error::Domain("expected an element over (S,S)".into()));
    }
    if a.terms().any(|(c, _)| {
        let r = sys.rep(c);
        r.k1 != 0 || r.k2 != 0
    }) {
        return Err(Error::Domain("the element has non-bifree support".into()));
    }
    if sys.is_bifree() {
        return Ok(sys.clone());
    }
    SubgroupSystem::bifree(sys.left().clone(), sys.right().clone())
}

fn frobenius_from_marks(delta: &SubgroupSystem, m: &[BigRational]) -> (bool, bool) {
    let prod = delta.product();
    let g = delta.left();
    let gl = g.lattice();
    // value table of each twisted diagonal on its domain
    let n = g.order();
    let maps: Vec<Vec<usize>> = delta
        .members()
        .iter()
        .map(|mem| {
            let mut v = vec![usize::MAX; n];
            for &z in &mem.elems {
                v[prod.p2(z)] = prod.p1(z);
            }
            v
        })
        .collect();
    let id_of = |pairs: &mut Vec<usize>| {
        pairs.sort_unstable();
        delta.member_id(pairs).expect("twisted diagonals are closed")
    };
    let (mut left, mut right) = (true, true);
    for p in 0..gl.len() {
        let dom = gl.subgroup(p).elements();
        let with_p = delta.members_with_p2(p);
        for &i in with_p {
            let op_i = {
                let mut e: Vec<usize> = dom.iter().map(|&x| prod.pair(x, maps[i][x])).collect();
                id_of(&mut e)
            };
            for &j in with_p {
                // {(φx, ψx)}
                let mut e: Vec<usize> = dom.iter().map(|&x| prod.pair(maps[i][x], maps[j][x])).collect();
                let k = id_of(&mut e);
                if &m[i] * &m[j] != &m[k] * &m[j] {
                    right = false;
                }
                // {(x, φx)}, {(x, ψx)}, {(ψx, φx)}
                let mut e: Vec<usize> = dom.iter().map(|&x| prod.pair(x, maps[j][x])).collect();
                let op_j = id_of(&mut e);
                let mut e: Vec<usize> = dom.iter().map(|&x| prod.pair(maps[j][x], maps[i][x])).collect();
                let k = id_of(&mut e);
                if &m[op_i] * &m[op_j] != &m[k] * &m[op_j] {
                    left = false;
                }
            }
        }
        if !left && !right {
            break;
        }
    }
    (left, right)
}

/// Left and right Frobenius property of `a`, tested through marks at twisted diagonals.
pub fn is_frobenius(a: &BurnsideElement) -> Result<(bool, bool)> {
    let delta = bifree_over_one_group(a)?;
    Ok(frobenius_from_marks(&delta, &delta_marks(a, &delta)))
}

/// `{L : Φ_L(a) ≠ 0}` among the twisted diagonals, as member ids of `delta`.
fn fix_ids(delta: &SubgroupSystem, marks: &[BigRational]) -> Vec<usize> {
    (0..delta.members().len()).filter(|&i| !marks[i].is_zero()).collect()
}

fn fix_closed_under_subgroups(delta: &SubgroupSystem, fix: &[usize]) -> bool {
    let prod = delta.product();
    let g = delta.left();
    let set: std::collections::HashSet<usize> = fix.iter().copied().collect();
    let gl = g.lattice();
    fix.iter().all(|&i| {
        let m = delta.member(i);
        gl.subgroups_of(m.p2).into_iter().all(|r| {
            let rs = gl.subgroup(r);
            let mut e: Vec<usize> = m.elems.iter().copied().filter(|&z| rs.contains(prod.p2(z))).collect();
            e.sort_unstable();
            delta.member_id(&e).is_some_and(|k| set.contains(&k))
        })
    })
}

fn fix_system(delta: &SubgroupSystem, fix: &[usize]) -> Result<Arc<SubgroupSystem>> {
    let elems = fix.iter().map(|&i| delta.member(i).elems.clone()).collect();
    SubgroupSystem::custom(delta.left().clone(), delta.right().clone(), "Fix", elems)
}

fn delta_of_s_id(delta: &SubgroupSystem) -> usize {
    let g = delta.left();
    delta
        .member_id(&delta.product().diagonal(&g.whole()))
        .expect("Δ(S) is bifree")
}

/// The characteristic idempotent `ω_F ∈ ℚB^Δ(S,S)` together with its properties.
///
/// The ghost coefficient at `L = Δ(φP,φ,P) ∈ S(F)` is `|S|/(|Hom_F(P,S)|·|C_S(φP)|)`,
/// so that `Φ_L(ω_F) = |S|/|Hom_F(φP,S)|`; all other coefficients vanish.
pub fn omega(f: &FusionSystem) -> Result<IdempotentReport> {
    let u = f.universe();
    let delta = u.full_system().clone();
    let s = f.base();
    let gl = s.lattice();
    let order = rat(s.order() as i64);
    let mut ghost = GhostElement::zero(&delta)?;
    for c in 0..delta.rank() {
        let r = delta.rep(c);
        if f.member_set().contains(delta.member_id(&r.elems).expect("rep is a member")) {
            let hom = f.hom_count(r.p1) * gl.centralizer_order(r.p1);
            ghost.add_term(c, &order / rat(hom as i64));
        }
    }
    let standard = rho_inverse(&ghost)?;
    let report = idempotent_properties(&standard, &delta)?;
    let fix_ids: Vec<usize> = report.fix.clone();
    let fix_equals_system = fix_ids.len() == f.len() && fix_ids.iter().all(|&i| f.member_set().contains(i));
    let sat_fs = gl
        .class_reps()
        .into_iter()
        .map(|p| {
            let value = sat_fs_value(f, p);
            let p_integral = valuation(&value, u.prime() as u64) >= 0;
            SatFsValue {
                subgroup: p,
                value,
                p_integral,
            }
        })
        .collect();
    let worst = standard.min_valuation(u.prime() as u64);
    Ok(IdempotentReport {
        omega_ghost: ghost,
        is_idempotent: report.idempotent,
        is_frobenius_left: report.left,
        is_frobenius_right: report.right,
        is_symmetric: report.symmetric,
        fix_set: fix_system(&delta, &fix_ids)?,
        fix_equals_system,
        p_integral_standard: worst.is_none_or(|v| v >= 0),
        worst_valuation: worst,
        sat_fs,
        omega_standard: standard,
    })
}

/// `|S| / (|Hom_F(P,S)|·|C_S(P)|)`.
pub fn sat_fs_value(f: &FusionSystem, p: usize) -> BigRational {
    let s = f.base();
    let d = f.hom_count(p) * s.lattice().centralizer_order(p);
    BigRational::new(s.order().into(), d.into())
}

struct Properties {
    idempotent: bool,
    left: bool,
    right: bool,
    symmetric: bool,
    fix: Vec<usize>,
}

fn idempotent_properties(a: &BurnsideElement, delta: &Arc<SubgroupSystem>) -> Result<Properties> {
    let a = a.embed(delta)?;
    let idempotent = a.mul(&a)? == a;
    let marks = delta_marks(&a, delta);
    let (left, right) = frobenius_from_marks(delta, &marks);
    let symmetric = opposite_element(&a, delta)? == a;
    Ok(Properties {
        idempotent,
        left,
        right,
        symmetric,
        fix: fix_ids(delta, &marks),
    })
}

/// Membership of `a` in `Idem(S)` and its integrality refinements.
#[derive(Debug, Clone)]
pub struct IdempotentClassification {
    pub is_idempotent: bool,
    pub is_frobenius_left: bool,
    pub is_frobenius_right: bool,
    pub fix_subgroup_closed: bool,
    pub contains_delta_s: bool,
    /// all of the above
    pub in_idem: bool,
    pub standard_p_integral: bool,
    pub worst_standard_valuation: Option<i64>,
    pub ghost_p_integral: bool,
    pub sigma_tilde_p_integral: bool,
    /// member ids of `Fix(a)` in the bifree system over `(S,S)`
    pub fix: Vec<usize>,
}

pub fn classify_idempotent(a: &BurnsideElement, p: u64) -> Result<IdempotentClassification> {
    let delta = bifree_over_one_group(a)?;
    let a = a.embed(&delta)?;
    let props = idempotent_properties(&a, &delta)?;
    let fix_subgroup_closed = fix_closed_under_subgroups(&delta, &props.fix);
    let contains_delta_s = props.fix.contains(&delta_of_s_id(&delta));
    let worst = a.min_valuation(p);
    let ghost = rho(&a)?;
    let ghost_p_integral = ghost.terms().all(|(_, v)| valuation(v, p) >= 0);
    let sigma_tilde_p_integral = sigma_tilde(&a)?
        .iter()
        .all(|b| b.matrix.entries.iter().flatten().all(|v| valuation(v, p) >= 0));
    Ok(IdempotentClassification {
        is_idempotent: props.idempotent,
        is_frobenius_left: props.left,
        is_frobenius_right: props.right,
        fix_subgroup_closed,
        contains_delta_s,
        in_idem: props.idempotent && props.left && props.right && fix_subgroup_closed && contains_delta_s,
        standard_p_integral: worst.is_none_or(|v| v >= 0),
        worst_standard_valuation: worst,
        ghost_p_integral,
        sigma_tilde_p_integral,
        fix: props.fix,
    })
}

/// `Fix(a)` as a set of universe ids.
pub fn fix_set(a: &BurnsideElement, universe: &TwistedDiagonals) -> Result<Vec<usize>> {
    let delta = universe.full_system();
    let a = a.embed(delta)?;
    Ok(fix_ids(delta, &delta_marks(&a, delta)))
}

/// One row of the triangle check.
#[derive(Debug, Clone)]
pub struct TriangleRow {
    pub label: String,
    pub morphisms: usize,
    /// `Fix(ω_F) = S(F)`
    pub commutes: bool,
    pub omega: BurnsideElement,
}

#[derive(Debug, Clone)]
pub struct TriangleRecord {
    pub group: String,
    pub prime: usize,
    pub rows: Vec<TriangleRow>,
    pub all_commute: bool,
    /// the `ω_F` are pairwise distinct
    pub injective: bool,
}

/// Runs `F ↦ ω_F ↦ Fix(ω_F)` against `F ↦ S(F)` over all fusion systems on `S`.
pub fn triangle_check(universe: &Arc<TwistedDiagonals>) -> Result<TriangleRecord> {
    let systems = enumerate_fusion_systems(universe);
    let mut rows = Vec::with_capacity(systems.len());
    for f in &systems {
        let r = omega(f)?;
        let fix = fix_set(&r.omega_standard, universe)?;
        let commutes = fix.len() == f.len() && fix.iter().all(|&i| f.member_set().contains(i));
        rows.push(TriangleRow {
            label: f.label().to_string(),
            morphisms: f.len(),
            commutes,
            omega: r.omega_standard,
        });
    }
    let injective = rows
        .iter()
        .enumerate()
        .all(|(i, a)| rows[i + 1..].iter().all(|b| a.omega != b.omega));
    Ok(TriangleRecord {
        group: universe.base().name().to_string(),
        prime: universe.prime(),
        all_commute: rows.iter().all(|r| r.commutes),
        rows,
        injective,
    })
}

/// `[S×S/Δ(S)]` in the bifree system over `(S,S)`.
pub fn delta_identity(delta: &Arc<SubgroupSystem>) -> BurnsideElement {
    BurnsideElement::basis(delta, delta.member(delta_of_s_id(delta)).class)
}
