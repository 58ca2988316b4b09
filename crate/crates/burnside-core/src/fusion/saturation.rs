use num::BigRational;

use super::idempotent::sat_fs_value;
use super::system::FusionSystem;
use crate::burnside::valuation;

fn p_part(mut n: usize, p: usize) -> usize {
    let mut q = 1;
    while n.is_multiple_of(p) {
        n /= p;
        q *= p;
    }
    q
}

/// Outcome of the brute-force saturation test.
#[derive(Debug, Clone)]
pub struct SaturationReport {
    pub saturated: bool,
    pub sylow_axiom: bool,
    /// `(P, φ)` as (lattice id, universe id) for every morphism violating the extension axiom
    pub violations: Vec<(usize, usize)>,
}

impl SaturationReport {
    /// The first violation of the extension axiom.
    pub fn witness(&self) -> Option<(usize, usize)> {
        self.violations.first().copied()
    }
}

/// `Aut_S(P) ∈ Syl_p(Aut_F(P))`.
pub fn has_sylow_automizer(f: &FusionSystem, p: usize) -> bool {
    let gl = f.base().lattice();
    let aut_s = gl.normalizer_order(p) / gl.centralizer_order(p);
    p_part(f.aut_order(p), f.prime()) == aut_s
}

pub fn is_saturated(f: &FusionSystem) -> SaturationReport {
    let u = f.universe();
    let gl = f.base().lattice();
    let sylow_axiom = has_sylow_automizer(f, gl.whole_id());
    let mut violations = Vec::new();
    for i in f.members() {
        if !f.is_fully_normalized(u.image(i)) {
            continue;
        }
        let n_phi = f.n_phi(i);
        let target = gl.id(&n_phi);
        let p = gl.subgroup(u.domain(i));
        let extends = f
            .hom_indices(target)
            .into_iter()
            .any(|j| p.elements().iter().all(|&x| u.apply(j, x) == u.apply(i, x)));
        if !extends {
            violations.push((u.domain(i), i));
        }
    }
    SaturationReport {
        saturated: sylow_axiom && violations.is_empty(),
        sylow_axiom,
        violations,
    }
}

/// Data for one subgroup inside its `F`-isomorphism class.
#[derive(Debug, Clone)]
pub struct ClassMember {
    pub subgroup: usize,
    pub fully_normalized: bool,
    pub fully_centralized: bool,
    pub sylow_automizer: bool,
    pub sat_fs: BigRational,
    pub sat_fs_integral: bool,
}

#[derive(Debug, Clone)]
pub struct ClassStats {
    /// lattice ids, ascending
    pub subgroups: Vec<usize>,
    /// number of `S`-conjugacy classes of fully normalized subgroups in the class
    pub f_count: usize,
    pub members: Vec<ClassMember>,
}

impl ClassStats {
    /// Fully normalized exactly when fully centralized with a Sylow automizer, for every member.
    pub fn normalized_iff_centralized_and_sylow(&self) -> bool {
        self.members
            .iter()
            .all(|m| m.fully_normalized == (m.fully_centralized && m.sylow_automizer))
    }
}

/// Per `F`-isomorphism class statistics.
pub fn generalized_saturation_stats(f: &FusionSystem) -> Vec<ClassStats> {
    let gl = f.base().lattice();
    let p = f.prime() as u64;
    f.iso_classes()
        .into_iter()
        .map(|class| {
            let members: Vec<ClassMember> = class
                .iter()
                .map(|&q| {
                    let v = sat_fs_value(f, q);
                    ClassMember {
                        subgroup: q,
                        fully_normalized: f.is_fully_normalized(q),
                        fully_centralized: f.is_fully_centralized(q),
                        sylow_automizer: has_sylow_automizer(f, q),
                        sat_fs_integral: valuation(&v, p) >= 0,
                        sat_fs: v,
                    }
                })
                .collect();
            let mut conj: Vec<usize> = members
                .iter()
                .filter(|m| m.fully_normalized)
                .map(|m| gl.class_of(m.subgroup))
                .collect();
            conj.sort_unstable();
            conj.dedup();
            ClassStats {
                subgroups: class,
                f_count: conj.len(),
                members,
            }
        })
        .collect()
}

/// Whether `|S|/(|Hom_F(P,S)|·|C_S(P)|)` is `p`-integral for every `P ≤ S`.
pub fn satisfies_sat_fs(f: &FusionSystem) -> bool {
    let p = f.prime() as u64;
    (0..f.base().lattice().len()).all(|q| valuation(&sat_fs_value(f, q), p) >= 0)
}
