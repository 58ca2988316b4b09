//! Fusion systems on a `p`-group `S` as closed sets of twisted diagonals in `S × S`, their
//! characteristic idempotents `ω_F`, and saturation.

mod idempotent;
mod saturation;
mod system;

pub use idempotent::{
    classify_idempotent, delta_identity, fix_set, is_frobenius, omega, sat_fs_value, triangle_check,
    IdempotentClassification, IdempotentReport, SatFsValue, TriangleRecord, TriangleRow,
};
pub use saturation::{
    generalized_saturation_stats, has_sylow_automizer, is_saturated, satisfies_sat_fs, ClassMember, ClassStats,
    SaturationReport,
};
pub use system::{
    enumerate_fusion_systems, fusion_from_group, fusion_from_group_on, fusion_from_group_via, fusion_generate,
    inner_fusion_system, FusionSystem, TwistedDiagonals,
};

use num::BigRational;
use serde_json::{json, Value};

use crate::burnside::{valuation, BurnsideElement};

fn rational_json(v: &BigRational, p: u64) -> Value {
    json!({
        "numerator": v.numer().to_string(),
        "denominator": v.denom().to_string(),
        "valuation": if num::Zero::is_zero(v) { Value::Null } else { json!(valuation(v, p)) },
    })
}

/// `{group, prime, class_reps, morphism_tables}`; each table lists `Hom_F(P,Q)` as image
/// vectors over the sorted elements of `P`.
pub fn fusion_to_json(f: &FusionSystem) -> Value {
    let s = f.base();
    let gl = s.lattice();
    let u = f.universe();
    let mut tables = Vec::new();
    for p in 0..gl.len() {
        let mut by_target: std::collections::BTreeMap<usize, Vec<Vec<usize>>> = Default::default();
        for i in f.hom_indices(p) {
            let images = gl.subgroup(p).elements().iter().map(|&x| u.apply(i, x)).collect();
            by_target.entry(u.image(i)).or_default().push(images);
        }
        for (q, mut maps) in by_target {
            maps.sort();
            tables.push(json!({
                "P": gl.subgroup(p).elements(),
                "Q": gl.subgroup(q).elements(),
                "maps": maps,
            }));
        }
    }
    json!({
        "group": s.name(),
        "label": f.label(),
        "prime": f.prime(),
        "morphisms": f.len(),
        "class_reps": gl.class_reps().into_iter().map(|c| gl.subgroup(c).elements().to_vec()).collect::<Vec<_>>(),
        "morphism_tables": tables,
    })
}

fn element_json(a: &BurnsideElement, p: u64) -> Value {
    let sys = a.system();
    let terms: Vec<Value> = a
        .terms()
        .map(|(c, v)| {
            let mut t = rational_json(v, p);
            t["class"] = json!(c);
            t["subgroup"] = json!(sys.rep(c).elems);
            t
        })
        .collect();
    json!(terms)
}

pub fn omega_report_to_json(f: &FusionSystem, r: &IdempotentReport) -> Value {
    let p = f.prime() as u64;
    let gl = f.base().lattice();
    let ghost: Vec<Value> = r
        .omega_ghost
        .terms()
        .map(|(c, v)| {
            let mut t = rational_json(v, p);
            t["class"] = json!(c);
            t
        })
        .collect();
    let sat: Vec<Value> = r
        .sat_fs
        .iter()
        .map(|s| {
            let mut t = rational_json(&s.value, p);
            t["P"] = json!(gl.subgroup(s.subgroup).elements());
            t["p_integral"] = json!(s.p_integral);
            t
        })
        .collect();
    json!({
        "group": f.base().name(),
        "fusion": f.label(),
        "prime": p,
        "omega_ghost": ghost,
        "omega_standard": element_json(&r.omega_standard, p),
        "is_idempotent": r.is_idempotent,
        "is_frobenius_left": r.is_frobenius_left,
        "is_frobenius_right": r.is_frobenius_right,
        "is_symmetric": r.is_symmetric,
        "fix_set_size": r.fix_set.members().len(),
        "fix_equals_system": r.fix_equals_system,
        "p_integral_standard": r.p_integral_standard,
        "worst_valuation": r.worst_valuation,
        "sat_fs_condition": sat,
    })
}

#[cfg(test)]
mod tests;
