//! Ghost groups `B̃^S(G,H)` of orbit sums of triples `(U,α,V)`, the mark homomorphism
//! `ρ`, the grading by `l(ker α)`, and the matrix models `σ`, `τ`, `σ̃`.

mod element;
mod grading;
mod matrices;

pub use element::{ghost_identity, ghost_opposite, ghost_product, rho, rho_inverse, rho_matrix, GhostElement};
pub use grading::{
    burnside_graded_component, graded_lattice, graded_span_index, grading, max_degree, radical_complement,
    structure_constants, RadicalReport,
};
pub use matrices::{
    injection_classes, sigma, sigma_tilde, sigma_tilde_dimension, sigma_tilde_matrix, system_iso_classes,
    t_decompose, tau, type_key, EquivariantMatrix, SigmaTildeBlock, TypeRegistry,
};

use serde_json::{json, Value};

/// JSON form `{pair, terms: [{U, V, alpha, degree, type_key, numerator, denominator}]}`.
pub fn ghost_to_json(x: &GhostElement) -> Value {
    let sys = x.system();
    let prod = sys.product();
    let (gl, hl) = (sys.left().lattice(), sys.right().lattice());
    let mut reg = TypeRegistry::new();
    let terms: Vec<Value> = x
        .terms()
        .map(|(c, v)| {
            let r = sys.rep(c);
            let alpha: Vec<[usize; 2]> = r.elems.iter().map(|&z| [prod.p2(z), prod.p1(z)]).collect();
            json!({
                "U": gl.subgroup(r.p1).elements(),
                "V": hl.subgroup(r.p2).elements(),
                "alpha": alpha,
                "degree": GhostElement::degree_of(sys, c),
                "type_key": reg.key(sys.left(), gl.subgroup(r.p1)),
                "numerator": v.numer().to_string(),
                "denominator": v.denom().to_string(),
            })
        })
        .collect();
    json!({
        "pair": [sys.left().name(), sys.right().name()],
        "terms": terms,
    })
}

#[cfg(test)]
mod tests;
