use std::collections::BTreeMap;
use std::sync::Arc;

use num::{BigInt, BigRational, Zero};

use super::element::{rho_inverse, rho_matrix, GhostElement};
use crate::burnside::{BurnsideElement, SubgroupSystem};
use crate::error::{Error, Result};
use crate::linalg;

/// Homogeneous components `x = Σ_n x_n`, `n = l(ker α)`.
pub fn grading(x: &GhostElement) -> BTreeMap<usize, GhostElement> {
    let sys = x.system();
    let mut out: BTreeMap<usize, GhostElement> = BTreeMap::new();
    for (c, v) in x.terms() {
        let n = GhostElement::degree_of(sys, c);
        out.entry(n)
            .or_insert_with(|| GhostElement::zero(sys).expect("left-free"))
            .add_term(c, v.clone());
    }
    out
}

/// `ρ^-1` of the degree-`n` part of `ρ(a)`.
pub fn burnside_graded_component(a: &BurnsideElement, n: usize) -> Result<BurnsideElement> {
    let x = super::element::rho(a)?;
    match grading(&x).remove(&n) {
        Some(xn) => rho_inverse(&xn),
        None => Ok(BurnsideElement::zero(a.system())),
    }
}

/// Largest degree occurring in the system.
pub fn max_degree(system: &SubgroupSystem) -> usize {
    (0..system.rank())
        .map(|c| GhostElement::degree_of(system, c))
        .max()
        .unwrap_or(0)
}

/// A `ℤ`-basis of `B_n = {a ∈ B^S(G,H) : ρ(a) has degree n only}` in standard
/// coordinates.
pub fn graded_lattice(system: &SubgroupSystem, n: usize) -> Result<Vec<Vec<BigInt>>> {
    let m = rho_matrix(system)?;
    let rows: Vec<Vec<BigInt>> = (0..system.rank())
        .filter(|&c| GhostElement::degree_of(system, c) != n)
        .map(|c| linalg::clear_denominators(&m[c]))
        .collect();
    Ok(linalg::integer_kernel(&rows, system.rank()))
}

/// Index of `Σ_{n ∈ degrees} B_n` in `B^S(G,H)`, `None` when the sum has lower rank.
pub fn graded_span_index(system: &SubgroupSystem, degrees: &[usize]) -> Result<Option<BigInt>> {
    let mut gens = Vec::new();
    for &n in degrees {
        gens.extend(graded_lattice(system, n)?);
    }
    Ok(linalg::lattice_index(&gens, system.rank()))
}

/// The radical of `ℚB^S(G,G)` and the data around it.
#[derive(Debug, Clone)]
pub struct RadicalReport {
    /// basis of the radical, from the trace form
    pub radical: Vec<BurnsideElement>,
    /// basis of the span of `ρ^-1` of the orbit sums of degree at least 1
    pub positive_degree: Vec<BurnsideElement>,
    /// the bifree basis elements `[G×G/L]`, spanning a complement
    pub complement: Vec<BurnsideElement>,
    pub radical_equals_positive_degree: bool,
    /// least `k` with `J^k = 0`
    pub nilpotency_index: usize,
    /// `1 + max l(U)` over subgroups `U ≤ G`
    pub nilpotency_bound: usize,
}

/// Structure constants `b_i b_j = Σ_k c[i][j][k] b_k` of the standard basis.
pub fn structure_constants(system: &Arc<SubgroupSystem>) -> Result<Vec<Vec<Vec<BigRational>>>> {
    let r = system.rank();
    let mut out = Vec::with_capacity(r);
    for i in 0..r {
        let bi = BurnsideElement::basis(system, i);
        let mut row = Vec::with_capacity(r);
        for j in 0..r {
            row.push(bi.mul(&BurnsideElement::basis(system, j))?.to_dense());
        }
        out.push(row);
    }
    Ok(out)
}

fn span_product(
    a: &[Vec<BigRational>],
    b: &[Vec<BigRational>],
    c: &[Vec<Vec<BigRational>>],
) -> Vec<Vec<BigRational>> {
    let r = c.len();
    let mut rows = Vec::new();
    for x in a {
        for y in b {
            let mut v = vec![BigRational::zero(); r];
            for i in 0..r {
                if x[i].is_zero() {
                    continue;
                }
                for j in 0..r {
                    if y[j].is_zero() {
                        continue;
                    }
                    let f = &x[i] * &y[j];
                    for k in 0..r {
                        if !c[i][j][k].is_zero() {
                            v[k] += &f * &c[i][j][k];
                        }
                    }
                }
            }
            rows.push(v);
        }
    }
    linalg::rref(&rows).0
}

/// Radical of `ℚB^S(G,G)` as the kernel of the trace form `(x,y) ↦ Tr(L_{xy})`, compared
/// with the positive-degree part of the grading.
pub fn radical_complement(system: &Arc<SubgroupSystem>) -> Result<RadicalReport> {
    let g = system.left();
    if !g.same_table(system.right()) {
        return Err(Error::Domain("the radical is computed for systems over (G,G)".into()));
    }
    let r = system.rank();
    let c = structure_constants(system)?;
    // Tr(L_{b_k}) = Σ_l c[k][l][l]
    let tr: Vec<BigRational> = (0..r)
        .map(|k| (0..r).map(|l| c[k][l][l].clone()).fold(BigRational::zero(), |a, b| a + b))
        .collect();
    let gram: Vec<Vec<BigRational>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| {
                    (0..r)
                        .map(|k| &c[i][j][k] * &tr[k])
                        .fold(BigRational::zero(), |a, b| a + b)
                })
                .collect()
        })
        .collect();
    let radical = linalg::nullspace(&gram, r);

    let mut positive = Vec::new();
    for k in 0..r {
        if GhostElement::degree_of(system, k) >= 1 {
            positive.push(rho_inverse(&GhostElement::orbit_sum(system, k)?)?.to_dense());
        }
    }
    let positive = linalg::rref(&positive).0;
    let equal = linalg::same_row_space(&radical, &positive);

    let mut power = linalg::rref(&radical).0;
    let mut index = 1;
    while !power.is_empty() {
        power = span_product(&power, &radical, &c);
        index += 1;
        if index > r + 1 {
            break;
        }
    }
    let complement = (0..r)
        .filter(|&k| system.rep(k).k2 == 0)
        .map(|k| BurnsideElement::basis(system, k))
        .collect();
    Ok(RadicalReport {
        radical: radical.iter().map(|v| BurnsideElement::from_dense(system, v)).collect(),
        positive_degree: positive.iter().map(|v| BurnsideElement::from_dense(system, v)).collect(),
        complement,
        radical_equals_positive_degree: equal,
        nilpotency_index: index,
        nilpotency_bound: 1 + g.lattice().max_composition_length(),
    })
}
