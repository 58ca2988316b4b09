use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num::{BigInt, BigRational, One, Zero};
use proptest::prelude::*;

use super::*;
use crate::burnside::{mackey_product, opposite_element, rat, BurnsideElement, SubgroupSystem};
use crate::groups::{homomorphisms, load_group, FiniteGroup, HomKind};
use crate::linalg;

fn arc(name: &str) -> Arc<FiniteGroup> {
    Arc::new(load_group(name).unwrap())
}

fn q(n: i64) -> BigRational {
    rat(n)
}

fn lf(a: &str, b: &str) -> Arc<SubgroupSystem> {
    SubgroupSystem::left_free(arc(a), arc(b)).unwrap()
}

fn bf(a: &str, b: &str) -> Arc<SubgroupSystem> {
    SubgroupSystem::bifree(arc(a), arc(b)).unwrap()
}

fn class(sys: &SubgroupSystem, elems: Vec<usize>) -> usize {
    let mut e = elems;
    e.sort_unstable();
    sys.class_of_elems(&e).unwrap()
}

/// Classes `[1]`, `[1×C2]`, `[Δ]` of the left-free system over `(C2,C2)`.
fn c2_classes(sys: &SubgroupSystem) -> (usize, usize, usize) {
    let p = sys.product();
    let g = sys.left();
    (
        class(sys, vec![0]),
        class(sys, p.product_subgroup(&g.trivial(), &g.whole())),
        class(sys, p.diagonal(&g.whole())),
    )
}

/// Orbit sums expanded to single triples, keyed by the subgroup `◁(U,α,V)`.
fn expand(x: &GhostElement) -> BTreeMap<Vec<usize>, BigRational> {
    let sys = x.system();
    let mut out = BTreeMap::new();
    for (c, v) in x.terms() {
        for &m in &sys.classes()[c] {
            out.insert(sys.member(m).elems.clone(), v.clone());
        }
    }
    out
}

fn add_to(acc: &mut BTreeMap<Vec<usize>, BigRational>, key: Vec<usize>, v: BigRational) {
    let e = acc.entry(key.clone()).or_insert_with(BigRational::zero);
    *e += v;
    if e.is_zero() {
        acc.remove(&key);
    }
}

/// Product of full expansions, triple by triple, with weight `|C_H(V)|/|H|`.
fn expansion_product(x: &GhostElement, y: &GhostElement) -> BTreeMap<Vec<usize>, BigRational> {
    let (s1, s2) = (x.system(), y.system());
    let (gh, hk) = (s1.product(), s2.product());
    let h = s1.right();
    let gk = crate::goursat::direct_product(s1.left().clone(), s2.right().clone());
    let mut acc = BTreeMap::new();
    for (l1, a) in expand(x) {
        let alpha: BTreeMap<usize, usize> = l1.iter().map(|&z| (gh.p2(z), gh.p1(z))).collect();
        let v: BTreeSet<usize> = alpha.keys().copied().collect();
        let vs = h.subgroup_from_elements(&v.iter().copied().collect::<Vec<_>>()).unwrap();
        let w = q(h.centralizer(&vs).order() as i64) / q(h.order() as i64);
        for (l2, b) in expand(y) {
            let v2: BTreeSet<usize> = l2.iter().map(|&z| hk.p1(z)).collect();
            if v2 != v {
                continue;
            }
            let mut l: Vec<usize> = l2.iter().map(|&z| gk.pair(alpha[&hk.p1(z)], hk.p2(z))).collect();
            l.sort_unstable();
            l.dedup();
            add_to(&mut acc, l, &a * &b * &w);
        }
    }
    acc
}

fn cosets_transversal(g: &FiniteGroup, sub: &BTreeSet<usize>, from: &[usize], last: bool) -> Vec<usize> {
    let mut covered = BTreeSet::new();
    let mut reps = Vec::new();
    let mut order: Vec<usize> = from.to_vec();
    if last {
        order.reverse();
    }
    for &x in &order {
        if covered.contains(&x) {
            continue;
        }
        reps.push(x);
        for &s in sub {
            covered.insert(g.mul(x, s));
        }
    }
    reps
}

/// The closed transversal formula for `[U,α,V]⁺ · [V,β,W]⁺`; `last` picks the largest
/// element of each coset instead of the smallest.
fn closed_formula(
    s1: &SubgroupSystem,
    c1: usize,
    s2: &SubgroupSystem,
    c2: usize,
    last: bool,
) -> BTreeMap<Vec<usize>, BigRational> {
    let (gh, hk) = (s1.product(), s2.product());
    let (g, h, k) = (s1.left(), s1.right(), s2.right());
    let gk = crate::goursat::direct_product(g.clone(), k.clone());
    let r1 = s1.rep(c1);
    let v: Vec<usize> = h.lattice().subgroup(r1.p2).elements().to_vec();
    let mut acc = BTreeMap::new();
    let Some(m2) = s2.classes()[c2]
        .iter()
        .map(|&m| s2.member(m))
        .find(|m| h.lattice().subgroup(m.p1).elements() == v.as_slice())
    else {
        return acc;
    };
    let alpha: BTreeMap<usize, usize> = r1.elems.iter().map(|&z| (gh.p2(z), gh.p1(z))).collect();
    let beta: Vec<(usize, usize)> = m2.elems.iter().map(|&z| (hk.p2(z), hk.p1(z))).collect();
    let n1 = gh.group().normalizer(&gh.group().subgroup_from_elements(&r1.elems).unwrap());
    let n2 = hk.group().normalizer(&hk.group().subgroup_from_elements(&m2.elems).unwrap());
    let p1n: BTreeSet<usize> = n1.elements().iter().map(|&z| gh.p1(z)).collect();
    let p2n: BTreeSet<usize> = n2.elements().iter().map(|&z| hk.p2(z)).collect();
    let vs = h.subgroup_from_elements(&v).unwrap();
    let nv: Vec<usize> = h.normalizer(&vs).elements().to_vec();
    let ckv: BTreeSet<usize> = nv
        .iter()
        .copied()
        .filter(|&x| v.iter().all(|&y| alpha[&h.conj(x, y)] == alpha[&y]))
        .collect();
    let all_g: Vec<usize> = (0..g.order()).collect();
    let all_k: Vec<usize> = (0..k.order()).collect();
    for &a in &cosets_transversal(g, &p1n, &all_g, last) {
        for &b in &cosets_transversal(h, &ckv, &nv, last) {
            let binv = h.inv(b);
            for &c in &cosets_transversal(k, &p2n, &all_k, last) {
                let mut l: Vec<usize> = beta
                    .iter()
                    .map(|&(w, bw)| gk.pair(g.conj(a, alpha[&h.conj(binv, bw)]), k.conj(c, w)))
                    .collect();
                l.sort_unstable();
                add_to(&mut acc, l, BigRational::one());
            }
        }
    }
    acc
}

fn collect(target: &Arc<SubgroupSystem>, e: &BTreeMap<Vec<usize>, BigRational>) -> GhostElement {
    let mut out = GhostElement::zero(target).unwrap();
    let mut seen = BTreeMap::new();
    for (l, v) in e {
        let c = target.class_of_elems(l).unwrap();
        match seen.get(&c) {
            Some(w) => assert_eq!(w, v, "coefficients not constant on an orbit"),
            None => {
                seen.insert(c, v.clone());
                out.add_term(c, v.clone());
            }
        }
    }
    for (c, _) in seen {
        assert!(target.classes()[c]
            .iter()
            .all(|&m| e.contains_key(&target.member(m).elems)));
    }
    out
}

#[test]
fn rho_on_c2() {
    let sys = lf("C2", "C2");
    let (one, right, diag) = c2_classes(&sys);
    let b = |c| BurnsideElement::basis(&sys, c);
    let t = |c| GhostElement::orbit_sum(&sys, c).unwrap();
    assert_eq!(rho(&b(one)).unwrap(), t(one).scale(&q(2)));
    assert_eq!(rho(&b(right)).unwrap(), &t(one) + &t(right));
    assert_eq!(rho(&b(diag)).unwrap(), &t(one) + &t(diag));
    assert_eq!(rho(&b(diag)).unwrap(), ghost_identity(&sys).unwrap());
}

#[test]
fn rho_rejects_non_left_free_systems() {
    let all = SubgroupSystem::all(arc("C2"), arc("C2")).unwrap();
    assert!(matches!(rho(&BurnsideElement::basis(&all, 0)), Err(crate::Error::Domain(_))));
    assert!(GhostElement::zero(&all).is_err());
}

#[test]
fn ghost_product_examples() {
    let sys = lf("C2", "C2");
    let (one, right, _) = c2_classes(&sys);
    let t = |c| GhostElement::orbit_sum(&sys, c).unwrap();
    let e = &t(one) + &t(right);
    assert_eq!(e.mul(&e).unwrap(), e);

    for name in ["C2", "S3", "V4"] {
        let s = lf(name, name);
        let id = ghost_identity(&s).unwrap();
        for c in 0..s.rank() {
            let x = GhostElement::orbit_sum(&s, c).unwrap();
            assert_eq!(id.mul(&x).unwrap(), x);
            assert_eq!(x.mul(&id).unwrap(), x);
        }
    }
}

#[test]
fn ghost_identity_is_the_sum_over_subgroup_classes() {
    let s = lf("S3", "S3");
    let id = ghost_identity(&s).unwrap();
    assert_eq!(id.terms().count(), 4);
    assert!(id.terms().all(|(c, v)| v.is_one() && s.rep(c).k2 == 0 && s.rep(c).p1 == s.rep(c).p2));
    assert_eq!(rho_inverse(&id).unwrap(), {
        let p = s.product();
        BurnsideElement::basis(&s, class(&s, p.diagonal(&s.left().whole())))
    });
}

#[test]
fn products_with_non_conjugate_middles_vanish() {
    let s = lf("S3", "S3");
    let hl = s.right().lattice();
    for c1 in 0..s.rank() {
        for c2 in 0..s.rank() {
            if hl.class_of(s.rep(c1).p2) != hl.class_of(s.rep(c2).p1) {
                let x = GhostElement::orbit_sum(&s, c1).unwrap();
                let y = GhostElement::orbit_sum(&s, c2).unwrap();
                assert!(x.mul(&y).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn middle_group_mismatch_is_an_error() {
    let x = GhostElement::orbit_sum(&lf("C2", "C3"), 0).unwrap();
    let y = GhostElement::orbit_sum(&lf("C2", "C2"), 0).unwrap();
    let t = lf("C2", "C2");
    assert!(matches!(ghost_product(&x, &y, &t), Err(crate::Error::Composition(_))));
}

fn cross_check(a: &str, b: &str, c: &str) {
    let (s1, s2, t) = (lf(a, b), lf(b, c), lf(a, c));
    for c1 in 0..s1.rank() {
        for c2 in 0..s2.rank() {
            let x = GhostElement::orbit_sum(&s1, c1).unwrap();
            let y = GhostElement::orbit_sum(&s2, c2).unwrap();
            let got = ghost_product(&x, &y, &t).unwrap();
            let full = expansion_product(&x, &y);
            assert_eq!(got, collect(&t, &full), "{a},{b},{c}: {c1}·{c2}");
            assert_eq!(expand(&got), full);
            for last in [false, true] {
                assert_eq!(closed_formula(&s1, c1, &s2, c2, last), full, "{a},{b},{c}: {c1}·{c2}");
            }
        }
    }
}

#[test]
fn ghost_product_matches_full_expansion_and_closed_formula() {
    for (a, b, c) in [("C2", "C2", "C2"), ("C3", "C3", "C3"), ("V4", "V4", "V4"), ("S3", "V4", "C2"), ("C2", "S3", "C3")] {
        cross_check(a, b, c);
    }
}

#[test]
fn ghost_product_matches_full_expansion_on_s3() {
    cross_check("S3", "S3", "S3");
}

fn rho_multiplicative(a: &str, b: &str, c: &str) {
    let (s1, s2, t) = (lf(a, b), lf(b, c), lf(a, c));
    for i in 0..s1.rank() {
        let x = BurnsideElement::basis(&s1, i);
        let rx = rho(&x).unwrap();
        for j in 0..s2.rank() {
            let y = BurnsideElement::basis(&s2, j);
            let lhs = rho(&mackey_product(&x, &y, &t).unwrap()).unwrap();
            let rhs = ghost_product(&rx, &rho(&y).unwrap(), &t).unwrap();
            assert_eq!(lhs, rhs, "{a},{b},{c}: {i}·{j}");
        }
    }
}

#[test]
fn rho_is_multiplicative() {
    for g in ["C2", "C3", "V4", "S3", "C4"] {
        rho_multiplicative(g, g, g);
    }
    for (a, b, c) in [("S3", "V4", "C2"), ("C2", "S3", "C3"), ("C4", "C2", "V4")] {
        rho_multiplicative(a, b, c);
    }
}

#[test]
fn rho_matrix_is_triangular_with_known_diagonal() {
    for (a, b) in [("C2", "C2"), ("S3", "S3"), ("V4", "C2"), ("C4", "S3")] {
        let s = lf(a, b);
        let m = rho_matrix(&s).unwrap();
        let gl = s.left().lattice();
        let mut prod = BigRational::one();
        for i in 0..s.rank() {
            for j in 0..i {
                assert!(m[i][j].is_zero());
            }
            let r = s.rep(i);
            let d = q(s.normalizer_order(i) as i64) / q(r.elems.len() as i64) / q(gl.centralizer_order(r.p1) as i64);
            assert_eq!(m[i][i], d);
            prod *= d;
        }
        assert_eq!(linalg::determinant(&m), prod);
        assert!(m.iter().flatten().all(|x| x.is_integer()));
        let cols: Vec<Vec<BigInt>> = (0..s.rank())
            .map(|j| (0..s.rank()).map(|i| m[i][j].to_integer()).collect())
            .collect();
        assert_eq!(linalg::lattice_index(&cols, s.rank()).map(BigRational::from_integer), Some(prod));
    }
}

#[test]
fn rho_inverse_examples() {
    let sys = lf("C2", "C2");
    let (one, _, diag) = c2_classes(&sys);
    let x = GhostElement::orbit_sum(&sys, diag).unwrap();
    let expected = BurnsideElement::from_terms(&sys, [(diag, q(1)), (one, -q(1) / q(2))]);
    assert_eq!(rho_inverse(&x).unwrap(), expected);
    assert_eq!(rho(&expected).unwrap(), x);
}

#[test]
fn rho_inverse_round_trips() {
    for (a, b) in [("C2", "C2"), ("S3", "S3"), ("V4", "S3"), ("C4", "C4")] {
        let s = lf(a, b);
        for c in 0..s.rank() {
            let e = BurnsideElement::basis(&s, c);
            assert_eq!(rho_inverse(&rho(&e).unwrap()).unwrap(), e);
            let x = GhostElement::orbit_sum(&s, c).unwrap();
            assert_eq!(rho(&rho_inverse(&x).unwrap()).unwrap(), x);
        }
    }
}

#[test]
fn ghost_products_of_integral_elements_are_integral() {
    for g in ["C2", "V4", "S3"] {
        let s = lf(g, g);
        for i in 0..s.rank() {
            for j in 0..s.rank() {
                let x = GhostElement::orbit_sum(&s, i).unwrap();
                let y = GhostElement::orbit_sum(&s, j).unwrap();
                assert!(x.mul(&y).unwrap().is_integral());
            }
            assert!(rho(&BurnsideElement::basis(&s, i)).unwrap().is_integral());
        }
    }
}

#[test]
fn rho_commutes_with_opposites() {
    for (a, b) in [("S3", "S3"), ("V4", "V4"), ("S3", "C2"), ("C4", "V4"), ("D12", "D12")] {
        let (s, so) = (bf(a, b), bf(b, a));
        for c in 0..s.rank() {
            let e = BurnsideElement::basis(&s, c);
            let lhs = rho(&opposite_element(&e, &so).unwrap()).unwrap();
            let rhs = ghost_opposite(&rho(&e).unwrap(), &so).unwrap();
            assert_eq!(lhs, rhs, "{a},{b}: {c}");
        }
    }
    let s = lf("C2", "C2");
    let (_, right, _) = c2_classes(&s);
    assert!(matches!(
        ghost_opposite(&GhostElement::orbit_sum(&s, right).unwrap(), &s),
        Err(crate::Error::Domain(_))
    ));
}

#[test]
fn bifree_elements_have_degree_zero() {
    let b = bf("S3", "S3");
    for c in 0..b.rank() {
        let g = grading(&rho(&BurnsideElement::basis(&b, c)).unwrap());
        assert_eq!(g.keys().copied().collect::<Vec<_>>(), vec![0]);
    }
    let s = lf("S3", "S3");
    let x = rho(&BurnsideElement::basis(&s, s.rank() - 1)).unwrap();
    let parts = grading(&x);
    let sum = parts.values().fold(GhostElement::zero(&s).unwrap(), |a, b| &a + b);
    assert_eq!(sum, x);
    for (n, part) in &parts {
        assert!(part.terms().all(|(c, _)| GhostElement::degree_of(&s, c) == *n));
    }
}

#[test]
fn degree_one_component_for_c2() {
    let s = lf("C2", "C2");
    let (one, right, diag) = c2_classes(&s);
    let a = BurnsideElement::basis(&s, right);
    let a1 = burnside_graded_component(&a, 1).unwrap();
    let expected = BurnsideElement::from_terms(&s, [(right, q(1)), (one, -q(1) / q(2))]);
    assert_eq!(a1, expected);
    let a0 = burnside_graded_component(&a, 0).unwrap();
    assert_eq!(&a0 + &a1, a);
    assert!(burnside_graded_component(&a, 2).unwrap().is_zero());

    let b1 = graded_lattice(&s, 1).unwrap();
    assert_eq!(b1.len(), 1);
    let mut v = vec![BigInt::zero(); 3];
    v[right] = BigInt::from(2);
    v[one] = BigInt::from(-1);
    assert!(b1[0] == v || b1[0] == v.iter().map(|x| -x).collect::<Vec<_>>());
    assert!(b1[0][diag].is_zero());
}

#[test]
fn graded_parts_of_c2_span_index_two() {
    let s = lf("C2", "C2");
    let (_, right, _) = c2_classes(&s);
    assert_eq!(graded_span_index(&s, &[0, 1]).unwrap(), Some(BigInt::from(2)));
    let mut gens = graded_lattice(&s, 0).unwrap();
    gens.extend(graded_lattice(&s, 1).unwrap());
    assert!(gens.iter().all(|v| &v[right] % BigInt::from(2) == BigInt::zero()));
    assert_eq!(graded_span_index(&s, &[0]).unwrap(), None);
}

#[test]
fn degrees_add_under_products() {
    for g in ["C2", "V4", "C4", "S3"] {
        let s = lf(g, g);
        for i in 0..s.rank() {
            for j in 0..s.rank() {
                let x = GhostElement::orbit_sum(&s, i).unwrap();
                let y = GhostElement::orbit_sum(&s, j).unwrap();
                let n = GhostElement::degree_of(&s, i) + GhostElement::degree_of(&s, j);
                assert!(x.mul(&y).unwrap().terms().all(|(c, _)| GhostElement::degree_of(&s, c) == n));
            }
        }
    }
}

#[test]
fn radical_of_c2_left_free() {
    let s = lf("C2", "C2");
    let r = radical_complement(&s).unwrap();
    assert_eq!(r.radical.len(), 1);
    assert!(r.radical_equals_positive_degree);
    assert_eq!(r.nilpotency_index, 2);
    assert_eq!(r.nilpotency_bound, 2);
    assert_eq!(r.complement.len(), 2);
}

#[test]
fn radical_vanishes_on_bifree_systems() {
    for g in ["C2", "V4", "C3", "S3"] {
        let r = radical_complement(&bf(g, g)).unwrap();
        assert!(r.radical.is_empty());
        assert_eq!(r.nilpotency_index, 1);
    }
}

#[test]
fn radical_is_the_positive_degree_part() {
    for g in ["V4", "S3", "C4"] {
        let s = lf(g, g);
        let r = radical_complement(&s).unwrap();
        assert!(r.radical_equals_positive_degree, "{g}");
        assert!(r.nilpotency_index <= r.nilpotency_bound);
        // the radical is cut out by the marks at twisted diagonals
        let bifree_rows: Vec<usize> = (0..s.rank()).filter(|&c| s.rep(c).k2 == 0).collect();
        for a in &r.radical {
            let m = a.marks();
            assert!(bifree_rows.iter().all(|&c| m[c].is_zero()));
        }
        assert_eq!(r.radical.len() + bifree_rows.len(), s.rank());
    }
}

#[test]
fn radical_squared_lies_in_degree_two_for_v4() {
    let s = lf("V4", "V4");
    let r = radical_complement(&s).unwrap();
    for a in &r.radical {
        for b in &r.radical {
            let x = rho(&a.mul(b).unwrap()).unwrap();
            assert!(x.terms().all(|(c, _)| GhostElement::degree_of(&s, c) >= 2));
        }
    }
    assert_eq!(r.nilpotency_index, 3);
}

#[test]
fn type_names() {
    let cases = [
        ("C1", "1"),
        ("C2", "C2"),
        ("C4", "C4"),
        ("C6", "C6"),
        ("V4", "V4"),
        ("C2^3", "C2^3"),
        ("S3", "S3"),
        ("D8", "D8"),
        ("Q8", "Q8"),
        ("A4", "A4"),
        ("D12", "D12"),
        ("S4", "S4"),
    ];
    let mut reg = TypeRegistry::new();
    for (g, name) in cases {
        let g = load_group(g).unwrap();
        assert_eq!(reg.key(&g, &g.whole()), name);
    }
    let c8 = load_group("C8").unwrap();
    let d8 = load_group("D8").unwrap();
    let c2c4: Vec<_> = {
        let p = crate::goursat::direct_product(Arc::new(load_group("C2").unwrap()), Arc::new(load_group("C4").unwrap()));
        let g = p.group().clone();
        vec![reg.key(&g, &g.whole())]
    };
    assert_eq!(c2c4, vec!["C2xC4".to_string()]);
    assert_eq!(reg.key(&c8, &c8.whole()), "C8");
    // the same type inside different groups gets the same key
    let v4_in_d8 = d8
        .lattice()
        .subgroups()
        .iter()
        .find(|u| u.order() == 4 && u.elements().iter().all(|&x| d8.element_order(x) <= 2))
        .unwrap();
    assert_eq!(reg.key(&d8, v4_in_d8), "V4");
}

#[test]
fn t_decomposition_of_identities() {
    let s = bf("C2", "C2");
    let parts = t_decompose(&ghost_identity(&s).unwrap()).unwrap();
    assert_eq!(parts.keys().cloned().collect::<Vec<_>>(), vec!["1".to_string(), "C2".to_string()]);
    assert!(parts["1"].mul(&parts["C2"]).unwrap().is_zero());
    assert_eq!(parts["1"].mul(&parts["1"]).unwrap(), parts["1"]);

    let s3 = bf("S3", "S3");
    let parts = t_decompose(&ghost_identity(&s3).unwrap()).unwrap();
    let keys: BTreeSet<String> = parts.keys().cloned().collect();
    assert_eq!(keys, ["1", "C2", "C3", "S3"].iter().map(|s| s.to_string()).collect());

    let l = lf("C2", "C2");
    let (_, right, _) = c2_classes(&l);
    assert!(matches!(
        t_decompose(&GhostElement::orbit_sum(&l, right).unwrap()),
        Err(crate::Error::Domain(_))
    ));
}

#[test]
fn t_components_multiply_componentwise() {
    for g in ["V4", "S3"] {
        let s = bf(g, g);
        for i in 0..s.rank() {
            for j in 0..s.rank() {
                let x = rho(&BurnsideElement::basis(&s, i)).unwrap();
                let y = rho(&BurnsideElement::basis(&s, j)).unwrap();
                let (dx, dy) = (t_decompose(&x).unwrap(), t_decompose(&y).unwrap());
                let dxy = t_decompose(&x.mul(&y).unwrap()).unwrap();
                for (t1, a) in &dx {
                    for (t2, b) in &dy {
                        let p = a.mul(b).unwrap();
                        if t1 != t2 {
                            assert!(p.is_zero());
                        } else {
                            assert_eq!(dxy.get(t1).cloned().unwrap_or_else(|| GhostElement::zero(&s).unwrap()), p);
                        }
                    }
                }
            }
        }
    }
}

fn group_t(name: &str) -> FiniteGroup {
    load_group(name).unwrap()
}

#[test]
fn sigma_on_c2() {
    let s = bf("C2", "C2");
    let p = s.product();
    let g = s.left().clone();
    let one = class(&s, vec![0]);
    let diag = class(&s, p.diagonal(&g.whole()));
    let t1 = group_t("C1");
    let t2 = group_t("C2");
    let m = sigma(&BurnsideElement::basis(&s, one), &t1).unwrap();
    assert_eq!(m.entries, vec![vec![q(2)]]);
    let id = BurnsideElement::basis(&s, diag);
    assert!(sigma(&id, &t1).unwrap().is_identity());
    assert!(sigma(&id, &t2).unwrap().is_identity());

    // x[Δ] + y[1] ↦ (x + 2y, x)
    let image: Vec<Vec<BigInt>> = [diag, one]
        .iter()
        .map(|&c| {
            let e = BurnsideElement::basis(&s, c);
            let a = sigma(&e, &t1).unwrap().entries[0][0].clone();
            let b = sigma(&e, &t2).unwrap().entries[0][0].clone();
            vec![a.to_integer(), b.to_integer()]
        })
        .collect();
    assert_eq!(image, vec![vec![BigInt::from(1), BigInt::from(1)], vec![BigInt::from(2), BigInt::from(0)]]);
    assert_eq!(linalg::lattice_index(&image, 2), Some(BigInt::from(2)));
}

#[test]
fn sigma_rejects_non_bifree_input() {
    let l = lf("C2", "C2");
    let (_, right, _) = c2_classes(&l);
    assert!(sigma(&BurnsideElement::basis(&l, right), &group_t("C1")).is_err());
}

#[test]
fn sigma_of_missing_type_is_empty() {
    let s = bf("C2", "C3");
    let m = sigma(&BurnsideElement::basis(&s, 0), &group_t("C2")).unwrap();
    assert_eq!(m.shape(), (1, 0));
}

fn types_of(g: &FiniteGroup) -> Vec<FiniteGroup> {
    let gl = g.lattice();
    let mut reps: Vec<FiniteGroup> = Vec::new();
    for u in gl.subgroups() {
        let (t, _) = g.subgroup_as_group(u, "T");
        if !reps.iter().any(|r| crate::groups::are_isomorphic(r, &r.whole(), &t, &t.whole())) {
            reps.push(t);
        }
    }
    reps
}

#[test]
fn sigma_is_multiplicative_and_equals_tau_rho() {
    for g in ["C2", "V4", "S3"] {
        let s = bf(g, g);
        let types = types_of(s.left());
        for i in 0..s.rank() {
            let a = BurnsideElement::basis(&s, i);
            let ra = rho(&a).unwrap();
            for t in &types {
                assert_eq!(tau(&ra, t).unwrap(), sigma(&a, t).unwrap());
            }
            for j in 0..s.rank() {
                let b = BurnsideElement::basis(&s, j);
                let ab = a.mul(&b).unwrap();
                for t in &types {
                    let lhs = sigma(&ab, t).unwrap();
                    let rhs = sigma(&a, t).unwrap().compose(&sigma(&b, t).unwrap()).unwrap();
                    assert_eq!(lhs, rhs, "{g}: {i}·{j}");
                }
            }
        }
    }
}

#[test]
fn sigma_entries_are_out_t_invariant() {
    let s = bf("S3", "S3");
    let g = s.left();
    for t in types_of(g) {
        let auts = homomorphisms(&t, &t.whole(), &t, &t.whole(), HomKind::Iso);
        for c in 0..s.rank() {
            let m = sigma(&BurnsideElement::basis(&s, c), &t).unwrap();
            let twist = |f: &crate::groups::GroupHom, w: &crate::groups::GroupHom| {
                let im: Vec<usize> = t.whole().elements().iter().map(|&x| f.apply(w.apply(x))).collect();
                (0..g.order())
                    .map(|h| im.iter().map(|&y| g.conj(h, y)).collect::<Vec<_>>())
                    .min()
                    .unwrap()
            };
            for w in &auts {
                for (i, lam) in m.rows.iter().enumerate() {
                    for (j, mu) in m.cols.iter().enumerate() {
                        let i2 = m.rows.iter().position(|r| r.images() == twist(lam, w).as_slice()).unwrap();
                        let j2 = m.cols.iter().position(|r| r.images() == twist(mu, w).as_slice()).unwrap();
                        assert_eq!(m.entries[i][j], m.entries[i2][j2]);
                    }
                }
            }
        }
    }
}

#[test]
fn injection_class_counts() {
    // |Inj̄(T,G)| = Σ_{U ≅ T, up to conjugacy} |Out| / |Out_G(U)| is 1 for S3 and T = C2, C3
    let s3 = load_group("S3").unwrap();
    assert_eq!(injection_classes(&group_t("C2"), &s3).len(), 1);
    assert_eq!(injection_classes(&group_t("C3"), &s3).len(), 1);
    assert_eq!(injection_classes(&group_t("S3"), &s3).len(), 1);
    let v4 = load_group("V4").unwrap();
    assert_eq!(injection_classes(&group_t("C2"), &v4).len(), 3);
    assert_eq!(injection_classes(&group_t("V4"), &v4).len(), 6);
}

#[test]
fn sigma_tilde_examples() {
    let triv = bf("C1", "C1");
    assert_eq!(sigma_tilde_matrix(&triv).unwrap(), vec![vec![q(1)]]);

    let s = bf("C2", "C2");
    let p = s.product();
    let diag = class(&s, p.diagonal(&s.left().whole()));
    let blocks = sigma_tilde(&BurnsideElement::basis(&s, diag)).unwrap();
    assert_eq!(blocks.len(), 2);
    for b in &blocks {
        assert_eq!(b.matrix.entries, vec![vec![q(1)]]);
    }
    let l = lf("C2", "C2");
    assert!(sigma_tilde(&BurnsideElement::basis(&l, 0)).is_err());
}

#[test]
fn sigma_tilde_is_an_algebra_isomorphism() {
    for g in ["C2", "V4", "S3", "C4"] {
        let s = bf(g, g);
        assert_eq!(sigma_tilde_dimension(&s).unwrap(), s.rank(), "{g}");
        let m = sigma_tilde_matrix(&s).unwrap();
        let gl = s.left().lattice();
        let mut prod = BigRational::one();
        for i in 0..s.rank() {
            for j in 0..i {
                assert!(m[i][j].is_zero());
            }
            let r = s.rep(i);
            let d = q(s.normalizer_order(i) as i64) / q(r.elems.len() as i64) / q(gl.centralizer_order(r.p1) as i64);
            assert_eq!(m[i][i], d);
            prod *= d;
        }
        assert_eq!(linalg::determinant(&m), prod);
        for i in 0..s.rank() {
            let a = BurnsideElement::basis(&s, i);
            let sa = sigma_tilde(&a).unwrap();
            for j in 0..s.rank() {
                let b = BurnsideElement::basis(&s, j);
                let sb = sigma_tilde(&b).unwrap();
                let sab = sigma_tilde(&a.mul(&b).unwrap()).unwrap();
                for k in 0..sa.len() {
                    assert_eq!(sab[k].matrix, sa[k].matrix.compose(&sb[k].matrix).unwrap(), "{g}: {i}·{j}");
                }
            }
        }
    }
}

#[test]
fn system_iso_classes_of_s3() {
    let s = bf("S3", "S3");
    let reps = system_iso_classes(&s);
    assert_eq!(reps.len(), 4);
}

#[test]
fn ghost_json_shape() {
    let s = lf("C2", "C2");
    let x = rho(&BurnsideElement::basis(&s, 1)).unwrap();
    let v = ghost_to_json(&x);
    assert_eq!(v["pair"], serde_json::json!(["C2", "C2"]));
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), x.terms().count());
    for t in terms {
        for k in ["U", "V", "alpha", "degree", "type_key", "numerator", "denominator"] {
            assert!(t.get(k).is_some());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn rho_is_additive_and_invertible(coeffs in prop::collection::vec(-5i64..6, 13)) {
        let s = lf("S3", "C2");
        let v: Vec<BigRational> = coeffs.iter().take(s.rank()).map(|&c| q(c)).chain(std::iter::repeat(q(0))).take(s.rank()).collect();
        let a = BurnsideElement::from_dense(&s, &v);
        let ra = rho(&a).unwrap();
        prop_assert!(ra.is_integral());
        prop_assert_eq!(rho_inverse(&ra).unwrap(), a.clone());
        let b = BurnsideElement::basis(&s, 0);
        prop_assert_eq!(rho(&(&a + &b)).unwrap(), &ra + &rho(&b).unwrap());
    }

    #[test]
    fn ghost_product_is_associative(i in 0usize..64, j in 0usize..64, k in 0usize..64) {
        let s = lf("S3", "S3");
        let r = s.rank();
        let x = GhostElement::orbit_sum(&s, i % r).unwrap();
        let y = GhostElement::orbit_sum(&s, j % r).unwrap();
        let z = GhostElement::orbit_sum(&s, k % r).unwrap();
        prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
    }
}

#[test]
fn ghost_opposite_is_an_involutive_anti_homomorphism() {
    let (s, so) = (bf("S3", "C2"), bf("C2", "S3"));
    let t = bf("S3", "S3");
    let t2 = bf("C2", "C2");
    for i in 0..s.rank() {
        let x = GhostElement::orbit_sum(&s, i).unwrap();
        let xo = ghost_opposite(&x, &so).unwrap();
        assert_eq!(ghost_opposite(&xo, &s).unwrap(), x);
        for j in 0..so.rank() {
            let y = GhostElement::orbit_sum(&so, j).unwrap();
            let yo = ghost_opposite(&y, &s).unwrap();
            let lhs = ghost_opposite(&ghost_product(&x, &y, &t).unwrap(), &t).unwrap();
            assert_eq!(lhs, ghost_product(&yo, &xo, &t).unwrap());
            let lhs2 = ghost_opposite(&ghost_product(&y, &x, &t2).unwrap(), &t2).unwrap();
            assert_eq!(lhs2, ghost_product(&xo, &yo, &t2).unwrap());
        }
    }
}
