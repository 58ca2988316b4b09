use std::collections::BTreeSet;
use std::sync::Arc;

use num::{BigRational, Zero};
use proptest::prelude::*;

use super::*;
use crate::burnside::{mackey_product, rat, BurnsideElement, SubgroupSystem};
use crate::ghost::rho;
use crate::groups::{load_group, ElemSet, FiniteGroup, GroupHom, Subgroup};

fn arc(name: &str) -> Arc<FiniteGroup> {
    Arc::new(load_group(name).unwrap())
}

fn universe(name: &str, p: usize) -> Arc<TwistedDiagonals> {
    TwistedDiagonals::new(arc(name), p).unwrap()
}

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

struct A4Setup {
    a4: FiniteGroup,
    sylow: Subgroup,
    fa4: FusionSystem,
}

fn a4() -> A4Setup {
    let a4 = load_group("A4").unwrap();
    let sylow = a4.lattice().subgroups().iter().find(|s| s.order() == 4).unwrap().clone();
    let fa4 = fusion_from_group(&a4, &sylow, 2).unwrap();
    A4Setup { a4, sylow, fa4 }
}

/// The system generated by the restrictions of `Aut_{A4}(V4)` to proper subgroups.
fn example_c(fa4: &FusionSystem) -> FusionSystem {
    let u = fa4.universe();
    let whole = u.base().lattice().whole_id();
    let gens: Vec<GroupHom> = fa4
        .members()
        .into_iter()
        .filter(|&i| u.domain(i) != whole)
        .map(|i| u.hom(i))
        .collect();
    fusion_generate(u, &gens).unwrap()
}

fn order_two(f: &FusionSystem) -> Vec<usize> {
    let gl = f.base().lattice();
    (0..gl.len()).filter(|&i| gl.subgroup(i).order() == 2).collect()
}

/// Closure conditions checked through `GroupHom` composition, inversion and restriction.
fn closed_oracle(u: &TwistedDiagonals, set: &ElemSet) -> bool {
    let s = u.base();
    let gl = s.lattice();
    let index = |h: &GroupHom| u.index_of_map(h.domain(), h.images()).unwrap();
    if !set.contains(u.index_of(&u.product().diagonal(&s.whole())).unwrap()) {
        return false;
    }
    let members: Vec<usize> = set.iter().collect();
    for &i in &members {
        let f = u.hom(i);
        if !set.contains(index(&f.inverse().unwrap())) {
            return false;
        }
        for r in gl.subgroups_of(u.domain(i)) {
            if !set.contains(index(&f.restrict(gl.subgroup(r).elements()))) {
                return false;
            }
        }
        for c in 0..s.order() {
            let images: Vec<usize> = f.images().iter().map(|&y| s.conj(c, y)).collect();
            let g = GroupHom::new(f.domain().to_vec(), images, s.whole().elements().to_vec());
            if !set.contains(index(&g)) {
                return false;
            }
        }
        for &j in &members {
            if u.domain(j) == u.image(i) {
                let g = u.hom(j);
                let images: Vec<usize> = f.images().iter().map(|&y| g.apply(y)).collect();
                let h = GroupHom::new(f.domain().to_vec(), images, s.whole().elements().to_vec());
                if !set.contains(index(&h)) {
                    return false;
                }
            }
        }
    }
    true
}

fn brute_force_count(u: &TwistedDiagonals) -> usize {
    let n = u.len();
    assert!(n <= 20);
    (0u32..(1 << n))
        .filter(|mask| {
            let set = ElemSet::from_elems(n, &(0..n).filter(|b| mask & (1 << b) != 0).collect::<Vec<_>>());
            closed_oracle(u, &set)
        })
        .count()
}

#[test]
fn universe_rejects_non_p_groups() {
    assert!(matches!(TwistedDiagonals::new(arc("S3"), 2), Err(crate::Error::Precondition(_))));
    assert!(matches!(TwistedDiagonals::new(arc("C4"), 3), Err(crate::Error::Precondition(_))));
}

#[test]
fn universe_sizes_count_injections() {
    // 1 + 3·3 + |Aut(V4)|
    assert_eq!(universe("V4", 2).len(), 16);
    assert_eq!(universe("C2", 2).len(), 2);
    assert_eq!(universe("C3", 3).len(), 3);
    assert_eq!(universe("C4", 2).len(), 4);
}

#[test]
fn inner_system_on_c2_is_everything() {
    let u = universe("C2", 2);
    let f = inner_fusion_system(&u);
    assert_eq!(f.len(), 2);
    assert_eq!(fusion_generate(&u, &[]).unwrap(), f);
}

#[test]
fn from_group_is_sylow_checked() {
    let s3 = load_group("S3").unwrap();
    let c3 = s3.lattice().subgroups().iter().find(|s| s.order() == 3).unwrap().clone();
    assert!(fusion_from_group(&s3, &c3, 2).is_err());
    assert!(fusion_from_group(&s3, &s3.trivial(), 2).is_err());
    let f = fusion_from_group(&s3, &c3, 3).unwrap();
    assert_eq!(f.aut_order(f.base().lattice().whole_id()), 2);
}

#[test]
fn trivial_group_system_is_inner() {
    let c2 = load_group("C2").unwrap();
    let f = fusion_from_group(&c2, &c2.whole(), 2).unwrap();
    assert_eq!(f.len(), 2);
    assert_eq!(f, inner_fusion_system(f.universe()));
}

#[test]
fn a4_hom_counts() {
    let A4Setup { fa4, .. } = a4();
    for p in order_two(&fa4) {
        assert_eq!(fa4.hom_count(p), 3);
        assert_eq!(fa4.aut_order(p), 1);
        assert_eq!(fa4.iso_class_of(p).len(), 3);
    }
    let whole = fa4.base().lattice().whole_id();
    assert_eq!(fa4.aut_order(whole), 3);
    assert_eq!(fa4.aut(whole).len(), 3);
    assert_eq!(fa4.len(), 1 + 3 * 3 + 3);
}

#[test]
fn a4_on_catalog_v4_matches_generation_by_automorphisms() {
    let u = universe("V4", 2);
    let f = fusion_from_group_on(&u, &load_group("A4").unwrap()).unwrap();
    let whole = u.base().lattice().whole_id();
    let auts = f.aut(whole);
    assert_eq!(auts.len(), 3);
    let g = fusion_generate(&u, &auts).unwrap();
    assert_eq!(g.member_set(), f.member_set());
    assert!(fusion_from_group_on(&u, &load_group("S3").unwrap()).is_err());
}

#[test]
fn s4_on_d8_has_full_fusion_of_involutions() {
    let s4 = load_group("S4").unwrap();
    let d8 = s4.lattice().subgroups().iter().find(|s| s.order() == 8).unwrap().clone();
    let f = fusion_from_group(&s4, &d8, 2).unwrap();
    assert!(is_saturated(&f).saturated);
    let r = omega(&f).unwrap();
    assert!(r.is_idempotent && r.fix_equals_system && r.p_integral_standard);
}

#[test]
fn enumeration_counts_small_groups() {
    assert_eq!(enumerate_fusion_systems(&universe("C2", 2)).len(), 1);
    let c3 = enumerate_fusion_systems(&universe("C3", 3));
    assert_eq!(c3.len(), 2);
    let sizes: Vec<usize> = c3.iter().map(|f| f.len()).collect();
    assert_eq!(sizes, vec![2, 3]);
}

#[test]
fn enumeration_agrees_with_exhaustive_subsets() {
    for (g, p) in [("C2", 2), ("C3", 3), ("C4", 2), ("V4", 2)] {
        let u = universe(g, p);
        let found = enumerate_fusion_systems(&u);
        assert_eq!(found.len(), brute_force_count(&u), "{g}");
        for f in &found {
            assert!(closed_oracle(&u, f.member_set()), "{g}: {}", f.label());
        }
    }
}

#[test]
fn v4_enumeration_frozen() {
    let u = universe("V4", 2);
    let all = enumerate_fusion_systems(&u);
    // frozen from the exhaustive subset count
    assert_eq!(all.len(), 13);
    assert_eq!(all[0].label(), "inner");
    assert_eq!(all[0].len(), 5);
    let f = fusion_from_group_on(&u, &load_group("A4").unwrap()).unwrap();
    let c = example_c(&f);
    let pos = |x: &FusionSystem| all.iter().position(|y| y.member_set() == x.member_set());
    let (i, j) = (pos(&f).unwrap(), pos(&c).unwrap());
    assert!(i != j && i != 0 && j != 0);
    assert!(c.is_subsystem_of(&f));
}

#[test]
fn example_c_structure_and_witness() {
    let A4Setup { a4, sylow, fa4 } = a4();
    let c = example_c(&fa4);
    let u = c.universe();
    let whole = u.base().lattice().whole_id();
    assert_eq!(c.aut_order(whole), 1);
    assert_eq!(c.len(), 1 + 9 + 1);
    for p in order_two(&c) {
        assert_eq!(c.hom_count(p), 3);
    }
    let sat = is_saturated(&c);
    assert!(!sat.saturated);
    assert!(sat.sylow_axiom);
    assert_eq!(sat.violations.len(), 6);

    // P = <(1,3)(2,4)>, ψ = conjugation by (1,2,3) restricted to P
    let base = u.base();
    let x = (0..base.order()).find(|&x| base.label(x) == "(1,3)(2,4)").unwrap();
    let g = (0..a4.order()).find(|&g| a4.label(g) == "(1,2,3)").unwrap();
    let image = a4.conj(g, sylow.elements()[x]);
    let y = sylow.elements().iter().position(|&e| e == image).unwrap();
    let p = base.lattice().id_of(&[0, x].iter().copied().collect::<BTreeSet<_>>().into_iter().collect::<Vec<_>>());
    let p = p.unwrap();
    let psi = u.index_of_map(&[0, x], &[0, y]).unwrap();
    assert!(c.member_set().contains(psi));
    assert!(sat.violations.contains(&(p, psi)));
}

#[test]
fn saturation_of_standard_systems() {
    for (g, p) in [("C2", 2), ("V4", 2), ("D8", 2), ("C3", 3), ("C4", 2), ("Q8", 2)] {
        let u = universe(g, p);
        let r = is_saturated(&inner_fusion_system(&u));
        assert!(r.saturated, "{g}");
        assert!(r.witness().is_none());
    }
    assert!(is_saturated(&a4().fa4).saturated);
}

#[test]
fn sylow_axiom_on_cyclic_groups() {
    // Aut_F(C3) can only be 1 or C2, both p'-groups for p = 3
    for f in enumerate_fusion_systems(&universe("C3", 3)) {
        assert!(is_saturated(&f).saturated);
    }
    // Aut(C4) = C2 is a 2-group, so the full system on C4 breaks the Sylow axiom
    let all = enumerate_fusion_systems(&universe("C4", 2));
    assert_eq!(all.len(), 2);
    let full = all.last().unwrap();
    let r = is_saturated(full);
    assert!(!r.sylow_axiom && !r.saturated);
}

#[test]
fn omega_a4_marks() {
    let A4Setup { fa4, .. } = a4();
    let r = omega(&fa4).unwrap();
    let u = fa4.universe();
    let gl = fa4.base().lattice();
    for i in 0..u.len() {
        let m = r.omega_standard.mark_at(u.elements(i));
        let expected = if !fa4.member_set().contains(i) {
            BigRational::zero()
        } else if gl.subgroup(u.image(i)).order() == 1 {
            q(4, 1)
        } else {
            q(4, 3)
        };
        assert_eq!(m, expected, "member {i}");
    }
    assert!(r.is_idempotent && r.is_frobenius_left && r.is_frobenius_right && r.is_symmetric);
    assert!(r.fix_equals_system);
    assert!(r.p_integral_standard);
}

#[test]
fn omega_inner_c2_is_identity() {
    let u = universe("C2", 2);
    let r = omega(&inner_fusion_system(&u)).unwrap();
    assert_eq!(r.omega_standard, delta_identity(u.full_system()));
}

#[test]
fn omega_inner_is_identity_for_abelian_groups() {
    for (g, p) in [("C3", 3), ("V4", 2), ("C4", 2)] {
        let u = universe(g, p);
        let r = omega(&inner_fusion_system(&u)).unwrap();
        assert_eq!(r.omega_standard, delta_identity(u.full_system()), "{g}");
    }
}

#[test]
fn omega_example_c_values() {
    let c = example_c(&a4().fa4);
    let r = omega(&c).unwrap();
    let gl = c.base().lattice();
    let mut vals: Vec<(usize, BigRational)> =
        r.sat_fs.iter().map(|s| (gl.subgroup(s.subgroup).order(), s.value.clone())).collect();
    vals.sort();
    assert_eq!(
        vals,
        vec![(1, q(1, 1)), (2, q(1, 3)), (2, q(1, 3)), (2, q(1, 3)), (4, q(1, 1))]
    );
    assert!(r.sat_fs.iter().all(|s| s.p_integral));
    assert!(r.is_idempotent && r.is_frobenius_left && r.is_frobenius_right && r.fix_equals_system);
    assert!(!r.p_integral_standard);
    assert!(r.worst_valuation.unwrap() < 0);
}

#[test]
fn omega_marks_by_two_routes() {
    // marks from the closed formula against marks of ρ^-1 of the ghost element
    for (g, p) in [("V4", 2), ("C4", 2), ("C3", 3)] {
        let u = universe(g, p);
        for f in enumerate_fusion_systems(&u) {
            let r = omega(&f).unwrap();
            for i in 0..u.len() {
                let expected = if f.member_set().contains(i) {
                    rat(u.base().order() as i64) / rat(f.hom_count(u.image(i)) as i64)
                } else {
                    BigRational::zero()
                };
                assert_eq!(r.omega_standard.mark_at(u.elements(i)), expected);
            }
        }
    }
}

#[test]
fn classify_examples() {
    let A4Setup { fa4, .. } = a4();
    let w = omega(&fa4).unwrap().omega_standard;
    let c = classify_idempotent(&w, 2).unwrap();
    assert!(c.in_idem && c.standard_p_integral && c.ghost_p_integral && c.sigma_tilde_p_integral);

    let e = omega(&example_c(&fa4)).unwrap().omega_standard;
    let c = classify_idempotent(&e, 2).unwrap();
    assert!(c.in_idem && c.ghost_p_integral && c.sigma_tilde_p_integral);
    assert!(!c.standard_p_integral);

    let zero = BurnsideElement::zero(fa4.universe().full_system());
    let c = classify_idempotent(&zero, 2).unwrap();
    assert!(c.is_idempotent && !c.contains_delta_s && !c.in_idem);
}

#[test]
fn classify_rejects_non_bifree_support() {
    let sys = SubgroupSystem::all(arc("C2"), arc("C2")).unwrap();
    let a = BurnsideElement::basis(&sys, sys.rank() - 1);
    assert!(matches!(classify_idempotent(&a, 2), Err(crate::Error::Domain(_))));
    assert!(matches!(is_frobenius(&a), Err(crate::Error::Domain(_))));
}

#[test]
fn frobenius_examples() {
    let u = universe("C2", 2);
    let id = delta_identity(u.full_system());
    assert_eq!(is_frobenius(&id).unwrap(), (true, true));
    // on C2 every Inj(P,S) is a singleton, so every element passes
    let one = BurnsideElement::basis(u.full_system(), 0);
    assert_eq!(is_frobenius(&(&id + &one)).unwrap(), (true, true));

    // S = C3, a = [S×S/Δ(S,inv,S)] breaks the right-hand identity at P = S, φ = inv, ψ = id
    let u = universe("C3", 3);
    let s = u.base();
    let whole = s.whole().elements().to_vec();
    let inv: Vec<usize> = whole.iter().map(|&x| s.inv(x)).collect();
    let i = u.index_of_map(&whole, &inv).unwrap();
    let delta = u.full_system();
    let a = BurnsideElement::transitive(delta, u.elements(i)).unwrap();
    let (_, right) = is_frobenius(&a).unwrap();
    assert!(!right);
    let d = u.index_of(&u.product().diagonal(&s.whole())).unwrap();
    let lhs = a.mark_at(u.elements(i)) * a.mark_at(u.elements(d));
    let rhs = a.mark_at(u.elements(i)) * a.mark_at(u.elements(i));
    assert_eq!((lhs, rhs), (BigRational::zero(), rat(9)));
}

#[test]
fn frobenius_left_is_right_of_opposite() {
    let u = universe("C3", 3);
    let delta = u.full_system();
    for c in 0..delta.rank() {
        let a = &BurnsideElement::basis(delta, c) + &delta_identity(delta);
        let o = crate::burnside::opposite_element(&a, delta).unwrap();
        let (l, r) = is_frobenius(&a).unwrap();
        let (lo, ro) = is_frobenius(&o).unwrap();
        assert_eq!((l, r), (ro, lo));
    }
}

#[test]
fn omega_uniqueness_among_class_constant_marks() {
    // elements with Φ_L = λ_[p1 L] on S(F) and 0 elsewhere; only λ = |S|/|Hom_F| is idempotent
    let u = universe("V4", 2);
    let delta = u.full_system();
    let candidates = [q(1, 1), q(2, 1), q(4, 1), q(4, 3), q(2, 3), q(1, 3)];
    for f in enumerate_fusion_systems(&u) {
        let omega_f = omega(&f).unwrap().omega_standard;
        let classes = f.iso_classes();
        let gl = u.base().lattice();
        let class_index = |p: usize| classes.iter().position(|c| c.contains(&p)).unwrap();
        let k = classes.len();
        let mut choice = vec![0usize; k];
        loop {
            let mut ghost = crate::ghost::GhostElement::zero(delta).unwrap();
            for c in 0..delta.rank() {
                let r = delta.rep(c);
                let id = delta.member_id(&r.elems).unwrap();
                if f.member_set().contains(id) {
                    let lam = &candidates[choice[class_index(r.p1)]];
                    ghost.add_term(c, lam / rat(gl.centralizer_order(r.p1) as i64));
                }
            }
            let a = crate::ghost::rho_inverse(&ghost).unwrap();
            let cl = classify_idempotent(&a, 2).unwrap();
            let fix_ok = cl.fix.len() == f.len() && cl.fix.iter().all(|&i| f.member_set().contains(i));
            if cl.is_idempotent && cl.is_frobenius_left && cl.is_frobenius_right && fix_ok {
                assert_eq!(a, omega_f, "{}", f.label());
            }
            let mut t = 0;
            while t < k {
                choice[t] += 1;
                if choice[t] < candidates.len() {
                    break;
                }
                choice[t] = 0;
                t += 1;
            }
            if t == k {
                break;
            }
        }
    }
}

#[test]
fn omega_properties_for_all_systems() {
    for (g, p) in [("C2", 2), ("C3", 3), ("C4", 2), ("V4", 2)] {
        let u = universe(g, p);
        for f in enumerate_fusion_systems(&u) {
            let r = omega(&f).unwrap();
            let w = &r.omega_standard;
            assert_eq!(&mackey_product(w, w, u.full_system()).unwrap(), w);
            assert!(r.is_idempotent && r.is_symmetric && r.fix_equals_system, "{g} {}", f.label());
            assert!(r.is_frobenius_left && r.is_frobenius_right);
        }
    }
}

#[test]
fn saturated_implies_integral_omega() {
    for (g, p) in [("C2", 2), ("C3", 3), ("V4", 2), ("C4", 2), ("D8", 2)] {
        let u = universe(g, p);
        for f in enumerate_fusion_systems(&u) {
            if is_saturated(&f).saturated {
                let r = omega(&f).unwrap();
                assert!(r.p_integral_standard, "{g} {}", f.label());
                assert!(satisfies_sat_fs(&f));
            }
        }
    }
}

#[test]
fn generalized_saturation_on_v4_and_d8() {
    for g in ["V4", "D8"] {
        let u = universe(g, 2);
        for f in enumerate_fusion_systems(&u) {
            if !satisfies_sat_fs(&f) {
                continue;
            }
            for cls in generalized_saturation_stats(&f) {
                assert_eq!(cls.f_count % 2, 1, "{g} {}", f.label());
                assert!(cls.normalized_iff_centralized_and_sylow(), "{g} {}", f.label());
            }
        }
    }
}

#[test]
fn abelian_fully_normalized_is_fully_centralized() {
    let u = universe("V4", 2);
    for f in enumerate_fusion_systems(&u) {
        for cls in generalized_saturation_stats(&f) {
            assert!(cls.members.iter().all(|m| m.fully_normalized && m.fully_centralized));
        }
    }
}

#[test]
fn example_c_statistics() {
    let c = example_c(&a4().fa4);
    let stats = generalized_saturation_stats(&c);
    let values: BTreeSet<BigRational> =
        stats.iter().flat_map(|s| s.members.iter().map(|m| m.sat_fs.clone())).collect();
    assert_eq!(values, [q(1, 3), q(1, 1)].into_iter().collect());
    assert!(satisfies_sat_fs(&c));
}

#[test]
fn triangle_commutes() {
    for (g, p, n) in [("C2", 2, 1), ("C3", 3, 2), ("C4", 2, 2), ("V4", 2, 13)] {
        let t = triangle_check(&universe(g, p)).unwrap();
        assert_eq!(t.rows.len(), n);
        assert!(t.all_commute && t.injective, "{g}");
    }
}

#[test]
fn n_phi_in_a4() {
    let A4Setup { fa4, .. } = a4();
    let u = fa4.universe();
    for i in fa4.members() {
        // S is abelian, so N_φ = N_S(P) = S
        assert_eq!(fa4.n_phi(i).order(), 4);
        assert!(u.domain(i) < u.base().lattice().len());
    }
}

#[test]
fn json_shapes() {
    let A4Setup { fa4, .. } = a4();
    let v = fusion_to_json(&fa4);
    assert_eq!(v["prime"], 2);
    assert_eq!(v["class_reps"].as_array().unwrap().len(), 5);
    let total: usize = v["morphism_tables"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["maps"].as_array().unwrap().len())
        .sum();
    assert_eq!(total, fa4.len());
    let r = omega(&fa4).unwrap();
    let j = omega_report_to_json(&fa4, &r);
    assert_eq!(j["is_idempotent"], true);
    assert_eq!(j["sat_fs_condition"].as_array().unwrap().len(), 5);
    assert!(j["omega_standard"].as_array().unwrap().iter().all(|t| t["denominator"].is_string()));
}

#[test]
fn ghost_of_omega_is_sat_fs_on_diagonals() {
    let A4Setup { fa4, .. } = a4();
    let r = omega(&fa4).unwrap();
    let g = rho(&r.omega_standard).unwrap();
    assert_eq!(g.to_dense(), r.omega_ghost.to_dense());
    let delta = fa4.universe().full_system();
    let d = delta.class_of_elems(&fa4.universe().product().diagonal(&fa4.base().whole())).unwrap();
    assert_eq!(r.omega_ghost.coeff(d), sat_fs_value(&fa4, fa4.base().lattice().whole_id()));
    assert_eq!(r.omega_ghost.coeff(d), q(1, 3));
}

fn closed_under_star_and_opposite(u: &TwistedDiagonals, fix: &[usize]) -> bool {
    let set: BTreeSet<usize> = fix.iter().copied().collect();
    let prod = u.product();
    for &i in fix {
        let o = crate::goursat::opposite(prod, u.elements(i), prod);
        if !set.contains(&u.index_of(&o).unwrap()) {
            return false;
        }
        for &j in fix {
            let st = crate::goursat::star(prod, u.elements(i), prod, u.elements(j)).unwrap();
            if !set.contains(&u.index_of(&st).unwrap()) {
                return false;
            }
        }
    }
    true
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fix_of_frobenius_elements_is_a_system(coeffs in proptest::collection::vec(-2i64..=2, 7)) {
        let u = universe("C3", 3);
        let delta = u.full_system();
        let a = BurnsideElement::from_terms(
            delta,
            coeffs.iter().take(delta.rank()).enumerate().map(|(c, &v)| (c, rat(v))),
        );
        let cl = classify_idempotent(&a, 3).unwrap();
        if cl.is_frobenius_right && cl.fix_subgroup_closed && cl.contains_delta_s {
            let ids: Vec<usize> = cl.fix.iter().map(|&m| u.index_of(&delta.member(m).elems).unwrap()).collect();
            prop_assert!(closed_under_star_and_opposite(&u, &ids));
        }
    }

    #[test]
    fn closure_is_idempotent_and_monotone(seed in proptest::collection::vec(0usize..16, 0..4)) {
        let u = universe("V4", 2);
        let c = u.closure(seed.iter().copied());
        prop_assert_eq!(u.closure(c.iter()), c.clone());
        let bigger = u.closure(seed.iter().copied().chain([15]));
        prop_assert!(c.is_subset(&bigger));
        prop_assert!(closed_oracle(&u, &c));
    }

    #[test]
    fn omega_is_identity_on_its_system(k in 0usize..16) {
        let u = universe("V4", 2);
        let all = enumerate_fusion_systems(&u);
        let f = &all[k % all.len()];
        let w = omega(f).unwrap().omega_standard;
        let one = delta_identity(u.full_system());
        prop_assert_eq!(mackey_product(&w, &one, u.full_system()).unwrap(), w.clone());
        prop_assert_eq!(mackey_product(&one, &w, u.full_system()).unwrap(), w);
    }
}
