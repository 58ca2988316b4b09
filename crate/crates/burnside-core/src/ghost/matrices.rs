use std::collections::{BTreeMap, BTreeSet};

use num::{BigRational, One, Zero};

use super::element::GhostElement;
use crate::burnside::{rat, BurnsideElement, SubgroupSystem};
use crate::error::{Error, Result};
use crate::groups::{are_isomorphic, homomorphisms, load_group, FiniteGroup, GroupHom, HomKind, Subgroup};
use crate::linalg::{self, Matrix};

/// Names isomorphism types of subgroups consistently across groups.
#[derive(Default)]
pub struct TypeRegistry {
    entries: Vec<(FiniteGroup, String)>,
}

impl TypeRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Label of the isomorphism type of `u ≤ g`, e.g. `1`, `C2`, `V4`, `S3`, `C2xC4`.
    pub fn key(&mut self, g: &FiniteGroup, u: &Subgroup) -> String {
        let (sg, _) = g.subgroup_as_group(u, "U");
        for (h, name) in &self.entries {
            if are_isomorphic(h, &h.whole(), &sg, &sg.whole()) {
                return name.clone();
            }
        }
        let name = type_name(&sg).unwrap_or_else(|| {
            let k = self.entries.iter().filter(|(h, _)| h.order() == sg.order()).count();
            format!("G{}_{}", sg.order(), k)
        });
        self.entries.push((sg, name.clone()));
        name
    }
}

fn type_name(g: &FiniteGroup) -> Option<String> {
    let n = g.order();
    if n == 1 {
        return Some("1".into());
    }
    if g.is_abelian() {
        return Some(abelian_name(g));
    }
    let mut cands: Vec<String> = ["S3", "Q8", "A4", "S4"].iter().map(|s| s.to_string()).collect();
    cands.push(format!("D{n}"));
    for c in cands {
        if let Ok(h) = load_group(&c) {
            if h.order() == n && are_isomorphic(&h, &h.whole(), g, &g.whole()) {
                return Some(c);
            }
        }
    }
    None
}

fn power(g: &FiniteGroup, x: usize, k: usize) -> usize {
    (0..k).fold(0, |acc, _| g.mul(acc, x))
}

fn abelian_name(g: &FiniteGroup) -> String {
    let n = g.order();
    let mut factors: Vec<usize> = Vec::new();
    let mut m = n;
    let mut p = 2;
    while m > 1 {
        if !m.is_multiple_of(p) {
            p += 1;
            continue;
        }
        let mut e = 0;
        while m.is_multiple_of(p) {
            m /= p;
            e += 1;
        }
        // s_i = log_p #{x : x^(p^i) = 1}; s_i - s_(i-1) parts have size >= i
        let mut s = vec![0usize];
        for i in 1..=e {
            let q = p.pow(i as u32);
            let c = (0..n).filter(|&x| power(g, x, q) == 0).count();
            let mut k = 0;
            let mut c2 = c;
            while c2 % p == 0 && c2 > 1 {
                c2 /= p;
                k += 1;
            }
            s.push(k);
        }
        let ge: Vec<usize> = (1..=e).map(|i| s[i] - s[i - 1]).collect();
        for i in 1..=e {
            let next = if i < e { ge[i] } else { 0 };
            for _ in 0..(ge[i - 1] - next) {
                factors.push(p.pow(i as u32));
            }
        }
    }
    factors.sort_unstable();
    let primes: BTreeSet<usize> = factors.iter().map(|&q| (2..=q).find(|d| q % d == 0).unwrap()).collect();
    let cyclic = primes.len() == factors.len();
    if cyclic {
        return format!("C{n}");
    }
    if factors == [2, 2] {
        return "V4".into();
    }
    if factors.windows(2).all(|w| w[0] == w[1]) {
        return format!("C{}^{}", factors[0], factors.len());
    }
    factors.iter().map(|q| format!("C{q}")).collect::<Vec<_>>().join("x")
}

fn require_bifree_support(system: &SubgroupSystem, classes: impl Iterator<Item = usize>) -> Result<()> {
    for c in classes {
        let r = system.rep(c);
        if r.k1 != 0 || r.k2 != 0 {
            return Err(Error::Domain(format!(
                "{} is not a twisted diagonal",
                system.describe(&r.elems)
            )));
        }
    }
    Ok(())
}

/// `T`-components of a bifree ghost element, keyed by the isomorphism type of `U`.
pub fn t_decompose(x: &GhostElement) -> Result<BTreeMap<String, GhostElement>> {
    let sys = x.system();
    require_bifree_support(sys, x.terms().map(|(c, _)| c))?;
    let g = sys.left();
    let gl = g.lattice();
    let mut reg = TypeRegistry::new();
    let mut out: BTreeMap<String, GhostElement> = BTreeMap::new();
    for (c, v) in x.terms() {
        let key = reg.key(g, gl.subgroup(sys.rep(c).p1));
        out.entry(key)
            .or_insert_with(|| GhostElement::zero(sys).expect("left-free"))
            .add_term(c, v.clone());
    }
    Ok(out)
}

/// Isomorphism type label of `U` for the class of `(U,α,V)`.
pub fn type_key(system: &SubgroupSystem, class: usize) -> String {
    let g = system.left();
    TypeRegistry::new().key(g, g.lattice().subgroup(system.rep(class).p1))
}

/// A matrix with rows and columns labelled by classes of injective homomorphisms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivariantMatrix {
    pub label: String,
    pub rows: Vec<GroupHom>,
    pub cols: Vec<GroupHom>,
    pub entries: Matrix,
}

impl EquivariantMatrix {
    pub fn shape(&self) -> (usize, usize) {
        (self.rows.len(), self.cols.len())
    }

    /// Matrix product; the column labels of `self` must be the row labels of `other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Composition("matrix labels do not match".into()));
        }
        Ok(EquivariantMatrix {
            label: self.label.clone(),
            rows: self.rows.clone(),
            cols: other.cols.clone(),
            entries: linalg::mat_mul(&self.entries, &other.entries),
        })
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && self.entries.iter().enumerate().all(|(i, r)| {
                r.iter()
                    .enumerate()
                    .all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() })
            })
    }

    fn position(labels: &[GroupHom], images: &[usize]) -> Option<usize> {
        labels.iter().position(|l| l.images() == images)
    }
}

/// Least conjugate `c_g ∘ f` of the image table of `f`.
fn inner_canonical(g: &FiniteGroup, images: &[usize]) -> Vec<usize> {
    (0..g.order())
        .map(|c| images.iter().map(|&y| g.conj(c, y)).collect::<Vec<_>>())
        .min()
        .expect("non-empty group")
}

fn hom_from_images(domain: &[usize], images: Vec<usize>) -> GroupHom {
    let mut cod = images.clone();
    cod.sort_unstable();
    GroupHom::new(domain.to_vec(), images, cod)
}

/// `Inj̄(T,G)`: injections `T -> G` modulo `Inn(G)`, each given by its least
/// representative.
pub fn injection_classes(t: &FiniteGroup, g: &FiniteGroup) -> Vec<GroupHom> {
    let tw = t.whole();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    for u in g.lattice().subgroups().iter().filter(|u| u.order() == t.order()) {
        for f in homomorphisms(t, &tw, g, u, HomKind::Iso) {
            seen.insert(inner_canonical(g, f.images()));
        }
    }
    seen.into_iter().map(|im| hom_from_images(tw.elements(), im)).collect()
}

fn graph_of(system: &SubgroupSystem, lam: &GroupHom, mu: &GroupHom) -> Vec<usize> {
    let prod = system.product();
    let mut l: Vec<usize> = lam
        .images()
        .iter()
        .zip(mu.images())
        .map(|(&a, &b)| prod.pair(a, b))
        .collect();
    l.sort_unstable();
    l
}

fn centralizer_of_image(g: &FiniteGroup, f: &GroupHom) -> BigRational {
    let gl = g.lattice();
    rat(gl.centralizer_order(gl.id_of(&f.image()).expect("image is a subgroup")) as i64)
}

/// `σ_T(a)`: entries `Φ_{Δ(λT, λμ^-1, μT)}(a) / |C_G(λT)|` for `[λ] ∈ Inj̄(T,G)`,
/// `[μ] ∈ Inj̄(T,H)`.
pub fn sigma(a: &BurnsideElement, t: &FiniteGroup) -> Result<EquivariantMatrix> {
    let sys = a.system();
    require_bifree_support(sys, a.terms().map(|(c, _)| c))?;
    let rows = injection_classes(t, sys.left());
    let cols = injection_classes(t, sys.right());
    let entries = rows
        .iter()
        .map(|lam| {
            let c = centralizer_of_image(sys.left(), lam);
            cols.iter()
                .map(|mu| a.mark_at(&graph_of(sys, lam, mu)) / &c)
                .collect()
        })
        .collect();
    Ok(EquivariantMatrix {
        label: t.name().to_string(),
        rows,
        cols,
        entries,
    })
}

/// `τ_T(x)`: the coefficient of `x` at the orbit of `Δ(λT, λμ^-1, μT)`.
pub fn tau(x: &GhostElement, t: &FiniteGroup) -> Result<EquivariantMatrix> {
    let sys = x.system();
    require_bifree_support(sys, x.terms().map(|(c, _)| c))?;
    let rows = injection_classes(t, sys.left());
    let cols = injection_classes(t, sys.right());
    let entries = rows
        .iter()
        .map(|lam| {
            cols.iter()
                .map(|mu| {
                    sys.class_of_elems(&graph_of(sys, lam, mu))
                        .map_or_else(BigRational::zero, |c| x.coeff(c))
                })
                .collect()
        })
        .collect();
    Ok(EquivariantMatrix {
        label: t.name().to_string(),
        rows,
        cols,
        entries,
    })
}

/// One block of `σ̃`: the subgroup `U` (lattice id in `G`), `Aut_S(U)`, and the matrix on
/// `Hom̄_S(U,G)`.
#[derive(Debug, Clone)]
pub struct SigmaTildeBlock {
    pub u: usize,
    pub automorphisms: Vec<GroupHom>,
    pub matrix: EquivariantMatrix,
}

/// Representatives `U` of `S̃_G`: subgroups up to isomorphism inside the system.
pub fn system_iso_classes(system: &SubgroupSystem) -> Vec<usize> {
    let gl = system.left().lattice();
    let mut parent: Vec<usize> = (0..gl.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            x = p[x];
        }
        x
    }
    for m in system.members() {
        let (a, b) = (find(&mut parent, m.p1), find(&mut parent, m.p2));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    (0..gl.len()).filter(|&i| find(&mut parent, i) == i).collect()
}

fn maps_from(system: &SubgroupSystem, u: usize) -> Vec<GroupHom> {
    let prod = system.product();
    let g = system.left();
    let ue = g.lattice().subgroup(u).elements().to_vec();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    for &mi in system.members_with_p2(u) {
        let m = system.member(mi);
        let table: BTreeMap<usize, usize> = m.elems.iter().map(|&z| (prod.p2(z), prod.p1(z))).collect();
        let images: Vec<usize> = ue.iter().map(|x| table[x]).collect();
        seen.insert(inner_canonical(g, &images));
    }
    seen.into_iter().map(|im| hom_from_images(&ue, im)).collect()
}

fn check_single_group_bifree(system: &SubgroupSystem) -> Result<()> {
    if !system.left().same_table(system.right()) || !system.is_bifree() {
        return Err(Error::Domain("σ̃ needs a bifree system over (G,G)".into()));
    }
    Ok(())
}

/// `σ̃(a)`, one block per `U ∈ S̃_G`, with entries
/// `Φ_{{(φu, ψu)}}(a) / |C_G(φU)|` for `[φ], [ψ] ∈ Hom̄_S(U,G)`.
pub fn sigma_tilde(a: &BurnsideElement) -> Result<Vec<SigmaTildeBlock>> {
    let sys = a.system();
    check_single_group_bifree(sys)?;
    let g = sys.left();
    let mut out = Vec::new();
    for u in system_iso_classes(sys) {
        let labels = maps_from(sys, u);
        let entries = labels
            .iter()
            .map(|phi| {
                let c = centralizer_of_image(g, phi);
                labels.iter().map(|psi| a.mark_at(&graph_of(sys, phi, psi)) / &c).collect()
            })
            .collect();
        let ue = g.lattice().subgroup(u).elements().to_vec();
        let automorphisms = sys
            .members_with_p2(u)
            .iter()
            .map(|&mi| sys.member(mi))
            .filter(|m| m.p1 == u)
            .map(|m| {
                let prod = sys.product();
                let table: BTreeMap<usize, usize> = m.elems.iter().map(|&z| (prod.p2(z), prod.p1(z))).collect();
                hom_from_images(&ue, ue.iter().map(|x| table[x]).collect())
            })
            .collect();
        out.push(SigmaTildeBlock {
            u,
            automorphisms,
            matrix: EquivariantMatrix {
                label: format!("U{u}"),
                rows: labels.clone(),
                cols: labels,
                entries,
            },
        });
    }
    Ok(out)
}

/// Number of `Aut_S(U)`-orbits on `Hom̄_S(U,G) × Hom̄_S(U,G)`, summed over `U ∈ S̃_G`.
pub fn sigma_tilde_dimension(system: &std::sync::Arc<SubgroupSystem>) -> Result<usize> {
    let unit = BurnsideElement::zero(system);
    let g = system.left();
    let mut total = 0;
    for b in sigma_tilde(&unit)? {
        let labels = &b.matrix.rows;
        let k = labels.len();
        let mut seen = vec![vec![false; k]; k];
        for i in 0..k {
            for j in 0..k {
                if seen[i][j] {
                    continue;
                }
                total += 1;
                for w in &b.automorphisms {
                    let twist = |f: &GroupHom| {
                        // f ∘ ω, then back to the least Inn(G)-representative
                        let im: Vec<usize> = w.images().iter().map(|&y| f.apply(y)).collect();
                        inner_canonical(g, &im)
                    };
                    let a = EquivariantMatrix::position(labels, &twist(&labels[i])).expect("closed");
                    let c = EquivariantMatrix::position(labels, &twist(&labels[j])).expect("closed");
                    seen[a][c] = true;
                }
            }
        }
    }
    Ok(total)
}

/// Matrix of `σ̃` in the standard basis: row `i` reads the block entry at the position
/// of the class `L_i`, column `j` is `σ̃([G×G/L_j])`.
pub fn sigma_tilde_matrix(system: &std::sync::Arc<SubgroupSystem>) -> Result<Matrix> {
    check_single_group_bifree(system)?;
    let g = system.left();
    let prod = system.product();
    let reps = system_iso_classes(system);
    let gl = g.lattice();
    let rank = system.rank();
    let images: Vec<Vec<SigmaTildeBlock>> = (0..rank)
        .map(|j| sigma_tilde(&BurnsideElement::basis(system, j)))
        .collect::<Result<_>>()?;
    let mut m = vec![vec![BigRational::zero(); rank]; rank];
    for i in 0..rank {
        let r = system.rep(i);
        // U ∈ S̃_G isomorphic to B = p2(L_i) via some κ: U -> B in the system
        let u = *reps
            .iter()
            .find(|&&u| {
                system
                    .members_with_p2(u)
                    .iter()
                    .any(|&mi| system.member(mi).p1 == r.p2)
            })
            .expect("every subgroup has a representative");
        let km = system
            .members_with_p2(u)
            .iter()
            .map(|&mi| system.member(mi))
            .find(|m| m.p1 == r.p2)
            .unwrap();
        let kappa: BTreeMap<usize, usize> = km.elems.iter().map(|&z| (prod.p2(z), prod.p1(z))).collect();
        let theta: BTreeMap<usize, usize> = r.elems.iter().map(|&z| (prod.p2(z), prod.p1(z))).collect();
        let ue = gl.subgroup(u).elements();
        let psi: Vec<usize> = ue.iter().map(|x| kappa[x]).collect();
        let phi: Vec<usize> = psi.iter().map(|y| theta[y]).collect();
        let (phi, psi) = (inner_canonical(g, &phi), inner_canonical(g, &psi));
        let bi = reps.iter().position(|&x| x == u).unwrap();
        for j in 0..rank {
            let blk = &images[j][bi].matrix;
            let a = EquivariantMatrix::position(&blk.rows, &phi).expect("label exists");
            let c = EquivariantMatrix::position(&blk.cols, &psi).expect("label exists");
            m[i][j] = blk.entries[a][c].clone();
        }
    }
    Ok(m)
}
