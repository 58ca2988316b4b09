use std::collections::HashMap;

use super::group::{FiniteGroup, Subgroup};

/// Subgroup lattice of a finite group together with conjugacy data.
///
/// Subgroups are sorted by canonical id, so index 0 is the trivial subgroup and the last
/// index is the whole group.
pub struct Lattice {
    subgroups: Vec<Subgroup>,
    gens: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
    normalizer: Vec<usize>,
    centralizer: Vec<usize>,
    comp_len: Vec<usize>,
    group_gens: Vec<usize>,
    // conj[k][i]: subgroup id of g_k S_i g_k^-1 for the k-th group generator
    conj: Vec<Vec<usize>>,
}

impl Lattice {
    pub(crate) fn build(g: &FiniteGroup) -> Lattice {
        let n = g.order();
        let mut seen: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
        seen.insert(vec![0], vec![]);
        let mut cyclic: Vec<(usize, Vec<usize>)> = Vec::new();
        for x in 1..n {
            let c = g.closure(&[x]);
            if !seen.contains_key(&c) {
                seen.insert(c.clone(), vec![x]);
                cyclic.push((x, c));
            }
        }
        let cyc_sets: Vec<Subgroup> = cyclic
            .iter()
            .map(|(_, c)| Subgroup::from_sorted(n, c.clone()))
            .collect();
        let mut frontier: Vec<(Subgroup, Vec<usize>)> = cyclic
            .iter()
            .zip(cyc_sets.iter())
            .map(|((x, _), s)| (s.clone(), vec![*x]))
            .collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for (s, gens) in &frontier {
                for (ci, (x, _)) in cyclic.iter().enumerate() {
                    if cyc_sets[ci].is_subgroup_of(s) {
                        continue;
                    }
                    let mut ng = gens.clone();
                    ng.push(*x);
                    let c = g.closure(&ng);
                    if !seen.contains_key(&c) {
                        seen.insert(c.clone(), ng.clone());
                        next.push((Subgroup::from_sorted(n, c), ng));
                    }
                }
            }
            frontier = next;
        }
        let mut subgroups: Vec<Subgroup> = seen
            .keys()
            .map(|k| Subgroup::from_sorted(n, k.clone()))
            .collect();
        subgroups.sort();
        let index: HashMap<Vec<usize>, usize> = subgroups
            .iter()
            .enumerate()
            .map(|(i, s)| (s.elements().to_vec(), i))
            .collect();
        let gens: Vec<Vec<usize>> = subgroups.iter().map(|s| g.generators_of(s)).collect();
        let group_gens = gens[subgroups.len() - 1].clone();

        let conj: Vec<Vec<usize>> = group_gens
            .iter()
            .map(|&x| {
                subgroups
                    .iter()
                    .map(|s| index[g.conjugate_subgroup(x, s).elements()])
                    .collect()
            })
            .collect();

        let m = subgroups.len();
        let mut class_of = vec![usize::MAX; m];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for i in 0..m {
            if class_of[i] != usize::MAX {
                continue;
            }
            let c = classes.len();
            let mut orbit = vec![i];
            class_of[i] = c;
            let mut k = 0;
            while k < orbit.len() {
                let s = orbit[k];
                for row in &conj {
                    let t = row[s];
                    if class_of[t] == usize::MAX {
                        class_of[t] = c;
                        orbit.push(t);
                    }
                }
                k += 1;
            }
            orbit.sort_unstable();
            classes.push(orbit);
        }

        let normalizer = subgroups
            .iter()
            .zip(gens.iter())
            .map(|(s, sg)| {
                let e: Vec<usize> = (0..n)
                    .filter(|&x| sg.iter().all(|&u| s.contains(g.conj(x, u))))
                    .collect();
                index[&e]
            })
            .collect();
        let centralizer = gens
            .iter()
            .map(|sg| {
                let e: Vec<usize> = (0..n)
                    .filter(|&x| sg.iter().all(|&u| g.mul(x, u) == g.mul(u, x)))
                    .collect();
                index[&e]
            })
            .collect();

        let mut lat = Lattice {
            subgroups,
            gens,
            index,
            class_of,
            classes,
            normalizer,
            centralizer,
            comp_len: Vec::new(),
            group_gens,
            conj,
        };
        lat.comp_len = lat.compute_comp_len(g);
        lat
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn subgroup(&self, i: usize) -> &Subgroup {
        &self.subgroups[i]
    }

    pub fn whole_id(&self) -> usize {
        self.subgroups.len() - 1
    }

    pub fn id_of(&self, elems: &[usize]) -> Option<usize> {
        self.index.get(elems).copied()
    }

    pub fn id(&self, s: &Subgroup) -> usize {
        self.index[s.elements()]
    }

    pub fn generators(&self, i: usize) -> &[usize] {
        &self.gens[i]
    }

    /// Generators of the whole group.
    pub fn group_generators(&self) -> &[usize] {
        &self.group_gens
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    /// Conjugacy classes; each class is sorted so its first entry is the representative.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_reps(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c[0]).collect()
    }

    pub fn normalizer(&self, i: usize) -> usize {
        self.normalizer[i]
    }

    pub fn centralizer(&self, i: usize) -> usize {
        self.centralizer[i]
    }

    pub fn normalizer_order(&self, i: usize) -> usize {
        self.subgroups[self.normalizer[i]].order()
    }

    pub fn centralizer_order(&self, i: usize) -> usize {
        self.subgroups[self.centralizer[i]].order()
    }

    /// Subgroup id of `g_k S_i g_k^-1` for the k-th entry of `group_generators`.
    pub fn conjugate_by_generator(&self, k: usize, i: usize) -> usize {
        self.conj[k][i]
    }

    pub fn contains(&self, big: usize, small: usize) -> bool {
        self.subgroups[small].is_subgroup_of(&self.subgroups[big])
    }

    /// Ids of all subgroups of `S_i` (including `S_i`), ascending.
    pub fn subgroups_of(&self, i: usize) -> Vec<usize> {
        (0..=i).filter(|&j| self.contains(i, j)).collect()
    }

    /// Composition length of the subgroup `S_i`, via a largest proper normal subgroup.
    pub fn composition_length(&self, i: usize) -> usize {
        self.comp_len[i]
    }

    pub fn max_composition_length(&self) -> usize {
        self.comp_len
            .iter()
            .copied()
            .max()
            .unwrap_or(0)
    }

    fn compute_comp_len(&self, g: &FiniteGroup) -> Vec<usize> {
        let m = self.subgroups.len();
        let mut out = vec![0usize; m];
        for i in 1..m {
            let v = &self.subgroups[i];
            if let Some(p) = prime_power_base(v.order()) {
                out[i] = log_base(v.order(), p);
                continue;
            }
            // subgroups are sorted by order, so the last normal one found is largest
            let mut best = 0;
            for j in (0..i).rev() {
                let u = &self.subgroups[j];
                if u.order() == v.order() || !u.is_subgroup_of(v) {
                    continue;
                }
                let normal = self.gens[i]
                    .iter()
                    .all(|&x| self.gens[j].iter().all(|&y| u.contains(g.conj(x, y))));
                if normal {
                    best = j;
                    break;
                }
            }
            out[i] = 1 + out[best];
        }
        out
    }

    /// Möbius values `μ(W, V)` for all `W ≤ V = S_v`.
    pub fn mobius_below(&self, v: usize) -> Vec<(usize, i64)> {
        let subs = self.subgroups_of(v);
        let mut mu: HashMap<usize, i64> = HashMap::new();
        for &w in subs.iter().rev() {
            if w == v {
                mu.insert(w, 1);
                continue;
            }
            let s: i64 = subs
                .iter()
                .filter(|&&x| x != w && self.contains(x, w))
                .map(|x| mu[x])
                .sum();
            mu.insert(w, -s);
        }
        subs.into_iter().map(|w| (w, mu[&w])).collect()
    }
}

fn prime_power_base(n: usize) -> Option<usize> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d)).unwrap();
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    (m == 1).then_some(p)
}

fn log_base(mut n: usize, p: usize) -> usize {
    let mut k = 0;
    while n > 1 {
        n /= p;
        k += 1;
    }
    k
}
