use std::collections::{BTreeSet, HashMap};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::group::FiniteGroup;
use crate::error::{Error, Result};

/// Catalog names understood by [`load_group`].
pub const CATALOG_HELP: &str =
    "C<n>, V4, D<2n>, Q8, S3, S4, A4, C<p>^<k> or E<p^k> (elementary abelian), or a path to a group file";

/// Example catalog entries listed by the CLI.
pub const CATALOG_SAMPLES: &[&str] = &[
    "C1", "C2", "C3", "C4", "V4", "C5", "S3", "C6", "D8", "Q8", "C2^3", "A4", "D12", "S4",
];

/// On-disk group description.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupFile {
    pub name: String,
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl GroupFile {
    pub fn from_group(g: &FiniteGroup) -> Self {
        GroupFile {
            name: g.name().to_string(),
            order: g.order(),
            table: g.table_rows(),
            labels: g.labels().map(|l| l.to_vec()),
        }
    }

    pub fn into_group(self) -> Result<FiniteGroup> {
        if self.order != self.table.len() {
            return Err(Error::Load(format!(
                "field `order` is {} but `table` has {} rows",
                self.order,
                self.table.len()
            )));
        }
        FiniteGroup::from_table(self.name, self.table, self.labels)
    }
}

/// Parses a JSON group description.
pub fn group_from_json(text: &str) -> Result<FiniteGroup> {
    let f: GroupFile = serde_json::from_str(text)
        .map_err(|e| Error::Load(format!("line {}, column {}: {e}", e.line(), e.column())))?;
    f.into_group()
}

pub fn group_to_json(g: &FiniteGroup) -> String {
    serde_json::to_string_pretty(&GroupFile::from_group(g)).expect("serializable")
}

/// Loads a catalog group by name, or a group file when `spec` names an existing path.
pub fn load_group(spec: &str) -> Result<FiniteGroup> {
    let path = Path::new(spec);
    if spec.ends_with(".json") || path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Load(format!("cannot read {spec}: {e}")))?;
        return group_from_json(&text);
    }
    let g = catalog_group(spec)?;
    let bound = super::group::max_group_order();
    if g.order() > bound {
        return Err(Error::Capacity {
            what: format!("group {spec}"),
            order: g.order(),
            bound,
        });
    }
    Ok(g)
}

fn catalog_group(name: &str) -> Result<FiniteGroup> {
    let bad = || Error::Load(format!("unknown group `{name}`; expected {CATALOG_HELP}"));
    let num = |s: &str| s.parse::<usize>().ok().filter(|&k| k > 0);
    let bound = super::group::max_group_order();
    let guard = |order: usize| {
        if order > bound {
            Err(Error::Capacity {
                what: format!("group {name}"),
                order,
                bound,
            })
        } else {
            Ok(())
        }
    };
    match name {
        "1" | "C1" => return Ok(cyclic(1)),
        "V4" => return Ok(klein_four()),
        "Q8" => return Ok(quaternion()),
        "S3" => return Ok(symmetric(3, "S3")),
        "S4" => return Ok(symmetric(4, "S4")),
        "A4" => return Ok(alternating4()),
        _ => {}
    }
    if let Some((base, exp)) = name.strip_prefix('C').and_then(|r| r.split_once('^')) {
        let p = num(base).ok_or_else(bad)?;
        let k = num(exp).ok_or_else(bad)?;
        if !is_prime(p) {
            return Err(bad());
        }
        guard(p.checked_pow(k as u32).unwrap_or(usize::MAX))?;
        return Ok(elementary_abelian(p, k, name));
    }
    if let Some(r) = name.strip_prefix('C') {
        let n = num(r).ok_or_else(bad)?;
        guard(n)?;
        return Ok(cyclic(n));
    }
    if let Some(r) = name.strip_prefix('D') {
        let m = num(r).ok_or_else(bad)?;
        if m < 2 || m % 2 != 0 {
            return Err(bad());
        }
        guard(m)?;
        return Ok(dihedral(m / 2));
    }
    if let Some(r) = name.strip_prefix('E') {
        let q = num(r).ok_or_else(bad)?;
        let p = (2..=q).find(|d| q % d == 0).ok_or_else(bad)?;
        let mut k = 0;
        let mut m = q;
        while m % p == 0 {
            m /= p;
            k += 1;
        }
        if m != 1 {
            return Err(bad());
        }
        guard(q)?;
        return Ok(elementary_abelian(p, k, name));
    }
    Err(bad())
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

pub fn cyclic(n: usize) -> FiniteGroup {
    let table = (0..n * n).map(|k| (k / n + k % n) % n).collect();
    let labels = (0..n)
        .map(|i| match i {
            0 => "e".to_string(),
            1 => "a".to_string(),
            _ => format!("a^{i}"),
        })
        .collect();
    FiniteGroup::from_trusted_table(format!("C{n}"), n, table, Some(labels))
}

/// Dihedral group of order `2m`, elements `r^i s^j` stored at index `i + m j`.
pub fn dihedral(m: usize) -> FiniteGroup {
    let n = 2 * m;
    let mut table = vec![0; n * n];
    for a in 0..n {
        let (i, j) = (a % m, a / m);
        for b in 0..n {
            let (k, l) = (b % m, b / m);
            let rot = if j == 0 { (i + k) % m } else { (i + m - k) % m };
            table[a * n + b] = rot + m * ((j + l) % 2);
        }
    }
    let labels = (0..n)
        .map(|a| {
            let (i, j) = (a % m, a / m);
            let r = match i {
                0 => String::new(),
                1 => "r".to_string(),
                _ => format!("r^{i}"),
            };
            match (r.is_empty(), j) {
                (true, 0) => "e".to_string(),
                (true, _) => "s".to_string(),
                (false, 0) => r,
                (false, _) => format!("{r}s"),
            }
        })
        .collect();
    FiniteGroup::from_trusted_table(format!("D{n}"), n, table, Some(labels))
}

pub fn elementary_abelian(p: usize, k: usize, name: &str) -> FiniteGroup {
    let n = p.pow(k as u32);
    let digits = |mut x: usize| {
        let mut d = vec![0; k];
        for slot in d.iter_mut() {
            *slot = x % p;
            x /= p;
        }
        d
    };
    let mut table = vec![0; n * n];
    for a in 0..n {
        let da = digits(a);
        for b in 0..n {
            let db = digits(b);
            let mut c = 0;
            for i in (0..k).rev() {
                c = c * p + (da[i] + db[i]) % p;
            }
            table[a * n + b] = c;
        }
    }
    let labels = (0..n)
        .map(|a| {
            let d = digits(a);
            format!("({})", d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
        })
        .collect();
    FiniteGroup::from_trusted_table(name.to_string(), n, table, Some(labels))
}

pub fn quaternion() -> FiniteGroup {
    // (sign, unit) with unit 0=1, 1=i, 2=j, 3=k; index = unit + 4*sign
    let unit_mul = |a: usize, b: usize| -> (usize, usize) {
        match (a, b) {
            (0, x) | (x, 0) => (0, x),
            (x, y) if x == y => (1, 0),
            (1, 2) => (0, 3),
            (2, 1) => (1, 3),
            (2, 3) => (0, 1),
            (3, 2) => (1, 1),
            (3, 1) => (0, 2),
            (1, 3) => (1, 2),
            _ => unreachable!(),
        }
    };
    let mut table = vec![0; 64];
    for a in 0..8 {
        for b in 0..8 {
            let (s, u) = unit_mul(a % 4, b % 4);
            let sign = (a / 4 + b / 4 + s) % 2;
            table[a * 8 + b] = u + 4 * sign;
        }
    }
    let names = ["1", "i", "j", "k"];
    let labels = (0..8)
        .map(|a| format!("{}{}", if a >= 4 { "-" } else { "" }, names[a % 4]))
        .collect();
    FiniteGroup::from_trusted_table("Q8", 8, table, Some(labels))
}

/// Group generated by permutations of `0..degree`, elements sorted lexicographically.
pub fn permutation_group(name: &str, degree: usize, gens: &[Vec<usize>]) -> FiniteGroup {
    let id: Vec<usize> = (0..degree).collect();
    let compose = |p: &[usize], q: &[usize]| -> Vec<usize> { q.iter().map(|&x| p[x]).collect() };
    let mut elems: BTreeSet<Vec<usize>> = BTreeSet::new();
    elems.insert(id.clone());
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = compose(&x, g);
            if elems.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    let elems: Vec<Vec<usize>> = elems.into_iter().collect();
    let pos: HashMap<Vec<usize>, usize> = elems.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let n = elems.len();
    let mut table = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            // (ab)(x) = a(b(x)): apply b first
            table[a * n + b] = pos[&compose(&elems[a], &elems[b])];
        }
    }
    let labels = elems.iter().map(|p| cycle_notation(p)).collect();
    FiniteGroup::from_trusted_table(name.to_string(), n, table, Some(labels))
}

/// Cycle notation with points numbered from 1, e.g. `(1,3)(2,4)`.
pub fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cyc = vec![start];
        seen[start] = true;
        let mut x = p[start];
        while x != start {
            seen[x] = true;
            cyc.push(x);
            x = p[x];
        }
        out.push('(');
        out.push_str(&cyc.iter().map(|c| (c + 1).to_string()).collect::<Vec<_>>().join(","));
        out.push(')');
    }
    if out.is_empty() {
        "()".to_string()
    } else {
        out
    }
}

fn symmetric(d: usize, name: &str) -> FiniteGroup {
    let mut cycle: Vec<usize> = (1..d).collect();
    cycle.push(0);
    let mut swap: Vec<usize> = (0..d).collect();
    swap.swap(0, 1);
    permutation_group(name, d, &[cycle, swap])
}

fn alternating4() -> FiniteGroup {
    permutation_group("A4", 4, &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]])
}

/// Klein four-group realized as the normal subgroup of `S4` of double transpositions.
fn klein_four() -> FiniteGroup {
    permutation_group("V4", 4, &[vec![1, 0, 3, 2], vec![2, 3, 0, 1]])
}
