//! Element literals: sums like `2[Δ] - 1/2*[1x C2] + [class:3]`.

use std::sync::Arc;

use burnside_core::burnside::SubgroupSystem;
use burnside_core::ghost::TypeRegistry;
use burnside_core::groups::{FiniteGroup, Subgroup};
use num::{BigInt, BigRational, One, Zero};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Atom {
    Diagonal,
    Trivial,
    Class(usize),
    Product(String, String),
}

/// Parses a literal into `(coefficient, atom)` terms.
pub fn parse(text: &str) -> Result<Vec<(BigRational, Atom)>, CliError> {
    let bad = |why: &str| CliError::Parse(format!("bad element literal `{text}`: {why}"));
    let mut terms = Vec::new();
    let mut rest = text.trim();
    if rest.is_empty() {
        return Err(bad("empty"));
    }
    if rest == "0" {
        return Ok(terms);
    }
    let mut sign = BigRational::one();
    loop {
        if let Some(r) = rest.strip_prefix('-') {
            sign = -sign;
            rest = r.trim_start();
            continue;
        }
        if let Some(r) = rest.strip_prefix('+') {
            rest = r.trim_start();
        }
        let open = rest.find('[').ok_or_else(|| bad("expected `[`"))?;
        let coef_text = rest[..open].trim().trim_end_matches('*').trim();
        let coef = if coef_text.is_empty() {
            BigRational::one()
        } else {
            parse_rational(coef_text).ok_or_else(|| bad("bad coefficient"))?
        };
        let close = rest[open..].find(']').ok_or_else(|| bad("missing `]`"))? + open;
        let atom = parse_atom(rest[open + 1..close].trim()).ok_or_else(|| bad("unknown basis element"))?;
        terms.push((sign.clone() * coef, atom));
        rest = rest[close + 1..].trim_start();
        if rest.is_empty() {
            break;
        }
        sign = BigRational::one();
        if !rest.starts_with(['+', '-']) {
            return Err(bad("expected `+` or `-` between terms"));
        }
    }
    Ok(terms)
}

fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.trim().parse().ok()?;
            let n: BigInt = n.trim().parse().ok()?;
            (!d.is_zero()).then(|| BigRational::new(n, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

fn parse_atom(s: &str) -> Option<Atom> {
    match s {
        "Δ" | "D" | "Delta" => return Some(Atom::Diagonal),
        "1" => return Some(Atom::Trivial),
        _ => {}
    }
    if let Some(k) = s.strip_prefix("class:") {
        return k.trim().parse().ok().map(Atom::Class);
    }
    let (u, v) = s.split_once(['x', '×'])?;
    let (u, v) = (u.trim(), v.trim());
    (!u.is_empty() && !v.is_empty()).then(|| Atom::Product(u.to_string(), v.to_string()))
}

/// A subgroup named `1`, `#<lattice id>`, the group's own name, or an isomorphism type
/// (the first subgroup of that type in the subgroup listing).
pub fn resolve_subgroup(g: &FiniteGroup, name: &str) -> Result<Subgroup, CliError> {
    let gl = g.lattice();
    if name == "1" {
        return Ok(g.trivial());
    }
    if let Some(k) = name.strip_prefix('#') {
        let i: usize = k.parse().map_err(|_| CliError::Parse(format!("bad subgroup id `{name}`")))?;
        if i >= gl.len() {
            return Err(CliError::Parse(format!("{} has no subgroup #{i}", g.name())));
        }
        return Ok(gl.subgroup(i).clone());
    }
    if name == g.name() {
        return Ok(g.whole());
    }
    let mut reg = TypeRegistry::new();
    gl.subgroups()
        .iter()
        .find(|s| reg.key(g, s) == name)
        .cloned()
        .ok_or_else(|| CliError::Parse(format!("{} has no subgroup of type `{name}`", g.name())))
}

/// Class index of an atom in `system`.
pub fn resolve_atom(system: &Arc<SubgroupSystem>, atom: &Atom) -> Result<usize, CliError> {
    let prod = system.product();
    let (g, h) = (system.left(), system.right());
    let elems = match atom {
        Atom::Class(k) => {
            if *k >= system.rank() {
                return Err(CliError::Parse(format!("class index {k} out of range 0..{}", system.rank())));
            }
            return Ok(*k);
        }
        Atom::Diagonal => {
            if !g.same_table(h) {
                return Err(CliError::Parse("[Δ] needs equal groups".into()));
            }
            prod.diagonal(&g.whole())
        }
        Atom::Trivial => vec![0],
        Atom::Product(u, v) => prod.product_subgroup(&resolve_subgroup(g, u)?, &resolve_subgroup(h, v)?),
    };
    system.class_of_elems(&elems).ok_or_else(|| {
        CliError::Core(burnside_core::Error::SystemClosure(format!(
            "{} is not a member of the `{}` system",
            system.describe(&elems),
            system.flavor()
        )))
    })
}

pub fn resolve(system: &Arc<SubgroupSystem>, text: &str) -> Result<Vec<(usize, BigRational)>, CliError> {
    parse(text)?
        .into_iter()
        .map(|(c, a)| Ok((resolve_atom(system, &a)?, c)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn parses_sums() {
        let t = parse("2[Δ] - 1/2*[1x C2] + [class:3]").unwrap();
        assert_eq!(
            t,
            vec![
                (r(2, 1), Atom::Diagonal),
                (r(-1, 2), Atom::Product("1".into(), "C2".into())),
                (r(1, 1), Atom::Class(3)),
            ]
        );
        assert_eq!(parse("-[1]").unwrap(), vec![(r(-1, 1), Atom::Trivial)]);
        assert_eq!(parse("[D]").unwrap(), vec![(r(1, 1), Atom::Diagonal)]);
        assert!(parse("0").unwrap().is_empty());
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "[", "2[Δ] [1]", "[foo]", "x[1]", "1/0[1]"] {
            assert!(parse(s).is_err(), "{s}");
        }
    }
}
