use std::sync::Arc;

use burnside_core::burnside::{mackey_product, BurnsideElement, SubgroupSystem, SystemFlavor};
use burnside_core::fusion::{
    classify_idempotent, enumerate_fusion_systems, fusion_from_group, fusion_from_group_on, fusion_generate,
    fusion_to_json, generalized_saturation_stats, inner_fusion_system, is_saturated, omega, omega_report_to_json,
    satisfies_sat_fs, triangle_check, FusionSystem, TwistedDiagonals,
};
use burnside_core::ghost::{
    ghost_product, ghost_to_json, grading, rho, rho_inverse, sigma, sigma_tilde, EquivariantMatrix, GhostElement,
    TypeRegistry,
};
use burnside_core::groups::{load_group, FiniteGroup, GroupHom, Subgroup, CATALOG_SAMPLES};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::literal;
use crate::output::{fmt_rat, rat_json, Report};

pub type Out = Result<Report, CliError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Flavor {
    All,
    Leftfree,
    Bifree,
}

pub fn load(name: &str) -> Result<Arc<FiniteGroup>, CliError> {
    Ok(Arc::new(load_group(name)?))
}

pub fn system(g: &Arc<FiniteGroup>, h: &Arc<FiniteGroup>, flavor: Flavor) -> Result<Arc<SubgroupSystem>, CliError> {
    let f = match flavor {
        Flavor::All => SystemFlavor::All,
        Flavor::Leftfree => SystemFlavor::LeftFree,
        Flavor::Bifree => SystemFlavor::Bifree,
    };
    Ok(SubgroupSystem::new(g.clone(), h.clone(), f)?)
}

fn subgroup_label(g: &FiniteGroup, s: &Subgroup) -> String {
    let parts: Vec<String> = s.elements().iter().map(|&x| g.label(x)).collect();
    format!("{{{}}}", parts.join(" "))
}

/// One or two group names become the pair `(G,H)`.
pub fn pair(names: &[String]) -> Result<(Arc<FiniteGroup>, Arc<FiniteGroup>), CliError> {
    match names {
        [g] => {
            let g = load(g)?;
            Ok((g.clone(), g))
        }
        [g, h] => Ok((load(g)?, load(h)?)),
        _ => Err(CliError::Parse("expected one or two groups".into())),
    }
}

/// One or three group names become `(G,H,K)`.
fn triple(names: &[String]) -> Result<[Arc<FiniteGroup>; 3], CliError> {
    match names {
        [g] => {
            let g = load(g)?;
            Ok([g.clone(), g.clone(), g])
        }
        [g, h, k] => Ok([load(g)?, load(h)?, load(k)?]),
        _ => Err(CliError::Parse("expected one or three groups before the two elements".into())),
    }
}

fn split_last(args: &[String], n: usize) -> Result<(&[String], &[String]), CliError> {
    if args.len() <= n {
        return Err(CliError::Parse(format!("expected group names followed by {n} element literal(s)")));
    }
    Ok(args.split_at(args.len() - n))
}

pub fn element(sys: &Arc<SubgroupSystem>, text: &str) -> Result<BurnsideElement, CliError> {
    Ok(BurnsideElement::from_terms(sys, literal::resolve(sys, text)?))
}

fn ghost_element(sys: &Arc<SubgroupSystem>, text: &str) -> Result<GhostElement, CliError> {
    Ok(GhostElement::from_terms(sys, literal::resolve(sys, text)?)?)
}

fn element_json(a: &BurnsideElement) -> Value {
    let sys = a.system();
    let terms: Vec<Value> = a
        .terms()
        .map(|(c, v)| {
            let mut t = rat_json(v);
            t["class"] = json!(c);
            t["subgroup"] = json!(sys.describe(&sys.rep(c).elems));
            t
        })
        .collect();
    json!({
        "pair": [sys.left().name(), sys.right().name()],
        "system": sys.flavor().name(),
        "terms": terms,
    })
}

fn element_report(a: &BurnsideElement) -> Report {
    let sys = a.system();
    let mut r = Report::new(&["class", "coefficient", "order", "subgroup"], element_json(a)).note(format!(
        "element of B({},{}) in the {} system: {}",
        sys.left().name(),
        sys.right().name(),
        sys.flavor(),
        canonical(a)
    ));
    for (c, v) in a.terms() {
        let rep = &sys.rep(c).elems;
        r.row(vec![c.to_string(), fmt_rat(v), rep.len().to_string(), sys.describe(rep)]);
    }
    r
}

fn canonical(a: &BurnsideElement) -> String {
    let parts: Vec<String> = a.terms().map(|(c, v)| format!("{}*[class:{c}]", fmt_rat(v))).collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn ghost_report(x: &GhostElement) -> Report {
    let sys = x.system();
    let (gl, hl) = (sys.left().lattice(), sys.right().lattice());
    let mut reg = TypeRegistry::new();
    let mut r = Report::new(&["class", "coefficient", "|U|", "|V|", "degree", "type", "subgroup"], ghost_to_json(x))
        .note(format!("ghost element over ({},{})", sys.left().name(), sys.right().name()));
    for (c, v) in x.terms() {
        let rep = sys.rep(c);
        r.row(vec![
            c.to_string(),
            fmt_rat(v),
            gl.subgroup(rep.p1).order().to_string(),
            hl.subgroup(rep.p2).order().to_string(),
            GhostElement::degree_of(sys, c).to_string(),
            reg.key(sys.left(), gl.subgroup(rep.p1)),
            sys.describe(&rep.elems),
        ]);
    }
    r
}

pub fn groups() -> Out {
    let mut list = Vec::new();
    let mut r = Report::new(&["name", "order", "abelian", "subgroups", "classes"], Value::Null);
    for name in CATALOG_SAMPLES {
        let g = load_group(name)?;
        let gl = g.lattice();
        r.row(vec![
            name.to_string(),
            g.order().to_string(),
            g.is_abelian().to_string(),
            gl.len().to_string(),
            gl.classes().len().to_string(),
        ]);
        list.push(json!({
            "name": name,
            "order": g.order(),
            "abelian": g.is_abelian(),
            "subgroups": gl.len(),
            "classes": gl.classes().len(),
        }));
    }
    r.json = json!(list);
    Ok(r)
}

pub fn subgroups(name: &str) -> Out {
    let g = load(name)?;
    let gl = g.lattice();
    let mut reg = TypeRegistry::new();
    let mut r = Report::new(&["id", "order", "type", "class", "|N|", "|C|", "elements"], Value::Null);
    let mut list = Vec::new();
    for (i, s) in gl.subgroups().iter().enumerate() {
        let key = reg.key(&g, s);
        r.row(vec![
            i.to_string(),
            s.order().to_string(),
            key.clone(),
            gl.class_of(i).to_string(),
            gl.normalizer_order(i).to_string(),
            gl.centralizer_order(i).to_string(),
            subgroup_label(&g, s),
        ]);
        list.push(json!({
            "id": i,
            "order": s.order(),
            "type": key,
            "class": gl.class_of(i),
            "normalizer_order": gl.normalizer_order(i),
            "centralizer_order": gl.centralizer_order(i),
            "elements": s.elements(),
        }));
    }
    r.json = json!({"group": g.name(), "order": g.order(), "subgroups": list});
    Ok(r.note(format!("{}: order {}, {} subgroups", g.name(), g.order(), gl.len())))
}

pub fn basis(names: &[String], flavor: Flavor) -> Out {
    let (g, h) = pair(names)?;
    let sys = system(&g, &h, flavor)?;
    let (gl, hl) = (g.lattice(), h.lattice());
    let mut r = Report::new(&["class", "order", "|p1|", "|k1|", "|p2|", "|k2|", "|N|", "subgroup"], Value::Null);
    let mut list = Vec::new();
    for c in 0..sys.rank() {
        let m = sys.rep(c);
        let cells = [
            m.elems.len(),
            gl.subgroup(m.p1).order(),
            gl.subgroup(m.k1).order(),
            hl.subgroup(m.p2).order(),
            hl.subgroup(m.k2).order(),
            sys.normalizer_order(c),
        ];
        let mut row = vec![c.to_string()];
        row.extend(cells.iter().map(|x| x.to_string()));
        row.push(sys.describe(&m.elems));
        r.row(row);
        list.push(json!({
            "class": c,
            "order": cells[0],
            "p1": cells[1], "k1": cells[2], "p2": cells[3], "k2": cells[4],
            "normalizer_order": cells[5],
            "subgroup": sys.describe(&m.elems),
            "elements": m.elems,
        }));
    }
    r.json = json!({"pair": [g.name(), h.name()], "system": sys.flavor().name(), "rank": sys.rank(), "basis": list});
    Ok(r.note(format!("{} system over ({},{}): rank {}", sys.flavor(), g.name(), h.name(), sys.rank())))
}

pub fn marks(names: &[String], flavor: Flavor) -> Out {
    let (g, h) = pair(names)?;
    let sys = system(&g, &h, flavor)?;
    let m = sys.mark_matrix();
    let headers: Vec<String> = (0..sys.rank()).map(|c| format!("L{c}")).collect();
    let mut r = Report::new(&[], json!({"pair": [g.name(), h.name()], "system": sys.flavor().name(), "marks": m}));
    r.headers = headers;
    for row in m {
        r.row(row.iter().map(|x| x.to_string()).collect());
    }
    Ok(r.note(format!("table of marks Φ_{{L_i}}([G×H/L_j]), {} system", sys.flavor())))
}

pub fn bmul(args: &[String], flavor: Flavor) -> Out {
    let (groups, lits) = split_last(args, 2)?;
    let [g, h, k] = triple(groups)?;
    let s1 = system(&g, &h, flavor)?;
    let s2 = system(&h, &k, flavor)?;
    let target = system(&g, &k, flavor)?;
    let a = element(&s1, &lits[0])?;
    let b = element(&s2, &lits[1])?;
    Ok(element_report(&mackey_product(&a, &b, &target)?))
}

fn ghost_flavor(flavor: Flavor) -> Flavor {
    if flavor == Flavor::All {
        Flavor::Leftfree
    } else {
        flavor
    }
}

pub fn rho_cmd(args: &[String], flavor: Flavor) -> Out {
    let (groups, lits) = split_last(args, 1)?;
    let (g, h) = pair(groups)?;
    let sys = system(&g, &h, ghost_flavor(flavor))?;
    Ok(ghost_report(&rho(&element(&sys, &lits[0])?)?))
}

pub fn rho_inv(args: &[String], flavor: Flavor) -> Out {
    let (groups, lits) = split_last(args, 1)?;
    let (g, h) = pair(groups)?;
    let sys = system(&g, &h, ghost_flavor(flavor))?;
    Ok(element_report(&rho_inverse(&ghost_element(&sys, &lits[0])?)?))
}

pub fn ghost_mul(args: &[String], flavor: Flavor) -> Out {
    let (groups, lits) = split_last(args, 2)?;
    let [g, h, k] = triple(groups)?;
    let fl = ghost_flavor(flavor);
    let (s1, s2, target) = (system(&g, &h, fl)?, system(&h, &k, fl)?, system(&g, &k, fl)?);
    let x = ghost_element(&s1, &lits[0])?;
    let y = ghost_element(&s2, &lits[1])?;
    Ok(ghost_report(&ghost_product(&x, &y, &target)?))
}

pub fn grading_cmd(args: &[String], flavor: Flavor) -> Out {
    let (groups, lits) = split_last(args, 1)?;
    let (g, h) = pair(groups)?;
    let sys = system(&g, &h, ghost_flavor(flavor))?;
    let a = element(&sys, &lits[0])?;
    let parts = grading(&rho(&a)?);
    let mut r = Report::new(&["degree", "component"], Value::Null);
    let mut list = Vec::new();
    for (n, x) in &parts {
        let b = rho_inverse(x)?;
        r.row(vec![n.to_string(), canonical(&b)]);
        list.push(json!({"degree": n, "component": element_json(&b), "ghost": ghost_to_json(x)}));
    }
    r.json = json!({"pair": [g.name(), h.name()], "components": list});
    Ok(r.note(format!("homogeneous components of {}", canonical(&a))))
}

fn matrix_rows(m: &EquivariantMatrix) -> Vec<Vec<String>> {
    m.entries.iter().map(|row| row.iter().map(fmt_rat).collect()).collect()
}

fn matrix_json(m: &EquivariantMatrix) -> Value {
    json!({
        "label": m.label,
        "rows": m.rows.iter().map(|f| f.images().to_vec()).collect::<Vec<_>>(),
        "cols": m.cols.iter().map(|f| f.images().to_vec()).collect::<Vec<_>>(),
        "entries": m.entries.iter().map(|row| row.iter().map(fmt_rat).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

pub fn sigma_cmd(args: &[String], t: &str, flavor: Flavor) -> Out {
    let (groups, lits) = split_last(args, 1)?;
    let (g, h) = pair(groups)?;
    let sys = system(&g, &h, flavor)?;
    let t = load(t)?;
    let m = sigma(&element(&sys, &lits[0])?, &t)?;
    let mut r = Report::new(&[], matrix_json(&m));
    r.headers = (0..m.cols.len()).map(|j| format!("μ{j}")).collect();
    r.rows = matrix_rows(&m);
    Ok(r.note(format!("σ_{}: {}×{}", t.name(), m.rows.len(), m.cols.len())))
}

pub fn sigma_tilde_cmd(args: &[String]) -> Out {
    let (groups, lits) = split_last(args, 1)?;
    let (g, h) = pair(groups)?;
    let sys = system(&g, &h, Flavor::Bifree)?;
    let blocks = sigma_tilde(&element(&sys, &lits[0])?)?;
    let gl = g.lattice();
    let mut r = Report::new(&["U", "|U|", "row", "entries"], Value::Null);
    let mut list = Vec::new();
    for b in &blocks {
        for (i, row) in matrix_rows(&b.matrix).into_iter().enumerate() {
            r.row(vec![b.u.to_string(), gl.subgroup(b.u).order().to_string(), i.to_string(), row.join(" ")]);
        }
        list.push(json!({"U": gl.subgroup(b.u).elements(), "block": matrix_json(&b.matrix)}));
    }
    r.json = json!({"group": g.name(), "blocks": list});
    Ok(r.note(format!("σ̃ over {}: {} blocks", g.name(), blocks.len())))
}

fn infer_prime(g: &FiniteGroup, prime: Option<usize>) -> Result<usize, CliError> {
    if let Some(p) = prime {
        return Ok(p);
    }
    let n = g.order();
    (2..=n)
        .find(|d| n.is_multiple_of(*d))
        .ok_or_else(|| CliError::Parse("give --prime for the trivial group".into()))
}

pub struct FusionArgs<'a> {
    pub group: &'a str,
    pub prime: Option<usize>,
    pub fusion: &'a str,
}

fn universe(group: &str, prime: Option<usize>) -> Result<Arc<TwistedDiagonals>, CliError> {
    let s = load(group)?;
    let p = infer_prime(&s, prime)?;
    Ok(TwistedDiagonals::new(s, p)?)
}

fn fusion_system(u: &Arc<TwistedDiagonals>, spec: &str) -> Result<FusionSystem, CliError> {
    if spec == "inner" {
        return Ok(inner_fusion_system(u));
    }
    if let Some(g) = spec.strip_prefix("from-group:") {
        return Ok(fusion_from_group_on(u, &load_group(g)?)?);
    }
    if let Some(i) = spec.strip_prefix("enum:") {
        let i: usize = i.parse().map_err(|_| CliError::Parse(format!("bad index in `{spec}`")))?;
        let all = enumerate_fusion_systems(u);
        let n = all.len();
        return all
            .into_iter()
            .nth(i)
            .ok_or_else(|| CliError::Parse(format!("only {n} fusion systems on {}", u.base().name())));
    }
    if let Some(path) = spec.strip_prefix("file:") {
        return fusion_from_file(u, path);
    }
    Err(CliError::Parse(format!(
        "bad fusion system `{spec}`; expected inner, from-group:<G>, enum:<i> or file:<path>"
    )))
}

/// Reads the `morphism_tables` layout written by `fusion-from-group --format json`.
fn fusion_from_file(u: &Arc<TwistedDiagonals>, path: &str) -> Result<FusionSystem, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("cannot read {path}: {e}")))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{path}: {e}")))?;
    let tables = v["morphism_tables"]
        .as_array()
        .ok_or_else(|| CliError::Parse(format!("{path}: missing `morphism_tables`")))?;
    let as_list = |x: &Value, field: &str| -> Result<Vec<usize>, CliError> {
        x.as_array()
            .and_then(|a| a.iter().map(|e| e.as_u64().map(|k| k as usize)).collect::<Option<Vec<_>>>())
            .ok_or_else(|| CliError::Parse(format!("{path}: `{field}` must be a list of element indices")))
    };
    let whole = u.base().whole().elements().to_vec();
    let n = u.base().order();
    let mut homs = Vec::new();
    for (k, t) in tables.iter().enumerate() {
        let dom = as_list(&t["P"], &format!("morphism_tables[{k}].P"))?;
        let maps = t["maps"]
            .as_array()
            .ok_or_else(|| CliError::Parse(format!("{path}: morphism_tables[{k}].maps missing")))?;
        for m in maps {
            let images = as_list(m, &format!("morphism_tables[{k}].maps"))?;
            if images.len() != dom.len() || dom.iter().chain(&images).any(|&x| x >= n) {
                return Err(CliError::Parse(format!("{path}: morphism_tables[{k}] has a malformed map")));
            }
            homs.push(GroupHom::new(dom.clone(), images, whole.clone()));
        }
    }
    let f = fusion_generate(u, &homs)?;
    if f.len() != homs.len() {
        return Err(CliError::Core(burnside_core::Error::SystemClosure(format!(
            "{path}: the {} listed morphisms are not closed under composition, restriction, inverses and \
             S-conjugation (closure has {})",
            homs.len(),
            f.len()
        ))));
    }
    let mut f = f;
    f.set_label(format!("file:{path}"));
    Ok(f)
}

fn fusion_table(f: &FusionSystem) -> Report {
    let s = f.base();
    let gl = s.lattice();
    let mut r = Report::new(&["P", "|P|", "|Hom_F(P,S)|", "|Aut_F(P)|", "F-class"], fusion_to_json(f)).note(
        format!("fusion system {} on {} (p = {}): {} morphisms", f.label(), s.name(), f.prime(), f.len()),
    );
    for p in gl.class_reps() {
        let cls: Vec<String> = f.iso_class_of(p).iter().map(|q| q.to_string()).collect();
        r.row(vec![
            p.to_string(),
            gl.subgroup(p).order().to_string(),
            f.hom_count(p).to_string(),
            f.aut_order(p).to_string(),
            cls.join(" "),
        ]);
    }
    r
}

pub fn fusion_from_group_cmd(g: &str, prime: Option<usize>, on: Option<&str>) -> Out {
    let gg = load_group(g)?;
    let p = infer_prime(&gg, prime)?;
    let f = match on {
        Some(s) => fusion_from_group_on(&universe(s, Some(p))?, &gg)?,
        None => {
            let mut q = 1;
            while gg.order() % (q * p) == 0 {
                q *= p;
            }
            let syl = gg
                .lattice()
                .subgroups()
                .iter()
                .find(|s| s.order() == q)
                .cloned()
                .expect("Sylow subgroups exist");
            fusion_from_group(&gg, &syl, p)?
        }
    };
    Ok(fusion_table(&f))
}

pub fn fusion_enumerate(group: &str, prime: Option<usize>) -> Out {
    let u = universe(group, prime)?;
    let all = enumerate_fusion_systems(&u);
    let whole = u.base().lattice().whole_id();
    let mut r = Report::new(
        &["index", "label", "morphisms", "|Aut_F(S)|", "saturated", "sat-fs", "omega p-integral"],
        Value::Null,
    );
    let mut list = Vec::new();
    for (i, f) in all.iter().enumerate() {
        let sat = is_saturated(f).saturated;
        let fs = satisfies_sat_fs(f);
        let w = omega(f)?;
        r.row(vec![
            i.to_string(),
            f.label().to_string(),
            f.len().to_string(),
            f.aut_order(whole).to_string(),
            sat.to_string(),
            fs.to_string(),
            w.p_integral_standard.to_string(),
        ]);
        list.push(json!({
            "index": i,
            "label": f.label(),
            "morphisms": f.len(),
            "aut_order": f.aut_order(whole),
            "saturated": sat,
            "sat_fs": fs,
            "omega_p_integral": w.p_integral_standard,
            "system": fusion_to_json(f),
        }));
    }
    r.json = json!({"group": u.base().name(), "prime": u.prime(), "count": all.len(), "systems": list});
    Ok(r.note(format!("{} fusion systems on {} (p = {})", all.len(), u.base().name(), u.prime())))
}

pub fn omega_cmd(a: FusionArgs) -> Out {
    let u = universe(a.group, a.prime)?;
    let f = fusion_system(&u, a.fusion)?;
    let rep = omega(&f)?;
    let sat = is_saturated(&f);
    let delta = u.full_system();
    let gl = u.base().lattice();
    let marks = rep.omega_standard.marks();
    let mut json = omega_report_to_json(&f, &rep);
    json["saturated"] = json!(sat.saturated);
    json["marks"] = json!((0..delta.rank())
        .map(|c| {
            let mut m = rat_json(&marks[c]);
            m["class"] = json!(c);
            m["p1_order"] = json!(gl.subgroup(delta.rep(c).p1).order());
            m
        })
        .collect::<Vec<_>>());
    let mut r = Report::new(&["class", "|p1 L|", "in S(F)", "Φ_L(ω)", "ghost", "standard"], json)
        .note(format!("ω for {} on {} (p = {})", f.label(), u.base().name(), u.prime()))
        .note(format!(
            "idempotent {}, frobenius left {} right {}, symmetric {}, Fix = S(F) {}, saturated {}",
            rep.is_idempotent,
            rep.is_frobenius_left,
            rep.is_frobenius_right,
            rep.is_symmetric,
            rep.fix_equals_system,
            sat.saturated
        ))
        .note(format!(
            "standard coefficients p-integral {} (least valuation {})",
            rep.p_integral_standard,
            rep.worst_valuation.map_or("-".to_string(), |v| v.to_string())
        ));
    for c in 0..delta.rank() {
        let rp = delta.rep(c);
        let inside = f.member_set().contains(delta.member_id(&rp.elems).expect("rep is a member"));
        r.row(vec![
            c.to_string(),
            gl.subgroup(rp.p1).order().to_string(),
            inside.to_string(),
            fmt_rat(&marks[c]),
            fmt_rat(&rep.omega_ghost.coeff(c)),
            fmt_rat(&rep.omega_standard.coeff(c)),
        ]);
    }
    Ok(r)
}

pub fn classify_cmd(group: &str, prime: Option<usize>, fusion: Option<&str>, lit: Option<&str>) -> Out {
    let u = universe(group, prime)?;
    let (a, what) = match (fusion, lit) {
        (Some(spec), None) => {
            let f = fusion_system(&u, spec)?;
            (omega(&f)?.omega_standard, format!("ω of {}", f.label()))
        }
        (None, Some(text)) => (element(u.full_system(), text)?, text.to_string()),
        _ => return Err(CliError::Parse("give exactly one of --fusion or an element literal".into())),
    };
    let c = classify_idempotent(&a, u.prime() as u64)?;
    let fields: [(&str, bool); 9] = [
        ("idempotent", c.is_idempotent),
        ("frobenius_left", c.is_frobenius_left),
        ("frobenius_right", c.is_frobenius_right),
        ("fix_subgroup_closed", c.fix_subgroup_closed),
        ("contains_delta_s", c.contains_delta_s),
        ("in_idem", c.in_idem),
        ("standard_p_integral", c.standard_p_integral),
        ("ghost_p_integral", c.ghost_p_integral),
        ("sigma_tilde_p_integral", c.sigma_tilde_p_integral),
    ];
    let mut json = json!({"group": u.base().name(), "prime": u.prime(), "element": element_json(&a)});
    for (k, v) in fields {
        json[k] = json!(v);
    }
    json["worst_standard_valuation"] = json!(c.worst_standard_valuation);
    json["fix_size"] = json!(c.fix.len());
    let mut r = Report::new(&["property", "value"], json).note(format!("classification of {what}"));
    for (k, v) in fields {
        r.row(vec![k.to_string(), v.to_string()]);
    }
    Ok(r)
}

pub fn saturated_cmd(a: FusionArgs) -> Out {
    let u = universe(a.group, a.prime)?;
    let f = fusion_system(&u, a.fusion)?;
    let sat = is_saturated(&f);
    let gl = u.base().lattice();
    let stats = generalized_saturation_stats(&f);
    let violations: Vec<Value> = sat
        .violations
        .iter()
        .map(|&(p, i)| {
            let h = u.hom(i);
            json!({"P": gl.subgroup(p).elements(), "images": h.images()})
        })
        .collect();
    let classes: Vec<Value> = stats
        .iter()
        .map(|c| {
            json!({
                "subgroups": c.subgroups,
                "f_count": c.f_count,
                "normalized_iff_centralized_and_sylow": c.normalized_iff_centralized_and_sylow(),
                "members": c.members.iter().map(|m| json!({
                    "subgroup": m.subgroup,
                    "fully_normalized": m.fully_normalized,
                    "fully_centralized": m.fully_centralized,
                    "sylow_automizer": m.sylow_automizer,
                    "sat_fs": rat_json(&m.sat_fs),
                    "sat_fs_integral": m.sat_fs_integral,
                })).collect::<Vec<_>>(),
            })
        })
        .collect();
    let json = json!({
        "group": u.base().name(),
        "prime": u.prime(),
        "fusion": f.label(),
        "saturated": sat.saturated,
        "sylow_axiom": sat.sylow_axiom,
        "violations": violations,
        "classes": classes,
    });
    let mut r = Report::new(&["subgroup", "|P|", "normalized", "centralized", "sylow", "sat-fs"], json)
        .note(format!("{} on {}: saturated {}, Sylow axiom {}", f.label(), u.base().name(), sat.saturated, sat.sylow_axiom));
    if let Some((p, i)) = sat.witness() {
        let h = u.hom(i);
        let base = u.base();
        let pairs: Vec<String> = h.pairs().map(|(x, y)| format!("{}->{}", base.label(x), base.label(y))).collect();
        r = r.note(format!(
            "extension axiom fails at P = {} for φ = {}",
            subgroup_label(base, gl.subgroup(p)),
            pairs.join(", ")
        ));
    }
    for c in &stats {
        for m in &c.members {
            r.row(vec![
                m.subgroup.to_string(),
                gl.subgroup(m.subgroup).order().to_string(),
                m.fully_normalized.to_string(),
                m.fully_centralized.to_string(),
                m.sylow_automizer.to_string(),
                fmt_rat(&m.sat_fs),
            ]);
        }
    }
    Ok(r)
}

pub fn triangle_cmd(group: &str, prime: Option<usize>) -> Out {
    let u = universe(group, prime)?;
    let t = triangle_check(&u)?;
    let json = json!({
        "group": t.group,
        "prime": t.prime,
        "systems": t.rows.len(),
        "all_commute": t.all_commute,
        "injective": t.injective,
        "rows": t.rows.iter().map(|r| json!({"label": r.label, "morphisms": r.morphisms, "commutes": r.commutes})).collect::<Vec<_>>(),
    });
    let mut r = Report::new(&["label", "morphisms", "Fix(ω_F) = S(F)"], json).note(format!(
        "{} fusion systems on {}: triangle commutes {}, ω injective {}",
        t.rows.len(),
        t.group,
        t.all_commute,
        t.injective
    ));
    for row in &t.rows {
        r.row(vec![row.label.clone(), row.morphisms.to_string(), row.commutes.to_string()]);
    }
    Ok(r)
}
