use std::fmt::{Display, Write};

use serde_json::{json, Value};

use super::catalog::{self, CatalogEntry};
use super::recipes::{self, proportional, swap12, ClubsuitInstance};
use super::{CliError, Options};
use crate::arrangement_combinatorics::{admissible_permutations, fingerprint};
use crate::curve_geometry::{flex_points, line_meet, tangent_line, tangents_through, EllipticStructure, PlaneCurve, ProjPoint};
use crate::exact_fields::UniPoly;
use crate::torsion_invariants::{
    clubsuit_parameters, compute_na, distinguish, tau_l, tau_l_group, tau_order_o, theta_box, triangle_through,
    verify_certificate, ArrangementSpec, Mode, ThetaVector, Witness, ZariskiCertificate,
};

pub const REPRODUCTIONS: [&str; 6] =
    ["two-triangles", "tangents-triangle", "fermat-existence", "clubsuit-d2", "clubsuit-tables", "cyclic-triangle"];

#[derive(Clone, Debug)]
pub struct Check {
    pub label: String,
    pub expected: String,
    pub found: String,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub name: String,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
    pub certificates: Vec<ZariskiCertificate>,
}

impl Report {
    fn new(name: &str) -> Report {
        Report { name: name.into(), checks: Vec::new(), notes: Vec::new(), certificates: Vec::new() }
    }

    fn check(&mut self, label: &str, expected: impl Display, found: impl Display) {
        let (expected, found) = (expected.to_string(), found.to_string());
        let pass = expected == found;
        self.checks.push(Check { label: label.into(), expected, found, pass });
    }

    fn holds(&mut self, label: &str, ok: bool) {
        self.check(label, true, ok);
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "reproduction": self.name,
            "passed": self.passed(),
            "checks": self.checks.iter().map(|c| json!({
                "label": c.label, "expected": c.expected, "found": c.found, "pass": c.pass,
            })).collect::<Vec<_>>(),
            "notes": self.notes,
            "certificates": self.certificates.iter().map(ZariskiCertificate::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "reproduction {}: {}", self.name, if self.passed() { "PASS" } else { "FAIL" });
        for c in &self.checks {
            let mark = if c.pass { "pass" } else { "FAIL" };
            if c.pass {
                let _ = writeln!(s, "  [{mark}] {}: {}", c.label, c.found);
            } else {
                let _ = writeln!(s, "  [{mark}] {}: expected {}, found {}", c.label, c.expected, c.found);
            }
        }
        for n in &self.notes {
            let _ = writeln!(s, "  note: {n}");
        }
        for c in &self.certificates {
            let text = c.report();
            let head = text.split("--- certificate").next().unwrap_or_default();
            for line in head.lines() {
                let _ = writeln!(s, "  {line}");
            }
        }
        let _ = writeln!(s, "--- machine");
        let _ = writeln!(s, "{}", self.to_json());
        s
    }
}

pub fn run_reproduction(name: &str, opts: &Options) -> Result<Report, CliError> {
    match name {
        "two-triangles" => two_triangles(opts),
        "tangents-triangle" => tangents_triangle(opts),
        "fermat-existence" => fermat_existence(opts),
        "clubsuit-d2" => clubsuit_d2(opts),
        "clubsuit-tables" => Ok(clubsuit_tables()),
        "cyclic-triangle" => cyclic_triangle(opts),
        _ => Err(CliError::UnknownReproduction(name.into())),
    }
}

fn theta(v: &[i64]) -> ThetaVector {
    ThetaVector::new(v.to_vec()).expect("coprime entries")
}

fn mode_name(c: &ZariskiCertificate) -> &'static str {
    c.mode.map_or("inconclusive", |m| m.name())
}

fn certify(rep: &mut Report, s1: &ArrangementSpec, s2: &ArrangementSpec, adm: &[Vec<usize>], want: Mode) -> Result<ZariskiCertificate, CliError> {
    let cert = distinguish(s1, s2, adm)?;
    rep.check(&format!("distinguish({}, {})", s1.name, s2.name), want.name(), mode_name(&cert));
    rep.holds(&format!("certificate ({}, {}) re-verified", s1.name, s2.name), verify_certificate(s1, s2, &cert)?);
    rep.certificates.push(cert.clone());
    Ok(cert)
}

fn two_triangles(opts: &Options) -> Result<Report, CliError> {
    let mut rep = Report::new("two-triangles");
    let [c1, c2, c3] = recipes::two_triangles_specs();
    let t1 = recipes::lattice_t1();
    for (s, want) in [(&c1, "Z/3"), (&c2, "Z/3"), (&c3, "(Z/3)^2")] {
        rep.check(&format!("line-section group of {}", s.name), want, tau_l_group(s)?.group);
    }
    rep.check("tau^L(1,1) on C1", t1.scale(2), tau_l(&c1, &[1, 1])?);
    rep.check("tau^L(1,1) on C2", t1.scale(0), tau_l(&c2, &[1, 1])?);
    let adm = swap12(2);
    certify(&mut rep, &c1, &c2, &adm, Mode::Kernel)?;
    certify(&mut rep, &c1, &c3, &adm, Mode::Group)?;
    certify(&mut rep, &c2, &c3, &adm, Mode::Group)?;

    // the first two arrangements on the cyclic cubic
    let entry = catalog::cyclic(opts.tower_budget)?;
    let q = entry.cubic.tower().clone();
    let tri = cyclic_lines(&entry, &q)?;
    let p = |ls: &[PlaneCurve; 3]| PlaneCurve::product(ls);
    let f1 = fingerprint(&entry.cubic, &[p(&tri.l1), p(&tri.l1_prime)])?;
    let f2 = fingerprint(&entry.cubic, &[p(&tri.l1), p(&tri.l2)])?;
    rep.holds("xyz + L1' and xyz + L2 have equal fingerprints", f1 == f2);
    rep.check("concurrent points among the six lines of xyz + L1'", 0, f1.concurrent_off_cubic().count());
    let adm = admissible_permutations(&f1, &f2);
    rep.holds("admissible relabelings include the identity", adm.contains(&vec![0, 1]));
    let e = entry.elliptic()?;
    let onbase = cyclic_lines(&entry, e.tower())?;
    let k1 = recipes::triangle_class(&e, &onbase.l1)?;
    let k1p = recipes::triangle_class(&e, &onbase.l1_prime)?;
    let k2 = recipes::triangle_class(&e, &onbase.l2)?;
    let e_b = e.lift_to(k1p.tower());
    rep.holds("class of L1' equals class of xyz", e_b.is_on(&k1p)? && same(&k1p, &k1)?);
    rep.holds("class of L2 is twice the class of xyz", same(&k2, &e.add(&k1, &k1)?)?);
    rep.note("the third triangle needs a degree-162 tower for its class; see cyclic-triangle --extended");
    Ok(rep)
}

fn same(a: &ProjPoint, b: &ProjPoint) -> Result<bool, CliError> {
    let tw = if a.tower().depth() >= b.tower().depth() { a.tower().clone() } else { b.tower().clone() };
    Ok(a.lift_to(&tw).eq_strict(&b.lift_to(&tw))?)
}

fn cyclic_lines(entry: &CatalogEntry, base: &crate::exact_fields::FieldTower) -> Result<recipes::CyclicTriangles, CliError> {
    let mut e = entry.clone();
    e.cubic = entry.cubic.lift_to(base);
    recipes::cyclic_triangles(&e)
}

fn tangents_triangle(opts: &Options) -> Result<Report, CliError> {
    let mut rep = Report::new("tangents-triangle");
    let [c4, c5] = recipes::tangents_triangle_specs();
    rep.check("n_(1,2,1)", 3, compute_na(&c4, &theta(&[1, 2, 1]))?);
    rep.check("n_(2,1,1)", 3, compute_na(&c4, &theta(&[2, 1, 1]))?);
    for (s, a, want) in [(&c4, [1, 2, 1], 1), (&c4, [2, 1, 1], 3), (&c5, [1, 2, 1], 3), (&c5, [2, 1, 1], 3)] {
        rep.check(&format!("ord tau({a:?}) on {}", s.name), want, tau_order_o(s, &theta(&a))?);
    }
    rep.check("line-section group of C4", "0", tau_l_group(&c4)?.group);
    let cert = certify(&mut rep, &c4, &c5, &swap12(3), Mode::Multiset)?;
    if let Some(Witness::Multiset { a0, left, right }) = cert.witnesses.first() {
        rep.check("multiset witness a0", "[1, 2, 1]", format!("{a0:?}"));
        rep.check("order multisets", "[1, 3] vs [3, 3]", format!("{left:?} vs {right:?}"));
    }

    let w = recipes::fermat_witness(&catalog::fermat(opts.tower_budget)?)?;
    let (f4, f5) = w.fingerprints()?;
    rep.holds("C4 and C5 on the Fermat cubic have equal fingerprints", f4 == f5);
    let adm = admissible_permutations(&f4, &f5);
    rep.holds("admissible relabelings lie in <(1 2)>", !adm.is_empty() && adm.iter().all(|p| swap12(3).contains(p)));
    let (g4, g5) = (w.c4()?, w.c5()?);
    let mut agree = true;
    for a in theta_box(3, 3) {
        agree &= tau_order_o(&g4, &a).is_ok() && tau_order_o(&g5, &a).is_ok();
    }
    rep.holds("lattice and curve orders agree on the search box", agree);
    let cert = distinguish(&g4, &g5, &adm)?;
    rep.check("distinguish on the curves", "multiset-witness", mode_name(&cert));
    rep.holds("certificate on the curves re-verified", verify_certificate(&g4, &g5, &cert)?);
    Ok(rep)
}

fn fermat_existence(opts: &Options) -> Result<Report, CliError> {
    let mut rep = Report::new("fermat-existence");
    let entry = catalog::fermat(opts.tower_budget)?;
    let k = entry.cubic.tower().clone();
    rep.holds("cubic is smooth and [1:-1:0] is a flex", entry.certify()?);
    let flexes = flex_points(&entry.cubic)?;
    let mut stated = Vec::new();
    for a in ["1", "w", "-w-1"] {
        stated.push(ProjPoint::parse(&k, &format!("-1:0:{a}"))?);
        stated.push(ProjPoint::parse(&k, &format!("0:-1:{a}"))?);
        stated.push(ProjPoint::parse(&k, &format!("-1:{a}:0"))?);
    }
    let mut all = flexes.len() == 9;
    for s in &stated {
        all &= flexes.iter().any(|f| f.family_size == 1 && f.point.eq_strict(s).unwrap_or(false));
    }
    rep.holds("the nine flexes [-1:0:a], [0:-1:a], [-1:a:0] with a^3 = 1", all);
    let e = entry.elliptic()?;
    let t1 = ProjPoint::parse(&k, "1:-w:0")?;
    rep.check("T1 + T1", "[1:-w^2:0]", if e.add(&t1, &t1)?.eq_strict(&ProjPoint::parse(&k, "1:w+1:0")?)? { "[1:-w^2:0]" } else { "other" });
    let mut lines: Vec<PlaneCurve> = tangents_through(&entry.cubic, &ProjPoint::parse(&k, "0:0:1")?)?.into_iter().map(|t| t.0).collect();
    lines.dedup();
    let want = ["x + y", "x + (-w-1) y", "x + w y"].map(|s| PlaneCurve::parse(&k, s).expect("line"));
    let set_ok = lines.len() == 3 && want.iter().all(|l| lines.contains(l));
    rep.holds("tangents through [0:0:1] are x+y, x+w^2 y, x+w y", set_ok);
    let lt1 = tangent_line(&entry.cubic, &t1)?;
    let l2t1 = tangent_line(&entry.cubic, &e.add(&t1, &t1)?)?;
    rep.check("L_T1 meets L_2T1 at", "[0:0:1]", if line_meet(&lt1, &l2t1)?.eq_strict(&ProjPoint::from_ints(&k, [0, 0, 1]))? { "[0:0:1]" } else { "other" });

    let w = recipes::fermat_witness(&entry)?;
    rep.check("order of the triangle vertex", 9, w.elliptic.order(&w.p, 9)?.unwrap_or(0));
    rep.holds("<3>P = T1", same(&w.elliptic.mul(3, &w.p)?, &w.t1)?);
    rep.holds("T2 is not in <T1>", w.elliptic.order(&w.t2, 3)? == Some(3) && !same(&w.t2, &w.t1)? && !same(&w.t2, &w.elliptic.add(&w.t1, &w.t1)?)?);
    rep.check("concurrent triples among L_T1, L_2T1, L_T2 and the triangle", 0, w.incidence.concurrent.len());
    rep.check("transversal line pairs", 15, w.incidence.transversal.len());
    rep.note(format!("T2 = {:?}; witness tower of depth {}", w.t2, w.elliptic.tower().depth()));
    Ok(rep)
}

fn clubsuit_instances(opts: &Options) -> Result<(EllipticStructure, ProjPoint, Vec<ClubsuitInstance>), CliError> {
    let (e, pts) = recipes::ec90c3_points(opts.tower_budget, &[4, 12])?;
    let mut inst = Vec::new();
    for p in &pts {
        inst.push(recipes::clubsuit_instance(&e, p, 2)?);
    }
    if opts.extended {
        for p in &pts {
            let (eh, h) = recipes::halve(&e, p)?;
            inst.push(recipes::clubsuit_instance(&eh, &h, 2)?);
        }
        inst.sort_by_key(|i| i.r);
    }
    Ok((e, pts[1].clone(), inst))
}

fn clubsuit_d2(opts: &Options) -> Result<Report, CliError> {
    let mut rep = Report::new("clubsuit-d2");
    let (e, p12, inst) = clubsuit_instances(opts)?;
    let labels = recipes::ec90c3_labels(&e, &p12)?;
    rep.check("rational torsion points of 90c3", 12, labels.len());
    let mut specs = Vec::new();
    let mut prints = Vec::new();
    for i in &inst {
        rep.check(&format!("order of P (r={})", i.r), i.r, i.elliptic.order(&i.p, 24)?.unwrap_or(0));
        rep.holds(&format!("(C, C1) = 5P + Q and (C, C2) = P + 5Q, transversal, no triple point (r={})", i.r), i.report.passed());
        let want = clubsuit_parameters(2, i.r).sum_order.unwrap_or(0);
        rep.check(&format!("ord(P+Q) (r={})", i.r), want, i.report.sum_order.unwrap_or(0));
        let rational = i.elliptic.tower().depth() == 0;
        let plus = i.plus(if rational { Some(&labels) } else { None })?;
        rep.check(&format!("n_(2,1) on C+ (r={})", i.r), 6, compute_na(&plus, &theta(&[2, 1]))?);
        rep.check(&format!("ord tau(2,1) on C+ (r={})", i.r), want, tau_order_o(&plus, &theta(&[2, 1]))?);
        let bigon = i.bigon(if rational { Some(&labels) } else { None })?;
        let b = tau_order_o(&bigon, &theta(&[1]))?;
        rep.note(format!("bi-gon C + C1 + C2 (r={}): ord tau(1) = ord(<3>(P+Q)) = {b}", i.r));
        specs.push(plus);
        prints.push(i.fingerprint_plus()?);
    }
    for x in 0..inst.len() {
        for y in x + 1..inst.len() {
            let adm = admissible_permutations(&prints[x], &prints[y]);
            rep.check(&format!("admissible relabelings r={} vs r={}", inst[x].r, inst[y].r), "[[0, 1]]", format!("{adm:?}"));
            if adm.is_empty() {
                continue;
            }
            let cert = distinguish(&specs[x], &specs[y], &adm)?;
            rep.check(&format!("distinguish(C+ r={}, C+ r={})", inst[x].r, inst[y].r), "multiset-witness", mode_name(&cert));
            rep.holds("certificate re-verified", verify_certificate(&specs[x], &specs[y], &cert)?);
            rep.certificates.push(cert);
        }
    }
    rep.note("on the bi-gon both r=4 and r=12 give order 1; the pair is separated on C + L_O + C1 + C2");
    Ok(rep)
}

fn clubsuit_tables() -> Report {
    let mut rep = Report::new("clubsuit-tables");
    for (d, rows) in [(2u64, vec![(4u64, 1u64), (8, 2), (12, 3), (24, 6)]), (3, vec![(7, 1), (21, 3), (63, 9)])] {
        for (r, o) in rows {
            rep.check(&format!("d={d} r={r}: ord(P+Q)"), o, clubsuit_parameters(d, r).sum_order.unwrap_or(0));
        }
        let rejected = (1..=3 * d).filter(|r| (3 * d) % r == 0).all(|r| !clubsuit_parameters(d, r).valid);
        rep.holds(&format!("d={d}: every r dividing {} rejected", 3 * d), rejected);
        rep.check(&format!("d={d}: all valid r"), format!("{:?}", if d == 2 { vec![4, 8, 12, 24] } else { vec![7, 21, 63] }), format!("{:?}", crate::torsion_invariants::clubsuit_orders(d)));
    }
    rep
}

fn cyclic_triangle(opts: &Options) -> Result<Report, CliError> {
    let mut rep = Report::new("cyclic-triangle");
    let entry = catalog::cyclic(opts.tower_budget)?;
    let q = entry.cubic.tower().clone();
    let coords = [[1, 0, 0], [0, 1, 0], [0, 0, 1]].map(|v| ProjPoint::from_ints(&q, v));
    let families = flex_points(&entry.cubic)?;
    for (i, f) in families.iter().enumerate() {
        let e = EllipticStructure::new(&entry.cubic.map(&f.map), &f.point)?;
        let orders: Vec<u64> = coords.iter().map(|p| Ok(e.order(&p.lift_to(e.tower()), 9)?.unwrap_or(0))).collect::<Result<_, CliError>>()?;
        rep.check(&format!("orders of the coordinate points, origin in flex family {} (size {})", i + 1, f.family_size), "[9, 9, 9]", format!("{orders:?}"));
    }
    let e = entry.elliptic()?;
    let p = coords[0].lift_to(e.tower());
    let tri = triangle_through(&e, &p)?;
    let chain = [e.mul(-2, &p)?, e.mul(4, &p)?];
    rep.holds("residual chain P -> <-2>P -> <4>P -> P closes", same(&tri.vertices[1], &chain[0])? && same(&tri.vertices[2], &chain[1])?);
    rep.holds("triangle through [1:0:0] is xyz = 0", proportional(&tri.curve(), &PlaneCurve::parse(&q, "x y z")?)?);

    let kb = q.extend("b", &UniPoly::from_ints(&q, &recipes::BETA_MINPOLY))?;
    rep.holds("L1' meets the cubic in three triple points", recipes::triangle_lines(&entry.cubic.lift_to(&kb), &PlaneCurve::parse(&kb, recipes::L1_PRIME)?).is_ok());
    rep.holds("L2 meets the cubic in three triple points", recipes::triangle_lines(&entry.cubic, &PlaneCurve::parse(&q, recipes::L2)?).is_ok());
    let ku = q.extend("u", &UniPoly::from_ints(&q, &recipes::U_MINPOLY))?;
    let l3 = PlaneCurve::parse(&ku, recipes::L3)?;
    let ips = crate::curve_geometry::intersection_points(&entry.cubic.lift_to(&ku), &l3)?;
    let pattern: Vec<(u32, usize)> = ips.iter().map(|ip| (ip.multiplicity, ip.family_size)).collect();
    rep.check("L3 meets the cubic in one conjugate triple of triple points", "[(3, 3)]", format!("{pattern:?}"));
    if !opts.extended {
        rep.note("the class of L3 lives over a degree-162 tower; run with --extended to compute it");
        return Ok(rep);
    }
    // the vertex tower already contains a flex, so the class is taken there
    let big = q.clone().with_budget(opts.tower_budget.max(162)).extend("u", &UniPoly::from_ints(&q, &recipes::U_MINPOLY))?;
    let ips = crate::curve_geometry::intersection_points(&entry.cubic.lift_to(&big), &l3.lift_to(&big))?;
    let v = &ips[0];
    let ct = entry.cubic.lift_to(v.point.tower());
    let fl = flex_points(&ct)?;
    let fo = &fl[0];
    let e = EllipticStructure::with_certified_cubic(&ct.map(&fo.map), &fo.point)?;
    let t = e.mul(3, &coords[0].lift_to(e.tower()))?;
    let k3 = e.mul(3, &v.point.map(&fo.map).lift_to(e.tower()))?;
    let span = [e.origin().clone(), t.clone(), e.add(&t, &t)?];
    let mut outside = true;
    for s in &span {
        outside &= !same(&k3, s)?;
    }
    rep.check("degree of the tower carrying the class of L3", 162, e.tower().degree());
    rep.holds("class of L3 lies outside the span of the class of xyz", outside);
    Ok(rep)
}
