use std::fmt;

use super::check_incidence;
use crate::curve_geometry::{intersection_multiplicity, intersection_points, is_smooth, EllipticStructure, GeomError, PlaneCurve, ProjPoint};

#[derive(Clone, Debug)]
pub struct Clause {
    pub name: String,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct ClubsuitReport {
    pub degree: u32,
    pub clauses: Vec<Clause>,
    pub p: Option<ProjPoint>,
    pub q: Option<ProjPoint>,
    /// Order of `P + Q` for the structure's origin.
    pub sum_order: Option<u64>,
}

impl ClubsuitReport {
    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|c| c.pass)
    }
}

impl fmt::Display for ClubsuitReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.clauses {
            writeln!(f, "  [{}] {}", if c.pass { "pass" } else { "FAIL" }, c.name)?;
        }
        match self.sum_order {
            Some(o) => write!(f, "  ord(P+Q) = {o}"),
            None => write!(f, "  ord(P+Q) undetermined"),
        }
    }
}

/// Points of `cubic ∩ c` with multiplicities, all defined over one field.
fn support(cubic: &PlaneCurve, c: &PlaneCurve) -> Result<Option<Vec<(ProjPoint, u32)>>, GeomError> {
    let ips = match intersection_points(cubic, c) {
        Ok(v) => v,
        Err(GeomError::CommonComponent) => return Ok(None),
        Err(e) => return Err(e),
    };
    if ips.iter().any(|ip| ip.family_size != 1) {
        return Ok(None);
    }
    Ok(Some(ips.into_iter().map(|ip| (ip.point, ip.multiplicity)).collect()))
}

fn same(a: &ProjPoint, b: &ProjPoint) -> Result<bool, GeomError> {
    let tw = super::deepest([a.tower(), b.tower()])?;
    Ok(a.lift_to(&tw).eq_strict(&b.lift_to(&tw))?)
}

/// Check the two-point configuration: `C1`, `C2` of degree `d` meet the
/// cubic only at `P ≠ Q`, with `(C,C1)_P = (C,C2)_Q = 3d-1` and
/// `(C,C2)_P = (C,C1)_Q = 1`; plus smoothness of `C1`, `C2`, `l0` being an
/// inflectional tangent, pairwise transversality of `l0, C1, C2` and no
/// common point of all three.
pub fn verify_clubsuit(e: &EllipticStructure, c1: &PlaneCurve, c2: &PlaneCurve, l0: &PlaneCurve) -> Result<ClubsuitReport, GeomError> {
    let cubic = e.cubic();
    let d = c1.degree();
    let big = 3 * d - 1;
    let mut clauses = Vec::new();
    let mut push = |name: String, pass: bool| clauses.push(Clause { name, pass });
    push(format!("C1 and C2 have degree {d} >= 2"), d >= 2 && c2.degree() == d);
    push("C1 and C2 are smooth".into(), is_smooth(c1)? && is_smooth(c2)?);

    let (s1, s2) = (support(cubic, c1)?, support(cubic, c2)?);
    let p = s1.as_ref().and_then(|s| s.iter().find(|(_, k)| *k == big).map(|x| x.0.clone()));
    let q = s2.as_ref().and_then(|s| s.iter().find(|(_, k)| *k == big).map(|x| x.0.clone()));
    let (mut two_points, mut m1p, mut m2q, mut m2p, mut m1q) = (false, false, false, false, false);
    if let (Some(p), Some(q), Some(s1), Some(s2)) = (&p, &q, &s1, &s2) {
        let on_pq = |s: &[(ProjPoint, u32)]| -> Result<bool, GeomError> {
            for (x, _) in s {
                if !same(x, p)? && !same(x, q)? {
                    return Ok(false);
                }
            }
            Ok(true)
        };
        two_points = !same(p, q)? && on_pq(s1)? && on_pq(s2)?;
        let mult = |c: &PlaneCurve, x: &ProjPoint| -> Result<u32, GeomError> {
            let tw = super::deepest([c.tower(), x.tower(), cubic.tower()])?;
            intersection_multiplicity(&cubic.lift_to(&tw), &c.lift_to(&tw), &x.lift_to(&tw))
        };
        m1p = mult(c1, p)? == big;
        m2q = mult(c2, q)? == big;
        m2p = mult(c2, p)? == 1;
        m1q = mult(c1, q)? == 1;
    }
    push("C ∩ C1 ∩ C2 = {P, Q} with P ≠ Q".into(), two_points);
    push(format!("(C, C1)_P = {big}"), m1p);
    push(format!("(C, C2)_Q = {big}"), m2q);
    push("(C, C2)_P = 1".into(), m2p);
    push("(C, C1)_Q = 1".into(), m1q);

    let flex_tangent = l0.degree() == 1 && support(cubic, l0)?.is_some_and(|s| s.len() == 1 && s[0].1 == 3);
    push("L0 is an inflectional tangent".into(), flex_tangent);
    let inc = check_incidence(&[l0.clone(), c1.clone(), c2.clone()])?;
    let transversal = [(0, 1), (0, 2), (1, 2)].iter().all(|&(i, j)| inc.meets_transversally(i, j));
    push("L0, C1, C2 meet pairwise transversally".into(), transversal);
    push("L0 ∩ C1 ∩ C2 = ∅".into(), inc.concurrent.is_empty() && inc.common_components.is_empty());

    let sum_order = match (&p, &q) {
        (Some(p), Some(q)) if two_points => {
            let tw = super::deepest([p.tower(), q.tower(), e.tower()])?;
            let e = e.lift_to(&tw);
            e.order(&e.add(&p.lift_to(&tw), &q.lift_to(&tw))?, 3 * d as u64)?
        }
        _ => None,
    };
    Ok(ClubsuitReport { degree: d, clauses, p, q, sum_order })
}
