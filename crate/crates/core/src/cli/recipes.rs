//! Constructions of the arrangements: abstract lattice models and, where the
//! catalog allows, the actual curves.

use crate::arrangement_combinatorics::{
    admissible_permutations, check_incidence, fingerprint, verify_clubsuit, ClubsuitReport, Fingerprint, IncidenceReport,
};
use crate::curve_geometry::{
    flex_points, interpolate_curve_with_divisor, intersection_points, normalize_line, tangent_line, tangent_residual,
    EllipticStructure, GeomError, PlaneCurve, ProjPoint,
};
use crate::torsion_invariants::{
    label_span, triangle_through, ArrangementSpec, ComponentData, GeometricArrangement, GeometricTriangle, TorsionClass,
};

use super::catalog::{ec90c3_weierstrass, CatalogEntry};
use super::CliError;

/// `T1 = (3, 0)` and `T2 = (0, 3)` in `(Z/9)²`.
pub fn lattice_t1() -> TorsionClass {
    TorsionClass::new(9, 3, 0)
}

pub fn lattice_t2() -> TorsionClass {
    TorsionClass::new(9, 0, 3)
}

/// Two triangles with classes `(T1, T1)`, `(T1, 2T1)`, `(T1, T2)`.
pub fn two_triangles_specs() -> [ArrangementSpec; 3] {
    let tri = |c| ComponentData::new(3, 3, c);
    let (t1, t2) = (lattice_t1(), lattice_t2());
    [
        ArrangementSpec::new("C1", 3, vec![tri(t1), tri(t1)]).expect("valid"),
        ArrangementSpec::new("C2", 3, vec![tri(t1), tri(t1.scale(2))]).expect("valid"),
        ArrangementSpec::new("C3", 3, vec![tri(t1), tri(t2)]).expect("valid"),
    ]
}

/// Two flex tangents and a triangle: `(T1, 2T1, T1)` and `(T1, T2, T1)`.
pub fn tangents_triangle_specs() -> [ArrangementSpec; 2] {
    let line = |c| ComponentData::new(1, 3, c);
    let tri = |c| ComponentData::new(3, 3, c);
    let (t1, t2) = (lattice_t1(), lattice_t2());
    [
        ArrangementSpec::new("C4", 3, vec![line(t1), line(t1.scale(2)), tri(t1)]).expect("valid"),
        ArrangementSpec::new("C5", 3, vec![line(t1), line(t2), tri(t1)]).expect("valid"),
    ]
}

/// Identity and the transposition of the first two components.
pub fn swap12(k: usize) -> Vec<Vec<usize>> {
    let mut s: Vec<usize> = (0..k).collect();
    s.swap(0, 1);
    vec![(0..k).collect(), s]
}

fn points_eq(a: &ProjPoint, b: &ProjPoint) -> Result<bool, GeomError> {
    let tw = if a.tower().depth() >= b.tower().depth() { a.tower().clone() } else { b.tower().clone() };
    Ok(a.lift_to(&tw).eq_strict(&b.lift_to(&tw))?)
}

/// Equality of curves up to a nonzero scalar.
pub fn proportional(a: &PlaneCurve, b: &PlaneCurve) -> Result<bool, GeomError> {
    if a.degree() != b.degree() {
        return Ok(false);
    }
    let tw = if a.tower().depth() >= b.tower().depth() { a.tower().clone() } else { b.tower().clone() };
    let (a, b) = (a.lift_to(&tw), b.lift_to(&tw));
    let Some((m, c)) = a.terms().find(|(_, c)| !c.is_zero()).map(|(m, c)| (*m, c.clone())) else {
        return Ok(b.is_zero());
    };
    let d = b.coeff(m);
    if d.is_zero_strict()? {
        return Ok(false);
    }
    let diff = &a.scale(&d) - &b.scale(&c);
    for (_, x) in diff.terms() {
        if !x.is_zero_strict()? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Split a triangle given by one cubic form into its three lines, following
/// tangent residuals from a vertex. Checks the lines multiply back to `tri`.
pub fn triangle_lines(cubic: &PlaneCurve, tri: &PlaneCurve) -> Result<[PlaneCurve; 3], CliError> {
    let ips = intersection_points(cubic, tri)?;
    if ips.iter().any(|ip| ip.multiplicity != 3) {
        return Err(CliError::Check("the curve meets the cubic away from three triple points".into()));
    }
    let v0 = ips[0].point.clone();
    let c = cubic.map(&ips[0].map);
    let mut v = v0.clone();
    let mut lines = Vec::new();
    for _ in 0..3 {
        lines.push(tangent_line(&c, &v)?);
        v = tangent_residual(&c, &v)?;
    }
    if !points_eq(&v, &v0)? {
        return Err(CliError::Check("the tangent chain does not close".into()));
    }
    let lines = [lines[0].clone(), lines[1].clone(), lines[2].clone()];
    if !proportional(&PlaneCurve::product(&lines), tri)? {
        return Err(CliError::Check("tangent lines do not multiply to the given triangle".into()));
    }
    Ok(lines)
}

// ---------------------------------------------------------------------------
// Fermat

#[derive(Clone, Debug)]
pub struct FermatWitness {
    pub elliptic: EllipticStructure,
    pub t1: ProjPoint,
    pub t2: ProjPoint,
    /// A point of order 9 with `<3>P = T1`.
    pub p: ProjPoint,
    pub l_t1: PlaneCurve,
    pub l_2t1: PlaneCurve,
    pub l_t2: PlaneCurve,
    pub triangle: GeometricTriangle,
    /// Incidences among the six lines.
    pub incidence: IncidenceReport,
    pub labels: Vec<(ProjPoint, TorsionClass)>,
}

/// `T1 = [1:-w:0]`, a triangle of class `T1` through a point over a cubic
/// extension, and `T2` among the other flexes, chosen so that no three of
/// the six lines meet.
pub fn fermat_witness(entry: &CatalogEntry) -> Result<FermatWitness, CliError> {
    let e0 = entry.elliptic()?;
    let k = e0.tower().clone();
    let t1 = ProjPoint::parse(&k, "1:-w:0")?;
    let t21 = e0.add(&t1, &t1)?;
    let flexes = flex_points(e0.cubic())?;
    let mut candidates = Vec::new();
    for f in &flexes {
        let p = f.point.lift_to(&k);
        if !points_eq(&p, e0.origin())? && !points_eq(&p, &t1)? && !points_eq(&p, &t21)? {
            candidates.push(p);
        }
    }
    for (p, map) in e0.division_points(3, &t1)? {
        let e = e0.map(&map);
        let triangle = triangle_through(&e, &p)?;
        let (t1, t21) = (t1.map(&map), t21.map(&map));
        let (l_t1, l_2t1) = (tangent_line(e.cubic(), &t1)?, tangent_line(e.cubic(), &t21)?);
        for t2 in &candidates {
            let t2 = t2.map(&map);
            let l_t2 = tangent_line(e.cubic(), &t2)?;
            let mut lines = vec![l_t1.clone(), l_2t1.clone(), l_t2.clone()];
            lines.extend(triangle.lines.iter().cloned());
            let incidence = check_incidence(&lines)?;
            if !incidence.general_position() {
                continue;
            }
            let labels = label_span(&e, &[(p.clone(), TorsionClass::new(9, 1, 0)), (t2.clone(), lattice_t2())], 9)?;
            return Ok(FermatWitness { elliptic: e, t1, t2, p: p.clone(), l_t1, l_2t1, l_t2, triangle, incidence, labels });
        }
    }
    Err(CliError::Check("no triangle and flex give six lines in general position".into()))
}

impl FermatWitness {
    fn arrangement(&self, second: &PlaneCurve, name: &str) -> Result<ArrangementSpec, CliError> {
        let comps = vec![self.l_t1.clone(), second.clone(), self.triangle.curve()];
        let g = GeometricArrangement::new(&self.elliptic, comps)?;
        Ok(g.to_spec(name, Some(&self.labels))?)
    }

    /// `L_T1 + L_2T1 + triangle`, both backends attached.
    pub fn c4(&self) -> Result<ArrangementSpec, CliError> {
        self.arrangement(&self.l_2t1, "C4")
    }

    /// `L_T1 + L_T2 + triangle`.
    pub fn c5(&self) -> Result<ArrangementSpec, CliError> {
        self.arrangement(&self.l_t2, "C5")
    }

    pub fn fingerprints(&self) -> Result<(Fingerprint, Fingerprint), CliError> {
        let cubic = self.elliptic.cubic();
        let tri = self.triangle.curve();
        let f4 = fingerprint(cubic, &[self.l_t1.clone(), self.l_2t1.clone(), tri.clone()])?;
        let f5 = fingerprint(cubic, &[self.l_t1.clone(), self.l_t2.clone(), tri])?;
        Ok((f4, f5))
    }

    pub fn admissible(&self) -> Result<Vec<Vec<usize>>, CliError> {
        let (f4, f5) = self.fingerprints()?;
        Ok(admissible_permutations(&f4, &f5))
    }

    /// Every flex of the cubic, over the witness field.
    pub fn flexes(&self) -> Result<Vec<ProjPoint>, CliError> {
        let tw = self.elliptic.tower();
        Ok(flex_points(self.elliptic.cubic())?.into_iter().map(|f| f.point.lift_to(tw)).collect())
    }
}

// ---------------------------------------------------------------------------
// Cyclic cubic

#[derive(Clone, Debug)]
pub struct CyclicTriangles {
    pub cubic: PlaneCurve,
    /// `xyz`, `x³+y³+z³+βxyz` and the rational triangle, split into lines.
    pub l1: [PlaneCurve; 3],
    pub l1_prime: [PlaneCurve; 3],
    pub l2: [PlaneCurve; 3],
}

pub const L1_PRIME: &str = "x^3 + y^3 + z^3 + b x y z";
pub const L2: &str = "x^3 - 3 x y^2 + y^3 - 3 x^2 z - 3 x y z - 3 y z^2 + z^3";

/// The triangle over the sextic field `Q(u)`.
pub const L3: &str = "(u) x^3 + (11836/51219 u^5 + 995026/51219 u^4 + 26024155/51219 u^3 - 142942/7317 u^2 - 272470/51219 u - 38320/51219) x^2 y \
 + (12833/17073 u^5 + 1076900/17073 u^4 + 28052858/17073 u^3 - 766769/2439 u^2 - 391100/17073 u + 82429/17073) x y^2 \
 + (4399/17073 u^5 + 369490/17073 u^4 + 9644752/17073 u^3 - 157303/2439 u^2 - 474916/17073 u + 65078/17073) y^3 \
 + (59/271 u^5 + 14924/813 u^4 + 392872/813 u^3 + 27197/271 u^2 - 12053/813 u - 2500/813) x^2 z \
 + (-4399/17073 u^5 - 369490/17073 u^4 - 9644752/17073 u^3 + 157303/2439 u^2 + 457843/17073 u - 82151/17073) x y z \
 + (25987/51219 u^5 + 2177044/51219 u^4 + 56497537/51219 u^3 - 2705659/7317 u^2 + 840755/51219 u + 120014/51219) y^2 z \
 + (-35768/51219 u^5 - 3007628/51219 u^4 - 78702035/51219 u^3 + 216818/7317 u^2 + 1045979/51219 u + 122189/51219) x z^2 \
 + (-16550/17073 u^5 - 1390304/17073 u^4 - 36303170/17073 u^3 + 521996/2439 u^2 + 644213/17073 u - 29929/17073) y z^2 + z^3";

/// Minimal polynomial of `β`, lowest coefficient first.
pub const BETA_MINPOLY: [i64; 3] = [9, -3, 1];
/// Minimal polynomial of `u`.
pub const U_MINPOLY: [i64; 7] = [1, 3, -75, -236, 2193, 84, 1];

pub fn cyclic_triangles(entry: &CatalogEntry) -> Result<CyclicTriangles, CliError> {
    use crate::exact_fields::UniPoly;
    let q = entry.cubic.tower().clone();
    let c = entry.cubic.clone();
    let kb = q.extend("b", &UniPoly::from_ints(&q, &BETA_MINPOLY))?;
    let l1 = triangle_lines(&c, &PlaneCurve::parse(&q, "x y z")?)?;
    let l1_prime = triangle_lines(&c.lift_to(&kb), &PlaneCurve::parse(&kb, L1_PRIME)?)?;
    let l2 = triangle_lines(&c, &PlaneCurve::parse(&q, L2)?)?;
    Ok(CyclicTriangles { cubic: c, l1, l1_prime, l2 })
}

/// Class `<3>v` of the triangle with vertex `v`, given an origin.
pub fn triangle_class(e: &EllipticStructure, lines: &[PlaneCurve; 3]) -> Result<ProjPoint, CliError> {
    let tw = if lines[0].tower().depth() > e.tower().depth() { lines[0].tower().clone() } else { e.tower().clone() };
    let e = e.lift_to(&tw);
    let ips = intersection_points(e.cubic(), &lines[0].lift_to(&tw))?;
    let v = ips.iter().find(|ip| ip.multiplicity == 2).ok_or(GeomError::NoSolution)?;
    Ok(e.map(&v.map).mul(3, &v.point)?)
}

/// Normalized line through two points.
pub fn line(p: &ProjPoint, q: &ProjPoint) -> Result<PlaneCurve, CliError> {
    Ok(normalize_line(&crate::curve_geometry::line_through(p, q)?)?)
}

// ---------------------------------------------------------------------------
// Two-point configurations on 90c3

#[derive(Clone, Debug)]
pub struct ClubsuitInstance {
    pub r: u64,
    pub elliptic: EllipticStructure,
    pub p: ProjPoint,
    pub q: ProjPoint,
    pub c1: PlaneCurve,
    pub c2: PlaneCurve,
    pub l0: PlaneCurve,
    pub report: ClubsuitReport,
}

/// `Q = <-(3d-1)>P`, `C1` with divisor `(3d-1)P + Q` and `C2` with
/// `P + (3d-1)Q`, and the tangent at the origin.
pub fn clubsuit_instance(e: &EllipticStructure, p: &ProjPoint, d: u32) -> Result<ClubsuitInstance, CliError> {
    let tw = if p.tower().depth() > e.tower().depth() { p.tower().clone() } else { e.tower().clone() };
    let e = e.lift_to(&tw);
    let p = p.lift_to(&tw);
    let r = e.order(&p, 1000)?.ok_or_else(|| CliError::Check("point is not torsion of small order".into()))?;
    let big = 3 * d - 1;
    let q = e.mul(-(big as i64), &p)?;
    let c1 = interpolate_curve_with_divisor(&e, &[(p.clone(), big), (q.clone(), 1)], d)?;
    let c2 = interpolate_curve_with_divisor(&e, &[(p.clone(), 1), (q.clone(), big)], d)?;
    let l0 = tangent_line(e.cubic(), e.origin())?;
    let report = verify_clubsuit(&e, &c1, &c2, &l0)?;
    Ok(ClubsuitInstance { r, elliptic: e, p, q, c1, c2, l0, report })
}

impl ClubsuitInstance {
    /// `C + L_O + C1 + C2` with components `(L_O, C1 + C2)`.
    pub fn plus(&self, labels: Option<&[(ProjPoint, TorsionClass)]>) -> Result<ArrangementSpec, CliError> {
        let conics = PlaneCurve::product(&[self.c1.clone(), self.c2.clone()]);
        let g = GeometricArrangement::new(&self.elliptic, vec![self.l0.clone(), conics])?;
        Ok(g.to_spec(&format!("C+ r={}", self.r), labels)?)
    }

    /// `C + C1 + C2` with the single component `C1 + C2`.
    pub fn bigon(&self, labels: Option<&[(ProjPoint, TorsionClass)]>) -> Result<ArrangementSpec, CliError> {
        let conics = PlaneCurve::product(&[self.c1.clone(), self.c2.clone()]);
        let g = GeometricArrangement::new(&self.elliptic, vec![conics])?;
        Ok(g.to_spec(&format!("C r={}", self.r), labels)?)
    }

    pub fn fingerprint_plus(&self) -> Result<Fingerprint, CliError> {
        let conics = PlaneCurve::product(&[self.c1.clone(), self.c2.clone()]);
        Ok(fingerprint(self.elliptic.cubic(), &[self.l0.clone(), conics])?)
    }
}

/// The 90c3 structure with origin `[0:1:0]` and one rational point of each
/// requested order (first in x order).
pub fn ec90c3_points(budget: usize, orders: &[u64]) -> Result<(EllipticStructure, Vec<ProjPoint>), CliError> {
    let w = ec90c3_weierstrass(budget);
    let e = w.elliptic()?;
    let pts = w.rational_torsion_points(12)?;
    let mut out = Vec::new();
    for &n in orders {
        let mut found = None;
        for p in &pts {
            if e.order(p, 12)? == Some(n) {
                found = Some(p.clone());
                break;
            }
        }
        out.push(found.ok_or_else(|| CliError::Check(format!("no rational point of order {n}")))?);
    }
    Ok((e, out))
}

/// A point `R` with `2R = P` over a quartic extension, for the even orders.
pub fn halve(e: &EllipticStructure, p: &ProjPoint) -> Result<(EllipticStructure, ProjPoint), CliError> {
    let (r, map) = e.division_points(2, p)?.into_iter().next().ok_or(GeomError::NoSolution)?;
    Ok((e.map(&map), r))
}

/// Lattice labels for the rational torsion of 90c3, generated by a point of
/// order 12 labelled `(1, 0)`.
pub fn ec90c3_labels(e: &EllipticStructure, p12: &ProjPoint) -> Result<Vec<(ProjPoint, TorsionClass)>, CliError> {
    Ok(label_span(e, &[(p12.clone(), TorsionClass::new(12, 1, 0))], 12)?)
}
