//! The curve backend: torsion points as actual points of the cubic, summed
//! with the chord-tangent law.

use num_integer::Integer;

use super::lattice::TorsionClass;
use super::spec::{ArrangementSpec, ComponentData, ThetaVector};
use super::tau::compute_na;
use super::InvariantError;
use crate::curve_geometry::{intersection_points, tangent_line, EllipticStructure, GeomError, PlaneCurve, ProjPoint};
use crate::exact_fields::FieldTower;

/// Deepest of the given towers, provided they form a chain.
pub fn common_tower<'a>(towers: impl IntoIterator<Item = &'a FieldTower>) -> Result<FieldTower, InvariantError> {
    let mut best: Option<FieldTower> = None;
    for t in towers {
        best = Some(match best {
            None => t.clone(),
            Some(b) if b.extends(t) => b,
            Some(b) if t.extends(&b) => t.clone(),
            Some(_) => return Err(InvariantError::Unsupported("points live in unrelated extensions".into())),
        });
    }
    Ok(best.expect("at least one tower"))
}

#[derive(Clone, Debug)]
pub struct GeometricArrangement {
    pub elliptic: EllipticStructure,
    pub components: Vec<PlaneCurve>,
    /// Points of each component on the cubic with local intersection numbers.
    pub divisors: Vec<Vec<(ProjPoint, u32)>>,
}

fn divisor_of(e: &EllipticStructure, comp: &PlaneCurve) -> Result<Vec<(ProjPoint, u32)>, InvariantError> {
    let mut out: Vec<(ProjPoint, u32)> = Vec::new();
    for part in comp.parts() {
        for ip in intersection_points(e.cubic(), &part)? {
            if ip.family_size != 1 {
                return Err(InvariantError::Unsupported(format!(
                    "a conjugate family of {} points; adjoin it to the arrangement's field first",
                    ip.family_size
                )));
            }
            let mut merged = false;
            for (q, k) in out.iter_mut() {
                let t = common_tower([q.tower(), ip.point.tower()])?;
                if q.lift_to(&t).eq_strict(&ip.point.lift_to(&t)).map_err(GeomError::from)? {
                    *k += ip.multiplicity;
                    merged = true;
                    break;
                }
            }
            if !merged {
                out.push((ip.point, ip.multiplicity));
            }
        }
    }
    Ok(out)
}

impl GeometricArrangement {
    pub fn new(e: &EllipticStructure, components: Vec<PlaneCurve>) -> Result<GeometricArrangement, InvariantError> {
        let divisors = components.iter().map(|c| divisor_of(e, c)).collect::<Result<Vec<_>, _>>()?;
        let towers: Vec<&FieldTower> = divisors.iter().flatten().map(|(p, _)| p.tower()).collect();
        let tw = common_tower(towers.into_iter().chain([e.tower()]))?;
        Ok(GeometricArrangement { elliptic: e.lift_to(&tw), components, divisors })
    }

    /// The same curves with another flex as origin.
    pub fn with_origin(&self, o: &ProjPoint) -> Result<GeometricArrangement, InvariantError> {
        let tw = common_tower([self.elliptic.tower(), o.tower()])?;
        Ok(GeometricArrangement {
            elliptic: self.elliptic.lift_to(&tw).with_origin(&o.lift_to(&tw))?,
            components: self.components.clone(),
            divisors: self.divisors.clone(),
        })
    }

    pub fn tower(&self) -> &FieldTower {
        self.elliptic.tower()
    }

    pub fn m(&self, j: usize) -> u64 {
        self.divisors[j].iter().fold(0u64, |g, (_, k)| g.gcd(&(*k as u64)))
    }

    pub fn degree(&self, j: usize) -> u64 {
        self.components[j].degree() as u64
    }

    /// `P^O_j = Σ <(C, C_j)_P / m_j> P`.
    pub fn p_o(&self, j: usize) -> Result<ProjPoint, InvariantError> {
        let e = &self.elliptic;
        let m = self.m(j);
        let mut acc = e.origin().clone();
        for (p, k) in &self.divisors[j] {
            let q = e.mul(*k as i64 / m as i64, &p.lift_to(self.tower()))?;
            acc = e.add(&acc, &q)?;
        }
        Ok(acc)
    }

    /// `τ^O(a) = Σ <a_j m_j / n_a> P^O_j` as a point.
    pub fn tau_point(&self, spec: &ArrangementSpec, a: &ThetaVector) -> Result<ProjPoint, InvariantError> {
        let na = compute_na(spec, a)? as i64;
        let e = &self.elliptic;
        let mut acc = e.origin().clone();
        for (j, &x) in a.entries().iter().enumerate() {
            let k = x * self.m(j) as i64 / na;
            if k % self.m(j) as i64 == 0 {
                continue;
            }
            acc = e.add(&acc, &e.mul(k, &self.p_o(j)?)?)?;
        }
        Ok(acc)
    }

    pub fn tau_order(&self, spec: &ArrangementSpec, a: &ThetaVector) -> Result<u64, InvariantError> {
        let na = compute_na(spec, a)?;
        let p = self.tau_point(spec, a)?;
        self.elliptic.order(&p, na)?.ok_or_else(|| {
            InvariantError::Unsupported(format!("τ({:?}) has order above n_a = {na}; the divisor data is inconsistent", a.entries()))
        })
    }

    /// Abstract data of the arrangement. With `labels`, each point of every
    /// divisor must be listed with its lattice class and the component
    /// classes `Σ (mult/m_j) class(P)` are filled in.
    pub fn to_spec(&self, name: &str, labels: Option<&[(ProjPoint, TorsionClass)]>) -> Result<ArrangementSpec, InvariantError> {
        let mut ids: Vec<ProjPoint> = Vec::new();
        let mut components = Vec::new();
        for (j, div) in self.divisors.iter().enumerate() {
            let m = self.m(j);
            let mut divisor = Vec::new();
            let mut class: Option<TorsionClass> = None;
            for (p, k) in div {
                let p = p.lift_to(self.tower());
                let id = match ids.iter().position(|q| q.eq_strict(&p).unwrap_or(false)) {
                    Some(i) => i,
                    None => {
                        ids.push(p.clone());
                        ids.len() - 1
                    }
                };
                divisor.push((format!("P{}", id + 1), *k as u64));
                if let Some(ls) = labels {
                    let t = label_of(ls, &p, self.tower())?;
                    let term = t.scale((*k as u64 / m) as i64);
                    class = Some(match class {
                        None => term,
                        Some(c) => c.add(&term)?,
                    });
                }
            }
            components.push(ComponentData { degree: self.degree(j), m, class, divisor });
        }
        let mut spec = ArrangementSpec::new(name, 3, components)?;
        spec.geometric = Some(self.clone());
        Ok(spec)
    }
}

fn label_of(labels: &[(ProjPoint, TorsionClass)], p: &ProjPoint, tw: &FieldTower) -> Result<TorsionClass, InvariantError> {
    for (q, t) in labels {
        let t2 = common_tower([tw, q.tower()])?;
        if q.lift_to(&t2).eq_strict(&p.lift_to(&t2)).map_err(GeomError::from)? {
            return Ok(*t);
        }
    }
    Err(InvariantError::Unsupported(format!("no lattice label for the point {p:?}")))
}

/// Labels for every point of the subgroup generated by labelled points,
/// found by closing under addition.
pub fn label_span(
    e: &EllipticStructure,
    gens: &[(ProjPoint, TorsionClass)],
    modulus: u64,
) -> Result<Vec<(ProjPoint, TorsionClass)>, InvariantError> {
    let mut out: Vec<(ProjPoint, TorsionClass)> = vec![(e.origin().clone(), TorsionClass::zero(modulus))];
    let mut i = 0;
    while i < out.len() {
        let (p, t) = out[i].clone();
        for (g, tg) in gens {
            let q = e.add(&p, g)?;
            let tq = t.add(tg)?;
            let mut known = false;
            for (r, tr) in &out {
                if r.eq_strict(&q).map_err(GeomError::from)? {
                    if *tr != tq {
                        return Err(InvariantError::Malformed("labels are inconsistent with the group law".into()));
                    }
                    known = true;
                    break;
                }
            }
            if !known {
                out.push((q, tq));
            }
        }
        i += 1;
    }
    Ok(out)
}

/// A triangle on an actual cubic.
#[derive(Clone, Debug)]
pub struct GeometricTriangle {
    pub vertices: [ProjPoint; 3],
    pub lines: [PlaneCurve; 3],
    /// `<3>P`, the associated 3-torsion point.
    pub class_point: ProjPoint,
}

impl GeometricTriangle {
    pub fn curve(&self) -> PlaneCurve {
        PlaneCurve::product(&self.lines)
    }
}

/// Follow tangent residuals `P → P' → P'' → P'''`; a triangle exists when the
/// chain closes at a point which is not a flex.
pub fn triangle_through(e: &EllipticStructure, p: &ProjPoint) -> Result<GeometricTriangle, InvariantError> {
    if e.is_flex(p)? {
        return Err(InvariantError::WrongOrder { expected: 9, found: 3 });
    }
    let mut v = vec![p.clone()];
    let mut lines = Vec::new();
    for _ in 0..3 {
        let q = v.last().unwrap().clone();
        let l = tangent_line(e.cubic(), &q)?;
        v.push(e.line_cubic_residual(&l, &q, &q)?);
        lines.push(l);
    }
    if !v[3].eq_strict(&v[0]).map_err(GeomError::from)? {
        let found = e.order(p, 9)?.unwrap_or(0);
        return Err(InvariantError::WrongOrder { expected: 9, found });
    }
    let class_point = e.mul(3, p)?;
    Ok(GeometricTriangle {
        vertices: [v[0].clone(), v[1].clone(), v[2].clone()],
        lines: [lines[0].clone(), lines[1].clone(), lines[2].clone()],
        class_point,
    })
}
