use super::curve::PlaneCurve;
use super::point::{cross, ProjPoint};
use super::weierstrass::Weierstrass;
use super::{is_smooth, tangent_line, GeomError};
use crate::exact_fields::{Elem, FieldTower, TowerMap};

type Matrix = [[Elem; 3]; 3];

fn apply(m: &Matrix, p: &ProjPoint) -> Result<ProjPoint, GeomError> {
    let tw = deeper(m[0][0].tower(), p.tower());
    let c = p.lift_to(&tw);
    let row = |r: &[Elem; 3]| {
        let r: Vec<Elem> = r.iter().map(|e| tw.lift(e)).collect();
        &(&(&r[0] * &c.coords()[0]) + &(&r[1] * &c.coords()[1])) + &(&r[2] * &c.coords()[2])
    };
    ProjPoint::new(row(&m[0]), row(&m[1]), row(&m[2]))
}

fn adjugate(m: &Matrix) -> Matrix {
    let cols = [0, 1, 2].map(|j| [m[0][j].clone(), m[1][j].clone(), m[2][j].clone()]);
    // rows of the adjugate are cross products of column pairs
    [cross(&cols[1], &cols[2]), cross(&cols[2], &cols[0]), cross(&cols[0], &cols[1])]
}

/// A smooth cubic with a flex chosen as the origin of the chord-tangent law.
#[derive(Clone, Debug)]
pub struct EllipticStructure {
    cubic: PlaneCurve,
    origin: ProjPoint,
}

impl EllipticStructure {
    /// Certifies smoothness and that `origin` is a flex.
    pub fn new(cubic: &PlaneCurve, origin: &ProjPoint) -> Result<EllipticStructure, GeomError> {
        if cubic.degree() != 3 {
            return Err(GeomError::Unsupported("group law needs a cubic".into()));
        }
        if !is_smooth(cubic)? {
            return Err(GeomError::NotSmooth);
        }
        Self::with_certified_cubic(cubic, origin)
    }

    /// Skips the smoothness certificate, for cubics already certified on a
    /// smaller tower.
    pub fn with_certified_cubic(cubic: &PlaneCurve, origin: &ProjPoint) -> Result<EllipticStructure, GeomError> {
        let tw = deeper(cubic.tower(), origin.tower());
        let e = EllipticStructure {
            cubic: cubic.lift_to(&tw),
            origin: origin.lift_to(&tw),
        };
        if !e.cubic.contains(&e.origin)? {
            return Err(GeomError::PointNotOnCurve);
        }
        if !e.is_flex(&e.origin)? {
            return Err(GeomError::NotAFlex);
        }
        Ok(e)
    }

    pub fn cubic(&self) -> &PlaneCurve {
        &self.cubic
    }

    pub fn origin(&self) -> &ProjPoint {
        &self.origin
    }

    pub fn tower(&self) -> &FieldTower {
        self.cubic.tower()
    }

    /// Same cubic, another flex as origin.
    pub fn with_origin(&self, o: &ProjPoint) -> Result<EllipticStructure, GeomError> {
        Self::with_certified_cubic(&self.cubic, o)
    }

    pub fn lift_to(&self, tower: &FieldTower) -> EllipticStructure {
        EllipticStructure {
            cubic: self.cubic.lift_to(tower),
            origin: self.origin.lift_to(tower),
        }
    }

    pub fn map(&self, m: &TowerMap) -> EllipticStructure {
        EllipticStructure {
            cubic: self.cubic.map(m),
            origin: self.origin.map(m),
        }
    }

    fn common(&self, pts: &[&ProjPoint]) -> (EllipticStructure, Vec<ProjPoint>) {
        let mut tw = self.tower().clone();
        for p in pts {
            tw = deeper(&tw, p.tower());
        }
        let e = if tw.depth() > self.tower().depth() { self.lift_to(&tw) } else { self.clone() };
        (e, pts.iter().map(|p| p.lift_to(&tw)).collect())
    }

    /// A point of the tangent line at `p` other than `p`.
    fn tangent_direction(&self, p: &ProjPoint) -> Result<[Elem; 3], GeomError> {
        let l = tangent_line(&self.cubic, p)?;
        let lv = [l.coeff([1, 0, 0]), l.coeff([0, 1, 0]), l.coeff([0, 0, 1])];
        let tw = p.tower();
        for i in 0..3 {
            let mut e = [tw.zero(), tw.zero(), tw.zero()];
            e[i] = tw.one();
            let d = cross(&lv, &e);
            if d.iter().all(Elem::is_zero) {
                continue;
            }
            let c = cross(&d, p.coords());
            let mut distinct = false;
            for x in &c {
                if !x.is_zero_strict()? {
                    distinct = true;
                }
            }
            if distinct {
                return Ok(d);
            }
        }
        unreachable!("a line has two distinct points")
    }

    /// Strict flex test: the tangent meets the cubic with multiplicity 3.
    pub fn is_flex(&self, p: &ProjPoint) -> Result<bool, GeomError> {
        let d = self.tangent_direction(p)?;
        let phi = self.cubic.restrict(p.coords(), &d);
        Ok(phi.coeff(2).is_zero_strict()?)
    }

    fn third_raw(&self, p: &ProjPoint, q: &ProjPoint) -> Result<ProjPoint, GeomError> {
        let d: [Elem; 3] = if p.eq_strict(q)? {
            self.tangent_direction(p)?
        } else {
            [0, 1, 2].map(|i| &q.coords()[i] - &p.coords()[i])
        };
        let phi = self.cubic.restrict(p.coords(), &d);
        let c3 = phi.coeff(3);
        if c3.is_zero_strict()? {
            return ProjPoint::new(d[0].clone(), d[1].clone(), d[2].clone());
        }
        let mut t = -phi.coeff(2).div(&c3)?;
        if !p.eq_strict(q)? {
            t = &t - &p.tower().one();
        }
        let c = p.coords();
        ProjPoint::new(&c[0] + &(&t * &d[0]), &c[1] + &(&t * &d[1]), &c[2] + &(&t * &d[2]))
    }

    /// Third intersection of the cubic with the line through `p` and `q`
    /// (the tangent when they coincide).
    pub fn third_point(&self, p: &ProjPoint, q: &ProjPoint) -> Result<ProjPoint, GeomError> {
        let (e, v) = self.common(&[p, q]);
        e.third_raw(&v[0], &v[1])
    }

    /// Residual point of `l ∩ cubic` after removing `p + q`.
    pub fn line_cubic_residual(&self, l: &PlaneCurve, p: &ProjPoint, q: &ProjPoint) -> Result<ProjPoint, GeomError> {
        let (e, v) = self.common(&[p, q]);
        let l = l.lift_to(&deeper(e.tower(), l.tower()));
        for x in &v {
            if !l.contains(x)? || !e.cubic.contains(x)? {
                return Err(GeomError::LineNotIncident);
            }
        }
        if v[0].eq_strict(&v[1])? {
            let t = tangent_line(&e.cubic, &v[0])?;
            let lv = [l.coeff([1, 0, 0]), l.coeff([0, 1, 0]), l.coeff([0, 0, 1])];
            let tv = [t.coeff([1, 0, 0]), t.coeff([0, 1, 0]), t.coeff([0, 0, 1])];
            for x in cross(&lv, &tv) {
                if !x.is_zero_strict()? {
                    return Err(GeomError::LineNotIncident);
                }
            }
        }
        e.third_raw(&v[0], &v[1])
    }

    pub fn add(&self, p: &ProjPoint, q: &ProjPoint) -> Result<ProjPoint, GeomError> {
        let (e, v) = self.common(&[p, q]);
        let r = e.third_raw(&v[0], &v[1])?;
        e.third_raw(&e.origin, &r)
    }

    pub fn neg(&self, p: &ProjPoint) -> Result<ProjPoint, GeomError> {
        let (e, v) = self.common(&[p]);
        e.third_raw(&e.origin, &v[0])
    }

    pub fn mul(&self, n: i64, p: &ProjPoint) -> Result<ProjPoint, GeomError> {
        let (e, v) = self.common(&[p]);
        let mut base = if n < 0 { e.neg(&v[0])? } else { v[0].clone() };
        let mut k = n.unsigned_abs();
        let mut acc = e.origin.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = e.add(&acc, &base)?;
            }
            k >>= 1;
            if k > 0 {
                base = e.add(&base, &base)?;
            }
        }
        Ok(acc)
    }

    /// Least `n <= bound` with `[n]p = O`.
    pub fn order(&self, p: &ProjPoint, bound: u64) -> Result<Option<u64>, GeomError> {
        let (e, v) = self.common(&[p]);
        let mut acc = v[0].clone();
        for n in 1..=bound {
            if acc.eq_strict(&e.origin)? {
                return Ok(Some(n));
            }
            acc = e.add(&acc, &v[0])?;
        }
        Ok(None)
    }

    /// A long Weierstrass model whose `[0:1:0]` lies over the origin, with
    /// the matrix sending model points to points of the cubic.
    pub fn weierstrass_model(&self) -> Result<(Weierstrass, Matrix), GeomError> {
        let tw = self.tower().clone();
        let o = self.origin.coords().clone();
        let d = self.tangent_direction(&self.origin)?;
        let l = tangent_line(&self.cubic, &self.origin)?;
        let mut off = None;
        for i in 0..3 {
            let mut e = [tw.zero(), tw.zero(), tw.zero()];
            e[i] = tw.one();
            if !l.eval(&e).is_zero_strict()? {
                off = Some(e);
                break;
            }
        }
        let q = off.expect("a line misses some coordinate vertex");
        let mut m: Matrix = [0, 1, 2].map(|r| [d[r].clone(), o[r].clone(), q[r].clone()]);
        let g = self.cubic.transform(&m);
        let c = g.coeff([3, 0, 0]);
        let alpha = g.coeff([0, 2, 1]);
        let mu = -c.div(&alpha)?;
        for row in m.iter_mut() {
            row[2] = &row[2] * &mu;
        }
        let w = Weierstrass::from_curve(&self.cubic.transform(&m))?;
        Ok((w, m))
    }

    /// Points `R` with `[n]R = t`, each over the extension it needs.
    pub fn division_points(&self, n: usize, t: &ProjPoint) -> Result<Vec<(ProjPoint, TowerMap)>, GeomError> {
        let (e, v) = self.common(&[t]);
        let (w, m) = e.weierstrass_model()?;
        let tw_model = apply(&adjugate(&m), &v[0])?;
        let mut out = Vec::new();
        for (p, map) in w.division_points(n, &tw_model)? {
            let mm: Matrix = m.clone().map(|r| r.map(|x| map.apply(&x)));
            out.push((apply(&mm, &p)?, map));
        }
        Ok(out)
    }

    pub fn is_on(&self, p: &ProjPoint) -> Result<bool, GeomError> {
        let (e, v) = self.common(&[p]);
        Ok(e.cubic.contains(&v[0])?)
    }
}

/// Second intersection of the tangent at `p` with the cubic; needs no origin.
pub fn tangent_residual(cubic: &PlaneCurve, p: &ProjPoint) -> Result<ProjPoint, GeomError> {
    let tw = deeper(cubic.tower(), p.tower());
    let e = EllipticStructure { cubic: cubic.lift_to(&tw), origin: p.lift_to(&tw) };
    if !e.cubic.contains(&e.origin)? {
        return Err(GeomError::PointNotOnCurve);
    }
    e.third_raw(&e.origin, &e.origin)
}

pub(crate) fn deeper(a: &FieldTower, b: &FieldTower) -> FieldTower {
    if b.depth() > a.depth() {
        b.clone()
    } else {
        a.clone()
    }
}
