//! Intersection points of plane curves and Fulton's local multiplicities.

use super::curve::{Affine, PlaneCurve};
use super::point::ProjPoint;
use super::GeomError;
use crate::exact_fields::{branches, factor_over, Elem, FieldError, FieldTower, TowerMap, UniPoly};

/// A point (or a conjugate family of points when its tower extends the input
/// tower) together with its local intersection multiplicity.
#[derive(Clone, Debug)]
pub struct IntersectionPoint {
    pub point: ProjPoint,
    pub multiplicity: u32,
    /// From the input tower to the tower of `point`.
    pub map: TowerMap,
    /// Number of geometric points the family stands for.
    pub family_size: usize,
}

// ---------------------------------------------------------------------------
// strict helpers

pub(crate) fn strict_degree(p: &UniPoly) -> Result<Option<usize>, FieldError> {
    for i in (0..p.coeffs().len()).rev() {
        if !p.coeff(i).is_zero_strict()? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

pub(crate) fn strict_order(p: &UniPoly) -> Result<Option<usize>, FieldError> {
    for i in 0..p.coeffs().len() {
        if !p.coeff(i).is_zero_strict()? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// One representative root per conjugate family of the roots of `f`.
/// Factors are found by norms when affordable; otherwise the squarefree part
/// is adjoined whole and split lazily.
pub(crate) fn root_families(f: &UniPoly, name: &str) -> Result<Vec<(FieldTower, Elem)>, FieldError> {
    let t0 = f.tower().clone();
    if f.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    let f = f.monic()?;
    let mut out = Vec::new();
    let sf = f.squarefree_part()?;
    let parts = match factor_over(&sf)? {
        Some(fs) => fs,
        None => vec![sf],
    };
    for g in parts {
        if g.degree() == Some(1) {
            out.push((t0.clone(), -g.coeff(0)));
        } else {
            let t = t0.extend(name, &g)?;
            let r = t.gen();
            out.push((t, r));
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// determinants and resultants

pub(crate) fn det(mut m: Vec<Vec<Elem>>, tower: &FieldTower) -> Result<Elem, FieldError> {
    let n = m.len();
    let mut acc = tower.one();
    for col in 0..n {
        // prefer an invertible pivot; fall back to reporting the first zero divisor
        let mut pivot = None;
        let mut first_err = None;
        for (row, r) in m.iter().enumerate().skip(col) {
            if r[col].is_zero() {
                continue;
            }
            match r[col].inv() {
                Ok(inv) => {
                    pivot = Some((row, inv));
                    break;
                }
                Err(e) => {
                    first_err.get_or_insert(e);
                }
            }
        }
        let Some((row, inv)) = pivot else {
            return match first_err {
                Some(e) => Err(e),
                None => Ok(tower.zero()),
            };
        };
        if row != col {
            m.swap(row, col);
            acc = -acc;
        }
        acc = &acc * &m[col][col];
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] * &inv;
            for c in col..n {
                let t = &f * &m[col][c];
                m[r][c] = &m[r][c] - &t;
            }
        }
    }
    Ok(acc)
}

/// Sylvester resultant of two coefficient lists (lowest degree first) taken
/// with their formal degrees.
pub(crate) fn sylvester(f: &[Elem], g: &[Elem], tower: &FieldTower) -> Result<Elem, FieldError> {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    if size == 0 {
        return Ok(tower.one());
    }
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut r = vec![tower.zero(); size];
        for (k, c) in f.iter().rev().enumerate() {
            r[i + k] = c.clone();
        }
        rows.push(r);
    }
    for i in 0..m {
        let mut r = vec![tower.zero(); size];
        for (k, c) in g.iter().rev().enumerate() {
            r[i + k] = c.clone();
        }
        rows.push(r);
    }
    det(rows, tower)
}

/// `Res_v(f, g)` as a polynomial in `u`; `deg_bound` bounds its degree.
pub(crate) fn resultant_v(f: &Affine, g: &Affine, deg_bound: usize) -> Result<UniPoly, FieldError> {
    let tw = f.tower().clone();
    let fv = f.by_v();
    let gv = g.by_v();
    let mut vals = Vec::with_capacity(deg_bound + 1);
    for k in 0..=deg_bound {
        let x = tw.int(k as i64);
        let fe: Vec<Elem> = fv.iter().map(|p| p.eval(&x)).collect();
        let ge: Vec<Elem> = gv.iter().map(|p| p.eval(&x)).collect();
        vals.push(sylvester(&fe, &ge, &tw)?);
    }
    Ok(UniPoly::interpolate_integers(&tw, &vals))
}

// ---------------------------------------------------------------------------
// Fulton

fn fulton(f: Affine, g: Affine) -> Result<u32, GeomError> {
    if f.is_zero() || g.is_zero() {
        return Err(GeomError::CommonComponent);
    }
    if !f.coeff(0, 0).is_zero_strict()? || !g.coeff(0, 0).is_zero_strict()? {
        return Ok(0);
    }
    let fr = f.at_v0();
    let gs = g.at_v0();
    let r = strict_degree(&fr)?;
    let s = strict_degree(&gs)?;
    match (r, s) {
        (None, None) => Err(GeomError::CommonComponent),
        (None, Some(_)) => {
            let k = strict_order(&gs)?.unwrap() as u32;
            Ok(k + fulton(f.div_v(), g)?)
        }
        (Some(_), None) => {
            let k = strict_order(&fr)?.unwrap() as u32;
            Ok(k + fulton(f, g.div_v())?)
        }
        (Some(r), Some(s)) => {
            let (f, g, fr, gs, r, s) = if r <= s { (f, g, fr, gs, r, s) } else { (g, f, gs, fr, s, r) };
            let c = gs.coeff(s).div(&fr.coeff(r))?;
            let g1 = &g - &f.shift_scale((s - r) as u32, &c);
            fulton(f, g1)
        }
    }
}

/// Chart used for local computations at `p`: the first of z, y, x that is
/// invertible.
pub(crate) fn chart_for(p: &ProjPoint) -> Result<usize, FieldError> {
    for i in [2, 1, 0] {
        if !p.coords()[i].is_zero_strict()? {
            return Ok(i);
        }
    }
    unreachable!("normalized point has a nonzero coordinate")
}

/// Local intersection multiplicity of two curves at `p` (Fulton's algorithm).
pub fn intersection_multiplicity(c: &PlaneCurve, d: &PlaneCurve, p: &ProjPoint) -> Result<u32, GeomError> {
    let chart = chart_for(p)?;
    let f = c.local_at(p, chart)?;
    let g = d.local_at(p, chart)?;
    fulton(f, g)
}

/// Multiplicity of `p` as a point of `c` (0 when not on `c`).
pub fn point_multiplicity(c: &PlaneCurve, p: &ProjPoint) -> Result<u32, GeomError> {
    let chart = chart_for(p)?;
    let f = c.local_at(p, chart)?;
    if f.is_zero() {
        return Err(GeomError::Malformed("zero polynomial".into()));
    }
    let top = f.total_degree().unwrap();
    for k in 0..=top {
        for (&(i, j), e) in &f.terms {
            if i + j == k && !e.is_zero_strict()? {
                return Ok(k);
            }
        }
    }
    unreachable!("nonzero polynomial has a nonzero term")
}

// ---------------------------------------------------------------------------
// global intersection

fn deeper(a: &FieldTower, b: &FieldTower) -> FieldTower {
    if a.depth() >= b.depth() {
        a.clone()
    } else {
        b.clone()
    }
}

type Found = (ProjPoint, u32, TowerMap);

/// Points of `c ∩ d` with multiplicities, as conjugate families.
pub fn intersection_points(c: &PlaneCurve, d: &PlaneCurve) -> Result<Vec<IntersectionPoint>, GeomError> {
    let tw = deeper(c.tower(), d.tower());
    let (c, d) = (c.lift_to(&tw), d.lift_to(&tw));
    let res = branches(&tw, 1, |m0| -> Result<Vec<Found>, GeomError> {
        let c0 = c.map(m0);
        let d0 = d.map(m0);
        if c0.degree() == 1 {
            line_points(&c0, &d0)
        } else if d0.degree() == 1 {
            line_points(&d0, &c0)
        } else {
            general_points(&c0, &d0)
        }
    })?;
    let mut out = Vec::new();
    for (m0, found) in res {
        let base = m0.target().degree();
        for (point, multiplicity, m1) in found {
            let family_size = point.tower().degree() / base;
            out.push(IntersectionPoint {
                point,
                multiplicity,
                map: m0.then(&m1),
                family_size,
            });
        }
    }
    Ok(out)
}

/// Families over an extension of `t0` produced by `roots`, each refined by
/// the D5 driver on the new levels only.
fn over_families<T>(
    t0: &FieldTower,
    fams: Vec<(FieldTower, Elem)>,
    mut f: impl FnMut(&TowerMap, &Elem) -> Result<Vec<T>, GeomError>,
) -> Result<Vec<T>, GeomError> {
    let mut out = Vec::new();
    for (t1, r) in fams {
        let lvl = t0.depth() + 1;
        let res = branches(&t1, lvl, |m| f(m, &m.apply(&r)))?;
        for (_, v) in res {
            out.extend(v);
        }
    }
    Ok(out)
}

fn general_points(c: &PlaneCurve, d: &PlaneCurve) -> Result<Vec<Found>, GeomError> {
    let t0 = c.tower().clone();
    let origin = ProjPoint::from_ints(&t0, [0, 0, 1]);
    let f = c.local_at(&origin, 2)?;
    let g = d.local_at(&origin, 2)?;
    let mut out: Vec<Found> = Vec::new();

    // affine chart z = 1, coordinates (u, v) = (x, y)
    let fv = f.by_v();
    let gv = g.by_v();
    let xs: Vec<(FieldTower, Elem)> = if fv.len() <= 1 && gv.len() <= 1 {
        let h = f.at_v0().gcd(&g.at_v0())?;
        if h.degree().unwrap_or(0) > 0 {
            return Err(GeomError::CommonComponent);
        }
        Vec::new()
    } else {
        let bound = (c.degree() * d.degree()) as usize;
        let r = resultant_v(&f, &g, bound)?;
        if r.is_zero() {
            return Err(GeomError::CommonComponent);
        }
        root_families(&r, &format!("x{}", t0.depth() + 1))?
    };
    let found = over_families(&t0, xs, |m1, x0| {
        let t1 = m1.target().clone();
        let fx = UniPoly::new(&t1, fv.iter().map(|p| m1.apply_poly(p).eval(x0)).collect());
        let gx = UniPoly::new(&t1, gv.iter().map(|p| m1.apply_poly(p).eval(x0)).collect());
        if fx.is_zero() && gx.is_zero() {
            return Err(GeomError::CommonComponent);
        }
        let h = fx.gcd(&gx)?;
        let ys = root_families(&h, &format!("y{}", t1.depth() + 1))?;
        let (c1, d1) = (c.map(&m1.clone()), d.map(m1));
        over_families(&t1, ys, |m2, y0| {
            let p = ProjPoint::new(m2.apply(x0), y0.clone(), m2.target().one())?;
            let (c2, d2) = (c1.map(m2), d1.map(m2));
            let k = intersection_multiplicity(&c2, &d2, &p)?;
            Ok(vec![(p, k, m1.then(m2))])
        })
    })?;
    out.extend(found);

    // line at infinity: [t : 1 : 0] and [1 : 0 : 0]
    let x_dir = [t0.zero(), t0.one(), t0.zero()];
    let step = [t0.one(), t0.zero(), t0.zero()];
    let fi = c.restrict(&x_dir, &step);
    let gi = d.restrict(&x_dir, &step);
    if fi.is_zero() && gi.is_zero() {
        return Err(GeomError::CommonComponent);
    }
    let h = fi.gcd(&gi)?;
    let ts = root_families(&h, &format!("t{}", t0.depth() + 1))?;
    let found = over_families(&t0, ts, |m1, t| {
        let t1 = m1.target();
        let p = ProjPoint::new(t.clone(), t1.one(), t1.zero())?;
        let k = intersection_multiplicity(&c.map(m1), &d.map(m1), &p)?;
        Ok(vec![(p, k, m1.clone())])
    })?;
    out.extend(found);
    let px = ProjPoint::from_ints(&t0, [1, 0, 0]);
    if c.contains(&px)? && d.contains(&px)? {
        let k = intersection_multiplicity(c, d, &px)?;
        out.push((px, k, TowerMap::identity(&t0)));
    }
    Ok(out)
}

/// Two points spanning the line `l`.
pub(crate) fn line_basis(l: &PlaneCurve) -> Result<([Elem; 3], [Elem; 3]), GeomError> {
    let t = l.tower();
    let a = l.coeff([1, 0, 0]);
    let b = l.coeff([0, 1, 0]);
    let c = l.coeff([0, 0, 1]);
    let z = t.zero();
    if !c.is_zero_strict()? {
        Ok(([c.clone(), z.clone(), -&a], [z, c.clone(), -&b]))
    } else if !b.is_zero_strict()? {
        Ok(([b.clone(), -&a, z.clone()], [z.clone(), z, b.clone()]))
    } else if !a.is_zero_strict()? {
        Ok(([z.clone(), t.one(), z.clone()], [z.clone(), z, t.one()]))
    } else {
        Err(GeomError::Malformed("zero line".into()))
    }
}

fn line_points(l: &PlaneCurve, d: &PlaneCurve) -> Result<Vec<Found>, GeomError> {
    let t0 = l.tower().clone();
    let (a, b) = line_basis(l)?;
    let phi = d.restrict(&a, &b);
    let top = strict_degree(&phi)?;
    let Some(top) = top else {
        return Err(GeomError::CommonComponent);
    };
    let mut out: Vec<Found> = Vec::new();
    for (fac, mult) in phi.squarefree_decomposition()? {
        let ts = root_families(&fac, &format!("t{}", t0.depth() + 1))?;
        let found = over_families(&t0, ts, |m1, t| {
            let p = ProjPoint::new(
                &m1.apply(&a[0]) + &(t * &m1.apply(&b[0])),
                &m1.apply(&a[1]) + &(t * &m1.apply(&b[1])),
                &m1.apply(&a[2]) + &(t * &m1.apply(&b[2])),
            )?;
            Ok(vec![(p, mult as u32, m1.clone())])
        })?;
        out.extend(found);
    }
    let at_inf = d.degree() as usize - top;
    if at_inf > 0 {
        let p = ProjPoint::new(b[0].clone(), b[1].clone(), b[2].clone())?;
        out.push((p, at_inf as u32, TowerMap::identity(&t0)));
    }
    Ok(out)
}
