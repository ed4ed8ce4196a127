use super::curve::{Affine, PlaneCurve};
use super::intersect::chart_for;
use super::point::ProjPoint;
use super::GeomError;
use crate::exact_fields::{Elem, FieldTower};

/// Truncated local parametrization of a smooth branch: `t ↦ [x(t):y(t):z(t)]`
/// with `t^0..t^{order-1}` kept.
#[derive(Clone, Debug)]
pub struct BranchSeries {
    pub center: ProjPoint,
    pub coords: [Vec<Elem>; 3],
    pub order: usize,
}

pub(crate) fn series_mul(a: &[Elem], b: &[Elem], n: usize, tw: &FieldTower) -> Vec<Elem> {
    let mut out = vec![tw.zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

fn powers(s: &[Elem], k: u32, n: usize, tw: &FieldTower) -> Vec<Vec<Elem>> {
    let mut one = vec![tw.zero(); n];
    if n > 0 {
        one[0] = tw.one();
    }
    let mut out = vec![one];
    for _ in 0..k {
        let next = series_mul(out.last().unwrap(), s, n, tw);
        out.push(next);
    }
    out
}

fn eval_affine(f: &Affine, u: &[Elem], v: &[Elem], n: usize) -> Vec<Elem> {
    let tw = f.tower();
    let du = f.terms.keys().map(|k| k.0).max().unwrap_or(0);
    let dv = f.terms.keys().map(|k| k.1).max().unwrap_or(0);
    let pu = powers(u, du, n, tw);
    let pv = powers(v, dv, n, tw);
    let mut acc = vec![tw.zero(); n];
    for ((i, j), c) in &f.terms {
        let t = series_mul(&pu[*i as usize], &pv[*j as usize], n, tw);
        for k in 0..n {
            acc[k] = &acc[k] + &(c * &t[k]);
        }
    }
    acc
}

/// Branch of `c` at the smooth point `p`, to precision `order`.
pub fn branch_series(c: &PlaneCurve, p: &ProjPoint, order: usize) -> Result<BranchSeries, GeomError> {
    let tw = if p.tower().depth() >= c.tower().depth() { p.tower().clone() } else { c.tower().clone() };
    let c = c.lift_to(&tw);
    let p = p.lift_to(&tw);
    if !c.contains(&p)? {
        return Err(GeomError::PointNotOnCurve);
    }
    let chart = chart_for(&p)?;
    let mut f = c.local_at(&p, chart)?;
    let fu = f.coeff(1, 0);
    let fv = f.coeff(0, 1);
    let swapped = fv.is_zero_strict()?;
    if swapped {
        if fu.is_zero_strict()? {
            return Err(GeomError::SingularPoint);
        }
        f = f.swap();
    }
    let slope_inv = f.coeff(0, 1).inv()?;
    let n = order.max(1);
    // free variable is t, dependent series phi
    let mut t = vec![tw.zero(); n];
    if n > 1 {
        t[1] = tw.one();
    }
    let mut phi = vec![tw.zero(); n];
    for i in 1..n {
        let val = eval_affine(&f, &t, &phi, i + 1);
        phi[i] = -(&val[i] * &slope_inv);
    }
    let (u, v) = if swapped { (phi, t) } else { (t, phi) };
    let s = p.coords()[chart].inv()?;
    let others: Vec<usize> = (0..3).filter(|&i| i != chart).collect();
    let mut coords: [Vec<Elem>; 3] = Default::default();
    for i in 0..3 {
        let mut series = vec![tw.zero(); n];
        series[0] = &p.coords()[i] * &s;
        if i == others[0] {
            for k in 1..n {
                series[k] = &series[k] + &u[k];
            }
        } else if i == others[1] {
            for k in 1..n {
                series[k] = &series[k] + &v[k];
            }
        }
        coords[i] = series;
    }
    Ok(BranchSeries {
        center: p,
        coords,
        order: n,
    })
}

impl BranchSeries {
    /// `g(x(t), y(t), z(t))` truncated to the series precision.
    pub fn compose(&self, g: &PlaneCurve) -> Vec<Elem> {
        let tw = self.center.tower();
        let g = g.lift_to(&if g.tower().depth() > tw.depth() { g.tower().clone() } else { tw.clone() });
        let n = self.order;
        let tw = g.tower().clone();
        let d = g.degree();
        let coords: Vec<Vec<Elem>> = self.coords.iter().map(|s| s.iter().map(|e| tw.lift(e)).collect()).collect();
        let pw: Vec<Vec<Vec<Elem>>> = coords.iter().map(|s| powers(s, d, n, &tw)).collect();
        let mut acc = vec![tw.zero(); n];
        for (m, c) in g.terms() {
            let t = series_mul(&series_mul(&pw[0][m[0] as usize], &pw[1][m[1] as usize], n, &tw), &pw[2][m[2] as usize], n, &tw);
            for k in 0..n {
                acc[k] = &acc[k] + &(c * &t[k]);
            }
        }
        acc
    }

    /// Series of each monomial of degree `d`, in the order given.
    pub(crate) fn monomial_series(&self, monos: &[[u32; 3]], d: u32) -> Vec<Vec<Elem>> {
        let tw = self.center.tower().clone();
        let n = self.order;
        let pw: Vec<Vec<Vec<Elem>>> = self.coords.iter().map(|s| powers(s, d, n, &tw)).collect();
        monos
            .iter()
            .map(|m| series_mul(&series_mul(&pw[0][m[0] as usize], &pw[1][m[1] as usize], n, &tw), &pw[2][m[2] as usize], n, &tw))
            .collect()
    }
}
