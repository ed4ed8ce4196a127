//! Curves of a given degree meeting a cubic with prescribed local
//! intersection multiplicities, by linear algebra on branch series.

use std::collections::BTreeMap;

use super::curve::{Mono, PlaneCurve};
use super::elliptic::{deeper, EllipticStructure};
use super::point::ProjPoint;
use super::series::branch_series;
use super::GeomError;
use crate::exact_fields::{Elem, FieldTower};

/// Monomials of degree `d`, in a fixed order (x-degree descending).
pub(crate) fn monomials(d: u32) -> Vec<Mono> {
    let mut out = Vec::new();
    for i in (0..=d).rev() {
        for j in (0..=d - i).rev() {
            out.push([i, j, d - i - j]);
        }
    }
    out
}

/// Reduced row echelon form; returns the pivot columns.
pub(crate) fn rref(rows: &mut Vec<Vec<Elem>>, ncols: usize) -> Result<Vec<usize>, GeomError> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let mut found = None;
        for (i, row) in rows.iter().enumerate().skip(r) {
            if !row[col].is_zero_strict()? {
                found = Some(i);
                break;
            }
        }
        let Some(i) = found else { continue };
        rows.swap(r, i);
        let inv = rows[r][col].inv()?;
        rows[r] = rows[r].iter().map(|e| e * &inv).collect();
        for k in 0..rows.len() {
            if k != r && !rows[k][col].is_zero() {
                let f = rows[k][col].clone();
                let pr = rows[r].clone();
                for (x, p) in rows[k].iter_mut().zip(&pr) {
                    *x = &*x - &(&f * p);
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    Ok(pivots)
}

fn kernel(mut rows: Vec<Vec<Elem>>, ncols: usize, tw: &FieldTower) -> Result<Vec<Vec<Elem>>, GeomError> {
    let pivots = rref(&mut rows, ncols)?;
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![tw.zero(); ncols];
        v[free] = tw.one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -rows[r][free].clone();
        }
        out.push(v);
    }
    Ok(out)
}

/// Basis of the forms of degree `degree` whose composition with the cubic's
/// branch at each point vanishes to the required order.
pub fn interpolation_kernel(
    e: &EllipticStructure,
    conditions: &[(ProjPoint, u32)],
    degree: u32,
) -> Result<(FieldTower, Vec<Mono>, Vec<Vec<Elem>>), GeomError> {
    let mut tw = e.tower().clone();
    for (p, _) in conditions {
        tw = deeper(&tw, p.tower());
    }
    let cubic = e.cubic().lift_to(&tw);
    let monos = monomials(degree);
    let mut rows = Vec::new();
    for (p, k) in conditions {
        let s = branch_series(&cubic, &p.lift_to(&tw), *k as usize)?;
        let ms = s.monomial_series(&monos, degree);
        for t in 0..*k as usize {
            rows.push(ms.iter().map(|m| m[t].clone()).collect());
        }
    }
    let ker = kernel(rows, monos.len(), &tw)?;
    Ok((tw, monos, ker))
}

/// The unique curve of the given degree (up to multiples of the cubic) with
/// the prescribed intersection divisor.
pub fn interpolate_curve_with_divisor(
    e: &EllipticStructure,
    conditions: &[(ProjPoint, u32)],
    degree: u32,
) -> Result<PlaneCurve, GeomError> {
    let total: u32 = conditions.iter().map(|c| c.1).sum();
    if total != 3 * degree {
        return Err(GeomError::Malformed(format!("multiplicities sum to {total}, expected {}", 3 * degree)));
    }
    let (tw, monos, ker) = interpolation_kernel(e, conditions, degree)?;
    let index: BTreeMap<Mono, usize> = monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    // multiples of the cubic always satisfy the conditions
    let mut multiples: Vec<Vec<Elem>> = Vec::new();
    if degree >= 3 {
        let cubic = e.cubic().lift_to(&tw);
        for m in monomials(degree - 3) {
            let mono = PlaneCurve::new(&tw, degree - 3, [(m, tw.one())])?;
            let prod = &cubic * &mono;
            let mut v = vec![tw.zero(); monos.len()];
            for (mm, c) in prod.terms() {
                v[index[mm]] = c.clone();
            }
            multiples.push(v);
        }
    }
    let mut base = multiples.clone();
    let base_pivots = rref(&mut base, monos.len())?;
    let rank_m = base_pivots.len();
    let mut all = multiples;
    all.extend(ker.iter().cloned());
    let rank_all = rref(&mut all.clone(), monos.len())?.len();
    let extra = rank_all - rank_m;
    if extra == 0 {
        return Err(GeomError::NoSolution);
    }
    if extra > 1 {
        return Err(GeomError::NonUnique(extra));
    }
    // a kernel vector outside the span of the multiples, reduced against them
    for v in ker {
        let mut w = v;
        for (r, &pc) in base_pivots.iter().enumerate() {
            let f = w[pc].clone();
            if !f.is_zero() {
                for (x, b) in w.iter_mut().zip(&base[r]) {
                    *x = &*x - &(&f * b);
                }
            }
        }
        let mut lead = None;
        for x in &w {
            if !x.is_zero_strict()? {
                lead = Some(x.inv()?);
                break;
            }
        }
        if let Some(s) = lead {
            let terms: Vec<(Mono, Elem)> = monos.iter().zip(&w).map(|(m, c)| (*m, c * &s)).collect();
            return PlaneCurve::new(&tw, degree, terms);
        }
    }
    Err(GeomError::NoSolution)
}
