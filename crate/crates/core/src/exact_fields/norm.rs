//! Factorization over a tower by norms down to Q (Trager's method).

use super::factor::factor_rational;
use super::poly::UniPoly;
use super::tower::{Elem, FieldError, FieldTower, Rational, Repr};

/// Largest `deg f * [K : Q]` attempted by [`factor_over`].
pub const NORM_DEGREE_CAP: usize = 36;

fn top_coeffs(e: &Elem, below: &FieldTower) -> Vec<Elem> {
    match &e.repr {
        Repr::Poly(v) => v.iter().map(|r| Elem::raw(below.clone(), r.clone())).collect(),
        Repr::Rat(_) => unreachable!("element of a proper extension"),
    }
}

/// Norm of `p` from the top level of its tower to the level below.
fn norm_step(p: &UniPoly) -> Result<UniPoly, FieldError> {
    let tw = p.tower();
    let d = tw.depth();
    let below = tw.prefix(d - 1);
    let m = tw.modulus(d);
    let n = p.degree().unwrap_or(0) * tw.level_degree(d);
    let mut vals = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let v = p.eval(&tw.int(k as i64));
        vals.push(m.resultant(&UniPoly::new(&below, top_coeffs(&v, &below)))?);
    }
    Ok(UniPoly::interpolate_integers(&below, &vals))
}

/// Norm of `p` down to Q.
pub fn norm_to_rationals(p: &UniPoly) -> Result<UniPoly, FieldError> {
    let mut cur = p.clone();
    while cur.tower().depth() > 0 {
        cur = norm_step(&cur)?;
    }
    Ok(cur)
}

/// Monic irreducible factors of a squarefree `f` over its tower, or `None`
/// when the degree cap is exceeded or no separating shift is found (for
/// instance because the tower is not a field).
pub fn factor_over(f: &UniPoly) -> Result<Option<Vec<UniPoly>>, FieldError> {
    let tw = f.tower().clone();
    let Some(deg) = f.degree() else { return Ok(None) };
    if deg <= 1 {
        return Ok(Some(vec![f.monic()?]));
    }
    if let Some(rc) = f.rational_coeffs().filter(|_| tw.depth() == 0) {
        return Ok(Some(
            factor_rational(&rc, tw.seed()).into_iter().map(|(g, _)| UniPoly::from_rationals(&tw, &g)).collect(),
        ));
    }
    if deg * tw.degree() > NORM_DEGREE_CAP {
        return Ok(None);
    }
    let f = f.monic()?;
    for trial in 0..4i64 {
        let mut theta = tw.zero();
        for lvl in 1..=tw.depth() {
            theta = &theta + &tw.gen_at(lvl).scale(&Rational::from_integer((lvl as i64 + trial).into()));
        }
        let shift = UniPoly::new(&tw, vec![-theta.clone(), tw.one()]);
        let g = f.compose(&shift);
        let n = norm_to_rationals(&g)?;
        if n.gcd(&n.derivative())?.degree() != Some(0) {
            continue;
        }
        let back = UniPoly::new(&tw, vec![theta, tw.one()]);
        let mut out = Vec::new();
        for (h, _) in factor_rational(&n.rational_coeffs().unwrap(), tw.seed()) {
            let gi = g.gcd(&UniPoly::from_rationals(&tw, &h))?;
            if gi.degree().unwrap_or(0) > 0 {
                out.push(gi.compose(&back).monic()?);
            }
        }
        return Ok(Some(out));
    }
    Ok(None)
}
