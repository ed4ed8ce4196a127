//! JSON forms of towers and their elements.
//!
//! A tower is `[{"name": .., "minpoly": [c0, c1, ..]}, ..]`, bottom level
//! first. A rational is the string `"p/q"` (or `"p"`); an element of level
//! `k` is the list of its coefficients over level `k - 1`.

use num_bigint::BigInt;
use serde_json::{json, Value};

use super::poly::UniPoly;
use super::tower::{self as t, Elem, FieldError, FieldTower, Rational, Repr};

pub fn parse_rational(s: &str) -> Result<Rational, FieldError> {
    let s = s.trim();
    let bad = || FieldError::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q == BigInt::from(0) {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn rational_to_string(q: &Rational) -> String {
    q.to_string()
}

fn repr_to_json(r: &Repr, depth: usize) -> Value {
    match r {
        Repr::Rat(q) => Value::String(rational_to_string(q)),
        Repr::Poly(v) => Value::Array(v.iter().map(|c| repr_to_json(c, depth - 1)).collect()),
    }
}

pub fn elem_to_json(e: &Elem) -> Value {
    repr_to_json(&e.repr, e.tower().depth())
}

fn repr_from_json(tower: &FieldTower, depth: usize, v: &Value) -> Result<Repr, FieldError> {
    // Bare rationals are accepted at any depth.
    if let Value::String(s) = v {
        return Ok(t::from_rat(tower.node(depth), &parse_rational(s)?));
    }
    if let Value::Number(n) = v {
        return Ok(t::from_rat(tower.node(depth), &parse_rational(&n.to_string())?));
    }
    let Value::Array(items) = v else {
        return Err(FieldError::Parse(format!("unexpected element {v}")));
    };
    if depth == 0 {
        return Err(FieldError::Parse("nested list at the rational level".into()));
    }
    let n = tower.node(depth).unwrap();
    let coeffs = items
        .iter()
        .map(|c| repr_from_json(tower, depth - 1, c))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Repr::Poly(t::reduce(n, coeffs)))
}

pub fn elem_from_json(tower: &FieldTower, v: &Value) -> Result<Elem, FieldError> {
    Ok(Elem::raw(tower.clone(), repr_from_json(tower, tower.depth(), v)?))
}

pub fn tower_to_json(tower: &FieldTower) -> Value {
    let levels: Vec<Value> = (1..=tower.depth())
        .map(|lvl| {
            let m = tower.modulus(lvl);
            json!({
                "name": tower.level_name(lvl),
                "minpoly": m.coeffs().iter().map(elem_to_json).collect::<Vec<_>>(),
            })
        })
        .collect();
    Value::Array(levels)
}

pub fn tower_from_json(v: &Value) -> Result<FieldTower, FieldError> {
    let Value::Array(levels) = v else {
        return Err(FieldError::Parse("field description must be a list".into()));
    };
    let mut tower = FieldTower::rationals();
    for (i, lvl) in levels.iter().enumerate() {
        let name = lvl
            .get("name")
            .and_then(Value::as_str)
            .map(str::to_string)
            .unwrap_or_else(|| format!("a{}", i + 1));
        let coeffs = lvl
            .get("minpoly")
            .and_then(Value::as_array)
            .ok_or_else(|| FieldError::Parse("level without minpoly".into()))?;
        let c = coeffs
            .iter()
            .map(|c| elem_from_json(&tower, c))
            .collect::<Result<Vec<_>, _>>()?;
        tower = tower.extend(&name, &UniPoly::new(&tower, c))?;
    }
    Ok(tower)
}
