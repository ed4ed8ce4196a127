use std::fmt;

use serde_json::Value;

use super::GeomError;
use crate::exact_fields::{serial, Elem, FieldError, FieldTower, TowerMap};

/// Projective point normalized so that its first nonzero coordinate is 1.
#[derive(Clone)]
pub struct ProjPoint {
    coords: [Elem; 3],
}

impl ProjPoint {
    pub fn new(x: Elem, y: Elem, z: Elem) -> Result<ProjPoint, GeomError> {
        let tw = super::curve::deepest(&[&x, &y, &z]);
        let c = [tw.lift(&x), tw.lift(&y), tw.lift(&z)];
        for i in 0..3 {
            if !c[i].is_zero_strict()? {
                let s = c[i].inv()?;
                let mut out = c.clone().map(|e| &e * &s);
                for e in out.iter_mut().take(i) {
                    *e = tw.zero();
                }
                out[i] = tw.one();
                return Ok(ProjPoint { coords: out });
            }
        }
        Err(GeomError::ZeroVector)
    }

    pub fn from_ints(tower: &FieldTower, c: [i64; 3]) -> ProjPoint {
        ProjPoint::new(tower.int(c[0]), tower.int(c[1]), tower.int(c[2])).expect("nonzero integer point")
    }

    /// Parse `"a : b : c"` with coordinates written over the tower's level names.
    pub fn parse(tower: &FieldTower, src: &str) -> Result<ProjPoint, GeomError> {
        let parts: Vec<&str> = src.trim().trim_start_matches('[').trim_end_matches(']').split(':').collect();
        if parts.len() != 3 {
            return Err(GeomError::Malformed(format!("point {src:?} needs three coordinates")));
        }
        let e: Vec<Elem> = parts
            .iter()
            .map(|s| super::parse::parse_elem(tower, s))
            .collect::<Result<_, _>>()?;
        ProjPoint::new(e[0].clone(), e[1].clone(), e[2].clone())
    }

    pub fn coords(&self) -> &[Elem; 3] {
        &self.coords
    }

    pub fn tower(&self) -> &FieldTower {
        self.coords[0].tower()
    }

    pub fn lift_to(&self, tower: &FieldTower) -> ProjPoint {
        ProjPoint {
            coords: self.coords.clone().map(|c| tower.lift(&c)),
        }
    }

    pub fn map(&self, f: &TowerMap) -> ProjPoint {
        ProjPoint {
            coords: self.coords.clone().map(|c| f.apply(&c)),
        }
    }

    /// Equality as projective points, raising on undecided zero divisors.
    pub fn eq_strict(&self, o: &ProjPoint) -> Result<bool, FieldError> {
        let (a, b) = (&self.coords, &o.coords);
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            if !(&(&a[i] * &b[j]) - &(&a[j] * &b[i])).is_zero_strict()? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_rational(&self) -> bool {
        self.coords.iter().all(Elem::is_rational)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.coords.iter().map(serial::elem_to_json).collect())
    }

    pub fn from_json(tower: &FieldTower, v: &Value) -> Result<ProjPoint, GeomError> {
        let a = v.as_array().filter(|a| a.len() == 3).ok_or(GeomError::Malformed("point must have 3 coordinates".into()))?;
        let c: Vec<Elem> = a.iter().map(|x| serial::elem_from_json(tower, x)).collect::<Result<_, _>>()?;
        ProjPoint::new(c[0].clone(), c[1].clone(), c[2].clone())
    }
}

/// Structural equality of normalized coordinates; exact over fields.
impl PartialEq for ProjPoint {
    fn eq(&self, o: &ProjPoint) -> bool {
        self.coords.iter().zip(&o.coords).all(|(a, b)| a == b)
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}:{}]", self.coords[0], self.coords[1], self.coords[2])
    }
}

pub(crate) fn cross(a: &[Elem; 3], b: &[Elem; 3]) -> [Elem; 3] {
    [
        &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
        &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
        &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
    ]
}
