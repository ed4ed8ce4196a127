//! The three cubics used throughout, each with a designated flex.

use crate::curve_geometry::{flex_points, is_smooth, EllipticStructure, GeomError, PlaneCurve, ProjPoint, Weierstrass};
use crate::exact_fields::{FieldTower, UniPoly};

use super::CliError;

pub const NAMES: [&str; 3] = ["fermat", "cyclic", "90c3"];

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub cubic: PlaneCurve,
    pub flex: ProjPoint,
    pub torsion: &'static str,
    pub note: &'static str,
}

impl CatalogEntry {
    pub fn elliptic(&self) -> Result<EllipticStructure, GeomError> {
        EllipticStructure::new(&self.cubic.lift_to(self.flex.tower()), &self.flex)
    }

    /// Smooth cubic whose designated point is a flex.
    pub fn certify(&self) -> Result<bool, GeomError> {
        if !is_smooth(&self.cubic)? {
            return Ok(false);
        }
        match EllipticStructure::with_certified_cubic(&self.cubic.lift_to(self.flex.tower()), &self.flex) {
            Ok(_) => Ok(true),
            Err(GeomError::NotAFlex) | Err(GeomError::PointNotOnCurve) => Ok(false),
            Err(e) => Err(e),
        }
    }
}

/// `Q(ω)` with `ω² + ω + 1 = 0`, printed as `w`.
pub fn eisenstein(budget: usize) -> FieldTower {
    let q = FieldTower::rationals().with_budget(budget);
    q.extend("w", &UniPoly::from_ints(&q, &[1, 1, 1])).expect("irreducible quadratic")
}

pub fn fermat(budget: usize) -> Result<CatalogEntry, CliError> {
    let k = eisenstein(budget);
    Ok(CatalogEntry {
        name: "fermat",
        cubic: PlaneCurve::parse(&k, "x^3 + y^3 + z^3")?,
        flex: ProjPoint::parse(&k, "1:-1:0")?,
        torsion: "E[3] defined over Q(w); points of order 9 over a cubic extension",
        note: "x^3 + y^3 + z^3 = 0 over Q(w) with origin [1:-1:0]",
    })
}

pub fn cyclic(budget: usize) -> Result<CatalogEntry, CliError> {
    let q = FieldTower::rationals().with_budget(budget);
    let cubic = PlaneCurve::parse(&q, "x^2 y + y^2 z + z^2 x")?;
    let flex = flex_points(&cubic)?.into_iter().min_by_key(|f| f.family_size).ok_or(GeomError::NoSolution)?;
    Ok(CatalogEntry {
        name: "cyclic",
        cubic,
        flex: flex.point,
        torsion: "[1:0:0], [0:1:0], [0:0:1] have order 9 for every flex origin",
        note: "x^2 y + y^2 z + z^2 x = 0; the origin is a flex over a cubic field",
    })
}

/// Coefficients `[a1, a2, a3, a4, a6]` of 90c3.
pub const EC90C3: [i64; 5] = [1, -1, 1, -122, 1721];

pub fn ec90c3_weierstrass(budget: usize) -> Weierstrass {
    Weierstrass::from_ints(&FieldTower::rationals().with_budget(budget), EC90C3)
}

pub fn ec90c3(budget: usize) -> Result<CatalogEntry, CliError> {
    let w = ec90c3_weierstrass(budget);
    let q = w.tower().clone();
    Ok(CatalogEntry {
        name: "90c3",
        cubic: w.curve(),
        flex: ProjPoint::from_ints(&q, [0, 1, 0]),
        torsion: "rational torsion Z/12",
        note: "y^2 z + y z^2 + x y z = x^3 - x^2 z - 122 x z^2 + 1721 z^3 with flex [0:1:0]",
    })
}

pub fn lookup(name: &str, budget: usize) -> Result<CatalogEntry, CliError> {
    match name {
        "fermat" => fermat(budget),
        "cyclic" => cyclic(budget),
        "90c3" => ec90c3(budget),
        _ => Err(CliError::UnknownCurve(name.into())),
    }
}
