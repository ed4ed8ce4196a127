//! Projective plane curves over exact towers: intersections, flexes,
//! tangents, the chord-tangent group law and local branch expansions.

mod curve;
mod elliptic;
mod interpolate;
mod intersect;
mod parse;
mod point;
mod series;
mod weierstrass;

use thiserror::Error;

use crate::exact_fields::{branches, FieldError, FieldTower, RawPoly, SplitSignal, TowerMap};

pub use curve::{Affine, Mono, PlaneCurve};
pub use elliptic::{tangent_residual, EllipticStructure};
pub use interpolate::{interpolate_curve_with_divisor, interpolation_kernel};
pub use intersect::{intersection_multiplicity, intersection_points, point_multiplicity, IntersectionPoint};
pub use parse::parse_elem;
pub use point::ProjPoint;
pub use series::{branch_series, BranchSeries};
pub use weierstrass::{division_polynomial, Weierstrass};

#[derive(Debug, Clone, Error)]
pub enum GeomError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("curves share a common component")]
    CommonComponent,
    #[error("point is not on the curve")]
    PointNotOnCurve,
    #[error("point is singular on the curve")]
    SingularPoint,
    #[error("curve is not smooth")]
    NotSmooth,
    #[error("point is not a flex")]
    NotAFlex,
    #[error("line is not incident to the given points")]
    LineNotIncident,
    #[error("form is not homogeneous")]
    NotHomogeneous,
    #[error("all coordinates vanish")]
    ZeroVector,
    #[error("no curve satisfies the conditions")]
    NoSolution,
    #[error("conditions do not determine a unique curve (kernel dimension {0})")]
    NonUnique(usize),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl SplitSignal for GeomError {
    fn zero_divisor(&self) -> Option<(usize, &RawPoly)> {
        match self {
            GeomError::Field(e) => e.zero_divisor(),
            _ => None,
        }
    }
}

/// True when `f` holds on every branch of `tower` it forces.
pub(crate) fn on_all_branches(
    tower: &FieldTower,
    mut f: impl FnMut(&TowerMap) -> Result<bool, GeomError>,
) -> Result<bool, GeomError> {
    Ok(branches(tower, 1, |m| f(m))?.into_iter().all(|(_, ok)| ok))
}

/// Certify that `c` has no singular point over the algebraic closure.
pub fn is_smooth(c: &PlaneCurve) -> Result<bool, GeomError> {
    let d = [c.partial(0), c.partial(1), c.partial(2)];
    for (i, j, k) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
        if d[i].is_zero() || d[j].is_zero() {
            continue;
        }
        let pts = match intersection_points(&d[i], &d[j]) {
            Ok(p) => p,
            Err(GeomError::CommonComponent) => continue,
            Err(e) => return Err(e),
        };
        for ip in pts {
            let third = d[k].map(&ip.map);
            let ok = on_all_branches(ip.point.tower(), |m| {
                Ok(!third.map(m).contains(&ip.point.map(m))?)
            })?;
            if !ok {
                return Ok(false);
            }
        }
        return Ok(true);
    }
    // every pair of partials shares a component
    Ok(false)
}

/// Flexes of a smooth cubic, one representative per conjugate family.
pub fn flex_points(c: &PlaneCurve) -> Result<Vec<IntersectionPoint>, GeomError> {
    if c.degree() != 3 {
        return Err(GeomError::Unsupported("flexes are computed for cubics".into()));
    }
    intersection_points(c, &c.hessian())
}

/// Scale a line so its first nonzero coefficient is 1.
pub fn normalize_line(l: &PlaneCurve) -> Result<PlaneCurve, GeomError> {
    for m in [[1, 0, 0], [0, 1, 0], [0, 0, 1]] {
        let a = l.coeff(m);
        if !a.is_zero_strict()? {
            return Ok(l.scale(&a.inv()?));
        }
    }
    Err(GeomError::ZeroVector)
}

/// Tangent line of `c` at the smooth point `p`, normalized.
pub fn tangent_line(c: &PlaneCurve, p: &ProjPoint) -> Result<PlaneCurve, GeomError> {
    if !c.contains(p)? {
        return Err(GeomError::PointNotOnCurve);
    }
    let g = c.gradient_at(p);
    if g.iter().try_fold(true, |acc, e| Ok::<_, FieldError>(acc && e.is_zero_strict()?))? {
        return Err(GeomError::SingularPoint);
    }
    normalize_line(&PlaneCurve::line(&g[0], &g[1], &g[2]))
}

/// Tangent lines of `c` passing through `q`, with their points of tangency.
pub fn tangents_through(c: &PlaneCurve, q: &ProjPoint) -> Result<Vec<(PlaneCurve, ProjPoint, TowerMap)>, GeomError> {
    let tw = if q.tower().depth() > c.tower().depth() { q.tower().clone() } else { c.tower().clone() };
    let c = c.lift_to(&tw);
    let q = q.lift_to(&tw);
    let mut polar = PlaneCurve::from_map(&tw, c.degree() - 1, Default::default());
    for i in 0..3 {
        polar = &polar + &c.partial(i).scale(&q.coords()[i]);
    }
    let mut out = Vec::new();
    for ip in intersection_points(&c, &polar)? {
        let cc = c.map(&ip.map);
        let l = tangent_line(&cc, &ip.point)?;
        out.push((l, ip.point, ip.map));
    }
    Ok(out)
}

/// True when three lines pass through one point.
pub fn lines_concurrent(a: &PlaneCurve, b: &PlaneCurve, c: &PlaneCurve) -> Result<bool, GeomError> {
    let row = |l: &PlaneCurve| [l.coeff([1, 0, 0]), l.coeff([0, 1, 0]), l.coeff([0, 0, 1])];
    let (r0, r1, r2) = (row(a), row(b), row(c));
    let x = point::cross(&r1, &r2);
    let det = &(&(&r0[0] * &x[0]) + &(&r0[1] * &x[1])) + &(&r0[2] * &x[2]);
    Ok(det.is_zero_strict()?)
}

/// Meeting point of two distinct lines.
pub fn line_meet(a: &PlaneCurve, b: &PlaneCurve) -> Result<ProjPoint, GeomError> {
    let row = |l: &PlaneCurve| [l.coeff([1, 0, 0]), l.coeff([0, 1, 0]), l.coeff([0, 0, 1])];
    let x = point::cross(&row(a), &row(b));
    let [x0, x1, x2] = x;
    ProjPoint::new(x0, x1, x2)
}

/// The line through two distinct points.
pub fn line_through(p: &ProjPoint, q: &ProjPoint) -> Result<PlaneCurve, GeomError> {
    let [a, b, c] = point::cross(p.coords(), q.coords());
    if a.is_zero_strict()? && b.is_zero_strict()? && c.is_zero_strict()? {
        return Err(GeomError::ZeroVector);
    }
    normalize_line(&PlaneCurve::line(&a, &b, &c))
}
