//! Combinatorics of concrete arrangements: a canonical fingerprint of the
//! local intersection data, incidence gates for construction hypotheses, and the
//! relabelings of components that preserve the fingerprint.

mod clubsuit;
mod fingerprint;
mod incidence;

pub use clubsuit::{verify_clubsuit, Clause, ClubsuitReport};
pub use fingerprint::{admissible_permutations, fingerprint, ComponentDescriptor, Fingerprint, PointRecord};
pub use incidence::{check_incidence, IncidenceReport, Meeting};

use crate::curve_geometry::{GeomError, PlaneCurve, ProjPoint};
use crate::exact_fields::{branches, FieldTower};

/// Deepest tower among those given. Towers in this crate grow by extension
/// so the deepest one contains the others.
fn deepest<'a>(towers: impl IntoIterator<Item = &'a FieldTower>) -> Result<FieldTower, GeomError> {
    let mut best: Option<FieldTower> = None;
    for t in towers {
        best = Some(match best {
            None => t.clone(),
            Some(b) if b.extends(t) => b,
            Some(b) if t.extends(&b) => t.clone(),
            Some(_) => return Err(GeomError::Unsupported("curves live in unrelated extensions".into())),
        });
    }
    best.ok_or_else(|| GeomError::Malformed("no curves".into()))
}

/// Whether `c` vanishes at `p`, asking the same of every conjugate of `p`.
fn vanishes(c: &PlaneCurve, p: &ProjPoint) -> Result<bool, GeomError> {
    let tw = deepest([c.tower(), p.tower()])?;
    let (c, p) = (c.lift_to(&tw), p.lift_to(&tw));
    let res = branches(&tw, 1, |m| Ok::<_, GeomError>(c.map(m).contains(&p.map(m))?))?;
    let hits = res.iter().filter(|(_, v)| *v).count();
    if hits != 0 && hits != res.len() {
        return Err(GeomError::Unsupported("a conjugate family meets a third curve only in part".into()));
    }
    Ok(hits != 0)
}

/// A point where two or more of the curves meet.
#[derive(Clone, Debug)]
struct RawPoint {
    point: ProjPoint,
    curves: Vec<usize>,
    /// `(i, j, (C_i, C_j)_p)` for `i < j` in `curves`.
    pairwise: Vec<(usize, usize, u32)>,
    /// Multiplicity of the point on each curve.
    branches: Vec<(usize, u32)>,
    orbit: usize,
}

/// Every point of pairwise intersection, once, with the full local data.
/// `skip_common` lists pairs with a common component instead of failing.
fn collect_points(curves: &[PlaneCurve], skip_common: bool) -> Result<(Vec<RawPoint>, Vec<(usize, usize)>), GeomError> {
    use crate::curve_geometry::{intersection_multiplicity, intersection_points, point_multiplicity};
    let tw = deepest(curves.iter().map(PlaneCurve::tower))?;
    let curves: Vec<PlaneCurve> = curves.iter().map(|c| c.lift_to(&tw)).collect();
    let mut out = Vec::new();
    let mut common = Vec::new();
    for i in 0..curves.len() {
        for j in i + 1..curves.len() {
            if common.contains(&(i, j)) {
                continue;
            }
            let ips = match intersection_points(&curves[i], &curves[j]) {
                Ok(v) => v,
                Err(GeomError::CommonComponent) if skip_common => {
                    common.push((i, j));
                    continue;
                }
                Err(e) => return Err(e),
            };
            for ip in ips {
                let local: Vec<PlaneCurve> = curves.iter().map(|c| c.map(&ip.map)).collect();
                let mut on = Vec::new();
                for (k, c) in local.iter().enumerate() {
                    if k == i || k == j || vanishes(c, &ip.point)? {
                        on.push(k);
                    }
                }
                // recorded from its first pair only
                if on[0] != i || on[1] != j {
                    continue;
                }
                let mut pairwise = Vec::new();
                for (x, &a) in on.iter().enumerate() {
                    for &b in &on[x + 1..] {
                        if common.contains(&(a, b)) {
                            continue;
                        }
                        let m = if (a, b) == (i, j) {
                            ip.multiplicity
                        } else {
                            // the pair may share a component not yet seen
                            match intersection_multiplicity(&local[a], &local[b], &ip.point) {
                                Err(GeomError::CommonComponent) if skip_common => {
                                    common.push((a, b));
                                    continue;
                                }
                                r => r?,
                            }
                        };
                        pairwise.push((a, b, m));
                    }
                }
                let branches = on
                    .iter()
                    .map(|&k| Ok((k, point_multiplicity(&local[k], &ip.point)?)))
                    .collect::<Result<Vec<_>, GeomError>>()?;
                out.push(RawPoint { point: ip.point, curves: on, pairwise, branches, orbit: ip.family_size });
            }
        }
    }
    Ok((out, common))
}
