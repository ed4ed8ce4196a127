use super::collect_points;
use crate::curve_geometry::{GeomError, PlaneCurve, ProjPoint};

#[derive(Clone, Debug)]
pub struct Meeting {
    pub point: ProjPoint,
    pub curves: Vec<usize>,
    pub pairwise: Vec<(usize, usize, u32)>,
    /// Number of conjugate points this record stands for.
    pub orbit: usize,
}

#[derive(Clone, Debug, Default)]
pub struct IncidenceReport {
    pub meetings: Vec<Meeting>,
    /// Points on three or more of the curves.
    pub concurrent: Vec<Meeting>,
    /// Pairs meeting only transversally.
    pub transversal: Vec<(usize, usize)>,
    /// `(i, j, point, multiplicity)` for every non-transversal meeting.
    pub tangencies: Vec<(usize, usize, ProjPoint, u32)>,
    pub common_components: Vec<(usize, usize)>,
}

impl IncidenceReport {
    /// No three curves through a point and no shared components.
    pub fn general_position(&self) -> bool {
        self.concurrent.is_empty() && self.common_components.is_empty()
    }

    pub fn meets_transversally(&self, i: usize, j: usize) -> bool {
        self.transversal.contains(&(i.min(j), i.max(j)))
    }
}

pub fn check_incidence(curves: &[PlaneCurve]) -> Result<IncidenceReport, GeomError> {
    let (points, common) = collect_points(curves, true)?;
    let mut rep = IncidenceReport { common_components: common, ..Default::default() };
    for p in points {
        let m = Meeting { point: p.point.clone(), curves: p.curves.clone(), pairwise: p.pairwise.clone(), orbit: p.orbit };
        for &(i, j, k) in &p.pairwise {
            if k > 1 {
                rep.tangencies.push((i, j, p.point.clone(), k));
            }
        }
        if m.curves.len() >= 3 {
            rep.concurrent.push(m.clone());
        }
        rep.meetings.push(m);
    }
    for i in 0..curves.len() {
        for j in i + 1..curves.len() {
            if rep.common_components.contains(&(i, j)) {
                continue;
            }
            let smooth_meeting = rep.meetings.iter().all(|m| {
                !(m.curves.contains(&i) && m.curves.contains(&j))
                    || m.pairwise.iter().any(|&(a, b, k)| (a, b) == (i, j) && k == 1)
            });
            if smooth_meeting {
                rep.transversal.push((i, j));
            }
        }
    }
    Ok(rep)
}
