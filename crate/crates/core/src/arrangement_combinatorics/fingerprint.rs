use std::collections::BTreeMap;

use itertools::Itertools;
use serde_json::{json, Value};

use super::collect_points;
use crate::curve_geometry::{is_smooth, GeomError, PlaneCurve};

/// Above this many candidate relabelings the canonical form is refused.
const RELABEL_CAP: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentDescriptor {
    pub index: usize,
    /// Position of the given curve this piece came from; `None` for the cubic.
    pub group: Option<usize>,
    pub degree: u32,
    pub smooth: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointRecord {
    pub components: Vec<usize>,
    pub pairwise: Vec<(usize, usize, u32)>,
    /// Multiplicity of the point on each incident component.
    pub branches: Vec<(usize, u32)>,
    pub orbit: usize,
}

#[derive(Clone, Debug)]
pub struct Fingerprint {
    pub components: Vec<ComponentDescriptor>,
    pub points: Vec<PointRecord>,
    canonical: String,
}

impl PartialEq for Fingerprint {
    fn eq(&self, o: &Fingerprint) -> bool {
        self.canonical == o.canonical
    }
}

impl Fingerprint {
    /// Serialization under the canonical relabeling; equal iff the
    /// arrangements have the same local data up to relabeling.
    pub fn canonical(&self) -> &str {
        &self.canonical
    }

    /// Points where three or more components meet.
    pub fn concurrent(&self) -> impl Iterator<Item = &PointRecord> {
        self.points.iter().filter(|p| p.components.len() >= 3)
    }

    /// Points where three or more of the given curves meet, ignoring the cubic.
    pub fn concurrent_off_cubic(&self) -> impl Iterator<Item = &PointRecord> {
        self.points.iter().filter(|p| p.components.iter().filter(|&&c| c != 0).count() >= 3)
    }

    /// Singular points of the union, counted with their orbits.
    pub fn singular_point_count(&self) -> usize {
        self.points.iter().map(|p| p.orbit).sum()
    }

    /// Per-pair multiplicities sum to the product of degrees.
    pub fn bezout_holds(&self) -> bool {
        let n = self.components.len();
        (0..n).tuple_combinations().all(|(i, j)| {
            let total: u64 = self
                .points
                .iter()
                .flat_map(|p| p.pairwise.iter().map(move |&(a, b, k)| (a, b, k as u64 * p.orbit as u64)))
                .filter(|&(a, b, _)| (a, b) == (i, j))
                .map(|t| t.2)
                .sum();
            total == self.components[i].degree as u64 * self.components[j].degree as u64
        })
    }

    /// Number of given curves, the cubic excluded.
    pub fn groups(&self) -> usize {
        self.components.iter().filter_map(|c| c.group).max().map_or(0, |g| g + 1)
    }

    fn group_members(&self, g: usize) -> Vec<usize> {
        self.components.iter().filter(|c| c.group == Some(g)).map(|c| c.index).collect()
    }

    /// Serialization after sending component `i` to `relabel[i]`.
    fn serialize(&self, relabel: &[usize]) -> String {
        let mut comps = vec![String::new(); relabel.len()];
        for c in &self.components {
            comps[relabel[c.index]] = format!("d{}{}", c.degree, if c.smooth { "s" } else { "x" });
        }
        let mut recs: Vec<String> = self
            .points
            .iter()
            .map(|p| {
                let on = p.components.iter().map(|&i| relabel[i]).sorted().join(",");
                let pw = p
                    .pairwise
                    .iter()
                    .map(|&(a, b, k)| {
                        let (a, b) = (relabel[a].min(relabel[b]), relabel[a].max(relabel[b]));
                        format!("{a}.{b}:{k}")
                    })
                    .sorted()
                    .join(",");
                let br = p.branches.iter().map(|&(i, k)| format!("{}:{k}", relabel[i])).sorted().join(",");
                // one copy per geometric point, so the grouping into conjugate
                // families does not show
                vec![format!("[{on}|{pw}|{br}]"); p.orbit]
            })
            .concat();
        recs.sort();
        format!("{};{}", comps.join(","), recs.concat())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "components": self.components.iter().map(|c| json!({
                "index": c.index, "group": c.group, "degree": c.degree, "smooth": c.smooth,
            })).collect::<Vec<_>>(),
            "points": self.points.iter().map(|p| json!({
                "components": p.components, "pairwise": p.pairwise, "branches": p.branches, "orbit": p.orbit,
            })).collect::<Vec<_>>(),
            "canonical": self.canonical,
        })
    }
}

/// Relabeling-invariant data of one component, used to cut down the search.
fn signature(f: &Fingerprint, i: usize) -> String {
    let c = &f.components[i];
    let local = f
        .points
        .iter()
        .filter(|p| p.components.contains(&i))
        .map(|p| {
            let ks = p.pairwise.iter().filter(|&&(a, b, _)| a == i || b == i).map(|t| t.2).sorted().join(",");
            vec![format!("{}:{ks}", p.components.len()); p.orbit]
        })
        .concat()
        .into_iter()
        .sorted()
        .join(";");
    format!("{}{}{}|{local}", if i == 0 { "0" } else { "1" }, c.degree, c.smooth)
}

fn canonical_form(f: &Fingerprint) -> Result<String, GeomError> {
    let mut blocks: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for i in 0..f.components.len() {
        blocks.entry(signature(f, i)).or_default().push(i);
    }
    let blocks: Vec<Vec<usize>> = blocks.into_values().collect();
    let count: usize = blocks.iter().map(|b| (1..=b.len()).product::<usize>()).product();
    if count > RELABEL_CAP {
        return Err(GeomError::Unsupported(format!("{count} relabelings to canonicalize")));
    }
    let mut best: Option<String> = None;
    let orders = blocks.iter().map(|b| b.iter().copied().permutations(b.len()).collect::<Vec<_>>());
    for choice in orders.multi_cartesian_product() {
        let mut relabel = vec![0; f.components.len()];
        for (new, old) in choice.into_iter().flatten().enumerate() {
            relabel[old] = new;
        }
        let s = f.serialize(&relabel);
        if best.as_ref().is_none_or(|b| s < *b) {
            best = Some(s);
        }
    }
    Ok(best.unwrap_or_default())
}

/// Fingerprint of `cubic + Σ curves`. Each given curve is split along its
/// stored factors; the pieces remember which curve they came from.
pub fn fingerprint(cubic: &PlaneCurve, curves: &[PlaneCurve]) -> Result<Fingerprint, GeomError> {
    let mut pieces = vec![cubic.clone()];
    let mut components = vec![ComponentDescriptor { index: 0, group: None, degree: cubic.degree(), smooth: is_smooth(cubic)? }];
    for (g, c) in curves.iter().enumerate() {
        for part in c.parts() {
            let smooth = part.degree() == 1 || is_smooth(&part)?;
            components.push(ComponentDescriptor { index: pieces.len(), group: Some(g), degree: part.degree(), smooth });
            pieces.push(part);
        }
    }
    let (raw, _) = collect_points(&pieces, false)?;
    let points = raw
        .into_iter()
        .map(|p| PointRecord { components: p.curves, pairwise: p.pairwise, branches: p.branches, orbit: p.orbit })
        .collect();
    let mut f = Fingerprint { components, points, canonical: String::new() };
    f.canonical = canonical_form(&f)?;
    Ok(f)
}

/// Relabelings `σ` of the given curves (cubic fixed) such that some
/// bijection of pieces, sending the pieces of curve `g` to those of `σ(g)`,
/// carries the local data of `f1` onto that of `f2`. Every admissible
/// relabeling is among them.
pub fn admissible_permutations(f1: &Fingerprint, f2: &Fingerprint) -> Vec<Vec<usize>> {
    let k = f1.groups();
    if f1 != f2 || k != f2.groups() || f1.components.len() != f2.components.len() {
        return Vec::new();
    }
    let target = f2.serialize(&(0..f2.components.len()).collect::<Vec<_>>());
    let degrees = |f: &Fingerprint, g: usize| f.group_members(g).iter().map(|&i| f.components[i].degree).sorted().collect::<Vec<_>>();
    let mut out = Vec::new();
    for sigma in (0..k).permutations(k) {
        if (0..k).any(|g| degrees(f1, g) != degrees(f2, sigma[g])) {
            continue;
        }
        // all piece bijections compatible with sigma
        let per_group = (0..k).map(|g| {
            let src = f1.group_members(g);
            let dst = f2.group_members(sigma[g]);
            dst.iter().copied().permutations(dst.len()).map(move |d| src.iter().copied().zip(d).collect::<Vec<_>>()).collect::<Vec<_>>()
        });
        let found = per_group.multi_cartesian_product().any(|choice| {
            let mut relabel = vec![0; f1.components.len()];
            for (a, b) in choice.into_iter().flatten() {
                if f1.components[a].degree != f2.components[b].degree {
                    return false;
                }
                relabel[a] = b;
            }
            f1.serialize(&relabel) == target
        });
        if found {
            out.push(sigma);
        }
    }
    out
}
