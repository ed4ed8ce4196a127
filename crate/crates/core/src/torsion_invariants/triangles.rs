use std::collections::BTreeMap;

use num_integer::Integer;

use super::lattice::{weil_exponent, TorsionClass};
use super::InvariantError;

/// Three tangent lines at `P, <-2>P, <4>P` for `P` of order 9.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangle {
    pub vertices: [TorsionClass; 3],
    /// `<3>P`, shared by the three vertices.
    pub class: TorsionClass,
}

impl Triangle {
    /// Vertex set in sorted order, for comparing triangles.
    pub fn key(&self) -> [TorsionClass; 3] {
        let mut v = self.vertices;
        v.sort();
        v
    }
}

pub fn triangle_from(p: &TorsionClass) -> Result<Triangle, InvariantError> {
    if p.order() != 9 {
        return Err(InvariantError::WrongOrder { expected: 9, found: p.order() });
    }
    Ok(Triangle { vertices: [*p, p.scale(-2), p.scale(4)], class: p.scale(3) })
}

/// How two triangles sit relative to each other.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum PairCase {
    /// Same associated class.
    Equal,
    /// Classes `T` and `<2>T`.
    Double,
    /// Classes spanning the full 3-torsion.
    Independent,
}

pub fn classify_pair(a: &Triangle, b: &Triangle) -> PairCase {
    if a.class == b.class {
        PairCase::Equal
    } else if a.class.scale(2) == b.class {
        PairCase::Double
    } else {
        PairCase::Independent
    }
}

#[derive(Clone, Debug)]
pub struct TriangleCatalog {
    pub order_nine: usize,
    pub triangles: Vec<Triangle>,
    /// Associated class to the triangles carrying it.
    pub by_class: BTreeMap<TorsionClass, Vec<Triangle>>,
    /// Counts of unordered pairs of distinct triangles per case.
    pub pair_counts: BTreeMap<PairCase, usize>,
}

/// All triangles of `(Z/9)²`.
pub fn enumerate_triangles() -> TriangleCatalog {
    let mut order_nine = 0;
    let mut triangles: Vec<Triangle> = Vec::new();
    for a in 0..9 {
        for b in 0..9 {
            let p = TorsionClass::new(9, a, b);
            if p.order() != 9 {
                continue;
            }
            order_nine += 1;
            let t = triangle_from(&p).expect("order 9");
            if !triangles.iter().any(|s| s.key() == t.key()) {
                triangles.push(t);
            }
        }
    }
    let mut by_class: BTreeMap<TorsionClass, Vec<Triangle>> = BTreeMap::new();
    for t in &triangles {
        by_class.entry(t.class).or_default().push(t.clone());
    }
    let mut pair_counts = BTreeMap::new();
    for (i, s) in triangles.iter().enumerate() {
        for t in &triangles[i + 1..] {
            *pair_counts.entry(classify_pair(s, t)).or_insert(0) += 1;
        }
    }
    TriangleCatalog { order_nine, triangles, by_class, pair_counts }
}

/// Pairing exponent of representative vertices; a unit mod 9 exactly when
/// the two vertices span `(Z/9)²`.
pub fn vertex_pairing(a: &Triangle, b: &Triangle) -> u64 {
    weil_exponent(&a.vertices[0], &b.vertices[0]).expect("same modulus")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClubsuitParameters {
    pub valid: bool,
    /// Order of `Q = <-(3d-1)>P`.
    pub residual_order: Option<u64>,
    /// Order of `P + Q = <2-3d>P`.
    pub sum_order: Option<u64>,
}

/// Whether a point of order `r` carries two degree-`d` curves meeting the
/// cubic only at `P` and `Q` with multiplicities `(3d-1, 1)` and `(1, 3d-1)`.
pub fn clubsuit_parameters(d: u64, r: u64) -> ClubsuitParameters {
    let invalid = ClubsuitParameters { valid: false, residual_order: None, sum_order: None };
    if d < 2 || r == 0 {
        return invalid;
    }
    let bound = 3 * d * (3 * d - 2);
    if bound % r != 0 || (3 * d) % r == 0 {
        return invalid;
    }
    ClubsuitParameters {
        valid: true,
        residual_order: Some(r / r.gcd(&(3 * d - 1))),
        sum_order: Some(r / r.gcd(&(3 * d - 2))),
    }
}

/// Every admissible order for degree `d`.
pub fn clubsuit_orders(d: u64) -> Vec<u64> {
    let bound = 3 * d * (3 * d - 2);
    (1..=bound).filter(|&r| clubsuit_parameters(d, r).valid).collect()
}
