//! Dynamic evaluation: split a tower when a zero divisor shows up and rerun
//! the computation in each branch.

use super::poly::UniPoly;
use super::tower::{self as t, Elem, FieldError, FieldTower, RawPoly, Repr, Ring};

#[derive(Clone)]
struct Step {
    level: usize,
    modulus: Vec<Repr>,
    after: FieldTower,
}

/// Ring homomorphism from a tower to a branch of it (possibly followed by an
/// extension of that branch).
#[derive(Clone)]
pub struct TowerMap {
    source: FieldTower,
    target: FieldTower,
    steps: Vec<Step>,
}

impl std::fmt::Debug for TowerMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "TowerMap({:?} -> {:?})", self.source, self.target)
    }
}

fn map_repr(r: &Repr, depth: usize, level: usize, below: Ring, modulus: &[Repr]) -> Repr {
    if depth < level {
        return r.clone();
    }
    match r {
        Repr::Poly(v) if depth == level => Repr::Poly(t::reduce_mod(below, modulus, v.clone())),
        Repr::Poly(v) => {
            let mut out: Vec<Repr> =
                v.iter().map(|c| map_repr(c, depth - 1, level, below, modulus)).collect();
            t::trim(&mut out);
            Repr::Poly(out)
        }
        Repr::Rat(_) => r.clone(),
    }
}

impl TowerMap {
    pub fn identity(tower: &FieldTower) -> TowerMap {
        TowerMap {
            source: tower.clone(),
            target: tower.clone(),
            steps: Vec::new(),
        }
    }

    pub fn source(&self) -> &FieldTower {
        &self.source
    }

    pub fn target(&self) -> &FieldTower {
        &self.target
    }

    pub fn is_identity(&self) -> bool {
        self.steps.is_empty() && self.source.same_as(&self.target)
    }

    /// Image of an element of the source (or of a prefix of it).
    pub fn apply(&self, e: &Elem) -> Elem {
        assert!(self.source.extends(e.tower()), "element outside the map's source");
        let d = e.tower().depth();
        let mut r = e.repr.clone();
        for s in &self.steps {
            if s.level <= d {
                r = map_repr(&r, d, s.level, s.after.node(s.level - 1), &s.modulus);
            }
        }
        let stage = self.steps.last().map_or(&self.source, |s| &s.after).prefix(d);
        self.target.lift(&Elem::raw(stage, r))
    }

    pub fn apply_poly(&self, p: &UniPoly) -> UniPoly {
        UniPoly::new(&self.target, p.coeffs().iter().map(|c| self.apply(c)).collect())
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &TowerMap) -> TowerMap {
        assert!(next.source.extends(&self.target), "maps do not compose");
        let mut steps = self.steps.clone();
        steps.extend(next.steps.iter().cloned());
        TowerMap {
            source: self.source.clone(),
            target: next.target.clone(),
            steps,
        }
    }

    /// Same map, landing in an extension of the current target.
    pub fn into_extension(&self, ext: &FieldTower) -> TowerMap {
        assert!(ext.extends(&self.target), "not an extension of the target");
        TowerMap {
            source: self.source.clone(),
            target: ext.clone(),
            steps: self.steps.clone(),
        }
    }
}

fn rebuild(tower: &FieldTower, level: usize, modulus: Vec<Repr>) -> Result<TowerMap, FieldError> {
    let lower = tower.prefix(level - 1);
    let mut cur = lower.push_level(tower.level_name(level), modulus.clone())?;
    let below = lower.node(level - 1);
    for lvl in level + 1..=tower.depth() {
        let n = tower.node(lvl).unwrap();
        let m: Vec<Repr> = n
            .modulus
            .iter()
            .map(|c| map_repr(c, lvl - 1, level, below, &modulus))
            .collect();
        cur = cur.push_level(&n.name, m)?;
    }
    let step = Step {
        level,
        modulus,
        after: cur.clone(),
    };
    Ok(TowerMap {
        source: tower.clone(),
        target: cur,
        steps: vec![step],
    })
}

/// Split `level` along a monic factor of its modulus. Returns the branch for
/// the factor followed by the branch for the cofactor.
pub fn split(tower: &FieldTower, level: usize, factor: &RawPoly) -> Result<Vec<TowerMap>, FieldError> {
    let n = tower.node(level).expect("level out of range");
    let (cof, rem) = t::poly_divrem(n.parent(), &n.modulus, &factor.0)?;
    if !rem.is_empty() {
        return Err(FieldError::DegenerateModulus("split factor does not divide the modulus".into()));
    }
    let mut out = Vec::new();
    for m in [factor.0.clone(), cof] {
        if m.len() >= 2 {
            out.push(rebuild(tower, level, m)?);
        }
    }
    Ok(out)
}

/// The single branch of `level` cut out by `factor`, a monic divisor of its
/// modulus. A linear factor specializes the level's generator to a value.
pub fn branch(tower: &FieldTower, level: usize, factor: &UniPoly) -> Result<TowerMap, FieldError> {
    let base = tower.prefix(level - 1);
    let f = base.lift_poly(factor).monic()?;
    let n = tower.node(level).expect("level out of range");
    let (_, rem) = t::poly_divrem(n.parent(), &n.modulus, &f.c)?;
    if !rem.is_empty() || f.c.len() < 2 {
        return Err(FieldError::DegenerateModulus("branch factor does not divide the modulus".into()));
    }
    rebuild(tower, level, f.c)
}

/// Errors that may carry a zero-divisor report.
pub trait SplitSignal: From<FieldError> {
    fn zero_divisor(&self) -> Option<(usize, &RawPoly)>;
}

impl SplitSignal for FieldError {
    fn zero_divisor(&self) -> Option<(usize, &RawPoly)> {
        match self {
            FieldError::ZeroDivisor { level, factor } => Some((*level, factor)),
            _ => None,
        }
    }
}

/// Run `f` over every branch of `tower` it forces. Zero divisors at levels
/// `>= min_level` split the current branch; others propagate to the caller.
pub fn branches<T, E: SplitSignal>(
    tower: &FieldTower,
    min_level: usize,
    mut f: impl FnMut(&TowerMap) -> Result<T, E>,
) -> Result<Vec<(TowerMap, T)>, E> {
    let mut stack = vec![TowerMap::identity(tower)];
    let mut out = Vec::new();
    while let Some(map) = stack.pop() {
        match f(&map) {
            Ok(v) => out.push((map, v)),
            Err(e) => {
                let split_at = match e.zero_divisor() {
                    Some((level, factor)) if level >= min_level && level <= map.target().depth() => {
                        Some(split(map.target(), level, factor)?)
                    }
                    _ => None,
                };
                match split_at {
                    Some(parts) => {
                        for p in parts.into_iter().rev() {
                            stack.push(map.then(&p));
                        }
                    }
                    None => return Err(e),
                }
            }
        }
    }
    Ok(out)
}
