use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use super::point::ProjPoint;
use super::GeomError;
use crate::exact_fields::{serial, Elem, FieldError, FieldTower, TowerMap, UniPoly};

pub type Mono = [u32; 3];

/// Homogeneous polynomial in `x, y, z` over a tower, optionally carrying a
/// known factorization into components.
#[derive(Clone)]
pub struct PlaneCurve {
    tower: FieldTower,
    degree: u32,
    terms: BTreeMap<Mono, Elem>,
    components: Option<Vec<PlaneCurve>>,
}

impl PlaneCurve {
    pub fn new(tower: &FieldTower, degree: u32, terms: impl IntoIterator<Item = (Mono, Elem)>) -> Result<PlaneCurve, GeomError> {
        let mut map: BTreeMap<Mono, Elem> = BTreeMap::new();
        for (m, c) in terms {
            if m.iter().sum::<u32>() != degree {
                return Err(GeomError::NotHomogeneous);
            }
            let c = tower.lift(&c);
            let e = match map.remove(&m) {
                Some(old) => &old + &c,
                None => c,
            };
            if !e.is_zero() {
                map.insert(m, e);
            }
        }
        Ok(PlaneCurve {
            tower: tower.clone(),
            degree,
            terms: map,
            components: None,
        })
    }

    pub(crate) fn from_map(tower: &FieldTower, degree: u32, mut terms: BTreeMap<Mono, Elem>) -> PlaneCurve {
        terms.retain(|_, c| !c.is_zero());
        PlaneCurve {
            tower: tower.clone(),
            degree,
            terms,
            components: None,
        }
    }

    /// Integer coefficients, `(i, j, k, c)` meaning `c x^i y^j z^k`.
    pub fn from_ints(tower: &FieldTower, terms: &[(u32, u32, u32, i64)]) -> PlaneCurve {
        let degree = terms.first().map_or(0, |t| t.0 + t.1 + t.2);
        PlaneCurve::new(tower, degree, terms.iter().map(|&(i, j, k, c)| ([i, j, k], tower.int(c))))
            .expect("homogeneous integer terms")
    }

    /// Parse an expression in `x, y, z`; other identifiers name tower levels.
    pub fn parse(tower: &FieldTower, src: &str) -> Result<PlaneCurve, GeomError> {
        let p = super::parse::parse_poly(tower, src)?;
        let degree = p.keys().map(|m| m.iter().sum::<u32>()).max().unwrap_or(0);
        PlaneCurve::new(tower, degree, p)
    }

    /// Linear form `a x + b y + c z`.
    pub fn line(a: &Elem, b: &Elem, c: &Elem) -> PlaneCurve {
        let tw = deepest(&[a, b, c]);
        PlaneCurve::new(&tw, 1, [([1, 0, 0], a.clone()), ([0, 1, 0], b.clone()), ([0, 0, 1], c.clone())]).unwrap()
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Elem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: Mono) -> Elem {
        self.terms.get(&m).cloned().unwrap_or_else(|| self.tower.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn components(&self) -> Option<&[PlaneCurve]> {
        self.components.as_deref()
    }

    /// Known components, or the curve itself.
    pub fn parts(&self) -> Vec<PlaneCurve> {
        match &self.components {
            Some(c) => c.clone(),
            None => vec![self.clone()],
        }
    }

    pub fn with_components(mut self, comps: Vec<PlaneCurve>) -> PlaneCurve {
        self.components = Some(comps);
        self
    }

    /// Product of curves, remembering the factors as components.
    pub fn product(curves: &[PlaneCurve]) -> PlaneCurve {
        let mut acc = curves[0].clone();
        for c in &curves[1..] {
            acc = &acc * c;
        }
        let mut comps = Vec::new();
        for c in curves {
            comps.extend(c.parts());
        }
        acc.with_components(comps)
    }

    pub fn lift_to(&self, tower: &FieldTower) -> PlaneCurve {
        let mut out = PlaneCurve::from_map(
            tower,
            self.degree,
            self.terms.iter().map(|(m, c)| (*m, tower.lift(c))).collect(),
        );
        out.components = self.components.as_ref().map(|cs| cs.iter().map(|c| c.lift_to(tower)).collect());
        out
    }

    pub fn map(&self, f: &TowerMap) -> PlaneCurve {
        let mut out = PlaneCurve::from_map(
            f.target(),
            self.degree,
            self.terms.iter().map(|(m, c)| (*m, f.apply(c))).collect(),
        );
        out.components = self.components.as_ref().map(|cs| cs.iter().map(|c| c.map(f)).collect());
        out
    }

    pub fn eval(&self, p: &[Elem; 3]) -> Elem {
        let tw = deepest(&[&p[0], &p[1], &p[2]]);
        let tw = if tw.extends(&self.tower) { tw } else { self.tower.clone() };
        let mut acc = tw.zero();
        for (m, c) in &self.terms {
            let t = &(&(&p[0].pow(m[0] as u64) * &p[1].pow(m[1] as u64)) * &p[2].pow(m[2] as u64)) * c;
            acc = &acc + &t;
        }
        acc
    }

    pub fn eval_point(&self, p: &ProjPoint) -> Elem {
        self.eval(p.coords())
    }

    /// Strict test that `p` lies on the curve.
    pub fn contains(&self, p: &ProjPoint) -> Result<bool, FieldError> {
        self.eval_point(p).is_zero_strict()
    }

    pub fn partial(&self, var: usize) -> PlaneCurve {
        let mut out = BTreeMap::new();
        for (m, c) in &self.terms {
            if m[var] > 0 {
                let mut m2 = *m;
                m2[var] -= 1;
                out.insert(m2, c.scale(&crate::exact_fields::Rational::from_integer(m[var].into())));
            }
        }
        PlaneCurve::from_map(&self.tower, self.degree.saturating_sub(1), out)
    }

    pub fn gradient_at(&self, p: &ProjPoint) -> [Elem; 3] {
        [0, 1, 2].map(|i| self.partial(i).eval_point(p))
    }

    pub fn scale(&self, k: &Elem) -> PlaneCurve {
        let tw = if k.tower().depth() > self.tower.depth() { k.tower().clone() } else { self.tower.clone() };
        PlaneCurve::from_map(&tw, self.degree, self.terms.iter().map(|(m, c)| (*m, c * k)).collect())
    }

    /// Hessian determinant.
    pub fn hessian(&self) -> PlaneCurve {
        let h: Vec<Vec<PlaneCurve>> =
            (0..3).map(|i| (0..3).map(|j| self.partial(i).partial(j)).collect()).collect();
        let minor = |a: usize, b: usize, c: usize, d: usize| &(&h[1][a] * &h[2][b]) - &(&h[1][c] * &h[2][d]);
        let t0 = &h[0][0] * &minor(1, 2, 2, 1);
        let t1 = &h[0][1] * &minor(0, 2, 2, 0);
        let t2 = &h[0][2] * &minor(0, 1, 1, 0);
        &(&t0 - &t1) + &t2
    }

    /// `F(M v)` for a 3x3 matrix `M` (rows give the images of x, y, z).
    pub fn transform(&self, m: &[[Elem; 3]; 3]) -> PlaneCurve {
        let tw = deepest(&m.iter().flatten().collect::<Vec<_>>());
        let tw = if tw.extends(&self.tower) { tw } else { self.tower.clone() };
        let lin: Vec<PlaneCurve> = (0..3)
            .map(|r| PlaneCurve::new(&tw, 1, [([1, 0, 0], m[r][0].clone()), ([0, 1, 0], m[r][1].clone()), ([0, 0, 1], m[r][2].clone())]).unwrap())
            .collect();
        let one = PlaneCurve::new(&tw, 0, [([0, 0, 0], tw.one())]).unwrap();
        let mut acc = PlaneCurve::from_map(&tw, self.degree, BTreeMap::new());
        for (mono, c) in &self.terms {
            let mut t = one.scale(c);
            for v in 0..3 {
                for _ in 0..mono[v] {
                    t = &t * &lin[v];
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Restriction to the line through `a` and `b`: `F(a + t b)`.
    pub fn restrict(&self, a: &[Elem; 3], b: &[Elem; 3]) -> UniPoly {
        let tw = deepest(&[&a[0], &a[1], &a[2], &b[0], &b[1], &b[2]]);
        let tw = if tw.extends(&self.tower) { tw } else { self.tower.clone() };
        let lin: Vec<UniPoly> = (0..3).map(|i| UniPoly::new(&tw, vec![a[i].clone(), b[i].clone()])).collect();
        let mut acc = UniPoly::zero(&tw);
        for (m, c) in &self.terms {
            let t = &(&lin[0].pow(m[0]) * &lin[1].pow(m[1])) * &lin[2].pow(m[2]);
            acc = &acc + &t.scale(c);
        }
        acc
    }

    /// Local polynomial at `p` in the chart where coordinate `chart` is 1:
    /// the remaining coordinates are `p_i + u`, `p_j + v` in increasing order.
    pub fn local_at(&self, p: &ProjPoint, chart: usize) -> Result<Affine, FieldError> {
        let c = p.coords();
        let s = c[chart].inv()?;
        let base: Vec<Elem> = c.iter().map(|x| x * &s).collect();
        let others: Vec<usize> = (0..3).filter(|&i| i != chart).collect();
        let tw = base[0].tower().clone();
        let tw = if tw.extends(&self.tower) { tw } else { self.tower.clone() };
        // each coordinate as an affine polynomial in (u, v)
        let mut coord: Vec<Affine> = Vec::new();
        for i in 0..3 {
            let mut a = Affine::constant(&tw.lift(&base[i]));
            if i == others[0] {
                a = &a + &Affine::monomial(&tw, 1, 0);
            } else if i == others[1] {
                a = &a + &Affine::monomial(&tw, 0, 1);
            }
            coord.push(a);
        }
        let mut acc = Affine::zero(&tw);
        for (m, k) in &self.terms {
            let mut t = Affine::constant(&tw.lift(k));
            for v in 0..3 {
                for _ in 0..m[v] {
                    t = &t * &coord[v];
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> Value {
        let terms: serde_json::Map<String, Value> = self
            .terms
            .iter()
            .map(|(m, c)| (format!("{},{},{}", m[0], m[1], m[2]), serial::elem_to_json(c)))
            .collect();
        json!({"degree": self.degree, "terms": terms})
    }

    pub fn from_json(tower: &FieldTower, v: &Value) -> Result<PlaneCurve, GeomError> {
        let degree = v.get("degree").and_then(Value::as_u64).ok_or(GeomError::Malformed("curve degree".into()))? as u32;
        let terms = v.get("terms").and_then(Value::as_object).ok_or(GeomError::Malformed("curve terms".into()))?;
        let mut out = Vec::new();
        for (k, c) in terms {
            let idx: Vec<u32> = k
                .split(',')
                .map(|s| s.trim().parse().map_err(|_| GeomError::Malformed(format!("monomial key {k:?}"))))
                .collect::<Result<_, _>>()?;
            if idx.len() != 3 {
                return Err(GeomError::Malformed(format!("monomial key {k:?}")));
            }
            out.push(([idx[0], idx[1], idx[2]], serial::elem_from_json(tower, c)?));
        }
        PlaneCurve::new(tower, degree, out)
    }
}

pub(crate) fn deepest(es: &[&Elem]) -> FieldTower {
    let mut best = es[0].tower().clone();
    for e in &es[1..] {
        if e.tower().depth() > best.depth() {
            best = e.tower().clone();
        }
    }
    best
}

impl PartialEq for PlaneCurve {
    fn eq(&self, o: &PlaneCurve) -> bool {
        self.degree == o.degree
            && self.terms.len() == o.terms.len()
            && self.terms.iter().all(|(m, c)| o.terms.get(m).is_some_and(|d| d == c))
    }
}

impl fmt::Debug for PlaneCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let vars: Vec<String> = ["x", "y", "z"]
                    .iter()
                    .zip(m)
                    .filter(|(_, &e)| e > 0)
                    .map(|(v, &e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
                    .collect();
                let cs = c.to_string();
                match (vars.is_empty(), cs.as_str()) {
                    (true, _) => format!("({cs})"),
                    (false, "1") => vars.join(" "),
                    (false, _) => format!("({cs}) {}", vars.join(" ")),
                }
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

fn unify_curves(a: &PlaneCurve, b: &PlaneCurve) -> (PlaneCurve, PlaneCurve) {
    if a.tower.depth() >= b.tower.depth() {
        (a.clone(), b.lift_to(&a.tower))
    } else {
        (a.lift_to(&b.tower), b.clone())
    }
}

impl std::ops::Add for &PlaneCurve {
    type Output = PlaneCurve;
    fn add(self, o: &PlaneCurve) -> PlaneCurve {
        let (a, b) = unify_curves(self, o);
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        assert_eq!(a.degree, b.degree, "adding forms of different degree");
        let mut t = a.terms.clone();
        for (m, c) in b.terms {
            let e = match t.remove(&m) {
                Some(x) => &x + &c,
                None => c,
            };
            t.insert(m, e);
        }
        PlaneCurve::from_map(&a.tower, a.degree, t)
    }
}

impl std::ops::Sub for &PlaneCurve {
    type Output = PlaneCurve;
    fn sub(self, o: &PlaneCurve) -> PlaneCurve {
        self + &o.scale(&(-o.tower.one()))
    }
}

impl std::ops::Mul for &PlaneCurve {
    type Output = PlaneCurve;
    fn mul(self, o: &PlaneCurve) -> PlaneCurve {
        let (a, b) = unify_curves(self, o);
        let mut t: BTreeMap<Mono, Elem> = BTreeMap::new();
        for (m1, c1) in &a.terms {
            for (m2, c2) in &b.terms {
                let m = [m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2]];
                let p = c1 * c2;
                let e = match t.remove(&m) {
                    Some(x) => &x + &p,
                    None => p,
                };
                t.insert(m, e);
            }
        }
        PlaneCurve::from_map(&a.tower, a.degree + b.degree, t)
    }
}

// ---------------------------------------------------------------------------

/// Polynomial in two local variables `(u, v)`.
#[derive(Clone)]
pub struct Affine {
    pub(crate) tower: FieldTower,
    pub(crate) terms: BTreeMap<(u32, u32), Elem>,
}

impl Affine {
    pub fn zero(tower: &FieldTower) -> Affine {
        Affine {
            tower: tower.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: &Elem) -> Affine {
        let mut a = Affine::zero(c.tower());
        if !c.is_zero() {
            a.terms.insert((0, 0), c.clone());
        }
        a
    }

    pub fn monomial(tower: &FieldTower, i: u32, j: u32) -> Affine {
        let mut a = Affine::zero(tower);
        a.terms.insert((i, j), tower.one());
        a
    }

    pub fn from_terms(tower: &FieldTower, terms: impl IntoIterator<Item = ((u32, u32), Elem)>) -> Affine {
        let mut a = Affine::zero(tower);
        for (k, c) in terms {
            a.add_term(k, tower.lift(&c));
        }
        a
    }

    fn add_term(&mut self, k: (u32, u32), c: Elem) {
        let e = match self.terms.remove(&k) {
            Some(x) => &x + &c,
            None => c,
        };
        if !e.is_zero() {
            self.terms.insert(k, e);
        }
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Elem {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(|| self.tower.zero())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    /// `f(u, 0)`.
    pub fn at_v0(&self) -> UniPoly {
        let n = self.terms.keys().filter(|k| k.1 == 0).map(|k| k.0).max();
        let mut c = vec![self.tower.zero(); n.map_or(0, |n| n as usize + 1)];
        for ((i, j), e) in &self.terms {
            if *j == 0 {
                c[*i as usize] = e.clone();
            }
        }
        UniPoly::new(&self.tower, c)
    }

    /// `f / v`, assuming every term contains `v`.
    pub fn div_v(&self) -> Affine {
        Affine {
            tower: self.tower.clone(),
            terms: self.terms.iter().map(|((i, j), c)| ((*i, j - 1), c.clone())).collect(),
        }
    }

    pub fn swap(&self) -> Affine {
        Affine {
            tower: self.tower.clone(),
            terms: self.terms.iter().map(|((i, j), c)| ((*j, *i), c.clone())).collect(),
        }
    }

    /// `c u^k f`.
    pub fn shift_scale(&self, k: u32, c: &Elem) -> Affine {
        let mut a = Affine::zero(&self.tower);
        for ((i, j), e) in &self.terms {
            a.add_term((i + k, *j), e * c);
        }
        a
    }

    pub fn scale(&self, c: &Elem) -> Affine {
        self.shift_scale(0, c)
    }

    /// Coefficients of `f` as a polynomial in `v` with polynomial-in-`u` coefficients.
    pub fn by_v(&self) -> Vec<UniPoly> {
        let n = self.terms.keys().map(|k| k.1).max().map_or(0, |n| n as usize + 1);
        (0..n)
            .map(|j| {
                let m = self.terms.keys().filter(|k| k.1 as usize == j).map(|k| k.0).max();
                let mut c = vec![self.tower.zero(); m.map_or(0, |m| m as usize + 1)];
                for ((i, jj), e) in &self.terms {
                    if *jj as usize == j {
                        c[*i as usize] = e.clone();
                    }
                }
                UniPoly::new(&self.tower, c)
            })
            .collect()
    }

    pub fn map(&self, f: &TowerMap) -> Affine {
        Affine::from_terms(f.target(), self.terms.iter().map(|(k, c)| (*k, f.apply(c))))
    }

    pub fn lift_to(&self, tower: &FieldTower) -> Affine {
        Affine::from_terms(tower, self.terms.iter().map(|(k, c)| (*k, tower.lift(c))))
    }
}

fn unify_affine(a: &Affine, b: &Affine) -> (Affine, Affine) {
    if a.tower.depth() >= b.tower.depth() {
        (a.clone(), b.lift_to(&a.tower))
    } else {
        (a.lift_to(&b.tower), b.clone())
    }
}

impl std::ops::Add for &Affine {
    type Output = Affine;
    fn add(self, o: &Affine) -> Affine {
        let (mut a, b) = unify_affine(self, o);
        for (k, c) in b.terms {
            a.add_term(k, c);
        }
        a
    }
}

impl std::ops::Sub for &Affine {
    type Output = Affine;
    fn sub(self, o: &Affine) -> Affine {
        self + &o.scale(&(-o.tower.one()))
    }
}

impl std::ops::Mul for &Affine {
    type Output = Affine;
    fn mul(self, o: &Affine) -> Affine {
        let (a, b) = unify_affine(self, o);
        let mut out = Affine::zero(&a.tower);
        for ((i1, j1), c1) in &a.terms {
            for ((i2, j2), c2) in &b.terms {
                out.add_term((i1 + i2, j1 + j2), c1 * c2);
            }
        }
        out
    }
}
