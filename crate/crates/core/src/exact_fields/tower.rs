//! Towers of simple algebraic extensions over the rationals.
//!
//! Every level is `R[t]/(m(t))` for a monic squarefree `m` over the level
//! below. Levels need not be fields: inverting an element that shares a
//! factor with a modulus raises [`FieldError::ZeroDivisor`], and callers split
//! the tower (see [`super::d5`]) and retry.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

pub type Rational = BigRational;

/// Default cap on the absolute degree of a tower.
pub const DEFAULT_BUDGET: usize = 64;

#[derive(Debug, Clone, Error)]
pub enum FieldError {
    #[error("zero divisor detected at level {level}")]
    ZeroDivisor { level: usize, factor: RawPoly },
    #[error("division by zero")]
    DivisionByZero,
    #[error("tower degree {requested} exceeds budget {budget}")]
    BudgetExceeded { requested: usize, budget: usize },
    #[error("degenerate modulus: {0}")]
    DegenerateModulus(String),
    #[error("malformed field data: {0}")]
    Parse(String),
}

/// Coefficients of a monic polynomial over some level of a tower, as carried
/// by a zero-divisor report.
#[derive(Clone, PartialEq, Eq)]
pub struct RawPoly(pub(crate) Vec<Repr>);

impl fmt::Debug for RawPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RawPoly(deg {})", self.0.len().saturating_sub(1))
    }
}

impl RawPoly {
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Repr {
    Rat(Rational),
    Poly(Vec<Repr>),
}

#[derive(Debug)]
pub(crate) struct Node {
    pub(crate) parent: Option<Arc<Node>>,
    pub(crate) depth: usize,
    pub(crate) name: String,
    pub(crate) modulus: Vec<Repr>,
    pub(crate) total: usize,
}

impl Node {
    pub(crate) fn degree(&self) -> usize {
        self.modulus.len() - 1
    }
    pub(crate) fn parent(&self) -> Ring<'_> {
        self.parent.as_deref()
    }
}

pub(crate) type Ring<'a> = Option<&'a Node>;

// ---------------------------------------------------------------------------
// raw arithmetic

pub(crate) fn zero(r: Ring) -> Repr {
    match r {
        None => Repr::Rat(Rational::zero()),
        Some(_) => Repr::Poly(Vec::new()),
    }
}

pub(crate) fn one(r: Ring) -> Repr {
    match r {
        None => Repr::Rat(Rational::one()),
        Some(n) => Repr::Poly(vec![one(n.parent())]),
    }
}

pub(crate) fn from_rat(r: Ring, q: &Rational) -> Repr {
    match r {
        None => Repr::Rat(q.clone()),
        Some(n) => {
            if q.is_zero() {
                Repr::Poly(Vec::new())
            } else {
                Repr::Poly(vec![from_rat(n.parent(), q)])
            }
        }
    }
}

pub(crate) fn is_zero(a: &Repr) -> bool {
    match a {
        Repr::Rat(q) => q.is_zero(),
        Repr::Poly(v) => v.is_empty(),
    }
}

pub(crate) fn trim(v: &mut Vec<Repr>) {
    while v.last().is_some_and(is_zero) {
        v.pop();
    }
}

pub(crate) fn add(a: &Repr, b: &Repr) -> Repr {
    match (a, b) {
        (Repr::Rat(x), Repr::Rat(y)) => Repr::Rat(x + y),
        (Repr::Poly(x), Repr::Poly(y)) => {
            let (long, short) = if x.len() >= y.len() { (x, y) } else { (y, x) };
            let mut out = long.clone();
            for (o, s) in out.iter_mut().zip(short) {
                *o = add(o, s);
            }
            trim(&mut out);
            Repr::Poly(out)
        }
        _ => panic!("depth mismatch in tower arithmetic"),
    }
}

pub(crate) fn neg(a: &Repr) -> Repr {
    match a {
        Repr::Rat(x) => Repr::Rat(-x),
        Repr::Poly(v) => Repr::Poly(v.iter().map(neg).collect()),
    }
}

pub(crate) fn sub(a: &Repr, b: &Repr) -> Repr {
    add(a, &neg(b))
}

pub(crate) fn mul(r: Ring, a: &Repr, b: &Repr) -> Repr {
    match (r, a, b) {
        (None, Repr::Rat(x), Repr::Rat(y)) => Repr::Rat(x * y),
        (Some(n), Repr::Poly(x), Repr::Poly(y)) => {
            if x.is_empty() || y.is_empty() {
                return Repr::Poly(Vec::new());
            }
            Repr::Poly(reduce(n, poly_mul(n.parent(), x, y)))
        }
        _ => panic!("depth mismatch in tower arithmetic"),
    }
}

pub(crate) fn scale_rat(a: &Repr, q: &Rational) -> Repr {
    if q.is_zero() {
        return match a {
            Repr::Rat(_) => Repr::Rat(Rational::zero()),
            Repr::Poly(_) => Repr::Poly(Vec::new()),
        };
    }
    match a {
        Repr::Rat(x) => Repr::Rat(x * q),
        Repr::Poly(v) => Repr::Poly(v.iter().map(|c| scale_rat(c, q)).collect()),
    }
}

/// Reduce a coefficient vector over `n.parent()` modulo the monic modulus of `n`.
pub(crate) fn reduce(n: &Node, v: Vec<Repr>) -> Vec<Repr> {
    reduce_mod(n.parent(), &n.modulus, v)
}

pub(crate) fn reduce_mod(p: Ring, modulus: &[Repr], mut v: Vec<Repr>) -> Vec<Repr> {
    let d = modulus.len() - 1;
    trim(&mut v);
    while v.len() > d {
        let lead = v.pop().unwrap();
        if is_zero(&lead) {
            continue;
        }
        let off = v.len() - d;
        for i in 0..d {
            let t = mul(p, &lead, &modulus[i]);
            v[off + i] = sub(&v[off + i], &t);
        }
        trim(&mut v);
    }
    v
}

pub(crate) fn inv(r: Ring, a: &Repr) -> Result<Repr, FieldError> {
    match (r, a) {
        (None, Repr::Rat(x)) => {
            if x.is_zero() {
                Err(FieldError::DivisionByZero)
            } else {
                Ok(Repr::Rat(x.recip()))
            }
        }
        (Some(n), Repr::Poly(x)) => {
            if x.is_empty() {
                return Err(FieldError::DivisionByZero);
            }
            let p = n.parent();
            let (g, s) = poly_xgcd_left(p, x, &n.modulus)?;
            if g.len() > 1 {
                Err(FieldError::ZeroDivisor {
                    level: n.depth,
                    factor: RawPoly(g),
                })
            } else {
                Ok(Repr::Poly(reduce(n, s)))
            }
        }
        _ => panic!("depth mismatch in tower arithmetic"),
    }
}

// ---------------------------------------------------------------------------
// dense polynomials over a ring `r`, lowest degree first

pub(crate) fn poly_add(a: &[Repr], b: &[Repr]) -> Vec<Repr> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o = add(o, s);
    }
    trim(&mut out);
    out
}

pub(crate) fn poly_neg(a: &[Repr]) -> Vec<Repr> {
    a.iter().map(neg).collect()
}

pub(crate) fn poly_sub(a: &[Repr], b: &[Repr]) -> Vec<Repr> {
    poly_add(a, &poly_neg(b))
}

pub(crate) fn poly_mul(r: Ring, a: &[Repr], b: &[Repr]) -> Vec<Repr> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![zero(r); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if is_zero(y) {
                continue;
            }
            let t = mul(r, x, y);
            out[i + j] = add(&out[i + j], &t);
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn poly_scale(r: Ring, a: &[Repr], c: &Repr) -> Vec<Repr> {
    let mut out: Vec<Repr> = a.iter().map(|x| mul(r, x, c)).collect();
    trim(&mut out);
    out
}

pub(crate) fn poly_divrem(
    r: Ring,
    a: &[Repr],
    b: &[Repr],
) -> Result<(Vec<Repr>, Vec<Repr>), FieldError> {
    if b.is_empty() {
        return Err(FieldError::DivisionByZero);
    }
    let inv_lc = inv(r, b.last().unwrap())?;
    let mut rem = a.to_vec();
    trim(&mut rem);
    if rem.len() < b.len() {
        return Ok((Vec::new(), rem));
    }
    let mut q = vec![zero(r); rem.len() - b.len() + 1];
    while rem.len() >= b.len() {
        let c = mul(r, rem.last().unwrap(), &inv_lc);
        let k = rem.len() - b.len();
        for i in 0..b.len() - 1 {
            let t = mul(r, &c, &b[i]);
            rem[k + i] = sub(&rem[k + i], &t);
        }
        q[k] = c;
        rem.pop();
        trim(&mut rem);
    }
    trim(&mut q);
    Ok((q, rem))
}

pub(crate) fn poly_monic(r: Ring, a: &[Repr]) -> Result<Vec<Repr>, FieldError> {
    match a.last() {
        None => Ok(Vec::new()),
        Some(lc) => {
            let c = inv(r, lc)?;
            let mut out = poly_scale(r, a, &c);
            *out.last_mut().unwrap() = one(r);
            Ok(out)
        }
    }
}

/// Monic gcd `g` together with `s` such that `s*a = g` modulo `b`.
pub(crate) fn poly_xgcd_left(
    r: Ring,
    a: &[Repr],
    b: &[Repr],
) -> Result<(Vec<Repr>, Vec<Repr>), FieldError> {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    let mut s0 = vec![one(r)];
    let mut s1: Vec<Repr> = Vec::new();
    while !r1.is_empty() {
        let (q, rem) = poly_divrem(r, &r0, &r1)?;
        let s2 = poly_sub(&s0, &poly_mul(r, &q, &s1));
        r0 = std::mem::replace(&mut r1, rem);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if r0.is_empty() {
        return Ok((Vec::new(), Vec::new()));
    }
    let c = inv(r, r0.last().unwrap())?;
    let mut g = poly_scale(r, &r0, &c);
    *g.last_mut().unwrap() = one(r);
    Ok((g, poly_scale(r, &s0, &c)))
}

pub(crate) fn poly_gcd(r: Ring, a: &[Repr], b: &[Repr]) -> Result<Vec<Repr>, FieldError> {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    while !r1.is_empty() {
        let (_, rem) = poly_divrem(r, &r0, &r1)?;
        r0 = std::mem::replace(&mut r1, rem);
    }
    poly_monic(r, &r0)
}

pub(crate) fn poly_eval(r: Ring, a: &[Repr], x: &Repr) -> Repr {
    let mut acc = zero(r);
    for c in a.iter().rev() {
        acc = add(&mul(r, &acc, x), c);
    }
    acc
}

pub(crate) fn lift_repr(mut a: Repr, from: usize, to: usize) -> Repr {
    for _ in from..to {
        a = if is_zero(&a) {
            Repr::Poly(Vec::new())
        } else {
            Repr::Poly(vec![a])
        };
    }
    a
}

pub(crate) fn to_rational(a: &Repr) -> Option<Rational> {
    match a {
        Repr::Rat(q) => Some(q.clone()),
        Repr::Poly(v) => match v.len() {
            0 => Some(Rational::zero()),
            1 => to_rational(&v[0]),
            _ => None,
        },
    }
}

fn same_node(a: Ring, b: Ring) -> bool {
    match (a, b) {
        (None, None) => true,
        (Some(x), Some(y)) => {
            std::ptr::eq(x, y)
                || (x.depth == y.depth && x.modulus == y.modulus && same_node(x.parent(), y.parent()))
        }
        _ => false,
    }
}

// ---------------------------------------------------------------------------
// public tower and element types

#[derive(Clone)]
pub struct FieldTower {
    pub(crate) top: Option<Arc<Node>>,
    pub(crate) budget: usize,
    pub(crate) seed: u64,
}

impl Default for FieldTower {
    fn default() -> Self {
        Self::rationals()
    }
}

impl fmt::Debug for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldTower(")?;
        let mut first = true;
        for lvl in 1..=self.depth() {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            let n = self.node(lvl).unwrap();
            write!(f, "{}:{}", n.name, n.degree())?;
        }
        write!(f, ")")
    }
}

impl FieldTower {
    pub fn rationals() -> Self {
        FieldTower {
            top: None,
            budget: DEFAULT_BUDGET,
            seed: 0,
        }
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub(crate) fn ring(&self) -> Ring<'_> {
        self.top.as_deref()
    }

    pub fn depth(&self) -> usize {
        self.top.as_ref().map_or(0, |n| n.depth)
    }

    /// Absolute degree over the rationals.
    pub fn degree(&self) -> usize {
        self.top.as_ref().map_or(1, |n| n.total)
    }

    pub(crate) fn node(&self, level: usize) -> Ring<'_> {
        let mut cur = self.ring();
        while let Some(n) = cur {
            if n.depth == level {
                return Some(n);
            }
            if n.depth < level {
                return None;
            }
            cur = n.parent();
        }
        None
    }

    pub fn level_degree(&self, level: usize) -> usize {
        self.node(level).expect("level out of range").degree()
    }

    pub fn level_name(&self, level: usize) -> &str {
        &self.node(level).expect("level out of range").name
    }

    /// The sub-tower consisting of levels `1..=level`.
    pub fn prefix(&self, level: usize) -> FieldTower {
        let mut cur = self.top.clone();
        while let Some(n) = cur.clone() {
            if n.depth <= level {
                break;
            }
            cur = n.parent.clone();
        }
        FieldTower {
            top: cur,
            budget: self.budget,
            seed: self.seed,
        }
    }

    /// Defining polynomial of `level`, with coefficients in `prefix(level - 1)`.
    pub fn modulus(&self, level: usize) -> super::UniPoly {
        let n = self.node(level).expect("level out of range");
        super::UniPoly::from_raw(self.prefix(level - 1), n.modulus.clone())
    }

    /// True when `other` is a prefix of `self` (including equality).
    pub fn extends(&self, other: &FieldTower) -> bool {
        let d = other.depth();
        d <= self.depth() && same_node(self.node_or_root(d), other.ring())
    }

    fn node_or_root(&self, level: usize) -> Ring<'_> {
        if level == 0 {
            None
        } else {
            self.node(level)
        }
    }

    pub fn same_as(&self, other: &FieldTower) -> bool {
        self.depth() == other.depth() && self.extends(other)
    }

    pub fn zero(&self) -> Elem {
        Elem::raw(self.clone(), zero(self.ring()))
    }

    pub fn one(&self) -> Elem {
        Elem::raw(self.clone(), one(self.ring()))
    }

    pub fn int(&self, v: i64) -> Elem {
        self.rational(&Rational::from_integer(BigInt::from(v)))
    }

    pub fn frac(&self, p: i64, q: i64) -> Elem {
        self.rational(&Rational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn rational(&self, q: &Rational) -> Elem {
        Elem::raw(self.clone(), from_rat(self.ring(), q))
    }

    /// Generator of the top level.
    pub fn gen(&self) -> Elem {
        self.gen_at(self.depth())
    }

    /// Generator of `level`, embedded in the whole tower.
    pub fn gen_at(&self, level: usize) -> Elem {
        assert!(level >= 1 && level <= self.depth(), "level out of range");
        let n = self.node(level).unwrap();
        let p = n.parent();
        let r = Repr::Poly(reduce(n, vec![zero(p), one(p)]));
        Elem::raw(self.clone(), lift_repr(r, level, self.depth()))
    }

    /// Adjoin a root of `minpoly` (coefficients in this tower).
    pub fn extend(&self, name: &str, minpoly: &super::UniPoly) -> Result<FieldTower, FieldError> {
        let f = self.lift_poly(minpoly);
        let deg = f.degree().ok_or_else(|| FieldError::DegenerateModulus("zero polynomial".into()))?;
        if deg < 2 {
            return Err(FieldError::DegenerateModulus(format!("degree {deg} modulus")));
        }
        let f = f.monic()?;
        if f.gcd(&f.derivative())?.degree() != Some(0) {
            return Err(FieldError::DegenerateModulus("modulus is not squarefree".into()));
        }
        self.push_level(name, f.c)
    }

    pub(crate) fn push_level(&self, name: &str, modulus: Vec<Repr>) -> Result<FieldTower, FieldError> {
        let total = self.degree() * (modulus.len() - 1);
        if total > self.budget {
            return Err(FieldError::BudgetExceeded {
                requested: total,
                budget: self.budget,
            });
        }
        Ok(FieldTower {
            top: Some(Arc::new(Node {
                parent: self.top.clone(),
                depth: self.depth() + 1,
                name: name.to_string(),
                modulus,
                total,
            })),
            budget: self.budget,
            seed: self.seed,
        })
    }

    /// Embed an element of a prefix tower.
    pub fn lift(&self, e: &Elem) -> Elem {
        assert!(self.extends(&e.tower), "element does not belong to a sub-tower");
        Elem::raw(self.clone(), lift_repr(e.repr.clone(), e.tower.depth(), self.depth()))
    }

    pub fn lift_poly(&self, p: &super::UniPoly) -> super::UniPoly {
        assert!(self.extends(&p.tower), "polynomial does not belong to a sub-tower");
        let d = p.tower.depth();
        super::UniPoly::from_raw(
            self.clone(),
            p.c.iter().map(|r| lift_repr(r.clone(), d, self.depth())).collect(),
        )
    }
}

#[derive(Clone)]
pub struct Elem {
    pub(crate) tower: FieldTower,
    pub(crate) repr: Repr,
}

impl Elem {
    pub(crate) fn raw(tower: FieldTower, repr: Repr) -> Elem {
        Elem { tower, repr }
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    /// Structural test; a nonzero zero divisor reports `false`.
    pub fn is_zero(&self) -> bool {
        is_zero(&self.repr)
    }

    /// Zero test that raises `ZeroDivisor` when the answer differs between
    /// branches of a reducible tower.
    pub fn is_zero_strict(&self) -> Result<bool, FieldError> {
        if self.is_zero() {
            return Ok(true);
        }
        inv(self.tower.ring(), &self.repr)?;
        Ok(false)
    }

    pub fn is_one(&self) -> bool {
        self.repr == one(self.tower.ring())
    }

    pub fn inv(&self) -> Result<Elem, FieldError> {
        Ok(Elem::raw(self.tower.clone(), inv(self.tower.ring(), &self.repr)?))
    }

    pub fn div(&self, other: &Elem) -> Result<Elem, FieldError> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, mut e: u64) -> Elem {
        let mut base = self.clone();
        let mut acc = self.tower.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn to_rational(&self) -> Option<Rational> {
        to_rational(&self.repr)
    }

    pub fn is_rational(&self) -> bool {
        self.to_rational().is_some()
    }

    pub fn scale(&self, q: &Rational) -> Elem {
        Elem::raw(self.tower.clone(), scale_rat(&self.repr, q))
    }

    pub fn lift_to(&self, tower: &FieldTower) -> Elem {
        tower.lift(self)
    }

    pub(crate) fn unify(&self, other: &Elem) -> (FieldTower, Repr, Repr) {
        let (da, db) = (self.tower.depth(), other.tower.depth());
        if da >= db && self.tower.extends(&other.tower) {
            (self.tower.clone(), self.repr.clone(), lift_repr(other.repr.clone(), db, da))
        } else if db > da && other.tower.extends(&self.tower) {
            (other.tower.clone(), lift_repr(self.repr.clone(), da, db), other.repr.clone())
        } else {
            panic!("elements from incompatible towers: {:?} vs {:?}", self.tower, other.tower)
        }
    }
}

impl PartialEq for Elem {
    fn eq(&self, other: &Elem) -> bool {
        let (_, a, b) = self.unify(other);
        a == b
    }
}

impl Eq for Elem {}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::serial::elem_to_json(self))
    }
}

// Polynomial notation in the generator names, readable back by the curve parser.
fn show(r: &Repr, tower: &FieldTower, depth: usize) -> String {
    let v = match r {
        Repr::Rat(q) => return super::serial::rational_to_string(q),
        Repr::Poly(v) => v,
    };
    let name = tower.level_name(depth);
    let mut out = String::new();
    for (i, c) in v.iter().enumerate().rev() {
        if is_zero(c) {
            continue;
        }
        let cs = show(c, tower, depth - 1);
        let mono = match i {
            0 => String::new(),
            1 => name.to_string(),
            _ => format!("{name}^{i}"),
        };
        let compound = cs[1..].contains(['+', '-']);
        let term = if mono.is_empty() {
            cs
        } else if cs == "1" {
            mono
        } else if cs == "-1" {
            format!("-{mono}")
        } else if compound {
            format!("({cs}) {mono}")
        } else {
            format!("{cs} {mono}")
        };
        if out.is_empty() {
            out = term;
        } else if let Some(rest) = term.strip_prefix('-') {
            out = format!("{out} - {rest}");
        } else {
            out = format!("{out} + {term}");
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", show(&self.repr, self.tower(), self.tower().depth()))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl std::ops::$tr<&Elem> for &Elem {
            type Output = Elem;
            fn $m(self, rhs: &Elem) -> Elem {
                let (t, a, b) = self.unify(rhs);
                let r = $body(t.ring(), &a, &b);
                Elem::raw(t, r)
            }
        }
        impl std::ops::$tr<Elem> for Elem {
            type Output = Elem;
            fn $m(self, rhs: Elem) -> Elem {
                std::ops::$tr::$m(&self, &rhs)
            }
        }
        impl std::ops::$tr<&Elem> for Elem {
            type Output = Elem;
            fn $m(self, rhs: &Elem) -> Elem {
                std::ops::$tr::$m(&self, rhs)
            }
        }
        impl std::ops::$tr<Elem> for &Elem {
            type Output = Elem;
            fn $m(self, rhs: Elem) -> Elem {
                std::ops::$tr::$m(self, &rhs)
            }
        }
    };
}

binop!(Add, add, |_r, a, b| add(a, b));
binop!(Sub, sub, |_r, a, b| sub(a, b));
binop!(Mul, mul, |r, a, b| mul(r, a, b));

impl std::ops::Neg for &Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        Elem::raw(self.tower.clone(), neg(&self.repr))
    }
}

impl std::ops::Neg for Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        -&self
    }
}
