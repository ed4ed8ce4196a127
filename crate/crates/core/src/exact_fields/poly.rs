use std::fmt;

use super::tower::{self as t, Elem, FieldError, FieldTower, Rational, Repr};
use super::factor::{integer_gcd, primitive_integer};

/// Dense univariate polynomial over a tower, lowest degree first.
#[derive(Clone)]
pub struct UniPoly {
    pub(crate) tower: FieldTower,
    pub(crate) c: Vec<Repr>,
}

impl UniPoly {
    pub(crate) fn from_raw(tower: FieldTower, mut c: Vec<Repr>) -> UniPoly {
        t::trim(&mut c);
        UniPoly { tower, c }
    }

    pub fn new(tower: &FieldTower, coeffs: Vec<Elem>) -> UniPoly {
        let c = coeffs.iter().map(|e| tower.lift(e).repr).collect();
        UniPoly::from_raw(tower.clone(), c)
    }

    pub fn from_rationals(tower: &FieldTower, coeffs: &[Rational]) -> UniPoly {
        let c = coeffs.iter().map(|q| t::from_rat(tower.ring(), q)).collect();
        UniPoly::from_raw(tower.clone(), c)
    }

    pub fn from_ints(tower: &FieldTower, coeffs: &[i64]) -> UniPoly {
        let c = coeffs.iter().map(|&v| tower.int(v).repr).collect();
        UniPoly::from_raw(tower.clone(), c)
    }

    pub fn zero(tower: &FieldTower) -> UniPoly {
        UniPoly::from_raw(tower.clone(), Vec::new())
    }

    pub fn constant(c: &Elem) -> UniPoly {
        UniPoly::from_raw(c.tower.clone(), vec![c.repr.clone()])
    }

    /// The polynomial `x`.
    pub fn x(tower: &FieldTower) -> UniPoly {
        UniPoly::from_raw(tower.clone(), vec![t::zero(tower.ring()), t::one(tower.ring())])
    }

    /// The linear polynomial `x - a`.
    pub fn linear_root(a: &Elem) -> UniPoly {
        let tw = a.tower();
        UniPoly::from_raw(tw.clone(), vec![t::neg(&a.repr), t::one(tw.ring())])
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Structural degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Elem {
        match self.c.get(i) {
            Some(r) => Elem::raw(self.tower.clone(), r.clone()),
            None => self.tower.zero(),
        }
    }

    pub fn coeffs(&self) -> Vec<Elem> {
        (0..self.c.len()).map(|i| self.coeff(i)).collect()
    }

    pub fn lc(&self) -> Elem {
        match self.c.last() {
            Some(r) => Elem::raw(self.tower.clone(), r.clone()),
            None => self.tower.zero(),
        }
    }

    /// Coefficients as rationals, when every coefficient is rational.
    pub fn rational_coeffs(&self) -> Option<Vec<Rational>> {
        self.c.iter().map(t::to_rational).collect()
    }

    pub fn lift_to(&self, tower: &FieldTower) -> UniPoly {
        tower.lift_poly(self)
    }

    fn unify(&self, o: &UniPoly) -> (FieldTower, Vec<Repr>, Vec<Repr>) {
        if self.tower.depth() >= o.tower.depth() {
            let b = self.tower.lift_poly(o);
            (self.tower.clone(), self.c.clone(), b.c)
        } else {
            let a = o.tower.lift_poly(self);
            (o.tower.clone(), a.c, o.c.clone())
        }
    }

    pub fn scale(&self, k: &Elem) -> UniPoly {
        let (tw, a, b) = self.unify(&UniPoly::constant(k));
        let c = t::poly_scale(tw.ring(), &a, &b.first().cloned().unwrap_or_else(|| t::zero(tw.ring())));
        UniPoly::from_raw(tw, c)
    }

    pub fn eval(&self, x: &Elem) -> Elem {
        let (tw, a, b) = self.unify(&UniPoly::constant(x));
        let xr = b.first().cloned().unwrap_or_else(|| t::zero(tw.ring()));
        let r = t::poly_eval(tw.ring(), &a, &xr);
        Elem::raw(tw, r)
    }

    pub fn derivative(&self) -> UniPoly {
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, r)| t::scale_rat(r, &Rational::from_integer((i as i64).into())))
            .collect();
        UniPoly::from_raw(self.tower.clone(), c)
    }

    pub fn divrem(&self, o: &UniPoly) -> Result<(UniPoly, UniPoly), FieldError> {
        let (tw, a, b) = self.unify(o);
        let (q, r) = t::poly_divrem(tw.ring(), &a, &b)?;
        Ok((UniPoly::from_raw(tw.clone(), q), UniPoly::from_raw(tw, r)))
    }

    pub fn rem(&self, o: &UniPoly) -> Result<UniPoly, FieldError> {
        Ok(self.divrem(o)?.1)
    }

    /// Quotient by a divisor known to divide exactly.
    pub fn div_exact(&self, o: &UniPoly) -> Result<UniPoly, FieldError> {
        let (q, r) = self.divrem(o)?;
        debug_assert!(r.is_zero(), "inexact polynomial division");
        Ok(q)
    }

    pub fn monic(&self) -> Result<UniPoly, FieldError> {
        Ok(UniPoly::from_raw(self.tower.clone(), t::poly_monic(self.tower.ring(), &self.c)?))
    }

    /// Monic gcd. Both inputs zero gives zero.
    pub fn gcd(&self, o: &UniPoly) -> Result<UniPoly, FieldError> {
        let (tw, a, b) = self.unify(o);
        if tw.depth() == 0 && !a.is_empty() && !b.is_empty() {
            let ia = UniPoly::from_raw(tw.clone(), a).rational_coeffs().unwrap();
            let ib = UniPoly::from_raw(tw.clone(), b).rational_coeffs().unwrap();
            let g = integer_gcd(&primitive_integer(&ia), &primitive_integer(&ib));
            let g: Vec<Rational> = g.into_iter().map(Rational::from_integer).collect();
            return UniPoly::from_rationals(&tw, &g).monic();
        }
        let g = t::poly_gcd(tw.ring(), &a, &b)?;
        Ok(UniPoly::from_raw(tw, g))
    }

    pub fn squarefree_part(&self) -> Result<UniPoly, FieldError> {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative())?;
        self.div_exact(&g)?.monic()
    }

    /// Yun's squarefree decomposition: monic `(factor, multiplicity)` pairs.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(UniPoly, usize)>, FieldError> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return Ok(out);
        }
        let f = self.monic()?;
        let df = f.derivative();
        let a0 = f.gcd(&df)?;
        let mut b = f.div_exact(&a0)?;
        let c = df.div_exact(&a0)?;
        let mut d = &c - &b.derivative();
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d)?;
            let nb = b.div_exact(&a)?;
            let nc = d.div_exact(&a)?;
            d = &nc - &nb.derivative();
            if a.degree().unwrap_or(0) > 0 {
                out.push((a, i));
            }
            b = nb;
            i += 1;
        }
        Ok(out)
    }

    pub fn resultant(&self, o: &UniPoly) -> Result<Elem, FieldError> {
        let (tw, a, b) = self.unify(o);
        let mut f = UniPoly::from_raw(tw.clone(), a);
        let mut g = UniPoly::from_raw(tw.clone(), b);
        if f.is_zero() || g.is_zero() {
            return Ok(tw.zero());
        }
        let mut acc = tw.one();
        loop {
            let m = f.degree().unwrap();
            let n = g.degree().unwrap();
            if n == 0 {
                return Ok(&acc * &g.lc().pow(m as u64));
            }
            let r = f.rem(&g)?;
            if r.is_zero() {
                return Ok(tw.zero());
            }
            let k = r.degree().unwrap();
            if (m * n) % 2 == 1 {
                acc = -acc;
            }
            acc = &acc * &g.lc().pow((m - k) as u64);
            f = g;
            g = r;
        }
    }

    pub fn pow(&self, mut e: u32) -> UniPoly {
        let mut base = self.clone();
        let mut acc = UniPoly::constant(&self.tower.one());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Newton interpolation through the points `(k, values[k])`, `k = 0, 1, ...`.
    pub fn interpolate_integers(tower: &FieldTower, values: &[Elem]) -> UniPoly {
        let n = values.len();
        let mut dd: Vec<Elem> = values.iter().map(|v| tower.lift(v)).collect();
        for j in 1..n {
            let inv = Rational::new(1.into(), (j as i64).into());
            for i in (j..n).rev() {
                dd[i] = (&dd[i] - &dd[i - 1]).scale(&inv);
            }
        }
        let mut acc = UniPoly::zero(tower);
        for i in (0..n).rev() {
            let node = UniPoly::from_ints(tower, &[-(i as i64), 1]);
            acc = &(&acc * &node) + &UniPoly::constant(&dd[i]);
        }
        acc
    }

    /// `self(g(x))`.
    pub fn compose(&self, g: &UniPoly) -> UniPoly {
        let (tw, a, _) = self.unify(g);
        let g = tw.lift_poly(g);
        let mut acc = UniPoly::zero(&tw);
        for c in a.iter().rev() {
            acc = &(&acc * &g) + &UniPoly::from_raw(tw.clone(), vec![c.clone()]);
        }
        acc
    }
}

impl PartialEq for UniPoly {
    fn eq(&self, o: &UniPoly) -> bool {
        let (_, a, b) = self.unify(o);
        a == b
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs().iter().map(|c| c.to_string()).collect();
        write!(f, "UniPoly[{}]", parts.join(", "))
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            let mono = match i {
                0 => String::new(),
                1 => "X".into(),
                _ => format!("X^{i}"),
            };
            parts.push(match (mono.is_empty(), cs.as_str()) {
                (true, _) => format!("({cs})"),
                (false, "1") => mono,
                (false, _) => format!("({cs}) {mono}"),
            });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

macro_rules! polyop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl std::ops::$tr<&UniPoly> for &UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: &UniPoly) -> UniPoly {
                let (tw, a, b) = self.unify(rhs);
                let c = $body(&tw, &a, &b);
                UniPoly::from_raw(tw, c)
            }
        }
        impl std::ops::$tr<UniPoly> for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: UniPoly) -> UniPoly {
                std::ops::$tr::$m(&self, &rhs)
            }
        }
    };
}

polyop!(Add, add, |_tw: &FieldTower, a: &[Repr], b: &[Repr]| t::poly_add(a, b));
polyop!(Sub, sub, |_tw: &FieldTower, a: &[Repr], b: &[Repr]| t::poly_sub(a, b));
polyop!(Mul, mul, |tw: &FieldTower, a: &[Repr], b: &[Repr]| t::poly_mul(tw.ring(), a, b));

impl std::ops::Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::from_raw(self.tower.clone(), t::poly_neg(&self.c))
    }
}
