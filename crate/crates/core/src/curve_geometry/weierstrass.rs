//! Long Weierstrass models `y²z + a1·xyz + a3·yz² = x³ + a2·x²z + a4·xz² + a6·z³`
//! and their division polynomials.

use super::curve::PlaneCurve;
use super::elliptic::EllipticStructure;
use super::intersect::root_families;
use super::point::ProjPoint;
use super::GeomError;
use crate::exact_fields::{branches, rational_roots, Elem, FieldTower, TowerMap, UniPoly};

#[derive(Clone, Debug)]
pub struct Weierstrass {
    /// `[a1, a2, a3, a4, a6]`
    pub a: [Elem; 5],
}

impl Weierstrass {
    pub fn new(a: [Elem; 5]) -> Weierstrass {
        Weierstrass { a }
    }

    pub fn from_ints(tower: &FieldTower, a: [i64; 5]) -> Weierstrass {
        Weierstrass { a: a.map(|v| tower.int(v)) }
    }

    pub fn tower(&self) -> &FieldTower {
        self.a[0].tower()
    }

    /// Read the coefficients off a cubic in Weierstrass shape.
    pub fn from_curve(c: &PlaneCurve) -> Result<Weierstrass, GeomError> {
        let lead = c.coeff([0, 2, 1]);
        if lead.is_zero() || c.degree() != 3 {
            return Err(GeomError::Unsupported("not in Weierstrass form".into()));
        }
        let n = lead.inv()?;
        let get = |m: [u32; 3]| &c.coeff(m) * &n;
        if !(&get([3, 0, 0]) + &c.tower().one()).is_zero() {
            return Err(GeomError::Unsupported("not in Weierstrass form".into()));
        }
        for m in [[0, 3, 0], [2, 1, 0], [1, 2, 0]] {
            if !get(m).is_zero() {
                return Err(GeomError::Unsupported("not in Weierstrass form".into()));
            }
        }
        Ok(Weierstrass {
            a: [
                get([1, 1, 1]),
                -get([2, 0, 1]),
                get([0, 1, 2]),
                -get([1, 0, 2]),
                -get([0, 0, 3]),
            ],
        })
    }

    pub fn curve(&self) -> PlaneCurve {
        let tw = self.tower();
        let [a1, a2, a3, a4, a6] = self.a.clone();
        PlaneCurve::new(
            tw,
            3,
            [
                ([0, 2, 1], tw.one()),
                ([1, 1, 1], a1),
                ([0, 1, 2], a3),
                ([3, 0, 0], -tw.one()),
                ([2, 0, 1], -a2),
                ([1, 0, 2], -a4),
                ([0, 0, 3], -a6),
            ],
        )
        .expect("homogeneous")
    }

    /// Elliptic structure with origin `[0:1:0]`.
    pub fn elliptic(&self) -> Result<EllipticStructure, GeomError> {
        EllipticStructure::new(&self.curve(), &ProjPoint::from_ints(self.tower(), [0, 1, 0]))
    }

    fn b(&self) -> [Elem; 4] {
        let [a1, a2, a3, a4, a6] = &self.a;
        let tw = self.tower();
        let k = |v: i64| tw.int(v);
        let b2 = &(a1 * a1) + &(&k(4) * a2);
        let b4 = &(&k(2) * a4) + &(a1 * a3);
        let b6 = &(a3 * a3) + &(&k(4) * a6);
        let b8 = &(&(&(&(&(a1 * a1) * a6) + &(&(&k(4) * a2) * a6)) - &(&(a1 * a3) * a4)) + &(&(a2 * a3) * a3)) - &(a4 * a4);
        [b2, b4, b6, b8]
    }

    /// `ψ₂² = 4x³ + b2 x² + 2 b4 x + b6`.
    pub fn two_torsion_poly(&self) -> UniPoly {
        let [b2, b4, b6, _] = self.b();
        let tw = self.tower();
        UniPoly::new(tw, vec![b6, &tw.int(2) * &b4, b2, tw.int(4)])
    }

    /// The x-part of `ψ_n`: `ψ_n` for odd `n`, `ψ_n / ψ₂` for even `n`.
    pub fn division_x(&self, n: usize) -> UniPoly {
        division_polynomial(self, n)
    }

    /// Points with the given x-coordinate, one per conjugate family.
    pub fn points_over_x(&self, x: &Elem) -> Result<Vec<ProjPoint>, GeomError> {
        let tw = x.tower().clone();
        let a = self.a.clone().map(|e| tw.lift(&e));
        let [a1, a2, a3, a4, a6] = &a;
        let lin = &(a1 * x) + a3;
        let cst = -&(&(&(&x.pow(3) + &(a2 * &x.pow(2))) + &(a4 * x)) + a6);
        let q = UniPoly::new(&tw, vec![cst, lin, tw.one()]);
        let mut out = Vec::new();
        for (t, y) in root_families(&q, &format!("y{}", tw.depth() + 1))? {
            out.push(ProjPoint::new(t.lift(x), y, t.one())?);
        }
        Ok(out)
    }

    /// Affine points `P` with `[n]P = O`, as families over extensions,
    /// excluding `O` itself.
    pub fn torsion_points(&self, n: usize) -> Result<Vec<(ProjPoint, TowerMap)>, GeomError> {
        let tw = self.tower().clone();
        let full = |k: usize| -> Result<UniPoly, GeomError> {
            let mut p = division_polynomial(self, k);
            if k % 2 == 0 {
                p = &p * &self.two_torsion_poly();
            }
            Ok(p.monic()?.squarefree_part()?)
        };
        // one exact order at a time keeps each factorization small
        let mut out = Vec::new();
        for d in (2..=n).filter(|d| n % d == 0) {
            let mut prim = full(d)?;
            for p in (2..=d).filter(|p| d % p == 0 && (2..*p).all(|q| p % q != 0)) {
                if d / p > 1 {
                    let g = prim.gcd(&full(d / p)?)?;
                    prim = prim.div_exact(&g)?;
                }
            }
            out.extend(families_of(self, &tw, &prim)?);
        }
        Ok(out)
    }

    /// Affine points with rational coordinates and `[n]P = O`, for a model
    /// over the rationals.
    pub fn rational_torsion_points(&self, n: usize) -> Result<Vec<ProjPoint>, GeomError> {
        let tw = self.tower().clone();
        if tw.depth() != 0 {
            return Err(GeomError::Unsupported("rational torsion needs a model over Q".into()));
        }
        let mut poly = division_polynomial(self, n);
        if n % 2 == 0 {
            poly = &poly * &self.two_torsion_poly();
        }
        let coeffs = poly.rational_coeffs().expect("depth zero");
        let mut out = Vec::new();
        for x in rational_roots(&coeffs) {
            for p in self.points_over_x(&tw.rational(&x))? {
                if p.tower().depth() == 0 {
                    out.push(p);
                }
            }
        }
        Ok(out)
    }

    /// Points `R` with `[n]R = t`, as families over extensions of `t`'s tower.
    pub fn division_points(&self, n: usize, t: &ProjPoint) -> Result<Vec<(ProjPoint, TowerMap)>, GeomError> {
        let tw = t.tower().clone();
        let w = self.lift_to(&tw);
        let c = t.coords();
        if c[2].is_zero_strict()? {
            return w.torsion_points(n);
        }
        let xt = c[0].div(&c[2])?;
        let f = |k: usize| division_polynomial(&w, k);
        let x = UniPoly::x(&tw);
        let shifted = &x - &UniPoly::constant(&xt);
        let big_f = w.two_torsion_poly();
        let poly = if n % 2 == 1 {
            &(&shifted * &f(n).pow(2)) - &(&big_f * &(&f(n - 1) * &f(n + 1)))
        } else {
            &(&(&shifted * &big_f) * &f(n).pow(2)) - &(&f(n - 1) * &f(n + 1))
        };
        let e = w.elliptic_unchecked()?;
        let all = families_of(&w, &tw, &poly)?;
        let mut out = Vec::new();
        for (p, m) in all {
            let (e2, t2) = (e.map(&m), t.map(&m));
            let ok = branches(p.tower(), tw.depth() + 1, |mm| -> Result<bool, GeomError> {
                Ok(e2.map(mm).mul(n as i64, &p.map(mm))?.eq_strict(&t2.map(mm))?)
            })?;
            for (mm, good) in ok {
                if good {
                    out.push((p.map(&mm), m.then(&mm)));
                }
            }
        }
        Ok(out)
    }

    pub fn lift_to(&self, tower: &FieldTower) -> Weierstrass {
        Weierstrass { a: self.a.clone().map(|e| tower.lift(&e)) }
    }

    pub(crate) fn elliptic_unchecked(&self) -> Result<EllipticStructure, GeomError> {
        EllipticStructure::with_certified_cubic(&self.curve(), &ProjPoint::from_ints(self.tower(), [0, 1, 0]))
    }
}

fn families_of(w: &Weierstrass, tw: &FieldTower, poly: &UniPoly) -> Result<Vec<(ProjPoint, TowerMap)>, GeomError> {
    let mut out = Vec::new();
    for (t1, x) in root_families(poly, &format!("x{}", tw.depth() + 1))? {
        let res = branches(&t1, tw.depth() + 1, |m| -> Result<Vec<ProjPoint>, GeomError> {
            w.lift_to(m.target()).points_over_x(&m.apply(&x))
        })?;
        for (m, pts) in res {
            let to_branch = TowerMap::identity(tw).then(&m);
            for p in pts {
                let map = to_branch.into_extension(p.tower());
                out.push((p, map));
            }
        }
    }
    Ok(out)
}

/// `f_n` with `ψ_n = f_n` for odd `n` and `ψ_n = ψ₂ f_n` for even `n`.
pub fn division_polynomial(w: &Weierstrass, n: usize) -> UniPoly {
    let tw = w.tower().clone();
    let [b2, b4, b6, b8] = w.b();
    let k = |v: i64| tw.int(v);
    let big_f = w.two_torsion_poly();
    let f2 = &big_f * &big_f;
    let mut f: Vec<UniPoly> = vec![
        UniPoly::zero(&tw),
        UniPoly::constant(&tw.one()),
        UniPoly::constant(&tw.one()),
        UniPoly::new(&tw, vec![b8.clone(), &k(3) * &b6, &k(3) * &b4, b2.clone(), k(3)]),
        UniPoly::new(
            &tw,
            vec![
                &(&b4 * &b8) - &(&b6 * &b6),
                &(&b2 * &b8) - &(&b4 * &b6),
                &k(10) * &b8,
                &k(10) * &b6,
                &k(5) * &b4,
                b2.clone(),
                k(2),
            ],
        ),
    ];
    while f.len() <= n {
        let i = f.len();
        let m = i / 2;
        let next = if i % 2 == 1 {
            let a = &f[m + 2] * &f[m].pow(3);
            let b = &f[m - 1] * &f[m + 1].pow(3);
            if m % 2 == 0 {
                &(&f2 * &a) - &b
            } else {
                &a - &(&f2 * &b)
            }
        } else {
            let inner = &(&f[m + 2] * &f[m - 1].pow(2)) - &(&f[m - 2] * &f[m + 1].pow(2));
            &f[m] * &inner
        };
        f.push(next);
    }
    f.swap_remove(n)
}
