use proptest::prelude::*;
use zariski_torsion::curve_geometry::{
    branch_series, flex_points, intersection_multiplicity, intersection_points, is_smooth, tangent_line,
    tangents_through, EllipticStructure, PlaneCurve, ProjPoint, Weierstrass,
};
use zariski_torsion::exact_fields::{Elem, FieldTower, UniPoly};

fn qq() -> FieldTower {
    FieldTower::rationals()
}

fn eisenstein() -> FieldTower {
    let t = qq();
    t.extend("w", &UniPoly::from_ints(&t, &[1, 1, 1])).unwrap()
}

fn fermat(t: &FieldTower) -> PlaneCurve {
    PlaneCurve::parse(t, "x^3 + y^3 + z^3").unwrap()
}

fn pt(t: &FieldTower, s: &str) -> ProjPoint {
    ProjPoint::parse(t, s).unwrap()
}

fn total(ips: &[zariski_torsion::curve_geometry::IntersectionPoint]) -> usize {
    ips.iter().map(|p| p.multiplicity as usize * p.family_size).sum()
}

#[test]
fn fermat_hessian() {
    let t = qq();
    let h = fermat(&t).hessian();
    assert_eq!(h, PlaneCurve::parse(&t, "216 x y z").unwrap());
}

#[test]
fn fermat_flexes_over_eisenstein() {
    let k = eisenstein();
    let c = fermat(&k);
    assert!(is_smooth(&c).unwrap());
    let flexes = flex_points(&c).unwrap();
    assert_eq!(flexes.len(), 9);
    assert!(flexes.iter().all(|f| f.family_size == 1 && f.multiplicity == 1));
    let mut expected = Vec::new();
    for a in ["1", "w", "-w-1"] {
        expected.push(pt(&k, &format!("-1:0:{a}")));
        expected.push(pt(&k, &format!("0:-1:{a}")));
        expected.push(pt(&k, &format!("-1:{a}:0")));
    }
    for e in &expected {
        assert!(flexes.iter().any(|f| f.point.eq_strict(e).unwrap()), "missing {e:?}");
    }
}

#[test]
fn fermat_tangents_and_doubling() {
    let k = eisenstein();
    let c = fermat(&k);
    let o = pt(&k, "1:-1:0");
    let t1 = pt(&k, "1:-w:0");
    let l = tangent_line(&c, &t1).unwrap();
    assert_eq!(l, PlaneCurve::parse(&k, "x + (-w-1) y").unwrap());
    assert_eq!(tangent_line(&c, &o).unwrap(), PlaneCurve::parse(&k, "x + y").unwrap());
    let e = EllipticStructure::new(&c, &o).unwrap();
    let two = e.add(&t1, &t1).unwrap();
    assert!(two.eq_strict(&pt(&k, "1:w+1:0")).unwrap());
    assert_eq!(e.order(&t1, 10).unwrap(), Some(3));
    // residual of the line through two flexes
    let r = e.third_point(&o, &t1).unwrap();
    assert!(r.eq_strict(&pt(&k, "1:w+1:0")).unwrap());

    let ts = tangents_through(&c, &pt(&k, "0:0:1")).unwrap();
    let mut lines: Vec<String> = ts.iter().map(|(l, _, _)| format!("{l:?}")).collect();
    lines.sort();
    lines.dedup();
    let mut want: Vec<String> = ["x + y", "x + (-w-1) y", "x + w y"]
        .iter()
        .map(|s| format!("{:?}", PlaneCurve::parse(&k, s).unwrap()))
        .collect();
    want.sort();
    assert_eq!(lines, want);
}

#[test]
fn lines_meet_once() {
    let t = qq();
    let a = PlaneCurve::parse(&t, "x - 2y + 3z").unwrap();
    let b = PlaneCurve::parse(&t, "y + z").unwrap();
    let ips = intersection_points(&a, &b).unwrap();
    assert_eq!(ips.len(), 1);
    assert_eq!(ips[0].multiplicity, 1);
    assert!(ips[0].point.eq_strict(&ProjPoint::from_ints(&t, [-5, -1, 1])).unwrap());
}

#[test]
fn cubic_meets_triangle_at_three_vertices() {
    let t = qq();
    let c = PlaneCurve::parse(&t, "x^2 y + y^2 z + z^2 x").unwrap();
    let tri = PlaneCurve::parse(&t, "x y z").unwrap();
    let ips = intersection_points(&c, &tri).unwrap();
    assert_eq!(ips.len(), 3);
    assert!(ips.iter().all(|p| p.multiplicity == 3));
    for v in [[1, 0, 0], [0, 1, 0], [0, 0, 1]] {
        let p = ProjPoint::from_ints(&t, v);
        assert_eq!(intersection_multiplicity(&c, &tri, &p).unwrap(), 3);
    }
}

#[test]
fn weierstrass_torsion_90c3() {
    let t = qq();
    let w = Weierstrass::from_ints(&t, [1, -1, 1, -122, 1721]);
    let e = w.elliptic().unwrap();
    let f4 = w.division_x(4);
    let f12 = w.division_x(12);
    assert!(f12.rem(&f4).unwrap().is_zero());
    let rational = w.rational_torsion_points(12).unwrap();
    assert_eq!(rational.len(), 11);
    for p in &rational {
        let n = e.order(p, 12).unwrap().unwrap();
        assert_eq!(12 % n, 0);
    }
    let p4 = pt(&t, "9:31:1");
    assert_eq!(e.order(&p4, 30).unwrap(), Some(4));
    for x in [81, -9] {
        let ps = w.points_over_x(&t.int(x)).unwrap();
        assert_eq!(ps.len(), 2);
        for p in ps {
            assert_eq!(e.order(&p, 30).unwrap(), Some(12));
        }
    }
}

#[test]
fn branch_series_of_a_line_and_a_flex() {
    let t = qq();
    let l = PlaneCurve::parse(&t, "x").unwrap();
    let s = branch_series(&l, &pt(&t, "0:0:1"), 4).unwrap();
    assert!(s.coords[0].iter().all(Elem::is_zero));
    let c = fermat(&t);
    let o = pt(&t, "1:-1:0");
    let s = branch_series(&c, &o, 6).unwrap();
    assert!(s.compose(&c).iter().all(Elem::is_zero));
    let tl = tangent_line(&c, &o).unwrap();
    let v = s.compose(&tl);
    assert!(v[..3].iter().all(Elem::is_zero));
    assert!(!v[3].is_zero());
}

// Local intersection number as the codimension of (f, g) + m^N among
// polynomials of degree < N.
fn local_algebra_dim(f: &PlaneCurve, g: &PlaneCurve, n: u32) -> usize {
    let t = f.tower().clone();
    let local = |c: &PlaneCurve| c.local_at(&ProjPoint::from_ints(&t, [0, 0, 1]), 2).unwrap();
    let (lf, lg) = (local(f), local(g));
    let monos: Vec<(u32, u32)> = (0..n).flat_map(|d| (0..=d).map(move |i| (i, d - i))).collect();
    let idx = |k: (u32, u32)| monos.iter().position(|m| *m == k);
    let mut rows: Vec<Vec<Elem>> = Vec::new();
    for h in [&lf, &lg] {
        for &(a, b) in &monos {
            let mut r = vec![t.zero(); monos.len()];
            for (i, j) in (0..n).flat_map(|d| (0..=d).map(move |i| (i, d - i))) {
                let c = h.coeff(i, j);
                if c.is_zero() {
                    continue;
                }
                if let Some(k) = idx((i + a, j + b)) {
                    r[k] = c;
                }
            }
            rows.push(r);
        }
    }
    monos.len() - rank(rows, &t)
}

fn rank(mut rows: Vec<Vec<Elem>>, t: &FieldTower) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..ncols {
        let Some(i) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(r, i);
        let inv = rows[r][col].inv().unwrap();
        for k in r + 1..rows.len() {
            let f = &rows[k][col] * &inv;
            if f.is_zero() {
                continue;
            }
            for c in col..ncols {
                let d = &f * &rows[r][c];
                rows[k][c] = &rows[k][c] - &d;
            }
        }
        r += 1;
    }
    let _ = t;
    r
}

fn random_form(t: &FieldTower, d: u32, coeffs: &[i64]) -> PlaneCurve {
    let mut terms = Vec::new();
    let mut k = 0;
    for i in 0..=d {
        for j in 0..=d - i {
            terms.push(([i, j, d - i - j], t.int(coeffs[k % coeffs.len()])));
            k += 1;
        }
    }
    PlaneCurve::new(t, d, terms).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn bezout_on_random_pairs(d1 in 1u32..4, d2 in 1u32..3,
                              a in proptest::collection::vec(-3i64..4, 10),
                              b in proptest::collection::vec(-3i64..4, 10)) {
        let t = qq();
        let f = random_form(&t, d1, &a);
        let g = random_form(&t, d2, &b);
        prop_assume!(!f.is_zero() && !g.is_zero());
        match intersection_points(&f, &g) {
            Ok(ips) => prop_assert_eq!(total(&ips), (f.degree() * g.degree()) as usize),
            Err(zariski_torsion::curve_geometry::GeomError::CommonComponent) => {}
            Err(e) => return Err(TestCaseError::fail(format!("{e}"))),
        }
    }

    #[test]
    fn fulton_matches_local_algebra(a in proptest::collection::vec(-2i64..3, 10),
                                    b in proptest::collection::vec(-2i64..3, 10)) {
        let t = qq();
        // forms vanishing at [0:0:1]
        let mut f = random_form(&t, 3, &a);
        let mut g = random_form(&t, 3, &b);
        let z3 = PlaneCurve::parse(&t, "z^3").unwrap();
        f = &f - &z3.scale(&f.coeff([0, 0, 3]));
        g = &g - &z3.scale(&g.coeff([0, 0, 3]));
        prop_assume!(!f.is_zero() && !g.is_zero());
        let p = ProjPoint::from_ints(&t, [0, 0, 1]);
        if let Ok(i) = intersection_multiplicity(&f, &g, &p) {
            prop_assert_eq!(i, intersection_multiplicity(&g, &f, &p).unwrap());
            if i <= 6 {
                prop_assert_eq!(i as usize, local_algebra_dim(&f, &g, 9));
            }
        }
    }
}
