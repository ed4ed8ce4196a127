use num_bigint::BigInt;
use proptest::prelude::*;
use zariski_torsion::exact_fields::{
    branches, factor_rational, q, rational_roots, serial, Elem, FieldError, FieldTower, Rational,
    UniPoly,
};

fn qq() -> FieldTower {
    FieldTower::rationals()
}

fn cubic_field() -> FieldTower {
    let t = qq();
    t.extend("a", &UniPoly::from_ints(&t, &[-1, -3, 0, 1])).unwrap()
}

fn rats(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect()
}

#[test]
fn sqrt2_arithmetic() {
    let t = qq();
    let k = t.extend("s", &UniPoly::from_ints(&t, &[-2, 0, 1])).unwrap();
    let s = k.gen();
    let a = &k.one() + &s;
    let b = &k.one() - &s;
    assert_eq!(&a * &b, k.int(-1));
    assert_eq!(&a * &a.inv().unwrap(), k.one());
    assert_eq!(s.pow(6), k.int(8));
}

#[test]
fn two_level_tower() {
    // Q(w), w^2 + w + 1, then c with 27c^3 + 27c^2 - 1 = 0
    let t = qq();
    let k1 = t.extend("w", &UniPoly::from_ints(&t, &[1, 1, 1])).unwrap();
    let m = UniPoly::from_rationals(&k1, &[q("-1/27"), q("0"), q("1"), q("1")]);
    let k2 = k1.extend("c", &m).unwrap();
    assert_eq!(k2.degree(), 6);
    let w = k2.gen_at(1);
    let c = k2.gen();
    assert_eq!(w.pow(3), k2.one());
    let e = &(&w * &c) + &k2.int(2);
    assert_eq!(&e * &e.inv().unwrap(), k2.one());
    assert!(m.lift_to(&k2).eval(&c).is_zero());
}

#[test]
fn budget_is_enforced() {
    let t = qq().with_budget(4);
    let k = t.extend("s", &UniPoly::from_ints(&t, &[-2, 0, 1])).unwrap();
    let err = k.extend("r", &UniPoly::from_ints(&k, &[-3, 0, 0, 1])).unwrap_err();
    assert!(matches!(err, FieldError::BudgetExceeded { requested: 6, budget: 4 }));
}

#[test]
fn zero_divisor_and_split() {
    let t = qq();
    let r = t.extend("u", &UniPoly::from_ints(&t, &[-1, 0, 1])).unwrap();
    let u = r.gen();
    let e = &u - &r.one();
    match e.inv() {
        Err(FieldError::ZeroDivisor { level, factor }) => {
            assert_eq!(level, 1);
            assert_eq!(factor.degree(), 1);
        }
        other => panic!("expected a zero divisor, got {other:?}"),
    }
    // evaluate 1/(u - 1) where defined, zero test elsewhere
    let res = branches(&r, 1, |map| -> Result<Option<Elem>, FieldError> {
        let e = map.apply(&e);
        if e.is_zero_strict()? {
            Ok(None)
        } else {
            Ok(Some(e.inv()?))
        }
    })
    .unwrap();
    assert_eq!(res.len(), 2);
    let (m0, v0) = &res[0];
    let (m1, v1) = &res[1];
    assert!(v0.is_none());
    // u = -1 on the other branch, so 1/(u-1) = -1/2
    assert_eq!(v1.clone().unwrap(), m1.target().frac(-1, 2));
    assert_eq!(m0.apply(&u), m0.target().one());
}

#[test]
fn factor_known_products() {
    // (x^2 - 2)(x^3 - 3x - 1)(x + 5)^2
    let t = qq();
    let a = UniPoly::from_ints(&t, &[-2, 0, 1]);
    let b = UniPoly::from_ints(&t, &[-1, -3, 0, 1]);
    let c = UniPoly::from_ints(&t, &[5, 1]);
    let f = &(&a * &b) * &(&c * &c);
    let fs = factor_rational(&f.rational_coeffs().unwrap(), 0);
    assert_eq!(fs.len(), 3);
    assert_eq!(fs[0], (rats(&[5, 1]), 2));
    assert_eq!(fs[1], (rats(&[-2, 0, 1]), 1));
    assert_eq!(fs[2], (rats(&[-1, -3, 0, 1]), 1));
}

#[test]
fn factor_swinnerton_dyer_like() {
    // x^4 - 10x^2 + 1 is irreducible but splits modulo every prime
    let fs = factor_rational(&rats(&[1, 0, -10, 0, 1]), 3);
    assert_eq!(fs.len(), 1);
    assert_eq!(fs[0].0.len(), 5);
}

#[test]
fn rational_roots_with_denominators() {
    // (3x - 1)(2x + 5)(x^2 + 1)
    let t = qq();
    let f = &(&UniPoly::from_ints(&t, &[-1, 3]) * &UniPoly::from_ints(&t, &[5, 2]))
        * &UniPoly::from_ints(&t, &[1, 0, 1]);
    assert_eq!(rational_roots(&f.rational_coeffs().unwrap()), vec![q("-5/2"), q("1/3")]);
}

#[test]
fn json_round_trip() {
    let t = qq();
    let k1 = t.extend("w", &UniPoly::from_ints(&t, &[1, 1, 1])).unwrap();
    let m = UniPoly::from_rationals(&k1, &[q("-1/27"), q("0"), q("1"), q("1")]);
    let k2 = k1.extend("c", &m).unwrap();
    let js = serial::tower_to_json(&k2);
    let back = serial::tower_from_json(&js).unwrap();
    assert!(back.same_as(&k2));
    let e = &(&k2.gen_at(1) * &k2.gen()) + &k2.frac(3, 7);
    let v = serial::elem_to_json(&e);
    assert_eq!(serial::elem_from_json(&k2, &v).unwrap(), e);
}

#[test]
fn squarefree_decomposition_multiplicities() {
    let t = qq();
    let a = UniPoly::from_ints(&t, &[1, 1]);
    let b = UniPoly::from_ints(&t, &[-2, 0, 1]);
    let f = &a.pow(3) * &b.pow(2);
    let d = f.squarefree_decomposition().unwrap();
    assert_eq!(d.len(), 2);
    assert_eq!(d[0].1, 2);
    assert_eq!(d[1].1, 3);
    assert!(d[0].0 == b && d[1].0 == a);
}

#[test]
fn resultant_matches_root_product() {
    // Res(x^2 - 2, x - 3) = 3^2 - 2 up to the sign convention (-1)^{mn}
    let t = qq();
    let f = UniPoly::from_ints(&t, &[-2, 0, 1]);
    let g = UniPoly::from_ints(&t, &[-3, 1]);
    assert_eq!(f.resultant(&g).unwrap(), t.int(7));
    assert_eq!(g.resultant(&f).unwrap(), t.int(7));
}

fn small_elem(k: &FieldTower, c: &[i64]) -> Elem {
    let a = k.gen();
    let mut acc = k.zero();
    for (i, &v) in c.iter().enumerate() {
        acc = &acc + &(&a.pow(i as u64) * &k.int(v));
    }
    acc
}

proptest! {
    #[test]
    fn cubic_field_axioms(x in proptest::collection::vec(-9i64..9, 3),
                          y in proptest::collection::vec(-9i64..9, 3),
                          z in proptest::collection::vec(-9i64..9, 3)) {
        let k = cubic_field();
        let (a, b, c) = (small_elem(&k, &x), small_elem(&k, &y), small_elem(&k, &z));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), k.one());
        }
    }

    #[test]
    fn factorization_reconstructs(polys in proptest::collection::vec(
            proptest::collection::vec(-6i64..6, 2..5), 1..4)) {
        let t = qq();
        let mut f = UniPoly::from_ints(&t, &[1]);
        for p in &polys {
            let g = UniPoly::from_ints(&t, p);
            if g.degree().unwrap_or(0) >= 1 {
                f = &f * &g;
            }
        }
        prop_assume!(f.degree().unwrap_or(0) >= 1);
        let fs = factor_rational(&f.rational_coeffs().unwrap(), 1);
        let mut prod = UniPoly::from_ints(&t, &[1]);
        for (g, m) in &fs {
            prod = &prod * &UniPoly::from_rationals(&t, g).pow(*m as u32);
        }
        prop_assert!(prod == f.monic().unwrap());
        // each factor is squarefree and has no rational root unless linear
        for (g, _) in &fs {
            if g.len() > 2 {
                prop_assert!(rational_roots(g).is_empty());
            }
        }
    }
}
