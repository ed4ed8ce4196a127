use proptest::prelude::*;
use zariski_torsion::torsion_invariants::{
    classify_pair, clubsuit_orders, clubsuit_parameters, compose, compute_na, distinguish, enumerate_triangles,
    identity, inverse, reduce_theta, span, splitting_number, tau_class_o, tau_l, tau_l_group, tau_order_o,
    triangle_from, vertex_pairing, verify_certificate, weil_exponent, ArrangementSpec, ComponentData, InvariantError,
    Mode, PairCase, ThetaVector, TorsionClass, Witness,
};

fn t1() -> TorsionClass {
    TorsionClass::new(9, 3, 0)
}

fn t2() -> TorsionClass {
    TorsionClass::new(9, 0, 3)
}

fn tri(c: TorsionClass) -> ComponentData {
    ComponentData::new(3, 3, c)
}

fn line(c: TorsionClass) -> ComponentData {
    ComponentData::new(1, 3, c)
}

fn triple() -> [ArrangementSpec; 3] {
    [
        ArrangementSpec::new("C1", 3, vec![tri(t1()), tri(t1())]).unwrap(),
        ArrangementSpec::new("C2", 3, vec![tri(t1()), tri(t1().scale(2))]).unwrap(),
        ArrangementSpec::new("C3", 3, vec![tri(t1()), tri(t2())]).unwrap(),
    ]
}

fn pair() -> [ArrangementSpec; 2] {
    [
        ArrangementSpec::new("C4", 3, vec![line(t1()), line(t1().scale(2)), tri(t1())]).unwrap(),
        ArrangementSpec::new("C5", 3, vec![line(t1()), line(t2()), tri(t1())]).unwrap(),
    ]
}

fn theta(v: &[i64]) -> ThetaVector {
    ThetaVector::new(v.to_vec()).unwrap()
}

#[test]
fn lattice_basics() {
    let p = TorsionClass::new(9, 1, 0);
    assert_eq!(p.order(), 9);
    assert_eq!(t1().order(), 3);
    assert_eq!(TorsionClass::zero(9).order(), 1);
    assert_eq!(weil_exponent(&TorsionClass::new(9, 1, 0), &TorsionClass::new(9, 0, 1)).unwrap(), 1);
    assert_eq!(weil_exponent(&t1(), &t1()).unwrap(), 0);
    assert_eq!(span(9, &[t1(), t2()]).unwrap().len(), 9);
    assert!(matches!(t1().add(&TorsionClass::new(6, 1, 0)), Err(InvariantError::ModulusMismatch(9, 6))));
    assert_eq!(TorsionClass::new(3, 1, 0).embed(9).unwrap(), t1());
}

#[test]
fn line_groups_of_the_triple() {
    let [c1, c2, c3] = triple();
    let g: Vec<String> = [&c1, &c2, &c3].iter().map(|s| tau_l_group(s).unwrap().group.to_string()).collect();
    assert_eq!(g, ["Z/3", "Z/3", "(Z/3)^2"]);
    assert!(!tau_l_group(&c3).unwrap().group.is_cyclic());
    assert_eq!(tau_l(&c1, &[1, 1]).unwrap(), t1().scale(2));
    assert!(tau_l(&c2, &[1, 1]).unwrap().is_zero());
}

#[test]
fn triple_is_distinguished() {
    let [c1, c2, c3] = triple();
    let swaps = vec![identity(2), vec![1, 0]];
    let cert = distinguish(&c1, &c3, &swaps).unwrap();
    assert_eq!(cert.mode, Some(Mode::Group));
    let cert = distinguish(&c1, &c2, &swaps).unwrap();
    assert_eq!(cert.mode, Some(Mode::Kernel));
    assert!(verify_certificate(&c1, &c2, &cert).unwrap());
    assert!(cert.witnesses.iter().any(|w| matches!(w, Witness::Kernel { a, .. } if a == &vec![1, 1])));
}

#[test]
fn pair_invariants() {
    let [c4, c5] = pair();
    assert_eq!(compute_na(&c4, &theta(&[1, 2, 1])).unwrap(), 3);
    assert_eq!(compute_na(&c4, &theta(&[2, 1, 1])).unwrap(), 3);
    assert_eq!(tau_order_o(&c4, &theta(&[1, 2, 1])).unwrap(), 1);
    assert_eq!(tau_order_o(&c4, &theta(&[2, 1, 1])).unwrap(), 3);
    assert_eq!(tau_order_o(&c5, &theta(&[1, 2, 1])).unwrap(), 3);
    assert_eq!(tau_order_o(&c5, &theta(&[2, 1, 1])).unwrap(), 3);
    assert_eq!(splitting_number(&c4, &theta(&[1, 2, 1])).unwrap(), 3);
    assert_eq!(splitting_number(&c4, &theta(&[2, 1, 1])).unwrap(), 1);
    assert_eq!(tau_l_group(&c4).unwrap().group.size, 1);
    assert_eq!(tau_l_group(&c5).unwrap().group.size, 1);
}

#[test]
fn pair_is_distinguished_by_multisets() {
    let [c4, c5] = pair();
    let adm = vec![identity(3), vec![1, 0, 2]];
    let cert = distinguish(&c4, &c5, &adm).unwrap();
    assert_eq!(cert.mode, Some(Mode::Multiset));
    match &cert.witnesses[0] {
        Witness::Multiset { a0, left, right } => {
            assert_eq!(a0, &vec![1, 2, 1]);
            assert_eq!(left, &vec![1, 3]);
            assert_eq!(right, &vec![3, 3]);
        }
        w => panic!("unexpected witness {w:?}"),
    }
    assert!(verify_certificate(&c4, &c5, &cert).unwrap());
    let report = cert.report();
    assert!(report.contains("multiset-witness"));
    assert!(report.contains("--- certificate"));
    // a subset of the admissible set still certifies
    assert!(distinguish(&c4, &c5, &adm[..1]).unwrap().is_distinguished());
}

#[test]
fn self_comparison_is_inconclusive() {
    for s in triple().iter().chain(pair().iter()) {
        let k = s.k();
        let cert = distinguish(s, s, &[identity(k)]).unwrap();
        assert!(!cert.is_distinguished(), "{}", s.name);
    }
    assert!(matches!(distinguish(&pair()[0], &pair()[1], &[]), Err(InvariantError::EmptyAdmissibleSet)));
}

#[test]
fn triangle_counts() {
    let cat = enumerate_triangles();
    assert_eq!(cat.order_nine, 72);
    assert_eq!(cat.triangles.len(), 24);
    assert_eq!(cat.by_class.len(), 8);
    assert!(cat.by_class.values().all(|v| v.len() == 3));
    for t in &cat.triangles {
        assert!(t.vertices.iter().all(|v| v.scale(3) == t.class));
        let again = triangle_from(&t.vertices[1]).unwrap();
        assert_eq!(again.key(), t.key());
    }
    assert!(matches!(triangle_from(&t1()), Err(InvariantError::WrongOrder { expected: 9, found: 3 })));
    // independent pairs are exactly those whose vertices span the lattice
    for (i, a) in cat.triangles.iter().enumerate() {
        for b in &cat.triangles[i + 1..] {
            let spans = span(9, &[a.vertices[0], b.vertices[0]]).unwrap().len() == 81;
            assert_eq!(classify_pair(a, b) == PairCase::Independent, spans);
            assert_eq!(spans, vertex_pairing(a, b) % 3 != 0);
        }
    }
}

#[test]
fn clubsuit_tables() {
    let row = |d, r| clubsuit_parameters(d, r).sum_order;
    assert_eq!([4, 8, 12, 24].map(|r| row(2, r)), [Some(1), Some(2), Some(3), Some(6)]);
    assert_eq!([7, 21, 63].map(|r| row(3, r)), [Some(1), Some(3), Some(9)]);
    assert_eq!(clubsuit_orders(2), vec![4, 8, 12, 24]);
    assert_eq!(clubsuit_orders(3), vec![7, 21, 63]);
    for d in 2..6 {
        for r in 1..=3 * d {
            if (3 * d) % r == 0 {
                assert!(!clubsuit_parameters(d, r).valid);
            }
        }
    }
}

#[test]
fn spec_json_round_trip() {
    let [c4, _] = pair();
    let v = c4.to_json();
    let back = ArrangementSpec::from_json(&v).unwrap();
    assert_eq!(back.to_json(), v);
    let bad = serde_json::json!({"d0": 3, "components": [{"degree": 1, "m": 3, "class": [1, 0], "modulus": 9}]});
    assert!(ArrangementSpec::from_json(&bad).is_err());
}

fn random_spec(k: usize, raw: &[(u64, u64, i64, i64)]) -> ArrangementSpec {
    // m_j | 12 and each class killed by m_j inside (Z/12)^2
    let comps = raw[..k]
        .iter()
        .map(|&(d, m, a, b)| {
            let m = [1, 2, 3, 4, 6, 12][m as usize % 6];
            let s = 12 / m as i64;
            ComponentData::new(d, m, TorsionClass::new(12, a * s, b * s))
        })
        .collect();
    ArrangementSpec::new("random", 3, comps).unwrap()
}

fn raw_components() -> impl Strategy<Value = Vec<(u64, u64, i64, i64)>> {
    proptest::collection::vec((1u64..5, 0u64..6, 0i64..12, 0i64..12), 4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn splitting_times_order_is_na(k in 1usize..5, raw in raw_components(),
                                   a in proptest::collection::vec(-20i64..20, 4)) {
        let spec = random_spec(k, &raw);
        prop_assume!(ThetaVector::new(a[..k].to_vec()).is_ok());
        let a = ThetaVector::new(a[..k].to_vec()).unwrap();
        let na = compute_na(&spec, &a).unwrap();
        let lcm = spec.components.iter().fold(1u64, |l, c| num_integer::lcm(l, c.m));
        prop_assert_eq!(lcm % na, 0);
        let o = tau_order_o(&spec, &a).unwrap();
        prop_assert_eq!(na % o, 0);
        prop_assert_eq!(splitting_number(&spec, &a).unwrap() * o, na);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reduce_theta_identity(k in 1usize..5, raw in raw_components(),
                             a in proptest::collection::vec(-30i64..30, 4)) {
        let spec = random_spec(k, &raw);
        prop_assume!(ThetaVector::new(a[..k].to_vec()).is_ok());
        let a = ThetaVector::new(a[..k].to_vec()).unwrap();
        let na = compute_na(&spec, &a).unwrap();
        match reduce_theta(&spec, &a) {
            Ok((b, kappa)) => {
                let nb = compute_na(&spec, &b).unwrap();
                prop_assert_eq!(nb % na, 0);
                // brute force both sides of τ(a) = (κ n_b / n_a) τ(b)
                let lhs = tau_class_o(&spec, &a).unwrap();
                let rhs = tau_class_o(&spec, &b).unwrap().scale((kappa * nb / na) as i64);
                prop_assert_eq!(lhs, rhs);
            }
            Err(InvariantError::ZeroVector) => {
                prop_assert!(tau_class_o(&spec, &a).unwrap().is_zero());
            }
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }

    #[test]
    fn permutation_algebra(p in Just(()).prop_perturb(|_, mut rng| {
        let mut v: Vec<usize> = (0..5).collect();
        for i in (1..5).rev() { v.swap(i, (rng.next_u32() as usize) % (i + 1)); }
        v
    }), q in Just(()).prop_perturb(|_, mut rng| {
        let mut v: Vec<usize> = (0..5).collect();
        for i in (1..5).rev() { v.swap(i, (rng.next_u32() as usize) % (i + 1)); }
        v
    })) {
        prop_assert_eq!(compose(&p, &inverse(&p)), identity(5));
        let a = vec![1i64, 2, 3, 4, 5];
        let pq = ThetaVector::permute_raw(&ThetaVector::permute_raw(&a, &q), &p);
        prop_assert_eq!(pq, ThetaVector::permute_raw(&a, &compose(&p, &q)));
    }
}
