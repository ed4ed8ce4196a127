use proptest::prelude::*;
use zariski_torsion::arrangement_combinatorics::{admissible_permutations, check_incidence, fingerprint, verify_clubsuit};
use zariski_torsion::cli::{catalog, recipes};
use zariski_torsion::curve_geometry::{tangent_line, PlaneCurve, ProjPoint};
use zariski_torsion::exact_fields::{FieldTower, UniPoly, DEFAULT_BUDGET};
use zariski_torsion::torsion_invariants::{compose, identity, inverse};

fn eisenstein() -> FieldTower {
    let q = FieldTower::rationals();
    q.extend("w", &UniPoly::from_ints(&q, &[1, 1, 1])).unwrap()
}

fn curves(t: &FieldTower, s: &[&str]) -> Vec<PlaneCurve> {
    s.iter().map(|c| PlaneCurve::parse(t, c).unwrap()).collect()
}

#[test]
fn three_flex_tangents_are_concurrent() {
    let k = eisenstein();
    let ls = curves(&k, &["x + y", "x + w y", "x + (-w-1) y"]);
    let rep = check_incidence(&ls).unwrap();
    assert_eq!(rep.concurrent.len(), 1);
    assert_eq!(rep.concurrent[0].curves, vec![0, 1, 2]);
    assert!(rep.concurrent[0].point.eq_strict(&ProjPoint::from_ints(&k, [0, 0, 1])).unwrap());
    assert!(!rep.general_position());
    let c = PlaneCurve::parse(&k, "x^3 + y^3 + z^3").unwrap();
    let f = fingerprint(&c, &ls).unwrap();
    assert_eq!(f.concurrent_off_cubic().count(), 1);
    assert!(f.bezout_holds());
}

#[test]
fn two_lines_meet_transversally() {
    let q = FieldTower::rationals();
    let rep = check_incidence(&curves(&q, &["x + y", "x - 2 z"])).unwrap();
    assert_eq!(rep.meetings.len(), 1);
    assert!(rep.meets_transversally(0, 1));
    assert!(rep.tangencies.is_empty());
    assert!(rep.general_position());
}

#[test]
fn tangency_is_reported() {
    let q = FieldTower::rationals();
    let rep = check_incidence(&curves(&q, &["x z - y^2", "x"])).unwrap();
    assert!(!rep.meets_transversally(0, 1));
    assert_eq!(rep.tangencies.len(), 1);
    assert_eq!(rep.tangencies[0].3, 2);
}

#[test]
fn lone_smooth_cubic_has_no_singular_points() {
    let q = FieldTower::rationals();
    let c = PlaneCurve::parse(&q, "x^3 + y^3 + z^3").unwrap();
    let f = fingerprint(&c, &[]).unwrap();
    assert!(f.points.is_empty());
    assert_eq!(f.singular_point_count(), 0);
}

#[test]
fn fingerprint_ignores_the_base_field() {
    // z = 0 meets the Fermat cubic in one rational point and a conjugate pair
    // over Q, in three rational points over Q(w)
    let q = FieldTower::rationals();
    let k = eisenstein();
    let over_q = fingerprint(&PlaneCurve::parse(&q, "x^3 + y^3 + z^3").unwrap(), &curves(&q, &["z"])).unwrap();
    let over_k = fingerprint(&PlaneCurve::parse(&k, "x^3 + y^3 + z^3").unwrap(), &curves(&k, &["z"])).unwrap();
    assert_eq!(over_q.points.len(), 2);
    assert_eq!(over_k.points.len(), 3);
    assert_eq!(over_q, over_k);
    assert_eq!(over_q.singular_point_count(), 3);
}

#[test]
fn equal_conics_fail_the_two_point_clauses() {
    let (e, pts) = recipes::ec90c3_points(DEFAULT_BUDGET, &[4]).unwrap();
    let inst = recipes::clubsuit_instance(&e, &pts[0], 2).unwrap();
    assert!(inst.report.passed());
    let l0 = tangent_line(e.cubic(), e.origin()).unwrap();
    let rep = verify_clubsuit(&e, &inst.c1, &inst.c1, &l0).unwrap();
    assert!(!rep.passed());
}

fn is_group(perms: &[Vec<usize>], k: usize) -> bool {
    perms.contains(&identity(k))
        && perms.iter().all(|p| perms.contains(&inverse(p)))
        && perms.iter().all(|p| perms.iter().all(|q| perms.contains(&compose(p, q))))
}

#[test]
fn admissible_sets_on_the_fermat_pair() {
    let entry = catalog::fermat(DEFAULT_BUDGET).unwrap();
    let w = recipes::fermat_witness(&entry).unwrap();
    let (f4, f5) = w.fingerprints().unwrap();
    let self4 = admissible_permutations(&f4, &f4);
    assert!(is_group(&self4, 3));
    let cross = admissible_permutations(&f4, &f5);
    assert!(!cross.is_empty());
    // the cross set is a coset of the self set
    for s in &cross {
        for g in &self4 {
            assert!(cross.contains(&compose(s, g)));
        }
    }
    let back = admissible_permutations(&f5, &f4);
    assert!(cross.iter().all(|s| back.contains(&inverse(s))));
}

fn relabeled(ls: &[PlaneCurve], sigma: &[usize]) -> Vec<PlaneCurve> {
    let mut out = ls.to_vec();
    for (g, &s) in sigma.iter().enumerate() {
        out[s] = ls[g].clone();
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn relabeling_the_input_is_admissible(sigma in Just(vec![0usize, 1, 2, 3]).prop_shuffle()) {
        let q = FieldTower::rationals();
        let c = PlaneCurve::parse(&q, "x^2 y + y^2 z + z^2 x").unwrap();
        let ls = curves(&q, &["x", "y", "x + y + z", "x y - z^2"]);
        let f1 = fingerprint(&c, &ls).unwrap();
        let f2 = fingerprint(&c, &relabeled(&ls, &sigma)).unwrap();
        prop_assert_eq!(&f1, &f2);
        let adm = admissible_permutations(&f1, &f2);
        prop_assert!(adm.contains(&sigma));
        prop_assert!(is_group(&admissible_permutations(&f1, &f1), 4));
    }
}
