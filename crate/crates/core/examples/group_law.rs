//! Chord-tangent group law, rational torsion and division points on 90c3.

use zariski_torsion::curve_geometry::{GeomError, ProjPoint, Weierstrass};
use zariski_torsion::exact_fields::FieldTower;

fn main() -> Result<(), GeomError> {
    let q = FieldTower::rationals();
    let w = Weierstrass::from_ints(&q, [1, -1, 1, -122, 1721]);
    let e = w.elliptic()?;
    println!("curve: {:?}", w.curve());

    let mut pts = w.rational_torsion_points(12)?;
    pts.sort_by_key(|p| e.order(p, 12).ok().flatten());
    for p in &pts {
        println!("order {:>2}: {:?}", e.order(p, 12)?.unwrap_or(0), p);
    }

    let p4 = ProjPoint::parse(&q, "9:31:1")?;
    let p12 = pts.iter().find(|p| e.order(p, 12).ok().flatten() == Some(12)).expect("a point of order 12");
    let sum = e.add(&p4, p12)?;
    println!("P4 + P12 = {:?}, order {:?}", sum, e.order(&sum, 12)?);
    println!("[3]P12 = {:?}", e.mul(3, p12)?);

    // halving a point of order 4 needs a quadratic extension at least
    for (h, _) in e.division_points(2, &p4)? {
        println!("half of P4 over a tower of degree {}: order {:?}", h.tower().degree(), e.lift_to(h.tower()).order(&h, 8)?);
    }
    Ok(())
}
