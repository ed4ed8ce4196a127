//! Flexes, tangents and local intersection numbers on the Fermat cubic.

use zariski_torsion::curve_geometry::{
    flex_points, intersection_multiplicity, intersection_points, is_smooth, tangent_line, tangents_through, GeomError,
    PlaneCurve, ProjPoint,
};
use zariski_torsion::exact_fields::{FieldTower, UniPoly};

fn main() -> Result<(), GeomError> {
    let q = FieldTower::rationals();
    let k = q.extend("w", &UniPoly::from_ints(&q, &[1, 1, 1]))?;
    let c = PlaneCurve::parse(&k, "x^3 + y^3 + z^3")?;
    println!("smooth: {}", is_smooth(&c)?);
    println!("hessian: {:?}", c.hessian());

    let flexes = flex_points(&c)?;
    println!("{} flexes:", flexes.len());
    for f in &flexes {
        println!("  {:?}  tangent {:?}", f.point, tangent_line(&c, &f.point)?);
    }

    let apex = ProjPoint::from_ints(&k, [0, 0, 1]);
    for (l, touch, _) in tangents_through(&c, &apex)? {
        println!("tangent through [0:0:1]: {l:?} at {touch:?}");
    }

    // a conic tangent to the flex tangent x + y at [1:-1:0]
    let o = ProjPoint::from_ints(&k, [1, -1, 0]);
    let conic = PlaneCurve::parse(&k, "(x + y) z + x y + y^2")?;
    println!("(C . conic) at [1:-1:0] = {}", intersection_multiplicity(&c, &conic, &o)?);
    for ip in intersection_points(&c, &conic)? {
        println!("  mult {} family {} at {:?}", ip.multiplicity, ip.family_size, ip.point);
    }
    Ok(())
}
