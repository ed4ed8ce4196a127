//! Two conics meeting the cubic 90c3 only at P and Q = -5P, for P of order 4
//! and of order 12, and the pair they give once the flex tangent is added.

use zariski_torsion::cli::{recipes, CliError};
use zariski_torsion::exact_fields::DEFAULT_BUDGET;
use zariski_torsion::torsion_invariants::{distinguish, identity, tau_order_o, ThetaVector};

fn main() -> Result<(), CliError> {
    let (e, pts) = recipes::ec90c3_points(DEFAULT_BUDGET, &[4, 12])?;
    let labels = recipes::ec90c3_labels(&e, &pts[1])?;
    let mut specs = Vec::new();
    for p in &pts {
        let inst = recipes::clubsuit_instance(&e, p, 2)?;
        println!("r = {}: P = {:?}, Q = {:?}", inst.r, inst.p, inst.q);
        println!("  C1: {:?}\n  C2: {:?}", inst.c1, inst.c2);
        println!("{}", inst.report);
        let plus = inst.plus(Some(&labels))?;
        let a = ThetaVector::new(vec![2, 1])?;
        println!("  ord tau(2,1) on C + L_O + C1 + C2: {}", tau_order_o(&plus, &a)?);
        specs.push(plus);
    }
    let cert = distinguish(&specs[0], &specs[1], &[identity(2)])?;
    println!("{}", cert.report());
    Ok(())
}
