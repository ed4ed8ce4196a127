//! Abstract torsion invariants and certificates for two lattice-level pairs.

use zariski_torsion::cli::recipes::{lattice_t1, two_triangles_specs, tangents_triangle_specs, swap12};
use zariski_torsion::torsion_invariants::{
    distinguish, n_arrangement, splitting_number, tau_l, tau_l_group, tau_order_o, InvariantError, ThetaVector,
};

fn main() -> Result<(), InvariantError> {
    let [c1, c2, c3] = two_triangles_specs();
    for s in [&c1, &c2, &c3] {
        println!("{}: line-section group {}, tau^L(1,1) = {:?}", s.name, tau_l_group(s)?.group, tau_l(s, &[1, 1])?.coords());
    }
    println!("T1 = {:?}", lattice_t1().coords());
    let cert = distinguish(&c1, &c2, &swap12(2))?;
    println!("{}", cert.report());

    let [c4, c5] = tangents_triangle_specs();
    for s in [&c4, &c5] {
        println!("{}: n = {}", s.name, n_arrangement(s));
        for a in [[1, 2, 1], [2, 1, 1]] {
            let a = ThetaVector::new(a.to_vec())?;
            println!("  a = {:?}: ord tau = {}, splitting number {}", a.entries(), tau_order_o(s, &a)?, splitting_number(s, &a)?);
        }
    }
    let cert = distinguish(&c4, &c5, &swap12(3))?;
    println!("{}", cert.report());
    println!("{}", serde_json::to_string_pretty(&cert.to_json()).unwrap());
    Ok(())
}
