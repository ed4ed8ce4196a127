//! Combinatorial fingerprints of two arrangements on the Fermat cubic that
//! share their combinatorics, and the relabelings that preserve them.

use zariski_torsion::arrangement_combinatorics::check_incidence;
use zariski_torsion::cli::{catalog, recipes, CliError};
use zariski_torsion::exact_fields::DEFAULT_BUDGET;

fn main() -> Result<(), CliError> {
    let entry = catalog::fermat(DEFAULT_BUDGET)?;
    let w = recipes::fermat_witness(&entry)?;
    println!("T1 = {:?}\nT2 = {:?}", w.t1, w.t2);
    println!("L_T1  = {:?}\nL_2T1 = {:?}\nL_T2  = {:?}", w.l_t1, w.l_2t1, w.l_t2);

    let mut lines = vec![w.l_t1.clone(), w.l_2t1.clone(), w.l_t2.clone()];
    lines.extend(w.triangle.lines.iter().cloned());
    let inc = check_incidence(&lines)?;
    println!("six lines: {} meetings, {} concurrent, general position {}", inc.meetings.len(), inc.concurrent.len(), inc.general_position());

    let (f4, f5) = w.fingerprints()?;
    println!("C4 fingerprint: {} singular points, Bezout {}", f4.singular_point_count(), f4.bezout_holds());
    println!("fingerprints equal: {}", f4 == f5);
    println!("admissible relabelings: {:?}", w.admissible()?);
    println!("{}", serde_json::to_string_pretty(&f4.to_json()).unwrap());
    Ok(())
}
