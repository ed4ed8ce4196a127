//! Triangles of tangent lines: the abstract catalog over (Z/9)^2 and the
//! concrete triangles on x^2 y + y^2 z + z^2 x.

use zariski_torsion::cli::{catalog, recipes, CliError};
use zariski_torsion::curve_geometry::ProjPoint;
use zariski_torsion::exact_fields::DEFAULT_BUDGET;
use zariski_torsion::torsion_invariants::{enumerate_triangles, triangle_through};

fn main() -> Result<(), CliError> {
    let cat = enumerate_triangles();
    println!("{} triangles; pair cases {:?}", cat.triangles.len(), cat.pair_counts);

    let entry = catalog::cyclic(DEFAULT_BUDGET)?;
    let e = entry.elliptic()?;
    let p = ProjPoint::from_ints(e.tower(), [1, 0, 0]);
    println!("origin {:?}, order of [1:0:0]: {:?}", e.origin(), e.order(&p, 9)?);
    let tri = triangle_through(&e, &p)?;
    for (v, l) in tri.vertices.iter().zip(&tri.lines) {
        println!("  tangent at {v:?}: {l:?}");
    }
    println!("union: {:?}\nassociated 3-torsion point: {:?}", tri.curve(), tri.class_point);

    let t = recipes::cyclic_triangles(&entry)?;
    let k1 = recipes::triangle_class(&e, &t.l1)?;
    let k2 = recipes::triangle_class(&e, &t.l2)?;
    println!("class of xyz: {k1:?}\nclass of L2:  {k2:?}\ntwice the first: {:?}", e.add(&k1, &k1)?);
    Ok(())
}
