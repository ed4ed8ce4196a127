pub mod arrangement_combinatorics;
pub mod cli;
pub mod curve_geometry;
pub mod exact_fields;
pub mod torsion_invariants;
