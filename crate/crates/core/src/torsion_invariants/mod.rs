//! Torsion-divisor invariants of maximal-flex arrangements: the integers
//! `m_j`, `n_a`, the classes `τ(a)` and `τ^L`, predicted splitting numbers,
//! triangles, the (♣) order arithmetic and Zariski-pair certificates.
//!
//! Everything works over the abstract lattice `(Z/N)²`; arrangements built
//! from actual curves also carry a [`GeometricArrangement`] and the two
//! backends are cross-checked.

mod certificate;
mod geometric;
mod lattice;
mod spec;
mod tau;
mod triangles;

use thiserror::Error;

use crate::curve_geometry::GeomError;

pub use certificate::{compose, distinguish, identity, inverse, verify_certificate, Mode, Perm, Verdict, Witness, ZariskiCertificate};
pub use geometric::{common_tower, label_span, triangle_through, GeometricArrangement, GeometricTriangle};
pub use lattice::{group_type, span, weil_exponent, GroupType, TorsionClass};
pub use spec::{ArrangementSpec, ComponentData, ThetaVector};
pub use tau::{
    compute_na, in_kernel_tau_l, n_arrangement, p_l, reduce_theta, search_bound, splitting_number, tau_class_o, tau_l,
    tau_l_group, tau_order_o, theta_box, LineGroup,
};
pub use triangles::{
    classify_pair, clubsuit_orders, clubsuit_parameters, enumerate_triangles, triangle_from, vertex_pairing,
    ClubsuitParameters, PairCase, Triangle, TriangleCatalog,
};

#[derive(Debug, Clone, Error)]
pub enum InvariantError {
    #[error("moduli {0} and {1} do not match")]
    ModulusMismatch(u64, u64),
    #[error("vector {0:?} does not have coprime entries")]
    InvalidTheta(Vec<i64>),
    #[error("reduced vector is zero, so the class is trivial")]
    ZeroVector,
    #[error("expected a point of order {expected}, found order {found}")]
    WrongOrder { expected: u64, found: u64 },
    #[error("backends disagree on τ({theta:?}): lattice order {lattice}, curve order {curve}")]
    BackendDisagreement { theta: Vec<i64>, lattice: u64, curve: u64 },
    #[error("no admissible permutation was supplied")]
    EmptyAdmissibleSet,
    #[error("the arrangement has no torsion classes to work with")]
    NoAbstractBackend,
    #[error("malformed arrangement: {0}")]
    Malformed(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Geometry(#[from] GeomError),
}

impl From<crate::exact_fields::FieldError> for InvariantError {
    fn from(e: crate::exact_fields::FieldError) -> Self {
        InvariantError::Geometry(e.into())
    }
}
