//! Exact arithmetic: rationals, towers of algebraic extensions with
//! dynamic evaluation, univariate polynomials, factorization over Q.

pub mod d5;
pub mod factor;
pub mod norm;
mod poly;
pub mod serial;
mod tower;

pub use d5::{branch, branches, split, SplitSignal, TowerMap};
pub use factor::{factor_rational, rational_roots};
pub use norm::{factor_over, norm_to_rationals};
pub use poly::UniPoly;
pub use tower::{Elem, FieldError, FieldTower, RawPoly, Rational, DEFAULT_BUDGET};

/// Parse a rational literal such as `"-3/4"`.
pub fn q(s: &str) -> Rational {
    serial::parse_rational(s).expect("rational literal")
}
