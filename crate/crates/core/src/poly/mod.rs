//! Polynomials over a base ring and quadratic extension fields.
//!
//! [`BiPoly`] is the workhorse: a sparse polynomial in `x` and `y` whose
//! coefficients live in `R`. [`UniPoly`] is its dense univariate sibling and
//! [`MonicQuadratic`] is the shape every generator of the algebra takes.
//! [`QuadExtField`] is the field `E = L[x]/(f)` over the fraction field
//! `L` of `R`.

mod bipoly;
mod quadext;
mod quadratic;
mod unipoly;

pub use bipoly::{BiPoly, Var};
pub use quadext::{square_root_in_ext, QuadExtElement, QuadExtField};
pub use quadratic::MonicQuadratic;
pub use unipoly::UniPoly;

use crate::ufd::Ring;

/// A commutative `R`-algebra given by a context object. Elements are plain
/// data; all arithmetic goes through the context, so elements of different
/// algebras cannot be combined by accident.
pub trait Algebra<R: Ring> {
    type Elem: Clone + PartialEq + std::fmt::Debug;

    fn embed(&self, c: &R) -> Self::Elem;
    fn add(&self, p: &Self::Elem, q: &Self::Elem) -> Self::Elem;
    fn mul(&self, p: &Self::Elem, q: &Self::Elem) -> Self::Elem;
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("divisor is not monic in {0}")]
    NonMonicDivisor(Var),
    #[error("modulus {0} is reducible over the fraction field")]
    ReducibleModulus(String),
}
