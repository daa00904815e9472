//! Exact construction and independent verification of splitting
//! certificates for ring extensions `R ⊂ S` where `S` is generated over a
//! unique factorization domain `R` by two elements satisfying monic
//! quadratics.
//!
//! The crate is organised bottom-up:
//!
//! * [`ufd`] — base rings `Z`, `Q[t]`, `F_p[t]` and their fraction fields.
//! * [`poly`] — univariate and bivariate polynomials, monic division and
//!   quadratic extension fields `L[x]/(f)`.
//! * [`quotient`] — the free rank-4 algebra `T = R[x,y]/(f1,f2)`, the
//!   evaluation maps onto `R[z]/(z^2 - u)` and the structured membership
//!   test for their kernels.
//! * [`splitting`] — case analysis and certificate construction.
//! * [`cert`] — the certificate data model shared by the builder and the
//!   checker.
//! * [`verify`] — an independent checker that re-derives every claim of a
//!   certificate by direct arithmetic.

pub mod cert;
pub mod poly;
pub mod quotient;
pub mod splitting;
pub mod ufd;
pub mod verify;
