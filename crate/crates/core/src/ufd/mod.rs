//! Base rings: the [`Ring`] and [`Ufd`] abstractions and the three concrete
//! unique factorization domains supported by the crate.
//!
//! * [`Integer`] — arbitrary precision integers, `Z`.
//! * [`QPoly`] — univariate polynomials over the rationals, `Q[t]`.
//! * [`FpPoly`] — univariate polynomials over a prime field of odd
//!   characteristic, `F_p[t]`.
//!
//! Every ring element carries enough context to build constants of its own
//! ring ([`Ring::Ctx`]); for `F_p[t]` that context is the characteristic.
//! [`Frac`] is the fraction field of any of them.

mod coeff;
mod field_poly;
mod frac;
mod int_factor;
mod integer;
mod poly_factor;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use rand::RngCore;

pub use coeff::{CoeffField, Fp, OddPrime, Rational};
pub use field_poly::FieldPoly;
pub use frac::Frac;
pub use int_factor::is_probable_prime;
pub use integer::Integer;

/// `Q[t]`.
pub type QPoly = FieldPoly<Rational>;
/// `F_p[t]`, `p` odd.
pub type FpPoly = FieldPoly<Fp>;

/// Default effort limit for factorization, in elementary steps.
pub const DEFAULT_FACTOR_BUDGET: u64 = 4_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{divisor} does not divide {dividend}")]
    NotDivisible { dividend: String, divisor: String },
    #[error("gcd of two zero elements is undefined")]
    BothZero,
    #[error("operation is undefined for the zero element")]
    ZeroInput,
    #[error("factorization budget of {budget} steps exhausted")]
    FactorizationTimeout { budget: u64 },
}

/// Effort limit for factorization.
///
/// Counts Pollard-rho iterations for integers and randomized splitting
/// attempts plus recombination candidates for polynomials. Trial division of
/// integers below 10^6 is not metered.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorBudget {
    pub steps: u64,
}

impl FactorBudget {
    pub fn new(steps: u64) -> Self {
        Self { steps }
    }
}

impl Default for FactorBudget {
    fn default() -> Self {
        Self::new(DEFAULT_FACTOR_BUDGET)
    }
}

/// Running counter charged against a [`FactorBudget`].
#[derive(Debug)]
pub struct Meter {
    limit: u64,
    used: u64,
}

impl Meter {
    pub(crate) fn new(budget: &FactorBudget) -> Self {
        Self { limit: budget.steps, used: 0 }
    }

    pub(crate) fn charge(&mut self, steps: u64) -> Result<(), ArithError> {
        self.used = self.used.saturating_add(steps);
        if self.used > self.limit {
            Err(ArithError::FactorizationTimeout { budget: self.limit })
        } else {
            Ok(())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingKind {
    Integers,
    RationalPolys,
    PrimePolys { p: u64 },
}

/// Which base ring a computation lives in.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingDescriptor {
    pub kind: RingKind,
    /// Name of the ring variable for polynomial rings.
    pub variable: Option<&'static str>,
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            RingKind::Integers => f.write_str("Z"),
            RingKind::RationalPolys => write!(f, "Q[{}]", self.variable.unwrap_or("t")),
            RingKind::PrimePolys { p } => write!(f, "F{}[{}]", p, self.variable.unwrap_or("t")),
        }
    }
}

/// One signed term of a ring element, used to print polynomials over the
/// ring with every term expanded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub negative: bool,
    /// Absolute value of the scalar coefficient, e.g. `"3"` or `"3/2"`.
    pub coeff: String,
    /// Power product in the ring variable, empty for constants.
    pub vars: String,
}

/// Joins signed terms as `a*t^2 - t + 1`; `0` when there are none.
pub(crate) fn write_terms(f: &mut fmt::Formatter<'_>, terms: &[Term]) -> fmt::Result {
    if terms.is_empty() {
        return f.write_str("0");
    }
    for (i, t) in terms.iter().enumerate() {
        match (i, t.negative) {
            (0, true) => f.write_str("-")?,
            (0, false) => {}
            (_, true) => f.write_str(" - ")?,
            (_, false) => f.write_str(" + ")?,
        }
        match (t.coeff.as_str(), t.vars.is_empty()) {
            (c, true) => f.write_str(c)?,
            ("1", false) => f.write_str(&t.vars)?,
            (c, false) => write!(f, "{c}*{}", t.vars)?,
        }
    }
    Ok(())
}

/// [`write_terms`] into a fresh string.
pub fn terms_to_string(terms: &[Term]) -> String {
    struct Show<'a>(&'a [Term]);
    impl fmt::Display for Show<'_> {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            write_terms(f, self.0)
        }
    }
    Show(terms).to_string()
}

/// A commutative ring with identity whose elements know their own ring.
pub trait Ring:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    type Ctx: Clone + PartialEq + Eq + fmt::Debug + Send + Sync;

    fn ctx(&self) -> Self::Ctx;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_bigint(ctx: &Self::Ctx, n: &BigInt) -> Self;
    fn is_zero(&self) -> bool;

    fn from_i64(ctx: &Self::Ctx, n: i64) -> Self {
        Self::from_bigint(ctx, &BigInt::from(n))
    }

    fn is_one(&self) -> bool {
        *self == Self::one(&self.ctx())
    }

    fn zero_like(&self) -> Self {
        Self::zero(&self.ctx())
    }

    fn one_like(&self) -> Self {
        Self::one(&self.ctx())
    }

    fn int_like(&self, n: i64) -> Self {
        Self::from_i64(&self.ctx(), n)
    }

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Signed expanded terms, highest first. Zero has no terms.
    fn terms(&self) -> Vec<Term>;
}

/// Unique factorization domain operations.
pub trait Ufd: Ring {
    fn descriptor(ctx: &Self::Ctx) -> RingDescriptor;

    /// The ring variable `t` of a polynomial ring, `None` for `Z`.
    fn indeterminate(ctx: &Self::Ctx) -> Option<Self>;

    fn is_unit(&self) -> bool;

    /// Inverse of a unit.
    fn unit_inverse(&self) -> Option<Self>;

    /// Writes `self = unit * normal` with `normal` positive (integers) or
    /// monic (polynomials). Zero splits as `(1, 0)`.
    fn split_unit(&self) -> (Self, Self);

    fn normalized(&self) -> Self {
        self.split_unit().1
    }

    /// The representative of `{self, -self}` with positive sign: positive
    /// integers, polynomials whose leading coefficient is positive (over `Q`)
    /// or lies in `1..=(p-1)/2` (over `F_p`).
    fn canonical_sign(&self) -> Self;

    /// Returns `q` with `divisor * q == self`.
    fn exact_div(&self, divisor: &Self) -> Result<Self, ArithError>;

    /// Normalized greatest common divisor.
    fn gcd(&self, other: &Self) -> Result<Self, ArithError>;

    /// Square root in the ring, in canonical sign, if one exists.
    fn sqrt(&self) -> Option<Self>;

    fn factor(&self, budget: &FactorBudget) -> Result<PrimeFactorization<Self>, ArithError>;

    /// True iff no prime square divides `self`.
    fn is_square_free(&self, budget: &FactorBudget) -> Result<bool, ArithError>;

    /// Random element of moderate size, for probes and tests. `size` bounds
    /// integer magnitudes and polynomial degrees.
    fn sample(ctx: &Self::Ctx, rng: &mut dyn RngCore, size: u32) -> Self;

    fn two_is_unit(ctx: &Self::Ctx) -> bool {
        Self::from_i64(ctx, 2).is_unit()
    }

    fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.exact_div(self).is_ok()
    }
}

/// `unit * prod(prime^exponent)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeFactorization<R> {
    pub unit: R,
    pub factors: Vec<(R, u32)>,
}

impl<R: Ring> PrimeFactorization<R> {
    pub fn product(&self) -> R {
        self.factors.iter().fold(self.unit.clone(), |acc, (p, e)| acc * p.pow(*e))
    }
}

/// Collapses equal primes and sorts by the given key so that factorizations
/// are deterministic.
pub(crate) fn merge_factors<R: Ring, K: Ord>(mut factors: Vec<(R, u32)>, key: impl Fn(&R) -> K) -> Vec<(R, u32)> {
    factors.sort_by_key(|(p, _)| key(p));
    let mut merged: Vec<(R, u32)> = Vec::with_capacity(factors.len());
    for (p, e) in factors {
        match merged.last_mut() {
            Some((q, m)) if *q == p => *m += e,
            _ => merged.push((p, e)),
        }
    }
    merged
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptor_display() {
        assert_eq!(Integer::descriptor(&()).to_string(), "Z");
        assert_eq!(QPoly::descriptor(&()).to_string(), "Q[t]");
        assert_eq!(FpPoly::descriptor(&Fp::modulus(5).unwrap()).to_string(), "F5[t]");
    }

    #[test]
    fn meter_runs_out() {
        let mut m = Meter::new(&FactorBudget::new(3));
        assert!(m.charge(2).is_ok());
        assert!(m.charge(1).is_ok());
        assert_eq!(m.charge(1), Err(ArithError::FactorizationTimeout { budget: 3 }));
    }
}
