use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use rand::{Rng, RngCore};

use super::int_factor::factor_positive;
use super::{
    merge_factors, write_terms, ArithError, FactorBudget, PrimeFactorization, Ring, RingDescriptor, RingKind, Term, Ufd,
};

/// Element of `Z`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Integer(pub BigInt);

impl Integer {
    pub fn new(n: impl Into<BigInt>) -> Self {
        Integer(n.into())
    }

    pub fn value(&self) -> &BigInt {
        &self.0
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }
}

impl From<i64> for Integer {
    fn from(n: i64) -> Self {
        Integer(BigInt::from(n))
    }
}

impl fmt::Debug for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.terms())
    }
}

impl Add for Integer {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Integer(self.0 + o.0)
    }
}

impl Sub for Integer {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Integer(self.0 - o.0)
    }
}

impl Mul for Integer {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Integer(self.0 * o.0)
    }
}

impl Neg for Integer {
    type Output = Self;
    fn neg(self) -> Self {
        Integer(-self.0)
    }
}

impl Ring for Integer {
    type Ctx = ();

    fn ctx(&self) {}
    fn zero(_: &()) -> Self {
        Integer(BigInt::zero())
    }
    fn one(_: &()) -> Self {
        Integer(BigInt::one())
    }
    fn from_bigint(_: &(), n: &BigInt) -> Self {
        Integer(n.clone())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn is_one(&self) -> bool {
        self.0.is_one()
    }
    fn terms(&self) -> Vec<Term> {
        if self.0.is_zero() {
            return Vec::new();
        }
        vec![Term { negative: self.0.is_negative(), coeff: self.0.abs().to_string(), vars: String::new() }]
    }
}

impl Ufd for Integer {
    fn descriptor(_: &()) -> RingDescriptor {
        RingDescriptor { kind: RingKind::Integers, variable: None }
    }

    fn indeterminate(_: &()) -> Option<Self> {
        None
    }

    fn is_unit(&self) -> bool {
        self.0.abs().is_one()
    }

    fn unit_inverse(&self) -> Option<Self> {
        self.is_unit().then(|| self.clone())
    }

    fn split_unit(&self) -> (Self, Self) {
        if self.0.is_negative() {
            (Integer::from(-1), Integer(-self.0.clone()))
        } else {
            (Integer::from(1), self.clone())
        }
    }

    fn canonical_sign(&self) -> Self {
        Integer(self.0.abs())
    }

    fn exact_div(&self, divisor: &Self) -> Result<Self, ArithError> {
        if divisor.0.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let (q, r) = self.0.div_rem(&divisor.0);
        if r.is_zero() {
            Ok(Integer(q))
        } else {
            Err(ArithError::NotDivisible { dividend: self.to_string(), divisor: divisor.to_string() })
        }
    }

    fn gcd(&self, other: &Self) -> Result<Self, ArithError> {
        if self.0.is_zero() && other.0.is_zero() {
            return Err(ArithError::BothZero);
        }
        Ok(Integer(self.0.gcd(&other.0)))
    }

    fn sqrt(&self) -> Option<Self> {
        if self.0.is_negative() {
            return None;
        }
        let r = self.0.sqrt();
        (&r * &r == self.0).then_some(Integer(r))
    }

    fn factor(&self, budget: &FactorBudget) -> Result<PrimeFactorization<Self>, ArithError> {
        if self.0.is_zero() {
            return Err(ArithError::ZeroInput);
        }
        let (unit, n) = self.split_unit();
        let factors = factor_positive(&n.0, budget)?.into_iter().map(|(p, e)| (Integer(p), e)).collect();
        Ok(PrimeFactorization { unit, factors: merge_factors(factors, |p| p.clone()) })
    }

    fn is_square_free(&self, budget: &FactorBudget) -> Result<bool, ArithError> {
        Ok(self.factor(budget)?.factors.iter().all(|(_, e)| *e == 1))
    }

    fn sample(_: &(), rng: &mut dyn RngCore, size: u32) -> Self {
        let b = i64::from(size.max(1));
        Integer::from(rng.gen_range(-b..=b))
    }
}
