use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use super::{Ring, Term, Ufd};

/// Element of the fraction field of `R`, reduced: `gcd(num, den)` is a unit
/// and `den` is normalized (positive or monic).
#[derive(Clone, PartialEq, Eq)]
pub struct Frac<R: Ufd> {
    num: R,
    den: R,
}

impl<R: Ufd> Frac<R> {
    /// `None` if `den` is zero.
    pub fn new(num: R, den: R) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            let one = den.one_like();
            return Some(Frac { num, den: one });
        }
        let g = num.gcd(&den).expect("den nonzero");
        let num = num.exact_div(&g).expect("gcd divides");
        let den = den.exact_div(&g).expect("gcd divides");
        let (unit, den) = den.split_unit();
        let num = num * unit.unit_inverse().expect("unit");
        Some(Frac { num, den })
    }

    pub fn from_ring(r: R) -> Self {
        let den = r.one_like();
        Frac { num: r, den }
    }

    pub fn num(&self) -> &R {
        &self.num
    }

    pub fn den(&self) -> &R {
        &self.den
    }

    /// The element as a member of `R`, if its denominator is trivial.
    pub fn to_ring(&self) -> Option<R> {
        self.den.is_one().then(|| self.num.clone())
    }

    pub fn inv(&self) -> Option<Self> {
        Frac::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        o.inv().map(|i| self.clone() * i)
    }

    /// Square root in the fraction field, in canonical sign. `a/b` is a
    /// square exactly when `a*b` is a square in `R`.
    pub fn sqrt(&self) -> Option<Self> {
        let prod = self.num.clone() * self.den.clone();
        let root = prod.sqrt()?;
        Frac::new(root, self.den.clone()).map(|r| r.canonical_sign())
    }

    pub fn canonical_sign(&self) -> Self {
        let c = self.num.canonical_sign();
        if c == self.num {
            self.clone()
        } else {
            Frac { num: c, den: self.den.clone() }
        }
    }
}

impl<R: Ufd> fmt::Debug for Frac<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Frac({self})")
    }
}

impl<R: Ufd> fmt::Display for Frac<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |r: &R| {
            if r.terms().len() > 1 {
                format!("({r})")
            } else {
                r.to_string()
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl<R: Ufd> Add for Frac<R> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        if self.den == o.den {
            return Frac::new(self.num + o.num, self.den).expect("nonzero");
        }
        Frac::new(self.num * o.den.clone() + o.num * self.den.clone(), self.den * o.den).expect("nonzero")
    }
}

impl<R: Ufd> Sub for Frac<R> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<R: Ufd> Mul for Frac<R> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Frac::new(self.num * o.num, self.den * o.den).expect("nonzero")
    }
}

impl<R: Ufd> Neg for Frac<R> {
    type Output = Self;
    fn neg(self) -> Self {
        Frac { num: -self.num, den: self.den }
    }
}

impl<R: Ufd> Ring for Frac<R> {
    type Ctx = R::Ctx;

    fn ctx(&self) -> R::Ctx {
        self.num.ctx()
    }
    fn zero(ctx: &R::Ctx) -> Self {
        Frac::from_ring(R::zero(ctx))
    }
    fn one(ctx: &R::Ctx) -> Self {
        Frac::from_ring(R::one(ctx))
    }
    fn from_bigint(ctx: &R::Ctx, n: &BigInt) -> Self {
        Frac::new(R::from_bigint(ctx, n), R::one(ctx)).expect("nonzero")
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn terms(&self) -> Vec<Term> {
        vec![Term { negative: false, coeff: self.to_string(), vars: String::new() }]
    }
}
