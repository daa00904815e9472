use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, RngCore};

use super::field_poly::FieldPoly;
use super::int_factor::is_prime_u64;
use super::{ArithError, Meter, RingDescriptor, RingKind};

/// Coefficient field of a univariate polynomial ring: `Q` or `F_p`.
pub trait CoeffField: Clone + PartialEq + Eq + fmt::Debug + Send + Sync + 'static {
    type Ctx: Clone + PartialEq + Eq + fmt::Debug + Send + Sync;

    fn ctx(&self) -> Self::Ctx;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_bigint(ctx: &Self::Ctx, n: &BigInt) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    /// Square root with positive canonical sign.
    fn sqrt(&self) -> Option<Self>;
    /// Whether a nonzero value is the canonical member of `{v, -v}`.
    fn is_positive(&self) -> bool;
    /// Sign and absolute value, for printing.
    fn signed_abs(&self) -> (bool, String);
    fn descriptor(ctx: &Self::Ctx) -> RingDescriptor;
    fn sample(ctx: &Self::Ctx, rng: &mut dyn RngCore, size: u32) -> Self;

    /// Factors a monic square-free polynomial of positive degree into monic
    /// irreducibles.
    fn factor_squarefree(poly: &FieldPoly<Self>, meter: &mut Meter) -> Result<Vec<FieldPoly<Self>>, ArithError>;

    /// `p`-th root of a polynomial with vanishing derivative, in positive
    /// characteristic. Characteristic zero never calls this.
    fn pth_root(poly: &FieldPoly<Self>) -> FieldPoly<Self>;

    fn characteristic(ctx: &Self::Ctx) -> u64;

    fn is_one(&self) -> bool {
        *self == Self::one(&self.ctx())
    }

    fn div(&self, o: &Self) -> Option<Self> {
        o.inv().map(|i| self.mul(&i))
    }
}

/// Exact rational number.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Rational(pub BigRational);

impl Rational {
    pub fn new(num: BigInt, den: BigInt) -> Self {
        Rational(BigRational::new(num, den))
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

fn exact_int_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

impl CoeffField for Rational {
    type Ctx = ();

    fn ctx(&self) {}
    fn zero(_: &()) -> Self {
        Rational(BigRational::zero())
    }
    fn one(_: &()) -> Self {
        Rational(BigRational::one())
    }
    fn from_bigint(_: &(), n: &BigInt) -> Self {
        Rational(BigRational::from_integer(n.clone()))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        Rational(&self.0 + &o.0)
    }
    fn sub(&self, o: &Self) -> Self {
        Rational(&self.0 - &o.0)
    }
    fn mul(&self, o: &Self) -> Self {
        Rational(&self.0 * &o.0)
    }
    fn neg(&self) -> Self {
        Rational(-&self.0)
    }
    fn inv(&self) -> Option<Self> {
        (!self.0.is_zero()).then(|| Rational(self.0.recip()))
    }
    fn sqrt(&self) -> Option<Self> {
        // num/den is in lowest terms with den > 0
        let n = exact_int_sqrt(self.0.numer())?;
        let d = exact_int_sqrt(self.0.denom())?;
        Some(Rational(BigRational::new(n, d)))
    }
    fn is_positive(&self) -> bool {
        self.0.is_positive()
    }
    fn signed_abs(&self) -> (bool, String) {
        (self.0.is_negative(), Rational(self.0.abs()).to_string())
    }
    fn descriptor(_: &()) -> RingDescriptor {
        RingDescriptor { kind: RingKind::RationalPolys, variable: Some("t") }
    }
    fn sample(_: &(), rng: &mut dyn RngCore, size: u32) -> Self {
        let bound = i64::from(size.max(1));
        let num = rng.gen_range(-bound..=bound);
        let den = if rng.gen_bool(0.25) { rng.gen_range(1..=3) } else { 1 };
        Rational::new(BigInt::from(num), BigInt::from(den))
    }
    fn factor_squarefree(poly: &FieldPoly<Self>, meter: &mut Meter) -> Result<Vec<FieldPoly<Self>>, ArithError> {
        super::poly_factor::factor_squarefree_rational(poly, meter)
    }
    fn pth_root(_: &FieldPoly<Self>) -> FieldPoly<Self> {
        unreachable!("characteristic zero has no p-th roots to extract")
    }
    fn characteristic(_: &()) -> u64 {
        0
    }
}

/// Characteristic of a prime field; always an odd prime.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct OddPrime(u64);

impl OddPrime {
    pub fn get(self) -> u64 {
        self.0
    }
}

/// Element of `F_p`, stored as its least nonnegative residue.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp {
    v: u64,
    p: OddPrime,
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(p)) as u64
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

impl Fp {
    /// Validated characteristic; `None` unless `p` is an odd prime.
    pub fn modulus(p: u64) -> Option<OddPrime> {
        (p > 2 && is_prime_u64(p)).then_some(OddPrime(p))
    }

    pub fn new(v: u64, p: OddPrime) -> Self {
        Fp { v: v % p.0, p }
    }

    pub fn value(&self) -> u64 {
        self.v
    }

    /// Tonelli-Shanks.
    fn sqrt_raw(&self) -> Option<u64> {
        let p = self.p.0;
        let a = self.v;
        if a == 0 {
            return Some(0);
        }
        if pow_mod(a, (p - 1) / 2, p) != 1 {
            return None;
        }
        if p % 4 == 3 {
            return Some(pow_mod(a, (p + 1) / 4, p));
        }
        let mut q = p - 1;
        let mut s = 0u32;
        while q.is_multiple_of(2) {
            q /= 2;
            s += 1;
        }
        let mut z = 2;
        while pow_mod(z, (p - 1) / 2, p) != p - 1 {
            z += 1;
        }
        let mut m = s;
        let mut c = pow_mod(z, q, p);
        let mut t = pow_mod(a, q, p);
        let mut r = pow_mod(a, q.div_ceil(2), p);
        while t != 1 {
            let mut i = 0;
            let mut tt = t;
            while tt != 1 {
                tt = mul_mod(tt, tt, p);
                i += 1;
            }
            let b = pow_mod(c, 1u64 << (m - i - 1), p);
            m = i;
            c = mul_mod(b, b, p);
            t = mul_mod(t, c, p);
            r = mul_mod(r, b, p);
        }
        Some(r)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl CoeffField for Fp {
    type Ctx = OddPrime;

    fn ctx(&self) -> OddPrime {
        self.p
    }
    fn zero(p: &OddPrime) -> Self {
        Fp { v: 0, p: *p }
    }
    fn one(p: &OddPrime) -> Self {
        Fp { v: 1, p: *p }
    }
    fn from_bigint(p: &OddPrime, n: &BigInt) -> Self {
        let r = n.mod_floor(&BigInt::from(p.0));
        Fp { v: r.to_u64().expect("residue fits"), p: *p }
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn add(&self, o: &Self) -> Self {
        let p = self.p.0;
        let s = u128::from(self.v) + u128::from(o.v);
        Fp { v: (s % u128::from(p)) as u64, p: self.p }
    }
    fn sub(&self, o: &Self) -> Self {
        let p = self.p.0;
        let v = if self.v >= o.v { self.v - o.v } else { p - (o.v - self.v) };
        Fp { v, p: self.p }
    }
    fn mul(&self, o: &Self) -> Self {
        Fp { v: mul_mod(self.v, o.v, self.p.0), p: self.p }
    }
    fn neg(&self) -> Self {
        Fp { v: if self.v == 0 { 0 } else { self.p.0 - self.v }, p: self.p }
    }
    fn inv(&self) -> Option<Self> {
        (self.v != 0).then(|| Fp { v: pow_mod(self.v, self.p.0 - 2, self.p.0), p: self.p })
    }
    fn sqrt(&self) -> Option<Self> {
        let r = self.sqrt_raw()?;
        let r = Fp { v: r, p: self.p };
        Some(if r.v == 0 || r.is_positive() { r } else { r.neg() })
    }
    fn is_positive(&self) -> bool {
        self.v != 0 && self.v <= (self.p.0 - 1) / 2
    }
    fn signed_abs(&self) -> (bool, String) {
        (false, self.v.to_string())
    }
    fn descriptor(p: &OddPrime) -> RingDescriptor {
        RingDescriptor { kind: RingKind::PrimePolys { p: p.0 }, variable: Some("t") }
    }
    fn sample(p: &OddPrime, rng: &mut dyn RngCore, _size: u32) -> Self {
        Fp { v: rng.gen_range(0..p.0), p: *p }
    }
    fn factor_squarefree(poly: &FieldPoly<Self>, meter: &mut Meter) -> Result<Vec<FieldPoly<Self>>, ArithError> {
        super::poly_factor::factor_squarefree_fp(poly, meter)
    }
    fn pth_root(poly: &FieldPoly<Self>) -> FieldPoly<Self> {
        // Frobenius is the identity on F_p, so sum c_i t^(p i) = (sum c_i t^i)^p.
        let p = poly.ctx_ref().0 as usize;
        let coeffs = poly.coeffs().iter().step_by(p).cloned().collect();
        FieldPoly::from_coeffs(*poly.ctx_ref(), coeffs)
    }
    fn characteristic(p: &OddPrime) -> u64 {
        p.0
    }
}
