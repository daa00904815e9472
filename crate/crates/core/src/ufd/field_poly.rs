use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use rand::{Rng, RngCore};

use super::coeff::CoeffField;
use super::{
    merge_factors, write_terms, ArithError, FactorBudget, Meter, PrimeFactorization, Ring, RingDescriptor, Term, Ufd,
};

/// Dense univariate polynomial in `t` over a coefficient field, lowest
/// degree first, trailing zeros stripped.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldPoly<F: CoeffField> {
    ctx: F::Ctx,
    coeffs: Vec<F>,
}

impl<F: CoeffField> FieldPoly<F> {
    pub fn from_coeffs(ctx: F::Ctx, mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        FieldPoly { ctx, coeffs }
    }

    pub fn constant(ctx: F::Ctx, c: F) -> Self {
        Self::from_coeffs(ctx, vec![c])
    }

    /// `t`.
    pub fn var(ctx: F::Ctx) -> Self {
        let coeffs = vec![F::zero(&ctx), F::one(&ctx)];
        FieldPoly { ctx, coeffs }
    }

    pub fn ctx_ref(&self) -> &F::Ctx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(|| F::zero(&self.ctx))
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_some_and(|c| c.is_one())
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::from_coeffs(self.ctx.clone(), self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Monic associate; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.lead() {
            Some(l) => self.scale(&l.inv().expect("nonzero leading coefficient")),
            None => self.clone(),
        }
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul(&F::from_bigint(&self.ctx, &BigInt::from(i))))
            .collect();
        Self::from_coeffs(self.ctx.clone(), coeffs)
    }

    /// Euclidean division by a nonzero polynomial.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), ArithError> {
        let dlead = divisor.lead().ok_or(ArithError::DivisionByZero)?;
        let dinv = dlead.inv().expect("field");
        let ddeg = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= ddeg {
            return Ok((Self::zero(&self.ctx), self.clone()));
        }
        let mut quot = vec![F::zero(&self.ctx); rem.len() - ddeg];
        for k in (0..quot.len()).rev() {
            let c = rem[k + ddeg].mul(&dinv);
            if !c.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] = rem[k + j].sub(&c.mul(dc));
                }
            }
            quot[k] = c;
        }
        rem.truncate(ddeg);
        Ok((Self::from_coeffs(self.ctx.clone(), quot), Self::from_coeffs(self.ctx.clone(), rem)))
    }

    pub(crate) fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).expect("nonzero divisor").1
    }

    /// Monic gcd; zero when both inputs are zero.
    pub(crate) fn gcd_monic(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: `(g, s, t)` with `s*a + t*b = g`, `g` monic.
    pub(crate) fn xgcd(&self, other: &Self) -> (Self, Self, Self) {
        let zero = Self::zero(&self.ctx);
        let one = Self::one(&self.ctx);
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (one.clone(), zero.clone());
        let (mut t0, mut t1) = (zero, one);
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero");
            r0 = std::mem::replace(&mut r1, r);
            let s = s0 - q.clone() * s1.clone();
            s0 = std::mem::replace(&mut s1, s);
            let t = t0 - q * t1.clone();
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.lead().cloned() {
            Some(l) => {
                let li = l.inv().expect("field");
                (r0.scale(&li), s0.scale(&li), t0.scale(&li))
            }
            None => (r0, s0, t0),
        }
    }

    /// `self^e mod modulus`.
    pub(crate) fn pow_mod(&self, e: &BigUint, modulus: &Self) -> Self {
        let mut acc = Self::one(&self.ctx).rem(modulus);
        let base = self.rem(modulus);
        for i in (0..e.bits()).rev() {
            acc = (acc.clone() * acc).rem(modulus);
            if e.bit(i) {
                acc = (acc * base.clone()).rem(modulus);
            }
        }
        acc
    }

    /// Square-free decomposition of a monic polynomial of positive degree:
    /// pairwise coprime monic square-free parts with multiplicities.
    pub(crate) fn squarefree_decomposition(&self) -> Vec<(Self, u32)> {
        let p = F::characteristic(&self.ctx) as u32;
        let mut out = Vec::new();
        let d = self.derivative();
        if d.is_zero() {
            for (g, m) in F::pth_root(self).squarefree_decomposition() {
                out.push((g, m * p));
            }
            return out;
        }
        let mut c = self.gcd_monic(&d);
        let mut w = self.div_rem(&c).expect("nonzero").0;
        let mut i = 1;
        while w.degree() != Some(0) {
            let y = w.gcd_monic(&c);
            let z = w.div_rem(&y).expect("nonzero").0;
            if z.degree() != Some(0) {
                out.push((z, i));
            }
            i += 1;
            c = c.div_rem(&y).expect("nonzero").0;
            w = y;
        }
        if c.degree() != Some(0) {
            for (g, m) in F::pth_root(&c).squarefree_decomposition() {
                out.push((g, m * p));
            }
        }
        out
    }

    fn sort_key(&self) -> (usize, String) {
        (self.coeffs.len(), format!("{:?}", self.coeffs))
    }
}

impl<F: CoeffField> fmt::Debug for FieldPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldPoly({self})")
    }
}

impl<F: CoeffField> fmt::Display for FieldPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.terms())
    }
}

fn zip_with<F: CoeffField>(a: &[F], b: &[F], ctx: &F::Ctx, op: impl Fn(&F, &F) -> F) -> Vec<F> {
    let zero = F::zero(ctx);
    (0..a.len().max(b.len())).map(|i| op(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero))).collect()
}

impl<F: CoeffField> Add for FieldPoly<F> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let c = zip_with(&self.coeffs, &o.coeffs, &self.ctx, F::add);
        Self::from_coeffs(self.ctx, c)
    }
}

impl<F: CoeffField> Sub for FieldPoly<F> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let c = zip_with(&self.coeffs, &o.coeffs, &self.ctx, F::sub);
        Self::from_coeffs(self.ctx, c)
    }
}

impl<F: CoeffField> Neg for FieldPoly<F> {
    type Output = Self;
    fn neg(self) -> Self {
        let c = self.coeffs.iter().map(F::neg).collect();
        Self::from_coeffs(self.ctx, c)
    }
}

impl<F: CoeffField> Mul for FieldPoly<F> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return Self::zero(&self.ctx);
        }
        let mut c = vec![F::zero(&self.ctx); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] = c[i + j].add(&a.mul(b));
            }
        }
        Self::from_coeffs(self.ctx, c)
    }
}

impl<F: CoeffField> Ring for FieldPoly<F> {
    type Ctx = F::Ctx;

    fn ctx(&self) -> F::Ctx {
        self.ctx.clone()
    }
    fn zero(ctx: &F::Ctx) -> Self {
        FieldPoly { ctx: ctx.clone(), coeffs: Vec::new() }
    }
    fn one(ctx: &F::Ctx) -> Self {
        FieldPoly { ctx: ctx.clone(), coeffs: vec![F::one(ctx)] }
    }
    fn from_bigint(ctx: &F::Ctx, n: &BigInt) -> Self {
        Self::from_coeffs(ctx.clone(), vec![F::from_bigint(ctx, n)])
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn terms(&self) -> Vec<Term> {
        self.coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let (negative, coeff) = c.signed_abs();
                let vars = match i {
                    0 => String::new(),
                    1 => "t".to_string(),
                    _ => format!("t^{i}"),
                };
                Term { negative, coeff, vars }
            })
            .collect()
    }
}

impl<F: CoeffField> Ufd for FieldPoly<F> {
    fn descriptor(ctx: &F::Ctx) -> RingDescriptor {
        F::descriptor(ctx)
    }

    fn indeterminate(ctx: &F::Ctx) -> Option<Self> {
        Some(Self::var(ctx.clone()))
    }

    fn is_unit(&self) -> bool {
        self.degree() == Some(0)
    }

    fn unit_inverse(&self) -> Option<Self> {
        if !self.is_unit() {
            return None;
        }
        let inv = self.coeffs[0].inv()?;
        Some(Self::constant(self.ctx.clone(), inv))
    }

    fn split_unit(&self) -> (Self, Self) {
        match self.lead() {
            Some(l) => (Self::constant(self.ctx.clone(), l.clone()), self.monic()),
            None => (Self::one(&self.ctx), self.clone()),
        }
    }

    fn canonical_sign(&self) -> Self {
        match self.lead() {
            Some(l) if !l.is_positive() => -self.clone(),
            _ => self.clone(),
        }
    }

    fn exact_div(&self, divisor: &Self) -> Result<Self, ArithError> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(ArithError::NotDivisible { dividend: self.to_string(), divisor: divisor.to_string() })
        }
    }

    fn gcd(&self, other: &Self) -> Result<Self, ArithError> {
        if self.is_zero() && other.is_zero() {
            return Err(ArithError::BothZero);
        }
        Ok(self.gcd_monic(other))
    }

    fn sqrt(&self) -> Option<Self> {
        let Some(deg) = self.degree() else {
            return Some(self.clone());
        };
        if deg % 2 == 1 {
            return None;
        }
        let lead_root = self.lead()?.sqrt()?;
        let m = self.monic();
        let n = deg / 2;
        let half = F::from_bigint(&self.ctx, &BigInt::from(2)).inv().expect("odd characteristic");
        // Solve for the monic root from the top coefficient down.
        let mut r = vec![F::zero(&self.ctx); n + 1];
        r[n] = F::one(&self.ctx);
        for k in 1..=n {
            let target = 2 * n - k;
            let mut acc = m.coeff(target);
            for i in (n - k + 1)..=n {
                let j = target - i;
                if j > n - k && j <= n {
                    acc = acc.sub(&r[i].mul(&r[j]));
                }
            }
            r[n - k] = acc.mul(&half);
        }
        let root = Self::from_coeffs(self.ctx.clone(), r);
        (root.clone() * root.clone() == m).then(|| root.scale(&lead_root))
    }

    fn factor(&self, budget: &FactorBudget) -> Result<PrimeFactorization<Self>, ArithError> {
        let (unit, monic) = match self.lead() {
            None => return Err(ArithError::ZeroInput),
            Some(l) => (Self::constant(self.ctx.clone(), l.clone()), self.monic()),
        };
        let mut meter = Meter::new(budget);
        let mut factors = Vec::new();
        if monic.degree() != Some(0) {
            for (part, m) in monic.squarefree_decomposition() {
                for q in F::factor_squarefree(&part, &mut meter)? {
                    factors.push((q, m));
                }
            }
        }
        Ok(PrimeFactorization { unit, factors: merge_factors(factors, Self::sort_key) })
    }

    fn is_square_free(&self, _budget: &FactorBudget) -> Result<bool, ArithError> {
        if self.is_zero() {
            return Err(ArithError::ZeroInput);
        }
        // A vanishing derivative gives gcd = self, which correctly reports
        // a p-th power of positive degree as not square-free.
        Ok(self.gcd_monic(&self.derivative()).degree() == Some(0))
    }

    fn sample(ctx: &F::Ctx, rng: &mut dyn RngCore, size: u32) -> Self {
        let deg = rng.gen_range(0..=size.clamp(1, 4) as usize);
        let coeffs = (0..=deg).map(|_| F::sample(ctx, rng, size)).collect();
        Self::from_coeffs(ctx.clone(), coeffs)
    }
}
