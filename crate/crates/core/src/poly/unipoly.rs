use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::ufd::{write_terms, Ring, Term};

use super::{BiPoly, PolyError, Var};

/// Dense univariate polynomial over `R` in a named variable, lowest degree
/// first, trailing zeros stripped.
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly<R: Ring> {
    ctx: R::Ctx,
    var: &'static str,
    coeffs: Vec<R>,
}

impl<R: Ring> UniPoly<R> {
    pub fn new(ctx: &R::Ctx, var: &'static str, mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { ctx: ctx.clone(), var, coeffs }
    }

    pub fn variable(&self) -> &'static str {
        self.var
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> R {
        self.coeffs.get(k).cloned().unwrap_or_else(|| R::zero(&self.ctx))
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Horner evaluation in any algebra over `R`.
    pub fn eval<A>(&self, zero: A, at: &A, embed: impl Fn(&R) -> A) -> A
    where
        A: Clone + Add<Output = A> + Mul<Output = A>,
    {
        self.coeffs.iter().rev().fold(zero, |acc, c| acc * at.clone() + embed(c))
    }

    /// Division by a polynomial with leading coefficient exactly 1.
    pub fn monic_divide(&self, m: &Self) -> Result<(Self, Self), PolyError> {
        let n = match m.coeffs.last() {
            Some(l) if l.is_one() => m.coeffs.len() - 1,
            _ => return Err(PolyError::NonMonicDivisor(Var::X)),
        };
        let mut rem = self.coeffs.clone();
        if rem.len() <= n {
            return Ok((Self::new(&self.ctx, self.var, Vec::new()), self.clone()));
        }
        let mut quot = vec![R::zero(&self.ctx); rem.len() - n];
        for k in (0..quot.len()).rev() {
            let c = rem[k + n].clone();
            for (j, mc) in m.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - c.clone() * mc.clone();
            }
            quot[k] = c;
        }
        rem.truncate(n);
        Ok((Self::new(&self.ctx, self.var, quot), Self::new(&self.ctx, self.var, rem)))
    }

    /// The same polynomial read in one of the algebra variables.
    pub fn to_bipoly(&self, v: Var) -> BiPoly<R> {
        BiPoly::univariate(&self.ctx, v, &self.coeffs)
    }

    fn zip(self, o: Self, op: impl Fn(R, R) -> R) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let coeffs = (0..n).map(|k| op(self.coeff(k), o.coeff(k))).collect();
        Self::new(&self.ctx, self.var, coeffs)
    }
}

impl<R: Ring> fmt::Display for UniPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            let mono = match k {
                0 => String::new(),
                1 => self.var.to_string(),
                _ => format!("{}^{k}", self.var),
            };
            for t in c.terms() {
                let vars = match (t.vars.is_empty(), mono.is_empty()) {
                    (true, _) => mono.clone(),
                    (false, true) => t.vars,
                    (false, false) => format!("{}*{mono}", t.vars),
                };
                terms.push(Term { negative: t.negative, coeff: t.coeff, vars });
            }
        }
        write_terms(f, &terms)
    }
}

impl<R: Ring> fmt::Debug for UniPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

impl<R: Ring> Add for UniPoly<R> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self.zip(o, |a, b| a + b)
    }
}

impl<R: Ring> Sub for UniPoly<R> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self.zip(o, |a, b| a - b)
    }
}

impl<R: Ring> Neg for UniPoly<R> {
    type Output = Self;
    fn neg(self) -> Self {
        let coeffs = self.coeffs.into_iter().map(|c| -c).collect();
        Self::new(&self.ctx, self.var, coeffs)
    }
}

impl<R: Ring> Mul for UniPoly<R> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::new(&self.ctx, self.var, Vec::new());
        }
        let mut out = vec![R::zero(&self.ctx); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(&self.ctx, self.var, out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ufd::Integer;

    fn p(c: &[i64]) -> UniPoly<Integer> {
        UniPoly::new(&(), "z", c.iter().map(|&n| Integer::from(n)).collect())
    }

    #[test]
    fn divide_and_reconstruct() {
        let h = p(&[0, 0, 0, 1]);
        let m = p(&[-2, 0, 1]);
        let (q, r) = h.monic_divide(&m).unwrap();
        assert_eq!(q, p(&[0, 1]));
        assert_eq!(r, p(&[0, 2]));
        assert_eq!(m * q + r, h);
        assert!(p(&[1, 2]).monic_divide(&p(&[1, 2])).is_err());
    }

    #[test]
    fn display_and_eval() {
        assert_eq!(p(&[-1, -1, 1]).to_string(), "z^2 - z - 1");
        let v = p(&[-1, -1, 1]).eval(Integer::from(0), &Integer::from(3), |c| c.clone());
        assert_eq!(v, Integer::from(5));
    }
}
