use std::fmt;
use std::ops::{Add, Mul};

use crate::ufd::Ring;

use super::{Algebra, BiPoly, UniPoly, Var};

/// `v^2 - a*v + b` over `R`.
#[derive(Clone, PartialEq, Eq)]
pub struct MonicQuadratic<R: Ring> {
    a: R,
    b: R,
}

impl<R: Ring> MonicQuadratic<R> {
    pub fn new(a: R, b: R) -> Self {
        MonicQuadratic { a, b }
    }

    /// `v^2 - a1`.
    pub fn radical(a1: R) -> Self {
        MonicQuadratic { a: a1.zero_like(), b: -a1 }
    }

    /// Linear coefficient `a` (the polynomial has `-a` in front of `v`).
    pub fn a(&self) -> &R {
        &self.a
    }

    pub fn b(&self) -> &R {
        &self.b
    }

    pub fn is_radical(&self) -> bool {
        self.a.is_zero()
    }

    /// `a^2 - 4b`.
    pub fn discriminant(&self) -> R {
        self.a.square() - self.b.int_like(4) * self.b.clone()
    }

    pub fn eval<A>(&self, at: &A, embed: impl Fn(&R) -> A) -> A
    where
        A: Clone + Add<Output = A> + Mul<Output = A>,
    {
        at.clone() * at.clone() + embed(&-self.a.clone()) * at.clone() + embed(&self.b)
    }

    /// Evaluation inside an algebra context.
    pub fn eval_in<A: Algebra<R>>(&self, alg: &A, at: &A::Elem) -> A::Elem {
        let sq = alg.mul(at, at);
        let lin = alg.mul(&alg.embed(&-self.a.clone()), at);
        alg.add(&alg.add(&sq, &lin), &alg.embed(&self.b))
    }

    pub fn to_unipoly(&self, var: &'static str) -> UniPoly<R> {
        UniPoly::new(&self.a.ctx(), var, self.coeffs())
    }

    pub fn to_bipoly(&self, v: Var) -> BiPoly<R> {
        BiPoly::univariate(&self.a.ctx(), v, &self.coeffs())
    }

    /// `[b, -a, 1]`.
    pub fn coeffs(&self) -> Vec<R> {
        vec![self.b.clone(), -self.a.clone(), self.a.one_like()]
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> MonicQuadratic<S> {
        MonicQuadratic { a: f(&self.a), b: f(&self.b) }
    }
}

impl<R: Ring> fmt::Display for MonicQuadratic<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_unipoly("v"))
    }
}

impl<R: Ring> fmt::Debug for MonicQuadratic<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MonicQuadratic({self})")
    }
}
