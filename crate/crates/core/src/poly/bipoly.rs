use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::ufd::{Ring, Term};

use super::{Algebra, PolyError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    Y,
}

impl Var {
    pub fn other(self) -> Var {
        match self {
            Var::X => Var::Y,
            Var::Y => Var::X,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Var::X => "x",
            Var::Y => "y",
        })
    }
}

/// Sparse polynomial in `x`, `y` over `R`. Keys are `(deg_x, deg_y)`; zero
/// coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct BiPoly<R: Ring> {
    ctx: R::Ctx,
    terms: BTreeMap<(u32, u32), R>,
}

impl<R: Ring> BiPoly<R> {
    pub fn zero(ctx: &R::Ctx) -> Self {
        BiPoly { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ctx: &R::Ctx) -> Self {
        Self::constant(R::one(ctx))
    }

    pub fn constant(c: R) -> Self {
        Self::monomial(c, 0, 0)
    }

    /// `c * x^i * y^j`.
    pub fn monomial(c: R, i: u32, j: u32) -> Self {
        let mut p = Self::zero(&c.ctx());
        if !c.is_zero() {
            p.terms.insert((i, j), c);
        }
        p
    }

    pub fn var(ctx: &R::Ctx, v: Var) -> Self {
        match v {
            Var::X => Self::monomial(R::one(ctx), 1, 0),
            Var::Y => Self::monomial(R::one(ctx), 0, 1),
        }
    }

    pub fn x(ctx: &R::Ctx) -> Self {
        Self::var(ctx, Var::X)
    }

    pub fn y(ctx: &R::Ctx) -> Self {
        Self::var(ctx, Var::Y)
    }

    /// `sum coeffs[k] * v^k`.
    pub fn univariate(ctx: &R::Ctx, v: Var, coeffs: &[R]) -> Self {
        let mut p = Self::zero(ctx);
        for (k, c) in coeffs.iter().enumerate() {
            let k = k as u32;
            let key = match v {
                Var::X => (k, 0),
                Var::Y => (0, k),
            };
            p.add_term(key, c.clone());
        }
        p
    }

    pub fn ctx_ref(&self) -> &R::Ctx {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> R {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(|| R::zero(&self.ctx))
    }

    /// Nonzero terms in ascending key order.
    pub fn iter(&self) -> impl Iterator<Item = (&(u32, u32), &R)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Degree in one variable; `None` for zero.
    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| if v == Var::X { i } else { j }).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    fn add_term(&mut self, key: (u32, u32), c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&key) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(key, s);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut p = Self::zero(&self.ctx);
        for (k, v) in &self.terms {
            p.add_term(*k, v.clone() * c.clone());
        }
        p
    }

    /// Exchanges the roles of `x` and `y`.
    pub fn swap_vars(&self) -> Self {
        BiPoly { ctx: self.ctx.clone(), terms: self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())).collect() }
    }

    pub fn map_coeffs<S: Ring>(&self, ctx: &S::Ctx, f: impl Fn(&R) -> S) -> BiPoly<S> {
        let mut p = BiPoly::zero(ctx);
        for (k, c) in &self.terms {
            p.add_term(*k, f(c));
        }
        p
    }

    /// Coefficient of `v^k`, as a polynomial in the other variable.
    pub fn coeff_of(&self, v: Var, k: u32) -> Self {
        let mut p = Self::zero(&self.ctx);
        for (&(i, j), c) in &self.terms {
            match v {
                Var::X if i == k => p.add_term((0, j), c.clone()),
                Var::Y if j == k => p.add_term((i, 0), c.clone()),
                _ => {}
            }
        }
        p
    }

    fn shift_up(&self, v: Var, k: u32) -> Self {
        BiPoly {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| match v {
                    Var::X => ((i + k, j), c.clone()),
                    Var::Y => ((i, j + k), c.clone()),
                })
                .collect(),
        }
    }

    /// Division by a divisor whose leading coefficient in `v` is exactly 1.
    /// Returns `(q, r)` with `self = m*q + r` and `deg_v(r) < deg_v(m)`.
    pub fn monic_divide(&self, m: &Self, v: Var) -> Result<(Self, Self), PolyError> {
        let n = m.degree_in(v).ok_or(PolyError::NonMonicDivisor(v))?;
        let lead = m.coeff_of(v, n);
        if lead != Self::one(&self.ctx) {
            return Err(PolyError::NonMonicDivisor(v));
        }
        let mut q = Self::zero(&self.ctx);
        let mut r = self.clone();
        while let Some(k) = r.degree_in(v).filter(|&k| k >= n) {
            let step = r.coeff_of(v, k).shift_up(v, k - n);
            r = r - m.clone() * step.clone();
            q = q + step;
        }
        Ok((q, r))
    }

    /// Evaluates at `x = xv`, `y = yv` in any commutative algebra over `R`.
    pub fn eval<A>(&self, one: &A, xv: &A, yv: &A, embed: impl Fn(&R) -> A) -> A
    where
        A: Clone + Add<Output = A> + Mul<Output = A>,
    {
        let dx = self.degree_in(Var::X).unwrap_or(0) as usize;
        let dy = self.degree_in(Var::Y).unwrap_or(0) as usize;
        let powers = |base: &A, n: usize| {
            let mut v = vec![one.clone()];
            for k in 0..n {
                v.push(v[k].clone() * base.clone());
            }
            v
        };
        let xp = powers(xv, dx);
        let yp = powers(yv, dy);
        let mut acc: Option<A> = None;
        for (&(i, j), c) in &self.terms {
            let t = embed(c) * xp[i as usize].clone() * yp[j as usize].clone();
            acc = Some(match acc {
                Some(a) => a + t,
                None => t,
            });
        }
        acc.unwrap_or_else(|| embed(&R::zero(&self.ctx)))
    }

    /// Evaluates at `x = xv`, `y = yv` inside an algebra context.
    pub fn eval_in<A: Algebra<R>>(&self, alg: &A, xv: &A::Elem, yv: &A::Elem) -> A::Elem {
        let dx = self.degree_in(Var::X).unwrap_or(0) as usize;
        let dy = self.degree_in(Var::Y).unwrap_or(0) as usize;
        let one = alg.embed(&R::one(&self.ctx));
        let powers = |base: &A::Elem, n: usize| {
            let mut v = vec![one.clone()];
            for k in 0..n {
                v.push(alg.mul(&v[k], base));
            }
            v
        };
        let xp = powers(xv, dx);
        let yp = powers(yv, dy);
        let mut acc = alg.embed(&R::zero(&self.ctx));
        for (&(i, j), c) in &self.terms {
            let t = alg.mul(&alg.embed(c), &alg.mul(&xp[i as usize], &yp[j as usize]));
            acc = alg.add(&acc, &t);
        }
        acc
    }

    /// Substitutes polynomials for `x` and `y`.
    pub fn compose(&self, xv: &Self, yv: &Self) -> Self {
        self.eval(&Self::one(&self.ctx), xv, yv, |c| Self::constant(c.clone()))
    }

    /// `self(x + dx, y + dy)`.
    pub fn translate(&self, dx: &R, dy: &R) -> Self {
        let xv = Self::x(&self.ctx) + Self::constant(dx.clone());
        let yv = Self::y(&self.ctx) + Self::constant(dy.clone());
        self.compose(&xv, &yv)
    }

    /// Expanded signed terms in graded lexicographic order with `x > y`,
    /// each coefficient expanded in the base ring variable.
    pub fn signed_terms(&self) -> Vec<Term> {
        self.signed_terms_named("x", "y")
    }

    /// Canonical text with the algebra variables renamed.
    pub fn display_with(&self, x: &str, y: &str) -> String {
        crate::ufd::terms_to_string(&self.signed_terms_named(x, y))
    }

    fn signed_terms_named(&self, x: &str, y: &str) -> Vec<Term> {
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|k| std::cmp::Reverse((k.0 + k.1, k.0)));
        let mut out = Vec::new();
        for key in keys {
            let mono = monomial_string(key, x, y);
            for t in self.terms[&key].terms() {
                let vars = match (t.vars.is_empty(), mono.is_empty()) {
                    (true, _) => mono.clone(),
                    (false, true) => t.vars,
                    (false, false) => format!("{}*{mono}", t.vars),
                };
                out.push(Term { negative: t.negative, coeff: t.coeff, vars });
            }
        }
        out
    }
}

fn monomial_string((i, j): (u32, u32), x: &str, y: &str) -> String {
    let part = |name: &str, e: u32| match e {
        0 => None,
        1 => Some(name.to_string()),
        _ => Some(format!("{name}^{e}")),
    };
    [part(x, i), part(y, j)].into_iter().flatten().collect::<Vec<_>>().join("*")
}

impl<R: Ring> fmt::Display for BiPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::ufd::write_terms(f, &self.signed_terms())
    }
}

impl<R: Ring> fmt::Debug for BiPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({self})")
    }
}

impl<R: Ring> Add for BiPoly<R> {
    type Output = Self;
    fn add(mut self, o: Self) -> Self {
        for (k, c) in o.terms {
            self.add_term(k, c);
        }
        self
    }
}

impl<R: Ring> Sub for BiPoly<R> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<R: Ring> Neg for BiPoly<R> {
    type Output = Self;
    fn neg(self) -> Self {
        BiPoly { ctx: self.ctx, terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect() }
    }
}

impl<R: Ring> Mul for BiPoly<R> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut p = Self::zero(&self.ctx);
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &o.terms {
                p.add_term((i + k, j + l), a.clone() * b.clone());
            }
        }
        p
    }
}
