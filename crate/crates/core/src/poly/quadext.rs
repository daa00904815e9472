use std::fmt;

use crate::ufd::{Frac, Ring, Ufd};

use super::{MonicQuadratic, PolyError};

/// `e1 + e2*w` where `w` is the generator of a quadratic extension of the
/// fraction field. Which extension is determined by the [`QuadExtField`] (or
/// radical `sqrt(u)`) that produced it.
#[derive(Clone, PartialEq, Eq)]
pub struct QuadExtElement<R: Ufd> {
    pub e1: Frac<R>,
    pub e2: Frac<R>,
}

impl<R: Ufd> fmt::Debug for QuadExtElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] + [{}]*w", self.e1, self.e2)
    }
}

/// The field `E = L[x]/(x^2 - a*x + b)` for `L` the fraction field of `R`.
/// Elements are written in the basis `{1, x̄}`. Construction fails when the
/// modulus has a root in `L`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuadExtField<R: Ufd> {
    modulus: MonicQuadratic<Frac<R>>,
    disc: Frac<R>,
}

impl<R: Ufd> QuadExtField<R> {
    pub fn new(modulus: MonicQuadratic<Frac<R>>) -> Result<Self, PolyError> {
        let disc = modulus.discriminant();
        if disc.sqrt().is_some() {
            return Err(PolyError::ReducibleModulus(modulus.to_string()));
        }
        Ok(QuadExtField { modulus, disc })
    }

    pub fn over_ring(f: &MonicQuadratic<R>) -> Result<Self, PolyError> {
        Self::new(f.map(|c| Frac::from_ring(c.clone())))
    }

    pub fn modulus(&self) -> &MonicQuadratic<Frac<R>> {
        &self.modulus
    }

    /// `a^2 - 4b` of the modulus, a non-square of `L`.
    pub fn discriminant(&self) -> &Frac<R> {
        &self.disc
    }

    pub fn element(&self, e1: Frac<R>, e2: Frac<R>) -> QuadExtElement<R> {
        QuadExtElement { e1, e2 }
    }

    pub fn base(&self, c: Frac<R>) -> QuadExtElement<R> {
        let z = c.zero_like();
        QuadExtElement { e1: c, e2: z }
    }

    /// `x̄`.
    pub fn generator(&self) -> QuadExtElement<R> {
        let one = self.disc.one_like();
        QuadExtElement { e1: one.zero_like(), e2: one }
    }

    pub fn add(&self, p: &QuadExtElement<R>, q: &QuadExtElement<R>) -> QuadExtElement<R> {
        QuadExtElement { e1: p.e1.clone() + q.e1.clone(), e2: p.e2.clone() + q.e2.clone() }
    }

    pub fn sub(&self, p: &QuadExtElement<R>, q: &QuadExtElement<R>) -> QuadExtElement<R> {
        QuadExtElement { e1: p.e1.clone() - q.e1.clone(), e2: p.e2.clone() - q.e2.clone() }
    }

    /// Product reduced by `x̄^2 = a*x̄ - b`.
    pub fn mul(&self, p: &QuadExtElement<R>, q: &QuadExtElement<R>) -> QuadExtElement<R> {
        let a = self.modulus.a().clone();
        let b = self.modulus.b().clone();
        let top = p.e2.clone() * q.e2.clone();
        let e1 = p.e1.clone() * q.e1.clone() - top.clone() * b;
        let e2 = p.e1.clone() * q.e2.clone() + p.e2.clone() * q.e1.clone() + top * a;
        QuadExtElement { e1, e2 }
    }

    /// `g(gamma)` for a monic quadratic `g` over `L`.
    pub fn eval(&self, g: &MonicQuadratic<Frac<R>>, gamma: &QuadExtElement<R>) -> QuadExtElement<R> {
        let sq = self.mul(gamma, gamma);
        let lin = self.mul(&self.base(g.a().clone()), gamma);
        self.add(&self.sub(&sq, &lin), &self.base(g.b().clone()))
    }

    /// A root of `g` in `E`, or `None` when `g` stays irreducible over `E`.
    ///
    /// The root is `(c + s)/2` where `s = e1 + e2*sqrt(u)` is the canonical
    /// square root of `disc(g)` in `L(sqrt(u))`, `u = disc(f)`, rewritten
    /// through `sqrt(u) = 2x̄ - a`.
    pub fn quadratic_root(&self, g: &MonicQuadratic<Frac<R>>) -> Option<QuadExtElement<R>> {
        let s = square_root_in_ext(&g.discriminant(), &self.disc)?;
        let two = self.disc.int_like(2);
        let half = two.inv().expect("odd characteristic");
        let e1 = (g.a().clone() + s.e1 - self.modulus.a().clone() * s.e2.clone()) * half;
        Some(QuadExtElement { e1, e2: s.e2 })
    }
}

/// Square root of `v` in `L(sqrt(u))` for a non-square `u`, as
/// `e1 + e2*sqrt(u)`. Since `(e1 + e2 sqrt(u))^2 = v` forces `e1*e2 = 0`,
/// the root lies in `L` or in `L*sqrt(u)`; the nonzero part is returned in
/// canonical sign.
pub fn square_root_in_ext<R: Ufd>(v: &Frac<R>, u: &Frac<R>) -> Option<QuadExtElement<R>> {
    let zero = v.zero_like();
    if let Some(s) = v.sqrt() {
        return Some(QuadExtElement { e1: s, e2: zero });
    }
    let s = v.div(u)?.sqrt()?;
    Some(QuadExtElement { e1: zero, e2: s })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ufd::{Integer, QPoly, Rational};

    type F = Frac<Integer>;

    fn f(n: i64, d: i64) -> F {
        Frac::new(Integer::from(n), Integer::from(d)).unwrap()
    }

    fn field(a: i64, b: i64) -> QuadExtField<Integer> {
        QuadExtField::over_ring(&MonicQuadratic::new(Integer::from(a), Integer::from(b))).unwrap()
    }

    fn quad(a: i64, b: i64) -> MonicQuadratic<F> {
        MonicQuadratic::new(f(a, 1), f(b, 1))
    }

    #[test]
    fn products() {
        let e = field(0, -18);
        let x = e.generator();
        assert_eq!(e.mul(&x, &x), e.base(f(18, 1)));
        let p = e.element(f(0, 1), f(2, 3));
        assert_eq!(e.mul(&p, &p), e.base(f(8, 1)));
        let e5 = field(0, -5);
        let h = e5.element(f(1, 2), f(1, 2));
        assert_eq!(e5.mul(&h, &h), e5.element(f(3, 2), f(1, 2)));
    }

    #[test]
    fn radical_square_roots() {
        let r = square_root_in_ext(&f(8, 1), &f(18, 1)).unwrap();
        assert_eq!((r.e1, r.e2), (f(0, 1), f(2, 3)));
        let r = square_root_in_ext(&f(4, 1), &f(18, 1)).unwrap();
        assert_eq!((r.e1, r.e2), (f(2, 1), f(0, 1)));
        assert!(square_root_in_ext(&f(3, 1), &f(18, 1)).is_none());
    }

    #[test]
    fn roots_in_extension() {
        let e = field(1, -1);
        let g = e.quadratic_root(&quad(1, -1)).unwrap();
        assert_eq!(g, e.generator());
        assert_eq!(e.eval(&quad(1, -1), &g), e.base(f(0, 1)));

        let e = field(0, -18);
        let g = e.quadratic_root(&quad(0, -8)).unwrap();
        assert_eq!(g, e.element(f(0, 1), f(2, 3)));

        assert!(field(0, -2).quadratic_root(&quad(0, -3)).is_none());
    }

    #[test]
    fn reducible_modulus_rejected() {
        let m = MonicQuadratic::new(Integer::from(0), Integer::from(-9));
        assert!(matches!(QuadExtField::over_ring(&m), Err(PolyError::ReducibleModulus(_))));
    }

    #[test]
    fn root_over_rational_functions() {
        // f = x^2 - 2t x + (t^2 - t), g = y^2 - 2y + (1 - 4t)
        let t = QPoly::var(());
        let k = |n: i64| QPoly::constant((), Rational::from_int(n));
        let fq = MonicQuadratic::new(k(2) * t.clone(), t.clone() * t.clone() - t.clone());
        let gq = MonicQuadratic::new(k(2), k(1) - k(4) * t.clone());
        let e = QuadExtField::over_ring(&fq).unwrap();
        let gl = gq.map(|c| Frac::from_ring(c.clone()));
        let root = e.quadratic_root(&gl).unwrap();
        assert!(e.eval(&gl, &root).e1.is_zero());
        assert!(e.eval(&gl, &root).e2.is_zero());
        assert_eq!(root.e2, Frac::from_ring(k(2)));
    }
}
