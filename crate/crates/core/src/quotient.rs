//! The algebra `T = R[x,y]/(f1, f2)`, free over `R` on `{1, x̄, ȳ, x̄ȳ}`,
//! and the rank-2 algebras `R[z]/(m)` that serve as targets of the
//! elimination maps.

use std::fmt;

use crate::poly::{Algebra, BiPoly, MonicQuadratic, Var};
use crate::ufd::{Ring, Ufd};

/// Element of `T` in the basis `{1, x̄, ȳ, x̄ȳ}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TElement<R: Ring> {
    pub coords: [R; 4],
}

impl<R: Ring> TElement<R> {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Ring::is_zero)
    }

    pub fn scale(&self, r: &R) -> Self {
        TElement { coords: self.coords.clone().map(|c| c * r.clone()) }
    }
}

/// The pair `(f1(x), f2(y))` defining `T`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Presentation<R: Ring> {
    pub f1: MonicQuadratic<R>,
    pub f2: MonicQuadratic<R>,
}

impl<R: Ring> Presentation<R> {
    pub fn new(f1: MonicQuadratic<R>, f2: MonicQuadratic<R>) -> Self {
        Presentation { f1, f2 }
    }

    fn ctx(&self) -> R::Ctx {
        self.f1.a().ctx()
    }

    pub fn f1_poly(&self) -> BiPoly<R> {
        self.f1.to_bipoly(Var::X)
    }

    pub fn f2_poly(&self) -> BiPoly<R> {
        self.f2.to_bipoly(Var::Y)
    }

    pub fn element(&self, coords: [R; 4]) -> TElement<R> {
        TElement { coords }
    }

    /// Basis element `k` of `{1, x̄, ȳ, x̄ȳ}`.
    pub fn basis(&self, k: usize) -> TElement<R> {
        let ctx = self.ctx();
        let mut coords = [R::zero(&ctx), R::zero(&ctx), R::zero(&ctx), R::zero(&ctx)];
        coords[k] = R::one(&ctx);
        TElement { coords }
    }

    /// Monomials `1, x, y, xy` matching [`Presentation::basis`].
    pub fn basis_monomials(&self) -> [BiPoly<R>; 4] {
        let ctx = self.ctx();
        let x = BiPoly::x(&ctx);
        let y = BiPoly::y(&ctx);
        [BiPoly::one(&ctx), x.clone(), y.clone(), x * y]
    }

    pub fn x(&self) -> TElement<R> {
        self.basis(1)
    }

    pub fn y(&self) -> TElement<R> {
        self.basis(2)
    }

    /// Normal form of `h` modulo `(f1, f2)`.
    pub fn reduce(&self, h: &BiPoly<R>) -> TElement<R> {
        let (_, r) = h.monic_divide(&self.f1_poly(), Var::X).expect("monic");
        let (_, r) = r.monic_divide(&self.f2_poly(), Var::Y).expect("monic");
        TElement { coords: [r.coeff(0, 0), r.coeff(1, 0), r.coeff(0, 1), r.coeff(1, 1)] }
    }

    pub fn to_bipoly(&self, t: &TElement<R>) -> BiPoly<R> {
        let m = self.basis_monomials();
        m.iter().zip(t.coords.iter()).fold(BiPoly::zero(&self.ctx()), |acc, (mono, c)| acc + mono.scale(c))
    }

    pub fn sub(&self, s: &TElement<R>, t: &TElement<R>) -> TElement<R> {
        let mut coords = s.coords.clone();
        for (c, d) in coords.iter_mut().zip(t.coords.iter()) {
            *c = c.clone() - d.clone();
        }
        TElement { coords }
    }
}

impl<R: Ring> Algebra<R> for Presentation<R> {
    type Elem = TElement<R>;

    fn embed(&self, c: &R) -> TElement<R> {
        self.basis(0).scale(c)
    }

    fn add(&self, s: &TElement<R>, t: &TElement<R>) -> TElement<R> {
        let mut coords = s.coords.clone();
        for (c, d) in coords.iter_mut().zip(t.coords.iter()) {
            *c = c.clone() + d.clone();
        }
        TElement { coords }
    }

    /// Product rewritten with `x̄^2 = a x̄ - b` and `ȳ^2 = c ȳ - d`.
    fn mul(&self, s: &TElement<R>, t: &TElement<R>) -> TElement<R> {
        let prod = self.to_bipoly(s) * self.to_bipoly(t);
        self.reduce(&prod)
    }
}

/// `p0 + p1*z̄` in `R[z]/(m)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuadModElement<R: Ring> {
    pub p0: R,
    pub p1: R,
}

impl<R: Ring> QuadModElement<R> {
    pub fn new(p0: R, p1: R) -> Self {
        QuadModElement { p0, p1 }
    }

    pub fn is_zero(&self) -> bool {
        self.p0.is_zero() && self.p1.is_zero()
    }
}

impl<R: Ring> fmt::Display for QuadModElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = BiPoly::constant(self.p0.clone()) + BiPoly::monomial(self.p1.clone(), 1, 0);
        write!(f, "{}", p.to_string().replace('x', "z"))
    }
}

/// `R[z]/(m)` for a monic quadratic `m`, or `R` itself (read as `R[z]/(z)`)
/// when the modulus is absent.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuadModRing<R: Ring> {
    modulus: Option<MonicQuadratic<R>>,
    ctx: R::Ctx,
}

impl<R: Ring> QuadModRing<R> {
    pub fn new(modulus: MonicQuadratic<R>) -> Self {
        let ctx = modulus.a().ctx();
        QuadModRing { modulus: Some(modulus), ctx }
    }

    /// `R[z]/(z^2 - u)`.
    pub fn radical(u: R) -> Self {
        Self::new(MonicQuadratic::radical(u))
    }

    /// `R` itself.
    pub fn base(ctx: &R::Ctx) -> Self {
        QuadModRing { modulus: None, ctx: ctx.clone() }
    }

    pub fn modulus(&self) -> Option<&MonicQuadratic<R>> {
        self.modulus.as_ref()
    }

    /// `z̄`, or `0` in `R`.
    pub fn generator(&self) -> QuadModElement<R> {
        let z = R::zero(&self.ctx);
        match self.modulus {
            Some(_) => QuadModElement::new(z, R::one(&self.ctx)),
            None => QuadModElement::new(z.clone(), z),
        }
    }

    pub fn element(&self, p0: R, p1: R) -> QuadModElement<R> {
        match self.modulus {
            Some(_) => QuadModElement::new(p0, p1),
            None => QuadModElement::new(p0, R::zero(&self.ctx)),
        }
    }

    pub fn neg(&self, p: &QuadModElement<R>) -> QuadModElement<R> {
        QuadModElement::new(-p.p0.clone(), -p.p1.clone())
    }

    /// First coordinate in the basis `{1, z̄}`.
    pub fn project(&self, p: &QuadModElement<R>) -> R {
        p.p0.clone()
    }
}

impl<R: Ring> Algebra<R> for QuadModRing<R> {
    type Elem = QuadModElement<R>;

    fn embed(&self, c: &R) -> QuadModElement<R> {
        QuadModElement::new(c.clone(), R::zero(&self.ctx))
    }

    fn add(&self, p: &QuadModElement<R>, q: &QuadModElement<R>) -> QuadModElement<R> {
        QuadModElement::new(p.p0.clone() + q.p0.clone(), p.p1.clone() + q.p1.clone())
    }

    fn mul(&self, p: &QuadModElement<R>, q: &QuadModElement<R>) -> QuadModElement<R> {
        let Some(m) = &self.modulus else {
            return QuadModElement::new(p.p0.clone() * q.p0.clone(), R::zero(&self.ctx));
        };
        let top = p.p1.clone() * q.p1.clone();
        let p0 = p.p0.clone() * q.p0.clone() - top.clone() * m.b().clone();
        let p1 = p.p0.clone() * q.p1.clone() + p.p1.clone() * q.p0.clone() + top * m.a().clone();
        QuadModElement::new(p0, p1)
    }
}

/// `(c, d, u)` with `f1 = x^2 - d^2 u` and `f2 = y^2 - c^2 u`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RadicalWitnesses<R: Ring> {
    pub c: R,
    pub d: R,
    pub u: R,
}

/// `(-1)^r` as a ring element.
pub fn sign<R: Ring>(like: &R, r: u8) -> R {
    if r.is_multiple_of(2) {
        like.one_like()
    } else {
        -like.one_like()
    }
}

impl<R: Ring> RadicalWitnesses<R> {
    pub fn presentation(&self) -> Presentation<R> {
        let a1 = self.d.square() * self.u.clone();
        let a2 = self.c.square() * self.u.clone();
        Presentation::new(MonicQuadratic::radical(a1), MonicQuadratic::radical(a2))
    }

    /// `d*y + (-1)^r c*x`.
    pub fn f3(&self, r: u8) -> BiPoly<R> {
        BiPoly::monomial(self.d.clone(), 0, 1) + BiPoly::monomial(sign(&self.c, r) * self.c.clone(), 1, 0)
    }

    /// `x*y + (-1)^r c*d*u`.
    pub fn f4(&self, r: u8) -> BiPoly<R> {
        let k = sign(&self.c, r) * self.c.clone() * self.d.clone() * self.u.clone();
        BiPoly::monomial(self.c.one_like(), 1, 1) + BiPoly::constant(k)
    }

    /// Generators `[f1, f2, f3_r, f4_r]` of the minimal prime `P_r`.
    pub fn prime_generators(&self, r: u8) -> [BiPoly<R>; 4] {
        let p = self.presentation();
        [p.f1_poly(), p.f2_poly(), self.f3(r), self.f4(r)]
    }

    /// Target `R[z]/(z^2 - u)` of `psi_r`.
    pub fn target(&self) -> QuadModRing<R> {
        QuadModRing::radical(self.u.clone())
    }

    /// Images of `x̄`, `ȳ` under `psi_r`: `d*z̄` and `(-1)^(r+1) c*z̄`.
    pub fn psi_images(&self, r: u8) -> (QuadModElement<R>, QuadModElement<R>) {
        let z = self.c.zero_like();
        (QuadModElement::new(z.clone(), self.d.clone()), QuadModElement::new(z, sign(&self.c, r + 1) * self.c.clone()))
    }
}

/// `psi_r(h)`: substitute `x -> d*z̄`, `y -> (-1)^(r+1) c*z̄` and reduce by
/// `z̄^2 = u`.
pub fn psi_eval<R: Ring>(h: &BiPoly<R>, r: u8, w: &RadicalWitnesses<R>) -> QuadModElement<R> {
    let (xi, yi) = w.psi_images(r);
    h.eval_in(&w.target(), &xi, &yi)
}

/// Which generator a division step divided by.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DivisorTag {
    F1,
    F2,
    F3,
    F4,
}

impl DivisorTag {
    pub fn index(self) -> usize {
        match self {
            DivisorTag::F1 => 0,
            DivisorTag::F2 => 1,
            DivisorTag::F3 => 2,
            DivisorTag::F4 => 3,
        }
    }
}

/// `h = sum(quotient * divisor) + v1*y + b1*x + v2`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearNormalForm<R: Ring> {
    pub v1: R,
    pub b1: R,
    pub v2: R,
    pub transcript: Vec<(DivisorTag, BiPoly<R>)>,
}

impl<R: Ring> LinearNormalForm<R> {
    pub fn linear_part(&self) -> BiPoly<R> {
        BiPoly::monomial(self.v1.clone(), 0, 1)
            + BiPoly::monomial(self.b1.clone(), 1, 0)
            + BiPoly::constant(self.v2.clone())
    }

    /// Rebuilds `h` from the transcript and the linear remainder.
    pub fn replay(&self, r: u8, w: &RadicalWitnesses<R>) -> BiPoly<R> {
        let gens = w.prime_generators(r);
        self.transcript.iter().fold(self.linear_part(), |acc, (tag, q)| acc + gens[tag.index()].clone() * q.clone())
    }
}

/// Runs the division chain against `P_r` in a fixed order: `f1` in `x`,
/// then `f2` into the `x`-free part, then `f4_r` into the `x`-linear part,
/// then `f2` into what `f4_r` leaves behind.
pub fn reduce_to_linear<R: Ring>(h: &BiPoly<R>, r: u8, w: &RadicalWitnesses<R>) -> LinearNormalForm<R> {
    let ctx = w.c.ctx();
    let pres = w.presentation();
    let f2 = pres.f2_poly();
    let (q, rem) = h.monic_divide(&pres.f1_poly(), Var::X).expect("monic");
    let q1 = rem.coeff_of(Var::X, 1);
    let q0 = rem.coeff_of(Var::X, 0);
    let (q2, l0) = q0.monic_divide(&f2, Var::Y).expect("monic");
    let b1 = q1.coeff(0, 0);
    // q1(y) = b1 + y*q3(y), and x*y = f4 - (-1)^r c d u.
    let (q3, _) = (q1 - BiPoly::constant(b1.clone())).monic_divide(&BiPoly::y(&ctx), Var::Y).expect("monic");
    let k = sign(&w.c, r) * w.c.clone() * w.d.clone() * w.u.clone();
    let q4 = q3.scale(&-k);
    let (q5, l1) = q4.monic_divide(&f2, Var::Y).expect("monic");
    let l = l0 + l1;
    LinearNormalForm {
        v1: l.coeff(0, 1),
        b1,
        v2: l.coeff(0, 0),
        transcript: vec![(DivisorTag::F1, q), (DivisorTag::F2, q2), (DivisorTag::F4, q3), (DivisorTag::F2, q5)],
    }
}

/// Cofactors `[g1, g2, g3, g4]` with `h = g1 f1 + g2 f2 + g3 f3_r + g4 f4_r`
/// when `h ∈ P_r`. Requires `gcd(c, d) = 1`.
pub fn pr_membership<R: Ufd>(h: &BiPoly<R>, r: u8, w: &RadicalWitnesses<R>) -> Option<[BiPoly<R>; 4]> {
    let lnf = reduce_to_linear(h, r, w);
    if !lnf.v2.is_zero() {
        return None;
    }
    // v1*y + b1*x = (-1)^r w (d y + (-1)^r c x) with b1 = w c, v1 = (-1)^r w d.
    let wq = lnf.b1.exact_div(&w.c).ok()?;
    let s = sign(&w.c, r);
    if lnf.v1 != s.clone() * wq.clone() * w.d.clone() {
        return None;
    }
    let ctx = w.c.ctx();
    let mut cof: [BiPoly<R>; 4] = std::array::from_fn(|_| BiPoly::zero(&ctx));
    for (tag, q) in lnf.transcript {
        let i = tag.index();
        cof[i] = cof[i].clone() + q;
    }
    cof[2] = BiPoly::constant(s * wq);
    Some(cof)
}

pub fn membership_in_pr<R: Ufd>(h: &BiPoly<R>, r: u8, w: &RadicalWitnesses<R>) -> bool {
    pr_membership(h, r, w).is_some()
}

/// `(d ȳ - c x̄, d ȳ + c x̄)`, two nonzero elements of `T` whose product
/// vanishes.
pub fn zero_divisor_pair<R: Ring>(w: &RadicalWitnesses<R>) -> (TElement<R>, TElement<R>) {
    let p = w.presentation();
    let z = w.c.zero_like();
    (p.element([z.clone(), -w.c.clone(), w.d.clone(), z.clone()]), p.element([z.clone(), w.c.clone(), w.d.clone(), z]))
}

/// Membership in an ideal `(lead, univ)` where `lead` has degree one in
/// `lead_var` with unit leading coefficient and `univ` is monic in the other
/// variable and free of `lead_var`. Returns the cofactors `(q_lead, q_univ)`.
pub fn triangular_membership<R: Ring>(
    h: &BiPoly<R>,
    lead: &BiPoly<R>,
    lead_var: Var,
    univ: &BiPoly<R>,
) -> Option<(BiPoly<R>, BiPoly<R>)> {
    let (q1, r1) = h.monic_divide(lead, lead_var).ok()?;
    let (q2, r2) = r1.monic_divide(univ, lead_var.other()).ok()?;
    r2.is_zero().then_some((q1, q2))
}
