//! Case analysis and certificate construction.
//!
//! [`build_retraction`] decides which structure theorem applies to a
//! problem, finds a minimal prime of `T` containing `J`, and assembles the
//! retraction `rho = pi_1 ∘ phi` where `phi` is the evaluation map whose
//! kernel is that prime and `pi_1` reads off the first coordinate of the
//! free target.

use crate::cert::{
    CaseTag, EliminationMap, ExtensionProblem, IdentityRecord, MembershipTranscript, MinimalPrimeCert, Orientation,
    SplitCertificate, Witnesses, DEFAULT_PROBE_SEED,
};
use crate::poly::{Algebra, BiPoly, MonicQuadratic, QuadExtElement, QuadExtField, Var};
use crate::quotient::{
    pr_membership, triangular_membership, Presentation, QuadModElement, QuadModRing, RadicalWitnesses, TElement,
};
use crate::ufd::{ArithError, FactorBudget, Frac, Ring, Ufd};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SplitError {
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("2 does not divide both linear coefficients")]
    TwoNotUnit,
    #[error("hypotheses not met: {0}")]
    HypothesesNotMet(String),
    #[error("J is not contained in any minimal prime of T")]
    NoPrimeContainsJ,
    #[error("internal identity failure: {0}")]
    InternalIdentityFailure(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

#[derive(Debug, Clone)]
pub struct BuildOptions {
    pub budget: FactorBudget,
    pub probe_seed: u64,
    /// With `J ⊂ I`, also certify every minimal prime of `T`.
    pub all_primes: bool,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { budget: FactorBudget::default(), probe_seed: DEFAULT_PROBE_SEED, all_primes: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DomainVerdict<R: Ufd> {
    Domain,
    /// `f2` has the root `root` in `E = L[x]/(f1)`; `pair` are nonzero
    /// elements of `T` with zero product.
    NonDomain {
        root: QuadExtElement<R>,
        pair: (TElement<R>, TElement<R>),
    },
    /// `f1` has the root `root` in `R`.
    ReducibleF1 {
        root: R,
        pair: (TElement<R>, TElement<R>),
    },
}

/// Both roots of a monic quadratic in `R`, `(a + s)/2` first with `s` the
/// canonical square root of the discriminant.
pub fn ring_roots<R: Ufd>(q: &MonicQuadratic<R>) -> Option<[R; 2]> {
    let s = q.discriminant().sqrt()?;
    let two = s.int_like(2);
    let r1 = (q.a().clone() + s.clone()).exact_div(&two).ok()?;
    let r2 = (q.a().clone() - s).exact_div(&two).ok()?;
    Some([r1, r2])
}

fn lift<R: Ufd>(q: &MonicQuadratic<R>) -> MonicQuadratic<Frac<R>> {
    q.map(|c| Frac::from_ring(c.clone()))
}

/// `T` is a domain iff `f1` is irreducible over `L` and `f2` stays
/// irreducible over `E = L[x]/(f1)`.
pub fn domain_test<R: Ufd>(pres: &Presentation<R>) -> DomainVerdict<R> {
    let field = match QuadExtField::over_ring(&pres.f1) {
        Ok(e) => e,
        Err(_) => {
            let [r1, r2] = ring_roots(&pres.f1).expect("monic quadratic split over L splits over R");
            let z = r1.zero_like();
            let one = r1.one_like();
            let pair = (
                pres.element([-r1.clone(), one.clone(), z.clone(), z.clone()]),
                pres.element([-r2, one, z.clone(), z]),
            );
            return DomainVerdict::ReducibleF1 { root: r1, pair };
        }
    };
    let Some(root) = field.quadratic_root(&lift(&pres.f2)) else {
        return DomainVerdict::Domain;
    };
    // y - gamma and y - (c - gamma) with denominators cleared.
    let (al, be) = (&root.e1, &root.e2);
    let g = al.den().gcd(be.den()).expect("nonzero");
    let den = al.den().clone() * be.den().exact_div(&g).expect("gcd divides");
    let dl = Frac::from_ring(den.clone());
    let ring = |v: Frac<R>| v.to_ring().expect("denominator cleared");
    let c = Frac::from_ring(pres.f2.a().clone());
    let z = den.zero_like();
    let pair = (
        pres.element([ring(-(al.clone() * dl.clone())), ring(-(be.clone() * dl.clone())), den.clone(), z.clone()]),
        pres.element([ring((al.clone() - c) * dl.clone()), ring(be.clone() * dl), den, z]),
    );
    DomainVerdict::NonDomain { root, pair }
}

/// Writes `a1 = d^2 u`, `a2 = c^2 u` with `gcd(c, d) = 1`, reading `c/d`
/// off the root `(c/d) x̄` of `y^2 - a2` over `L[x]/(x^2 - a1)`.
pub fn radical_decompose<R: Ufd>(a1: &R, a2: &R) -> Result<RadicalWitnesses<R>, SplitError> {
    let field = QuadExtField::over_ring(&MonicQuadratic::radical(a1.clone()))
        .map_err(|_| SplitError::NotApplicable("x^2 - a1 is reducible".into()))?;
    let root = field
        .quadratic_root(&lift(&MonicQuadratic::radical(a2.clone())))
        .ok_or_else(|| SplitError::NotApplicable("T is a domain".into()))?;
    if root.e2.is_zero() {
        return Err(SplitError::NotApplicable("y^2 - a2 is reducible".into()));
    }
    let c = root.e2.num().clone();
    let d = root.e2.den().clone();
    let u = a1.exact_div(&d.square())?;
    if c.square() * u.clone() != *a2 {
        return Err(SplitError::InternalIdentityFailure(format!("a2 != c^2 u for c = {c}, u = {u}")));
    }
    Ok(RadicalWitnesses { c, d, u })
}

/// The two minimal primes `P_0`, `P_1` of `(x^2 - d^2 u, y^2 - c^2 u)`.
pub fn minimal_primes_radical<R: Ufd>(w: &RadicalWitnesses<R>) -> [MinimalPrimeCert<R>; 2] {
    [0u8, 1].map(|r| {
        let (x_image, y_image) = w.psi_images(r);
        MinimalPrimeCert {
            index: r as usize,
            generators: w.prime_generators(r).to_vec(),
            elimination: EliminationMap { modulus: Some(MonicQuadratic::radical(w.u.clone())), x_image, y_image },
        }
    })
}

/// Shift data for `x = X + a/2`, `y = Y + c/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareCompletion<R: Ring> {
    pub half_a: R,
    pub half_c: R,
    /// `a^2/4 - b`.
    pub a1: R,
    /// `c^2/4 - d`.
    pub a2: R,
}

/// Completes both squares. Needs `2 | a` and `2 | c`, which always holds
/// when 2 is a unit.
pub fn complete_square<R: Ufd>(
    f: &MonicQuadratic<R>,
    g: &MonicQuadratic<R>,
) -> Result<SquareCompletion<R>, SplitError> {
    let two = f.a().int_like(2);
    let half_a = f.a().exact_div(&two).map_err(|_| SplitError::TwoNotUnit)?;
    let half_c = g.a().exact_div(&two).map_err(|_| SplitError::TwoNotUnit)?;
    let a1 = half_a.square() - f.b().clone();
    let a2 = half_c.square() - g.b().clone();
    Ok(SquareCompletion { half_a, half_c, a1, a2 })
}

/// `e` with `c^2 - 4d = e^2 (a^2 - 4b)` together with `(c - a e)/2` and
/// `(c + a e)/2`, for `f = x^2 - a x + b` and `g = y^2 - c y + d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonradicalWitness<R: Ring> {
    pub e: R,
    pub half_minus: R,
    pub half_plus: R,
}

pub fn nonradical_witness<R: Ufd>(
    f: &MonicQuadratic<R>,
    g: &MonicQuadratic<R>,
    budget: &FactorBudget,
) -> Result<NonradicalWitness<R>, SplitError> {
    let hyp = |s: &str| SplitError::HypothesesNotMet(s.to_string());
    let two = f.a().int_like(2);
    if !two.gcd(g.a())?.is_one() {
        return Err(hyp("gcd(2, c) = 1 fails"));
    }
    let disc_f = f.discriminant();
    if disc_f.is_zero() || !disc_f.is_square_free(budget)? {
        return Err(hyp("a^2 - 4b is not square-free"));
    }
    let quotient = g.discriminant().exact_div(&disc_f).map_err(|_| hyp("a^2 - 4b does not divide c^2 - 4d"))?;
    let e = quotient.sqrt().ok_or_else(|| hyp("(c^2 - 4d)/(a^2 - 4b) is not a square"))?.canonical_sign();
    let ae = f.a().clone() * e.clone();
    let half = |v: R| v.exact_div(&two).map_err(|_| hyp("2 does not divide c ± a e"));
    let half_minus = half(g.a().clone() - ae.clone())?;
    let half_plus = half(g.a().clone() + ae)?;
    Ok(NonradicalWitness { e, half_minus, half_plus })
}

/// Polynomials of the nonradical case in actual `x`, `y` coordinates:
/// `(base quadratic, other quadratic, h1, h2)`.
fn nonradical_polys<R: Ufd>(
    pres: &Presentation<R>,
    w: &NonradicalWitness<R>,
    orientation: Orientation,
) -> (BiPoly<R>, BiPoly<R>, BiPoly<R>, BiPoly<R>) {
    let ctx = w.e.ctx();
    let other = orientation.eliminated();
    let base = other.other();
    let bv = BiPoly::var(&ctx, base);
    let ov = BiPoly::var(&ctx, other);
    let h1 = ov.clone() - bv.scale(&w.e) - BiPoly::constant(w.half_minus.clone());
    let h2 = ov + bv.scale(&w.e) - BiPoly::constant(w.half_plus.clone());
    match orientation {
        Orientation::Standard => (pres.f1_poly(), pres.f2_poly(), h1, h2),
        Orientation::Swapped => (pres.f2_poly(), pres.f1_poly(), h1, h2),
    }
}

/// `P_1 = (h1)` and `P_2 = (h2)` in `T`, with `h1 = y - e x - (c - a e)/2`
/// and `h2 = y + e x - (c + a e)/2` (variables exchanged when swapped).
pub fn minimal_primes_nonradical<R: Ufd>(
    pres: &Presentation<R>,
    w: &NonradicalWitness<R>,
    orientation: Orientation,
) -> Result<[MinimalPrimeCert<R>; 2], SplitError> {
    let (base_q, other_q) = match orientation {
        Orientation::Standard => (&pres.f1, &pres.f2),
        Orientation::Swapped => (&pres.f2, &pres.f1),
    };
    let (_, _, h1, h2) = nonradical_polys(pres, w, orientation);
    if !pres.mul(&pres.reduce(&h1), &pres.reduce(&h2)).is_zero() {
        return Err(SplitError::InternalIdentityFailure("h1 h2 is not zero in T".into()));
    }
    let target = QuadModRing::new(base_q.clone());
    let zbar = target.generator();
    let images = [
        (1usize, h1, QuadModElement::new(w.half_minus.clone(), w.e.clone())),
        (2, h2, QuadModElement::new(w.half_plus.clone(), -w.e.clone())),
    ];
    let certs = images.map(|(index, h, gamma)| {
        let residue = other_q.eval_in(&target, &gamma);
        let (x_image, y_image) = match orientation {
            Orientation::Standard => (zbar.clone(), gamma),
            Orientation::Swapped => (gamma, zbar.clone()),
        };
        let cert = MinimalPrimeCert {
            index,
            generators: vec![pres.f1_poly(), pres.f2_poly(), h],
            elimination: EliminationMap { modulus: Some(base_q.clone()), x_image, y_image },
        };
        (residue.is_zero(), cert)
    });
    if certs.iter().any(|(ok, _)| !ok) {
        return Err(SplitError::InternalIdentityFailure("root does not satisfy g modulo f".into()));
    }
    let [(_, p1), (_, p2)] = certs;
    Ok([p1, p2])
}

fn point_primes<R: Ufd>(pres: &Presentation<R>, x_roots: &[R], y_roots: &[R]) -> Vec<MinimalPrimeCert<R>> {
    let ctx = pres.f1.a().ctx();
    let dedup = |v: &[R]| {
        let mut out: Vec<R> = Vec::new();
        for r in v {
            if !out.contains(r) {
                out.push(r.clone());
            }
        }
        out
    };
    let xs = dedup(x_roots);
    let ys = dedup(y_roots);
    let x = BiPoly::x(&ctx);
    let y = BiPoly::y(&ctx);
    let base = [pres.f1_poly(), pres.f2_poly()];
    let mut out = Vec::new();
    let mut push = |extra: Vec<BiPoly<R>>, elimination: EliminationMap<R>| {
        let mut generators = base.to_vec();
        generators.extend(extra);
        out.push(MinimalPrimeCert { index: out.len(), generators, elimination });
    };
    let z = R::zero(&ctx);
    let konst = |r: &R| QuadModElement::new(r.clone(), z.clone());
    let zbar = QuadModElement::new(z.clone(), R::one(&ctx));
    match (xs.is_empty(), ys.is_empty()) {
        (false, false) => {
            for r in &xs {
                for s in &ys {
                    push(
                        vec![x.clone() - BiPoly::constant(r.clone()), y.clone() - BiPoly::constant(s.clone())],
                        EliminationMap { modulus: None, x_image: konst(r), y_image: konst(s) },
                    );
                }
            }
        }
        (false, true) => {
            for r in &xs {
                push(
                    vec![x.clone() - BiPoly::constant(r.clone())],
                    EliminationMap { modulus: Some(pres.f2.clone()), x_image: konst(r), y_image: zbar.clone() },
                );
            }
        }
        (true, false) => {
            for s in &ys {
                push(
                    vec![y.clone() - BiPoly::constant(s.clone())],
                    EliminationMap { modulus: Some(pres.f1.clone()), x_image: zbar.clone(), y_image: konst(s) },
                );
            }
        }
        (true, true) => {}
    }
    out
}

enum Family<R: Ufd> {
    Reducible,
    Radical(RadicalWitnesses<R>),
    CompletedSquare { half_a: R, half_c: R, w: RadicalWitnesses<R> },
    Nonradical(Orientation),
}

/// Everything about the minimal primes of `T` that does not depend on `J`.
struct Decomposition<R: Ufd> {
    family: Family<R>,
    witnesses: Witnesses<R>,
    primes: Vec<MinimalPrimeCert<R>>,
    identities: Vec<IdentityRecord<R>>,
}

fn identity<R: Ring>(name: &str, residual: BiPoly<R>) -> IdentityRecord<R> {
    IdentityRecord { name: name.to_string(), residual }
}

/// `c^2 F1 - d^2 F2 + (dY - cX)(cX + dY)` at `X = x - sx`, `Y = y - sy`.
pub fn cross_factorization<R: Ring>(w: &RadicalWitnesses<R>, sx: &R, sy: &R) -> BiPoly<R> {
    let ctx = w.c.ctx();
    let bx = BiPoly::x(&ctx) - BiPoly::constant(sx.clone());
    let by = BiPoly::y(&ctx) - BiPoly::constant(sy.clone());
    let p = w.presentation();
    let f1 = p.f1_poly().compose(&bx, &by);
    let f2 = p.f2_poly().compose(&bx, &by);
    let (cx, dy) = (bx.scale(&w.c), by.scale(&w.d));
    f1.scale(&w.c.square()) - f2.scale(&w.d.square()) + (dy.clone() - cx.clone()) * (cx + dy)
}

fn decompose<R: Ufd>(problem: &ExtensionProblem<R>, budget: &FactorBudget) -> Result<Decomposition<R>, SplitError> {
    let pres = problem.presentation();
    let x_roots = ring_roots(&problem.f1);
    let y_roots = ring_roots(&problem.f2);
    if x_roots.is_some() || y_roots.is_some() {
        let xr = x_roots.map(|v| v.to_vec()).unwrap_or_default();
        let yr = y_roots.map(|v| v.to_vec()).unwrap_or_default();
        let primes = point_primes(&pres, &xr, &yr);
        let mut identities = Vec::new();
        let ctx = &problem.ctx;
        let linear = |v: Var, r: &R| BiPoly::var(ctx, v) - BiPoly::constant(r.clone());
        if let [r1, r2] = xr.as_slice() {
            identities.push(identity("f1_splits", pres.f1_poly() - linear(Var::X, r1) * linear(Var::X, r2)));
        }
        if let [s1, s2] = yr.as_slice() {
            identities.push(identity("f2_splits", pres.f2_poly() - linear(Var::Y, s1) * linear(Var::Y, s2)));
        }
        return Ok(Decomposition {
            family: Family::Reducible,
            witnesses: Witnesses::Roots { x_roots: xr, y_roots: yr },
            primes,
            identities,
        });
    }
    if let DomainVerdict::Domain = domain_test(&pres) {
        return Err(SplitError::NoPrimeContainsJ);
    }
    match complete_square(&problem.f1, &problem.f2) {
        Ok(sq) => {
            let w = radical_decompose(&sq.a1, &sq.a2)?;
            let primes = minimal_primes_radical(&w);
            if problem.f1.is_radical() && problem.f2.is_radical() {
                let identities = vec![identity("cross_factorization", cross_factorization(&w, &sq.half_a, &sq.half_c))];
                return Ok(Decomposition {
                    witnesses: Witnesses::Radical { c: w.c.clone(), d: w.d.clone(), u: w.u.clone() },
                    primes: primes.to_vec(),
                    family: Family::Radical(w),
                    identities,
                });
            }
            let (ha, hc) = (sq.half_a.clone(), sq.half_c.clone());
            let ctx = &problem.ctx;
            let bx = BiPoly::x(ctx) - BiPoly::constant(ha.clone());
            let by = BiPoly::y(ctx) - BiPoly::constant(hc.clone());
            let primes = primes
                .into_iter()
                .map(|p| {
                    let k = |q: &QuadModElement<R>, s: &R| QuadModElement::new(q.p0.clone() + s.clone(), q.p1.clone());
                    MinimalPrimeCert {
                        index: p.index,
                        generators: p.generators.iter().map(|g| g.compose(&bx, &by)).collect(),
                        elimination: EliminationMap {
                            modulus: p.elimination.modulus.clone(),
                            x_image: k(&p.elimination.x_image, &ha),
                            y_image: k(&p.elimination.y_image, &hc),
                        },
                    }
                })
                .collect();
            let rp = w.presentation();
            let shift_x = BiPoly::x(ctx) + BiPoly::constant(ha.clone());
            let shift_y = BiPoly::y(ctx) + BiPoly::constant(hc.clone());
            let identities = vec![
                identity("shift_f1", pres.f1_poly().compose(&shift_x, &BiPoly::y(ctx)) - rp.f1_poly()),
                identity("shift_f2", pres.f2_poly().compose(&BiPoly::x(ctx), &shift_y) - rp.f2_poly()),
                identity("cross_factorization", cross_factorization(&w, &ha, &hc)),
            ];
            Ok(Decomposition {
                witnesses: Witnesses::CompletedSquare {
                    half_a: ha.clone(),
                    half_c: hc.clone(),
                    c: w.c.clone(),
                    d: w.d.clone(),
                    u: w.u.clone(),
                },
                family: Family::CompletedSquare { half_a: ha, half_c: hc, w },
                primes,
                identities,
            })
        }
        Err(SplitError::TwoNotUnit) => {
            let (orientation, nw) = match nonradical_witness(&problem.f1, &problem.f2, budget) {
                Ok(nw) => (Orientation::Standard, nw),
                Err(SplitError::HypothesesNotMet(m1)) => match nonradical_witness(&problem.f2, &problem.f1, budget) {
                    Ok(nw) => (Orientation::Swapped, nw),
                    Err(SplitError::HypothesesNotMet(m2)) => {
                        return Err(SplitError::HypothesesNotMet(format!("{m1}; with x and y exchanged: {m2}")))
                    }
                    Err(e) => return Err(e),
                },
                Err(e) => return Err(e),
            };
            let primes = minimal_primes_nonradical(&pres, &nw, orientation)?;
            let (f, g, h1, h2) = nonradical_polys(&pres, &nw, orientation);
            let e2 = nw.e.square();
            let prod = h1 * h2;
            let mod_i = pres.to_bipoly(&pres.reduce(&(prod.clone() - (f.scale(&e2) + g.clone()))));
            let identities =
                vec![identity("product_exact", prod - (g - f.scale(&e2))), identity("product_mod_i", mod_i)];
            Ok(Decomposition {
                family: Family::Nonradical(orientation),
                witnesses: Witnesses::Nonradical {
                    orientation,
                    e: nw.e,
                    half_minus: nw.half_minus,
                    half_plus: nw.half_plus,
                },
                primes: primes.to_vec(),
                identities,
            })
        }
        Err(e) => Err(e),
    }
}

impl<R: Ufd> Decomposition<R> {
    fn case(&self, index: usize) -> CaseTag {
        match self.family {
            Family::Reducible => CaseTag::Reducible { index },
            Family::Radical(_) => CaseTag::Radical { r: index as u8 },
            Family::CompletedSquare { .. } => CaseTag::CompletedSquare { r: index as u8 },
            Family::Nonradical(_) => CaseTag::Nonradical { j: index as u8 },
        }
    }

    /// Cofactors of `h` against the prime's generators, if `h` lies in it.
    fn membership(&self, prime: &MinimalPrimeCert<R>, h: &BiPoly<R>) -> Option<Vec<BiPoly<R>>> {
        let g = &prime.generators;
        let zero = BiPoly::zero(h.ctx_ref());
        match &self.family {
            Family::Radical(w) => pr_membership(h, prime.index as u8, w).map(|c| c.to_vec()),
            Family::CompletedSquare { half_a, half_c, w } => {
                let shifted = h.translate(half_a, half_c);
                let cof = pr_membership(&shifted, prime.index as u8, w)?;
                let back = |q: &BiPoly<R>| q.translate(&-half_a.clone(), &-half_c.clone());
                Some(cof.iter().map(back).collect())
            }
            Family::Nonradical(o) => {
                let (univ_idx, lead_var) = match o {
                    Orientation::Standard => (0, Var::Y),
                    Orientation::Swapped => (1, Var::X),
                };
                let (ql, qu) = triangular_membership(h, &g[2], lead_var, &g[univ_idx])?;
                let mut cof = vec![zero.clone(), zero, ql];
                cof[univ_idx] = qu;
                Some(cof)
            }
            Family::Reducible => {
                let lead_var = if g[2].degree_in(Var::X) == Some(1) { Var::X } else { Var::Y };
                if g.len() == 4 {
                    let (q1, q2) = triangular_membership(h, &g[2], Var::X, &g[3])?;
                    return Some(vec![zero.clone(), zero, q1, q2]);
                }
                let univ_idx = if lead_var == Var::X { 1 } else { 0 };
                let (ql, qu) = triangular_membership(h, &g[2], lead_var, &g[univ_idx])?;
                let mut cof = vec![zero.clone(), zero, ql];
                cof[univ_idx] = qu;
                Some(cof)
            }
        }
    }

    fn certificate(&self, problem: &ExtensionProblem<R>, k: usize, seed: u64) -> Option<SplitCertificate<R>> {
        let prime = &self.primes[k];
        let transcripts = problem
            .j
            .iter()
            .map(|h| self.membership(prime, h).map(|cofactors| MembershipTranscript { cofactors }))
            .collect::<Option<Vec<_>>>()?;
        Some(SplitCertificate {
            problem: problem.clone(),
            case: self.case(prime.index),
            witnesses: self.witnesses.clone(),
            minimal_primes: self.primes.clone(),
            retraction: prime.elimination.projected_basis(&problem.ctx),
            transcripts,
            identities: self.identities.clone(),
            probe_seed: seed,
        })
    }
}

/// Cofactors `(q1, q2)` with `h = q1 f1 + q2 f2`, if `h ∈ I`.
fn ideal_membership<R: Ufd>(pres: &Presentation<R>, h: &BiPoly<R>) -> Option<MembershipTranscript<R>> {
    let (q1, r1) = h.monic_divide(&pres.f1_poly(), Var::X).ok()?;
    let (q2, r2) = r1.monic_divide(&pres.f2_poly(), Var::Y).ok()?;
    r2.is_zero().then(|| MembershipTranscript { cofactors: vec![q1, q2] })
}

/// Builds splitting certificates for `R ⊂ S = T/J`.
///
/// The first certificate is canonical. When `J ⊂ I` and
/// [`BuildOptions::all_primes`] is set, one certificate per minimal prime of
/// `T` follows, provided the structure of `T` is covered.
pub fn build_retraction<R: Ufd>(
    problem: &ExtensionProblem<R>,
    opts: &BuildOptions,
) -> Result<Vec<SplitCertificate<R>>, SplitError> {
    let pres = problem.presentation();
    let free: Option<Vec<_>> = problem.j.iter().map(|h| ideal_membership(&pres, h)).collect();
    if let Some(transcripts) = free {
        let one = R::one(&problem.ctx);
        let z = one.zero_like();
        let mut out = vec![SplitCertificate {
            problem: problem.clone(),
            case: CaseTag::Free,
            witnesses: Witnesses::None,
            minimal_primes: Vec::new(),
            retraction: [one, z.clone(), z.clone(), z],
            transcripts,
            identities: Vec::new(),
            probe_seed: opts.probe_seed,
        }];
        if opts.all_primes {
            match decompose(problem, &opts.budget) {
                Ok(dec) => {
                    out.extend((0..dec.primes.len()).filter_map(|k| dec.certificate(problem, k, opts.probe_seed)));
                }
                Err(SplitError::Arith(e)) => return Err(e.into()),
                Err(_) => {}
            }
        }
        return Ok(out);
    }
    let dec = decompose(problem, &opts.budget)?;
    (0..dec.primes.len())
        .find_map(|k| dec.certificate(problem, k, opts.probe_seed))
        .map(|c| vec![c])
        .ok_or(SplitError::NoPrimeContainsJ)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ufd::{Integer, QPoly, Rational};

    type P = BiPoly<Integer>;

    fn z(n: i64) -> Integer {
        Integer::from(n)
    }

    fn quad(a: i64, b: i64) -> MonicQuadratic<Integer> {
        MonicQuadratic::new(z(a), z(b))
    }

    fn k(n: i64) -> P {
        P::constant(z(n))
    }

    fn x() -> P {
        P::x(&())
    }

    fn y() -> P {
        P::y(&())
    }

    fn problem(f1: (i64, i64), f2: (i64, i64), j: Vec<P>) -> ExtensionProblem<Integer> {
        ExtensionProblem::new((), quad(f1.0, f1.1), quad(f2.0, f2.1), j)
    }

    fn build(p: &ExtensionProblem<Integer>) -> SplitCertificate<Integer> {
        build_retraction(p, &BuildOptions::default()).unwrap().remove(0)
    }

    #[test]
    fn domain_verdicts() {
        let pres = |f1, f2| Presentation::new(quad(0, f1), quad(0, f2));
        assert_eq!(domain_test(&pres(-2, -3)), DomainVerdict::Domain);
        match domain_test(&pres(-18, -8)) {
            DomainVerdict::NonDomain { root, pair } => {
                assert!(root.e1.is_zero());
                assert_eq!(root.e2, Frac::new(z(2), z(3)).unwrap());
                let p = pres(-18, -8);
                assert!(!pair.0.is_zero() && !pair.1.is_zero());
                assert!(p.mul(&pair.0, &pair.1).is_zero());
            }
            v => panic!("{v:?}"),
        }
        match domain_test(&pres(-9, -3)) {
            DomainVerdict::ReducibleF1 { root, .. } => assert_eq!(root, z(3)),
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn nonradical_zero_divisors() {
        let p = Presentation::new(quad(1, -1), quad(3, 1));
        match domain_test(&p) {
            DomainVerdict::NonDomain { pair, .. } => assert!(p.mul(&pair.0, &pair.1).is_zero()),
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn radical_decompositions() {
        let w = radical_decompose(&z(18), &z(8)).unwrap();
        assert_eq!((w.c, w.d, w.u), (z(2), z(3), z(2)));
        let w = radical_decompose(&z(2), &z(8)).unwrap();
        assert_eq!((w.c, w.d, w.u), (z(2), z(1), z(2)));
        let w = radical_decompose(&z(5), &z(5)).unwrap();
        assert_eq!((w.c, w.d, w.u), (z(1), z(1), z(5)));
        assert!(matches!(radical_decompose(&z(2), &z(3)), Err(SplitError::NotApplicable(_))));
    }

    #[test]
    fn radical_prime_generators() {
        let w = RadicalWitnesses { c: z(2), d: z(3), u: z(2) };
        let [p0, p1] = minimal_primes_radical(&w);
        assert!(p0.generators.contains(&(k(3) * y() + k(2) * x())));
        assert!(p0.generators.contains(&(x() * y() + k(12))));
        assert!(p1.generators.contains(&(k(3) * y() - k(2) * x())));
        assert!(p1.generators.contains(&(x() * y() - k(12))));
        let w = RadicalWitnesses { c: z(1), d: z(1), u: z(5) };
        let [p0, _] = minimal_primes_radical(&w);
        assert_eq!(p0.generators, vec![x() * x() - k(5), y() * y() - k(5), y() + x(), x() * y() + k(5)]);
    }

    #[test]
    fn completing_squares_over_rational_functions() {
        let t = QPoly::var(());
        let n = |v: i64| QPoly::constant((), Rational::from_int(v));
        let f = MonicQuadratic::new(n(2) * t.clone(), t.clone() * t.clone() - t.clone());
        let g = MonicQuadratic::new(n(2), n(1) - n(4) * t.clone());
        let sq = complete_square(&f, &g).unwrap();
        assert_eq!(sq.a1, t);
        assert_eq!(sq.a2, n(4) * t.clone());
        let w = radical_decompose(&sq.a1, &sq.a2).unwrap();
        assert_eq!((w.c, w.d, w.u), (n(2), n(1), t));
        let r = complete_square(&MonicQuadratic::radical(n(7)), &g).unwrap();
        assert_eq!(r.a1, n(7));
        assert!(r.half_a.is_zero());
    }

    #[test]
    fn two_not_unit_over_integers() {
        assert_eq!(complete_square(&quad(1, -1), &quad(2, 1)), Err(SplitError::TwoNotUnit));
    }

    #[test]
    fn nonradical_witnesses() {
        let b = FactorBudget::default();
        let w = nonradical_witness(&quad(1, -1), &quad(1, -1), &b).unwrap();
        assert_eq!((w.e, w.half_minus, w.half_plus), (z(1), z(0), z(1)));
        let w = nonradical_witness(&quad(1, -1), &quad(3, 1), &b).unwrap();
        assert_eq!((w.e, w.half_minus, w.half_plus), (z(1), z(1), z(2)));
        assert!(matches!(nonradical_witness(&quad(1, -1), &quad(1, 1), &b), Err(SplitError::HypothesesNotMet(_))));
    }

    #[test]
    fn nonradical_primes() {
        let pres = Presentation::new(quad(1, -1), quad(1, -1));
        let w = nonradical_witness(&pres.f1, &pres.f2, &FactorBudget::default()).unwrap();
        let [p1, p2] = minimal_primes_nonradical(&pres, &w, Orientation::Standard).unwrap();
        assert_eq!(p1.generators[2], y() - x());
        assert_eq!(p2.generators[2], y() + x() - k(1));
        let f = pres.f1_poly();
        let g = pres.f2_poly();
        assert_eq!(p1.generators[2].clone() * p2.generators[2].clone(), g.clone() - f.clone());
        // g(-x + 1) = x^2 - x - 1
        assert_eq!(g.compose(&x(), &(k(1) - x())), f);
    }

    #[test]
    fn worked_examples() {
        let c = build(&problem((0, -18), (0, -8), vec![k(3) * y() - k(2) * x()]));
        assert_eq!(c.case, CaseTag::Radical { r: 1 });
        assert_eq!(c.retraction, [z(1), z(0), z(0), z(12)]);

        let c = build(&problem((1, -1), (1, -1), vec![y() - x()]));
        assert_eq!(c.case, CaseTag::Nonradical { j: 1 });
        assert_eq!(c.retraction, [z(1), z(0), z(0), z(1)]);

        let c = build(&problem((1, -1), (1, -1), vec![y() + x() - k(1)]));
        assert_eq!(c.case, CaseTag::Nonradical { j: 2 });
        assert_eq!(c.retraction, [z(1), z(0), z(1), z(-1)]);

        let c = build(&problem((0, -2), (0, -3), vec![]));
        assert_eq!(c.case, CaseTag::Free);
        assert_eq!(c.retraction, [z(1), z(0), z(0), z(0)]);
    }

    #[test]
    fn transcripts_replay() {
        let p = problem((0, -18), (0, -8), vec![k(3) * y() - k(2) * x(), x() * y() - k(12)]);
        let c = build(&p);
        let gens = c.ideal_generators();
        for (h, t) in p.j.iter().zip(&c.transcripts) {
            let sum = gens.iter().zip(&t.cofactors).fold(P::zero(&()), |a, (g, q)| a + g.clone() * q.clone());
            assert_eq!(&sum, h);
        }
        for id in &c.identities {
            assert!(id.residual.is_zero(), "{}", id.name);
        }
    }

    #[test]
    fn dispatch_errors() {
        let p = problem((0, -2), (0, -3), vec![x()]);
        assert_eq!(build_retraction(&p, &BuildOptions::default()), Err(SplitError::NoPrimeContainsJ));
        let p = problem((0, -18), (0, -8), vec![x()]);
        assert_eq!(build_retraction(&p, &BuildOptions::default()), Err(SplitError::NoPrimeContainsJ));
        // disc 45 is not square-free in either orientation
        let p = problem((1, -11), (1, -11), vec![y() - x()]);
        assert!(matches!(build_retraction(&p, &BuildOptions::default()), Err(SplitError::HypothesesNotMet(_))));
    }

    #[test]
    fn swapped_orientation() {
        // disc f1 = 45 is not square-free, disc f2 = 5 is.
        let p = problem((1, -11), (1, -1), vec![]);
        let opts = BuildOptions { all_primes: true, ..BuildOptions::default() };
        let certs = build_retraction(&p, &opts).unwrap();
        assert_eq!(certs.len(), 3);
        assert!(matches!(certs[1].witnesses, Witnesses::Nonradical { orientation: Orientation::Swapped, .. }));
        for c in &certs[1..] {
            let prime = c.selected_prime().unwrap();
            for g in &prime.generators {
                assert!(prime.elimination.apply(&(), g).is_zero());
            }
            assert_eq!(c.retraction[0], z(1));
            for id in &c.identities {
                assert!(id.residual.is_zero(), "{}", id.name);
            }
        }
    }

    #[test]
    fn reducible_cases() {
        let p = problem((0, -9), (0, -3), vec![x() - k(3)]);
        let c = build(&p);
        assert_eq!(c.case, CaseTag::Reducible { index: 0 });
        assert_eq!(c.retraction, [z(1), z(3), z(0), z(0)]);
        let p = problem((0, -3), (0, -4), vec![y() + k(2)]);
        let c = build(&p);
        assert_eq!(c.case, CaseTag::Reducible { index: 1 });
        assert_eq!(c.retraction, [z(1), z(0), z(-2), z(0)]);
        let p = problem((3, 2), (0, -4), vec![x() - k(1), y() - k(2)]);
        let c = build(&p);
        assert_eq!(c.retraction, [z(1), z(1), z(2), z(2)]);
    }
}
