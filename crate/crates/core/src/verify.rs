//! Independent certificate checker.
//!
//! Nothing here calls into [`crate::splitting`]. Prime generators and
//! evaluation maps are recomputed from the witnesses with their own
//! formulas, and every claim is confirmed by direct arithmetic in `R`,
//! `R[x,y]`, `T` or `R[z]/(m)`. All checks always run so that a tampered
//! certificate yields a complete failure profile.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cert::{
    CaseTag, EliminationMap, ExtensionProblem, MinimalPrimeCert, Orientation, SplitCertificate, Witnesses,
};
use crate::poly::{BiPoly, MonicQuadratic, Var};
use crate::quotient::{membership_in_pr, psi_eval, sign, QuadModElement, RadicalWitnesses, TElement};
use crate::ufd::Ufd;

/// Number of randomized linearity probes per certificate.
pub const LINEARITY_PROBES: usize = 100;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// Counterexample on failure, short witness summary on success.
    pub detail: String,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VerificationReport {
    pub case: String,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "case {} (probe seed {})", self.case, self.seed)?;
        for c in &self.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            writeln!(f, "  {mark} {:<28} {}", c.name, c.detail)?;
        }
        write!(f, "overall: {}", if self.passed() { "pass" } else { "fail" })
    }
}

struct Checks(Vec<CheckResult>);

impl Checks {
    fn push(&mut self, name: &str, outcome: Result<String, String>) {
        let (passed, detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        self.0.push(CheckResult { name: name.to_string(), passed, detail });
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn linear<R: Ufd>(ctx: &R::Ctx, v: Var, r: &R) -> BiPoly<R> {
    BiPoly::var(ctx, v) - BiPoly::constant(r.clone())
}

/// Identity names expected for a case.
fn expected_identities<R: Ufd>(w: &Witnesses<R>) -> Vec<&'static str> {
    match w {
        Witnesses::None => vec![],
        Witnesses::Roots { x_roots, y_roots } => {
            let mut v = Vec::new();
            if !x_roots.is_empty() {
                v.push("f1_splits");
            }
            if !y_roots.is_empty() {
                v.push("f2_splits");
            }
            v
        }
        Witnesses::Radical { .. } => vec!["cross_factorization"],
        Witnesses::CompletedSquare { .. } => vec!["shift_f1", "shift_f2", "cross_factorization"],
        Witnesses::Nonradical { .. } => vec!["product_exact", "product_mod_i"],
    }
}

fn witness_matches_case<R: Ufd>(case: &CaseTag, w: &Witnesses<R>) -> bool {
    matches!(
        (case, w),
        (CaseTag::Free, Witnesses::None)
            | (CaseTag::Reducible { .. }, Witnesses::Roots { .. })
            | (CaseTag::Radical { .. }, Witnesses::Radical { .. })
            | (CaseTag::CompletedSquare { .. }, Witnesses::CompletedSquare { .. })
            | (CaseTag::Nonradical { .. }, Witnesses::Nonradical { .. })
    )
}

/// Oriented `(base, other)` quadratics of the nonradical case.
fn oriented<R: Ufd>(p: &ExtensionProblem<R>, o: Orientation) -> (&MonicQuadratic<R>, &MonicQuadratic<R>) {
    match o {
        Orientation::Standard => (&p.f1, &p.f2),
        Orientation::Swapped => (&p.f2, &p.f1),
    }
}

/// Shifted radical primes: `X = x - sx`, `Y = y - sy`, target `R[z]/(z^2 - u)`.
fn radical_primes<R: Ufd>(ctx: &R::Ctx, c: &R, d: &R, u: &R, sx: &R, sy: &R) -> Vec<MinimalPrimeCert<R>> {
    let bx = linear(ctx, Var::X, sx);
    let by = linear(ctx, Var::Y, sy);
    (0u8..2)
        .map(|r| {
            let s = sign(c, r);
            let g1 = bx.clone() * bx.clone() - BiPoly::constant(d.square() * u.clone());
            let g2 = by.clone() * by.clone() - BiPoly::constant(c.square() * u.clone());
            let g3 = by.scale(d) + bx.scale(&(s.clone() * c.clone()));
            let g4 = bx.clone() * by.clone() + BiPoly::constant(s.clone() * c.clone() * d.clone() * u.clone());
            MinimalPrimeCert {
                index: r as usize,
                generators: vec![g1, g2, g3, g4],
                elimination: EliminationMap {
                    modulus: Some(MonicQuadratic::radical(u.clone())),
                    x_image: QuadModElement::new(sx.clone(), d.clone()),
                    y_image: QuadModElement::new(sy.clone(), -(s * c.clone())),
                },
            }
        })
        .collect()
}

/// The minimal primes the witnesses describe.
fn expected_primes<R: Ufd>(p: &ExtensionProblem<R>, w: &Witnesses<R>) -> Vec<MinimalPrimeCert<R>> {
    let ctx = &p.ctx;
    let pres = p.presentation();
    let base = vec![pres.f1_poly(), pres.f2_poly()];
    let zero = R::zero(ctx);
    match w {
        Witnesses::None => Vec::new(),
        Witnesses::Radical { c, d, u } => radical_primes(ctx, c, d, u, &zero, &zero),
        Witnesses::CompletedSquare { half_a, half_c, c, d, u } => radical_primes(ctx, c, d, u, half_a, half_c),
        Witnesses::Nonradical { orientation, e, half_minus, half_plus } => {
            let (bq, _) = oriented(p, *orientation);
            let other = orientation.eliminated();
            let bv = BiPoly::var(ctx, other.other());
            let ov = BiPoly::var(ctx, other);
            let zbar = QuadModElement::new(zero.clone(), R::one(ctx));
            [(1usize, -e.clone(), half_minus), (2, e.clone(), half_plus)]
                .into_iter()
                .map(|(index, se, half)| {
                    let h = ov.clone() + bv.scale(&se) - BiPoly::constant(half.clone());
                    let gamma = QuadModElement::new(half.clone(), -se);
                    let (x_image, y_image) = match orientation {
                        Orientation::Standard => (zbar.clone(), gamma),
                        Orientation::Swapped => (gamma, zbar.clone()),
                    };
                    let mut generators = base.clone();
                    generators.push(h);
                    MinimalPrimeCert {
                        index,
                        generators,
                        elimination: EliminationMap { modulus: Some(bq.clone()), x_image, y_image },
                    }
                })
                .collect()
        }
        Witnesses::Roots { x_roots, y_roots } => {
            let distinct = |v: &[R]| {
                let mut out: Vec<R> = Vec::new();
                for r in v {
                    if !out.contains(r) {
                        out.push(r.clone());
                    }
                }
                out
            };
            let (xs, ys) = (distinct(x_roots), distinct(y_roots));
            let k = |r: &R| QuadModElement::new(r.clone(), zero.clone());
            let zbar = QuadModElement::new(zero.clone(), R::one(ctx));
            let mut shapes: Vec<(Vec<BiPoly<R>>, EliminationMap<R>)> = Vec::new();
            if !xs.is_empty() && !ys.is_empty() {
                for r in &xs {
                    for s in &ys {
                        shapes.push((
                            vec![linear(ctx, Var::X, r), linear(ctx, Var::Y, s)],
                            EliminationMap { modulus: None, x_image: k(r), y_image: k(s) },
                        ));
                    }
                }
            } else if !xs.is_empty() {
                for r in &xs {
                    shapes.push((
                        vec![linear(ctx, Var::X, r)],
                        EliminationMap { modulus: Some(p.f2.clone()), x_image: k(r), y_image: zbar.clone() },
                    ));
                }
            } else {
                for s in &ys {
                    shapes.push((
                        vec![linear(ctx, Var::Y, s)],
                        EliminationMap { modulus: Some(p.f1.clone()), x_image: zbar.clone(), y_image: k(s) },
                    ));
                }
            }
            shapes
                .into_iter()
                .enumerate()
                .map(|(index, (extra, elimination))| {
                    let mut generators = base.clone();
                    generators.extend(extra);
                    MinimalPrimeCert { index, generators, elimination }
                })
                .collect()
        }
    }
}

fn check_structure<R: Ufd>(problem: &ExtensionProblem<R>, cert: &SplitCertificate<R>) -> Result<String, String> {
    ensure(cert.problem == *problem, || "problem echo differs from the problem".into())?;
    ensure(witness_matches_case(&cert.case, &cert.witnesses), || {
        format!("witnesses do not belong to case {}", cert.case)
    })?;
    let valid_index = match cert.case {
        CaseTag::Free => true,
        CaseTag::Radical { r } | CaseTag::CompletedSquare { r } => r < 2,
        CaseTag::Nonradical { j } => j == 1 || j == 2,
        CaseTag::Reducible { index } => index < cert.minimal_primes.len(),
    };
    ensure(valid_index, || format!("prime index of {} out of range", cert.case))?;
    if cert.case != CaseTag::Free {
        ensure(cert.selected_prime().is_some(), || "selected prime missing".into())?;
    }
    let mut seen = Vec::new();
    for p in &cert.minimal_primes {
        ensure(!seen.contains(&p.index), || format!("prime index {} repeated", p.index))?;
        seen.push(p.index);
        if p.elimination.modulus.is_none() {
            ensure(p.elimination.x_image.p1.is_zero() && p.elimination.y_image.p1.is_zero(), || {
                format!("prime {} maps into R but images carry z", p.index)
            })?;
        }
    }
    ensure(cert.transcripts.len() == problem.j.len(), || {
        format!("{} transcripts for {} generators of J", cert.transcripts.len(), problem.j.len())
    })?;
    let n = cert.ideal_generators().len();
    for (i, t) in cert.transcripts.iter().enumerate() {
        ensure(t.cofactors.len() == n, || format!("transcript {i} has {} cofactors, expected {n}", t.cofactors.len()))?;
    }
    let names: Vec<&str> = cert.identities.iter().map(|i| i.name.as_str()).collect();
    let expected = expected_identities(&cert.witnesses);
    ensure(names == expected, || format!("identities {names:?}, expected {expected:?}"))?;
    Ok(format!("{} minimal primes, {} transcripts", cert.minimal_primes.len(), cert.transcripts.len()))
}

fn check_witnesses<R: Ufd>(p: &ExtensionProblem<R>, w: &Witnesses<R>) -> Result<String, String> {
    let two = R::from_i64(&p.ctx, 2);
    let coprime = |c: &R, d: &R| c.gcd(d).map(|g| g.is_unit()).unwrap_or(false);
    match w {
        Witnesses::None => Ok("none".into()),
        Witnesses::Roots { x_roots, y_roots } => {
            ensure(!x_roots.is_empty() || !y_roots.is_empty(), || "no roots given".into())?;
            for (q, roots, name) in [(&p.f1, x_roots, "f1"), (&p.f2, y_roots, "f2")] {
                match roots.as_slice() {
                    [] => ensure(q.discriminant().sqrt().is_none(), || format!("{name} splits but no roots given"))?,
                    [r1, r2] => ensure(r1.clone() + r2.clone() == *q.a() && r1.clone() * r2.clone() == *q.b(), || {
                        format!("{r1}, {r2} are not the roots of {name}")
                    })?,
                    _ => return Err(format!("{name} needs exactly two roots")),
                }
            }
            Ok("root sums and products match".into())
        }
        Witnesses::Radical { c, d, u } => {
            ensure(p.f1.a().is_zero() && p.f2.a().is_zero(), || "quadratics are not radical".into())?;
            ensure(!c.is_zero() && !d.is_zero() && !u.is_zero(), || "zero witness".into())?;
            ensure(-p.f1.b().clone() == d.square() * u.clone(), || format!("a1 != d^2 u for d = {d}, u = {u}"))?;
            ensure(-p.f2.b().clone() == c.square() * u.clone(), || format!("a2 != c^2 u for c = {c}, u = {u}"))?;
            ensure(coprime(c, d), || format!("gcd({c}, {d}) is not a unit"))?;
            Ok(format!("a1 = {d}^2 ({u}), a2 = {c}^2 ({u})"))
        }
        Witnesses::CompletedSquare { half_a, half_c, c, d, u } => {
            ensure(two.clone() * half_a.clone() == *p.f1.a(), || "2 half_a != a".into())?;
            ensure(two.clone() * half_c.clone() == *p.f2.a(), || "2 half_c != c".into())?;
            ensure(!c.is_zero() && !d.is_zero() && !u.is_zero(), || "zero witness".into())?;
            ensure(half_a.square() - p.f1.b().clone() == d.square() * u.clone(), || "a^2/4 - b != d^2 u".into())?;
            ensure(half_c.square() - p.f2.b().clone() == c.square() * u.clone(), || "c^2/4 - d != c^2 u".into())?;
            ensure(coprime(c, d), || format!("gcd({c}, {d}) is not a unit"))?;
            Ok("shifted radical relations hold".into())
        }
        Witnesses::Nonradical { orientation, e, half_minus, half_plus } => {
            let (f, g) = oriented(p, *orientation);
            ensure(!e.is_zero(), || "e = 0".into())?;
            ensure(g.discriminant() == e.square() * f.discriminant(), || {
                format!("c^2 - 4d != e^2 (a^2 - 4b) for e = {e}")
            })?;
            let ae = f.a().clone() * e.clone();
            ensure(two.clone() * half_minus.clone() == g.a().clone() - ae.clone(), || {
                "2 half_minus != c - a e".into()
            })?;
            ensure(two.clone() * half_plus.clone() == g.a().clone() + ae, || "2 half_plus != c + a e".into())?;
            Ok(format!("e = {e}"))
        }
    }
}

fn check_generators<R: Ufd>(p: &ExtensionProblem<R>, cert: &SplitCertificate<R>) -> Result<String, String> {
    let expected = expected_primes(p, &cert.witnesses);
    ensure(cert.minimal_primes == expected, || "minimal primes differ from those the witnesses determine".into())?;
    let Some(prime) = cert.selected_prime() else {
        return Ok("free case: no prime".into());
    };
    let el = &prime.elimination;
    let t = el.target(&p.ctx);
    ensure(p.f1.eval_in(&t, &el.x_image).is_zero(), || "f1(image of x) != 0".into())?;
    ensure(p.f2.eval_in(&t, &el.y_image).is_zero(), || "f2(image of y) != 0".into())?;
    for g in &prime.generators {
        let v = el.apply(&p.ctx, g);
        ensure(v.is_zero(), || format!("generator {g} maps to {v}"))?;
    }
    Ok(format!("{} generators vanish", prime.generators.len()))
}

fn check_transcripts<R: Ufd>(p: &ExtensionProblem<R>, cert: &SplitCertificate<R>) -> Result<String, String> {
    let gens = cert.ideal_generators();
    for (i, (h, t)) in p.j.iter().zip(&cert.transcripts).enumerate() {
        ensure(t.cofactors.len() == gens.len(), || format!("transcript {i} has wrong length"))?;
        let sum = gens.iter().zip(&t.cofactors).fold(BiPoly::zero(&p.ctx), |acc, (g, q)| acc + g.clone() * q.clone());
        ensure(sum == *h, || format!("transcript {i} rebuilds {sum}, not {h}"))?;
    }
    ensure(cert.transcripts.len() == p.j.len(), || "transcript count".into())?;
    Ok(format!("{} generators of J replayed", p.j.len()))
}

fn rho_apply<R: Ufd>(rho: &[R; 4], t: &TElement<R>) -> R {
    rho.iter().zip(t.coords.iter()).fold(rho[0].zero_like(), |acc, (a, b)| acc + a.clone() * b.clone())
}

fn check_rho_kills<R: Ufd>(p: &ExtensionProblem<R>, cert: &SplitCertificate<R>) -> Result<String, String> {
    let pres = p.presentation();
    let Some(prime) = cert.selected_prime() else {
        let one = R::one(&p.ctx);
        let z = one.zero_like();
        ensure(cert.retraction == [one, z.clone(), z.clone(), z], || {
            "free case retraction is not the projection".into()
        })?;
        return Ok("projection onto 1".into());
    };
    let monos = pres.basis_monomials();
    for g in &prime.generators {
        for m in &monos {
            let v = rho_apply(&cert.retraction, &pres.reduce(&(g.clone() * m.clone())));
            ensure(v.is_zero(), || format!("rho({g} * {m}) = {v}"))?;
        }
    }
    let direct = prime.elimination.projected_basis(&p.ctx);
    ensure(direct == cert.retraction, || format!("rho differs from pi_1 of the evaluation map: {direct:?}"))?;
    Ok(format!("{} products killed", prime.generators.len() * monos.len()))
}

fn check_linearity<R: Ufd>(p: &ExtensionProblem<R>, cert: &SplitCertificate<R>, seed: u64) -> Result<String, String> {
    let pres = p.presentation();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..LINEARITY_PROBES {
        let r = R::sample(&p.ctx, &mut rng, 50);
        let t = pres.element(std::array::from_fn(|_| R::sample(&p.ctx, &mut rng, 50)));
        let lhs = rho_apply(&cert.retraction, &t.scale(&r));
        let direct = match cert.selected_prime() {
            Some(prime) => prime.elimination.apply(&p.ctx, &pres.to_bipoly(&t)).p0,
            None => t.coords[0].clone(),
        };
        let rhs = r.clone() * direct;
        ensure(lhs == rhs, || format!("probe {k}: rho(r t) = {lhs}, r pi_1(phi(t)) = {rhs}"))?;
    }
    Ok(format!("{LINEARITY_PROBES} probes"))
}

/// Recomputes the residual of a named identity.
fn identity_residual<R: Ufd>(p: &ExtensionProblem<R>, w: &Witnesses<R>, name: &str) -> Option<BiPoly<R>> {
    let ctx = &p.ctx;
    let pres = p.presentation();
    let (f1, f2) = (pres.f1_poly(), pres.f2_poly());
    let cross = |c: &R, d: &R, sx: &R, sy: &R| {
        let bx = linear(ctx, Var::X, sx);
        let by = linear(ctx, Var::Y, sy);
        let (cx, dy) = (bx.scale(c), by.scale(d));
        f1.scale(&c.square()) - f2.scale(&d.square()) + (dy.clone() - cx.clone()) * (cx + dy)
    };
    let zero = R::zero(ctx);
    match (w, name) {
        (Witnesses::Roots { x_roots, .. }, "f1_splits") => match x_roots.as_slice() {
            [r1, r2] => Some(f1.clone() - linear(ctx, Var::X, r1) * linear(ctx, Var::X, r2)),
            _ => None,
        },
        (Witnesses::Roots { y_roots, .. }, "f2_splits") => match y_roots.as_slice() {
            [s1, s2] => Some(f2.clone() - linear(ctx, Var::Y, s1) * linear(ctx, Var::Y, s2)),
            _ => None,
        },
        (Witnesses::Radical { c, d, .. }, "cross_factorization") => Some(cross(c, d, &zero, &zero)),
        (Witnesses::CompletedSquare { half_a, half_c, c, d, .. }, "cross_factorization") => {
            Some(cross(c, d, half_a, half_c))
        }
        (Witnesses::CompletedSquare { half_a, d, u, .. }, "shift_f1") => {
            let shifted = f1.compose(&(BiPoly::x(ctx) + BiPoly::constant(half_a.clone())), &BiPoly::y(ctx));
            Some(shifted - MonicQuadratic::radical(d.square() * u.clone()).to_bipoly(Var::X))
        }
        (Witnesses::CompletedSquare { half_c, c, u, .. }, "shift_f2") => {
            let shifted = f2.compose(&BiPoly::x(ctx), &(BiPoly::y(ctx) + BiPoly::constant(half_c.clone())));
            Some(shifted - MonicQuadratic::radical(c.square() * u.clone()).to_bipoly(Var::Y))
        }
        (Witnesses::Nonradical { orientation, e, half_minus, half_plus }, n) => {
            let other = orientation.eliminated();
            let bv = BiPoly::var(ctx, other.other());
            let ov = BiPoly::var(ctx, other);
            let h1 = ov.clone() - bv.scale(e) - BiPoly::constant(half_minus.clone());
            let h2 = ov + bv.scale(e) - BiPoly::constant(half_plus.clone());
            let (f, g) = match orientation {
                Orientation::Standard => (f1.clone(), f2.clone()),
                Orientation::Swapped => (f2.clone(), f1.clone()),
            };
            let e2 = e.square();
            match n {
                "product_exact" => Some(h1 * h2 - (g - f.scale(&e2))),
                "product_mod_i" => Some(pres.to_bipoly(&pres.reduce(&(h1 * h2 - (f.scale(&e2) + g))))),
                _ => None,
            }
        }
        _ => None,
    }
}

/// `(name, holds)` for every identity the case calls for, expanded and
/// compared with zero.
pub fn check_identities<R: Ufd>(p: &ExtensionProblem<R>, w: &Witnesses<R>) -> Vec<(String, bool)> {
    expected_identities(w)
        .into_iter()
        .map(|n| (n.to_string(), identity_residual(p, w, n).is_some_and(|r| r.is_zero())))
        .collect()
}

/// Checks every claim of `cert` against `problem`. `seed` overrides the
/// certificate's probe seed.
pub fn verify_certificate<R: Ufd>(
    problem: &ExtensionProblem<R>,
    cert: &SplitCertificate<R>,
    seed: Option<u64>,
) -> VerificationReport {
    let seed = seed.unwrap_or(cert.probe_seed);
    let mut checks = Checks(Vec::new());
    checks.push("structure", check_structure(problem, cert));
    checks.push("witness_equations", check_witnesses(problem, &cert.witnesses));
    checks.push("generators_vanish", check_generators(problem, cert));
    checks.push("transcript_replay", check_transcripts(problem, cert));
    let one = R::one(&problem.ctx);
    checks.push(
        "rho_unit",
        ensure(cert.retraction[0] == one, || format!("rho(1) = {}", cert.retraction[0])).map(|_| "rho(1) = 1".into()),
    );
    checks.push("rho_kills_prime", check_rho_kills(problem, cert));
    checks.push("linearity_probes", check_linearity(problem, cert, seed));
    for name in expected_identities(&cert.witnesses) {
        let claimed = cert.identities.iter().find(|i| i.name == name).map(|i| &i.residual);
        let outcome = match (identity_residual(problem, &cert.witnesses, name), claimed) {
            (None, _) => Err("cannot be formed from the witnesses".to_string()),
            (Some(_), None) => Err("missing from certificate".to_string()),
            (Some(r), Some(c)) if r != *c => Err(format!("recorded residual {c}, recomputed {r}")),
            (Some(r), _) if !r.is_zero() => Err(format!("residual {r}")),
            _ => Ok("expands to 0".to_string()),
        };
        checks.push(&format!("identity:{name}"), outcome);
    }
    VerificationReport { case: cert.case.to_string(), seed, checks: checks.0 }
}

/// Random polynomial of total degree at most `degree`.
pub fn sample_bipoly<R: Ufd>(ctx: &R::Ctx, rng: &mut ChaCha8Rng, degree: u32, size: u32) -> BiPoly<R> {
    let mut h = BiPoly::zero(ctx);
    for i in 0..=degree {
        for j in 0..=(degree - i) {
            if rng.gen_bool(0.5) {
                h = h + BiPoly::monomial(R::sample(ctx, rng, size), i, j);
            }
        }
    }
    h
}

/// Compares the division-chain membership test for `P_r` with direct
/// evaluation under `psi_r` on `samples` seeded polynomials of degree at
/// most `degree` per prime. Half the samples are built inside the prime so
/// both outcomes are exercised.
pub fn cross_check_membership<R: Ufd>(w: &RadicalWitnesses<R>, samples: usize, degree: u32, seed: u64) -> bool {
    let ctx = w.c.ctx();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0u8..2).all(|r| {
        let gens = w.prime_generators(r);
        (0..samples).all(|k| {
            let h = if k % 2 == 0 {
                sample_bipoly(&ctx, &mut rng, degree, 20)
            } else {
                let mut acc = BiPoly::zero(&ctx);
                for g in &gens {
                    let gd = g.total_degree().unwrap_or(0);
                    acc = acc + g.clone() * sample_bipoly(&ctx, &mut rng, degree.saturating_sub(gd), 20);
                }
                if k % 4 == 3 {
                    acc = acc + sample_bipoly(&ctx, &mut rng, 1, 3);
                }
                acc
            };
            membership_in_pr(&h, r, w) == psi_eval(&h, r, w).is_zero()
        })
    })
}
