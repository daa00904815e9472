//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails. Every generator is seeded, so runs are
//! reproducible.

use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use splitforge_cli::document::{from_json, plus_one_mutations, to_json, CertificateFile};
use splitforge_cli::parser::{parse_problem, print_any, AnyProblem};
use splitforge_cli::{run_with, ExitCode};
use splitforge_core::cert::{CaseTag, ExtensionProblem, SplitCertificate};
use splitforge_core::poly::{Algebra, BiPoly, MonicQuadratic};
use splitforge_core::quotient::{membership_in_pr, Presentation, RadicalWitnesses, TElement};
use splitforge_core::splitting::{build_retraction, domain_test, BuildOptions, DomainVerdict};
use splitforge_core::ufd::{Fp, FpPoly, Integer, QPoly, Rational, Ufd};
use splitforge_core::verify::verify_certificate;

/// Wall-clock limit for criterion 1.
const RADICAL_TIME_LIMIT: Duration = Duration::from_secs(10);
const RADICAL_INSTANCES: usize = 1000;
const MEMBERSHIP_SAMPLES: usize = 500;
const MEMBERSHIP_DEGREE: u32 = 4;
const NONRADICAL_INSTANCES: usize = 500;
const SHIFT_INSTANCES_PER_RING: usize = 100;
const DOMAIN_INSTANCES: usize = 200;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn z(n: i64) -> Integer {
    Integer::new(n)
}

fn big(n: &Integer) -> BigInt {
    n.value().clone()
}

fn is_square_free_i64(n: i64) -> bool {
    let n = n.unsigned_abs();
    if n == 0 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

fn is_square_i64(n: i64) -> bool {
    if n < 0 {
        return false;
    }
    let r = (n as f64).sqrt() as i64;
    (r.saturating_sub(2)..=r + 2).any(|k| k >= 0 && k * k == n)
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd_i64(b, a % b)
    }
}

fn nonzero(rng: &mut ChaCha8Rng, bound: i64) -> i64 {
    loop {
        let v = rng.gen_range(-bound..=bound);
        if v != 0 {
            return v;
        }
    }
}

// ---------------------------------------------------------------------------
// Criteria 1-3: radical instances over Z.

struct RadicalInstance {
    c: i64,
    d: i64,
    u: i64,
    r: u8,
    problem: ExtensionProblem<Integer>,
}

fn radical_instance(rng: &mut ChaCha8Rng) -> RadicalInstance {
    let (c, d) = loop {
        let (c, d) = (nonzero(rng, 1000), nonzero(rng, 1000));
        if gcd_i64(c, d) == 1 {
            break (c, d);
        }
    };
    let u = loop {
        let u = nonzero(rng, 1_000_000);
        if u != 1 && is_square_free_i64(u) {
            break u;
        }
    };
    let r: u8 = rng.gen_range(0..=1);
    let w = RadicalWitnesses { c: z(c), d: z(d), u: z(u) };
    let gen = if rng.gen_bool(0.5) { w.f3(r) } else { w.f4(r) };
    let f1 = MonicQuadratic::radical(z(d * d) * z(u));
    let f2 = MonicQuadratic::radical(z(c * c) * z(u));
    RadicalInstance { c, d, u, r, problem: ExtensionProblem::new((), f1, f2, vec![gen]) }
}

/// `psi_r(h)` as `(p0, p1)` in `Z[z]/(z^2 - u)`, computed term by term from
/// `x -> d z`, `y -> (-1)^(r+1) c z`.
fn psi_oracle(h: &BiPoly<Integer>, c: i64, d: i64, u: i64, r: u8) -> (BigInt, BigInt) {
    let yc = if r == 0 { -c } else { c };
    let (mut p0, mut p1) = (BigInt::from(0), BigInt::from(0));
    for (&(i, j), coeff) in h.iter() {
        let k = i + j;
        let v = big(coeff) * BigInt::from(d).pow(i) * BigInt::from(yc).pow(j) * BigInt::from(u).pow(k / 2);
        if k % 2 == 0 {
            p0 += v;
        } else {
            p1 += v;
        }
    }
    (p0, p1)
}

fn random_bipoly(rng: &mut ChaCha8Rng, degree: u32, bound: i64) -> BiPoly<Integer> {
    let mut h = BiPoly::zero(&());
    for i in 0..=degree {
        for j in 0..=degree - i {
            if rng.gen_bool(0.6) {
                h = h + BiPoly::monomial(z(rng.gen_range(-bound..=bound)), i, j);
            }
        }
    }
    h
}

fn criterion_1(instances: &[RadicalInstance]) -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    for (k, inst) in instances.iter().enumerate() {
        let certs = match build_retraction(&inst.problem, &BuildOptions::default()) {
            Ok(c) => c,
            Err(e) => {
                failures.push(format!("#{k}: {e}"));
                continue;
            }
        };
        let cert = &certs[0];
        let report = verify_certificate(&inst.problem, cert, None);
        // rho(xy) = pi_1(psi_r(x y)) = (-1)^(r+1) c d u. The builder may
        // normalize the sign of d, which swaps the labels of P_0 and P_1, so
        // only the case kind is compared.
        let sigma = if inst.r == 0 { 1 } else { -1 };
        let expected = [z(1), z(0), z(0), z(-sigma) * z(inst.c) * z(inst.d) * z(inst.u)];
        if !report.passed() || cert.retraction != expected || !matches!(cert.case, CaseTag::Radical { .. }) {
            failures.push(format!(
                "#{k}: (c, d, u, r) = ({}, {}, {}, {}), case {} rho {:?} passed {}",
                inst.c,
                inst.d,
                inst.u,
                inst.r,
                cert.case,
                cert.retraction,
                report.passed()
            ));
        }
    }
    let elapsed = start.elapsed();
    let within = elapsed < RADICAL_TIME_LIMIT;
    outcome(
        failures.is_empty() && within,
        format!(
            "{}/{} built and verified, rho matches (1, 0, 0, (-1)^(r+1) c d u), {:.2} s (limit {} s){}",
            instances.len() - failures.len(),
            instances.len(),
            elapsed.as_secs_f64(),
            RADICAL_TIME_LIMIT.as_secs(),
            first(&failures)
        ),
    )
}

fn first(failures: &[String]) -> String {
    failures.first().map(|f| format!("; first failure {f}")).unwrap_or_default()
}

fn criterion_2(instances: &[RadicalInstance], rng: &mut ChaCha8Rng) -> Outcome {
    let mut agree = 0usize;
    let mut members = 0usize;
    let mut total = 0usize;
    let mut failures = Vec::new();
    for (k, inst) in instances.iter().enumerate() {
        let w = RadicalWitnesses { c: z(inst.c), d: z(inst.d), u: z(inst.u) };
        for s in 0..MEMBERSHIP_SAMPLES {
            // Half the samples are planted in P_0 or P_1.
            let h = if s % 2 == 0 {
                random_bipoly(rng, MEMBERSHIP_DEGREE, 50)
            } else {
                let r = rng.gen_range(0..=1u8);
                w.prime_generators(r)
                    .iter()
                    .fold(BiPoly::zero(&()), |acc, g| acc + random_bipoly(rng, MEMBERSHIP_DEGREE - 2, 9) * g.clone())
            };
            for r in [0u8, 1] {
                total += 1;
                let (p0, p1) = psi_oracle(&h, inst.c, inst.d, inst.u, r);
                let oracle = p0 == BigInt::from(0) && p1 == BigInt::from(0);
                members += usize::from(oracle);
                if membership_in_pr(&h, r, &w) == oracle {
                    agree += 1;
                } else if failures.len() < 3 {
                    failures.push(format!("instance {k}, r = {r}, h = {h}"));
                }
            }
        }
    }
    outcome(
        agree == total,
        format!(
            "{agree}/{total} membership answers agree with direct psi_r evaluation ({members} members){}",
            first(&failures)
        ),
    )
}

fn linear(cx: &Integer, cy: &Integer) -> BiPoly<Integer> {
    BiPoly::monomial(cx.clone(), 1, 0) + BiPoly::monomial(cy.clone(), 0, 1)
}

/// `c^2 f1 - d^2 f2 + (d y - c x)(c x + d y)`, built from scratch.
fn radical_identity(c: i64, d: i64, u: i64) -> BiPoly<Integer> {
    let (c, d, u) = (z(c), z(d), z(u));
    let f1 = BiPoly::monomial(z(1), 2, 0) - BiPoly::constant(d.clone() * d.clone() * u.clone());
    let f2 = BiPoly::monomial(z(1), 0, 2) - BiPoly::constant(c.clone() * c.clone() * u);
    f1.scale(&(c.clone() * c.clone())) - f2.scale(&(d.clone() * d.clone())) + linear(&-c.clone(), &d) * linear(&c, &d)
}

struct NonradicalInstance {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
    /// `J = y - m x - k`.
    m: i64,
    k: i64,
    e: i64,
    problem: ExtensionProblem<Integer>,
}

fn nonradical_instance(rng: &mut ChaCha8Rng) -> NonradicalInstance {
    let odd = |rng: &mut ChaCha8Rng, bound: i64| 2 * rng.gen_range(-bound..=bound) + 1;
    let a = odd(rng, 50);
    let e = odd(rng, 20);
    let b = loop {
        let b = rng.gen_range(-2000..=2000);
        let disc = a * a - 4 * b;
        if disc != 1 && is_square_free_i64(disc) {
            break b;
        }
    };
    let disc = a * a - 4 * b;
    // c = a e (mod 2) and both are odd.
    let c = odd(rng, 50);
    let d = (c * c - e * e * disc) / 4;
    assert_eq!(4 * d, c * c - e * e * disc, "parity argument");
    // The roots of g over Z[x]/(f) are y = e x + (c - a e)/2 and
    // y = -e x + (c + a e)/2.
    let (m, k) = if rng.gen_bool(0.5) { (e, (c - a * e) / 2) } else { (-e, (c + a * e) / 2) };
    let j = BiPoly::monomial(z(1), 0, 1) - BiPoly::monomial(z(m), 1, 0) - BiPoly::constant(z(k));
    let problem = ExtensionProblem::new((), MonicQuadratic::new(z(a), z(b)), MonicQuadratic::new(z(c), z(d)), vec![j]);
    NonradicalInstance { a, b, c, d, m, k, e, problem }
}

fn nonradical_identities(inst: &NonradicalInstance) -> (BiPoly<Integer>, TElement<Integer>) {
    let x = BiPoly::x(&());
    let y = BiPoly::y(&());
    let f = x.clone() * x.clone() - x.scale(&z(inst.a)) + BiPoly::constant(z(inst.b));
    let g = y.clone() * y.clone() - y.scale(&z(inst.c)) + BiPoly::constant(z(inst.d));
    let e = z(inst.e);
    let h1 = y.clone() - x.scale(&e) - BiPoly::constant(z((inst.c - inst.a * inst.e) / 2));
    let h2 = y + x.scale(&e) - BiPoly::constant(z((inst.c + inst.a * inst.e) / 2));
    let e2f = f.scale(&(e.clone() * e));
    let exact = h1.clone() * h2.clone() - (g.clone() - e2f.clone());
    let pres = inst.problem.presentation();
    (exact, pres.reduce(&(h1 * h2 - (e2f + g))))
}

fn criterion_3(radical: &[RadicalInstance], nonradical: &[NonradicalInstance]) -> Outcome {
    let mut bad = Vec::new();
    for (k, inst) in radical.iter().enumerate() {
        if !radical_identity(inst.c, inst.d, inst.u).is_zero() {
            bad.push(format!("radical #{k}"));
        }
    }
    for (k, inst) in nonradical.iter().enumerate() {
        let (exact, reduced) = nonradical_identities(inst);
        if !exact.is_zero() || !reduced.is_zero() {
            bad.push(format!("nonradical #{k}"));
        }
    }
    let recorded = |c: &SplitCertificate<Integer>| c.identities.iter().all(|i| i.residual.is_zero());
    let certs_ok = radical
        .iter()
        .take(50)
        .all(|i| build_retraction(&i.problem, &BuildOptions::default()).is_ok_and(|c| recorded(&c[0])))
        && nonradical
            .iter()
            .take(50)
            .all(|i| build_retraction(&i.problem, &BuildOptions::default()).is_ok_and(|c| recorded(&c[0])));
    outcome(
        bad.is_empty() && certs_ok,
        format!(
            "{} radical and {} nonradical instances expand to exactly 0 (2 identities each for nonradical), recorded residuals zero: {certs_ok}{}",
            radical.len(),
            nonradical.len(),
            first(&bad)
        ),
    )
}

fn criterion_4(instances: &[NonradicalInstance]) -> Outcome {
    let mut failures = Vec::new();
    for (k, inst) in instances.iter().enumerate() {
        match build_retraction(&inst.problem, &BuildOptions::default()) {
            Ok(certs) => {
                let cert = &certs[0];
                // x -> z, y -> m z + k in Z[z]/(f): rho(y) = k, rho(xy) = -m b.
                let expected = [z(1), z(0), z(inst.k), z(-inst.m * inst.b)];
                let report = verify_certificate(&inst.problem, cert, None);
                if !report.passed() || cert.retraction != expected || !matches!(cert.case, CaseTag::Nonradical { .. }) {
                    failures.push(format!("#{k}: case {} rho {:?}", cert.case, cert.retraction));
                }
            }
            Err(e) => failures.push(format!("#{k}: {e}")),
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{}/{} built and verified, rho matches (1, 0, k, -m b) for J = y - m x - k{}",
            instances.len() - failures.len(),
            instances.len(),
            first(&failures)
        ),
    )
}

// ---------------------------------------------------------------------------
// Criterion 5: completing the square over Q[t] and F5[t].

/// Ring-specific constructors for the shift suite.
trait ShiftRing: Ufd {
    fn ring_ctx() -> Self::Ctx;
    /// Candidate roots for linear factors.
    fn roots() -> Vec<i64>;
    fn random_unit(rng: &mut ChaCha8Rng) -> Self;
    fn random_small(rng: &mut ChaCha8Rng) -> Self;
}

fn t_minus<R: Ufd>(ctx: &R::Ctx, r: i64) -> R {
    R::indeterminate(ctx).expect("polynomial ring") - R::from_i64(ctx, r)
}

impl ShiftRing for QPoly {
    fn ring_ctx() {}
    fn roots() -> Vec<i64> {
        (-6..=6).collect()
    }
    fn random_unit(rng: &mut ChaCha8Rng) -> Self {
        let num = nonzero(rng, 5);
        QPoly::constant((), Rational::new(BigInt::from(num), BigInt::from(rng.gen_range(1..=3))))
    }
    fn random_small(rng: &mut ChaCha8Rng) -> Self {
        let coeffs = (0..rng.gen_range(1..=3))
            .map(|_| Rational::new(BigInt::from(rng.gen_range(-9..=9)), BigInt::from(rng.gen_range(1..=4))))
            .collect();
        QPoly::from_coeffs((), coeffs)
    }
}

impl ShiftRing for FpPoly {
    fn ring_ctx() -> Self::Ctx {
        Fp::modulus(5).unwrap()
    }
    fn roots() -> Vec<i64> {
        (0..5).collect()
    }
    fn random_unit(rng: &mut ChaCha8Rng) -> Self {
        FpPoly::constant(Self::ring_ctx(), Fp::new(rng.gen_range(1..5), Self::ring_ctx()))
    }
    fn random_small(rng: &mut ChaCha8Rng) -> Self {
        let coeffs = (0..rng.gen_range(1..=3)).map(|_| Fp::new(rng.gen_range(0..5), Self::ring_ctx())).collect();
        FpPoly::from_coeffs(Self::ring_ctx(), coeffs)
    }
}

/// `unit * prod(t - r)` over the chosen roots; square-free by construction.
fn product_of_roots<R: ShiftRing>(rng: &mut ChaCha8Rng, roots: &[i64]) -> R {
    let ctx = R::ring_ctx();
    roots.iter().fold(R::random_unit(rng), |acc, &r| acc * t_minus::<R>(&ctx, r))
}

fn shift_instance<R: ShiftRing>(rng: &mut ChaCha8Rng) -> (ExtensionProblem<R>, ExtensionProblem<R>, [R; 2]) {
    let ctx = R::ring_ctx();
    let pool = R::roots();
    let pick = |rng: &mut ChaCha8Rng, n: usize, avoid: &[i64]| -> Vec<i64> {
        let mut out: Vec<i64> = Vec::new();
        while out.len() < n {
            let r = pool[rng.gen_range(0..pool.len())];
            if !out.contains(&r) && !avoid.contains(&r) {
                out.push(r);
            }
        }
        out
    };
    let sizes = [rng.gen_range(1..=3), rng.gen_range(0..=2), rng.gen_range(0..=2)];
    let u_roots = pick(rng, sizes[0], &[]);
    let c_roots = pick(rng, sizes[1], &[]);
    let d_roots = pick(rng, sizes[2], &c_roots);
    let u: R = product_of_roots(rng, &u_roots);
    let c: R = product_of_roots(rng, &c_roots);
    let d: R = product_of_roots(rng, &d_roots);
    let (ha, hc) = (R::random_small(rng), R::random_small(rng));
    let w = RadicalWitnesses { c: c.clone(), d: d.clone(), u: u.clone() };
    let r: u8 = rng.gen_range(0..=1);
    let gen = if rng.gen_bool(0.5) { w.f3(r) } else { w.f4(r) };
    let a1 = d.square() * u.clone();
    let a2 = c.square() * u;
    let direct = ExtensionProblem::new(
        ctx.clone(),
        MonicQuadratic::radical(a1.clone()),
        MonicQuadratic::radical(a2.clone()),
        vec![gen.clone()],
    );
    // x = X + ha, y = Y + hc.
    let two = R::from_i64(&ctx, 2);
    let f1 = MonicQuadratic::new(two.clone() * ha.clone(), ha.square() - a1);
    let f2 = MonicQuadratic::new(two * hc.clone(), hc.square() - a2);
    let shifted_gen = gen.translate(&-ha.clone(), &-hc.clone());
    let shifted = ExtensionProblem::new(ctx, f1, f2, vec![shifted_gen]);
    (shifted, direct, [ha, hc])
}

fn shift_suite<R: ShiftRing>(rng: &mut ChaCha8Rng, n: usize) -> Result<(), String> {
    for k in 0..n {
        let (shifted, direct, [ha, hc]) = shift_instance::<R>(rng);
        let name = shifted.descriptor();
        let cert = build_retraction(&shifted, &BuildOptions::default()).map_err(|e| format!("{name} #{k}: {e}"))?;
        let base =
            build_retraction(&direct, &BuildOptions::default()).map_err(|e| format!("{name} #{k} direct: {e}"))?;
        let (cert, base) = (&cert[0], &base[0]);
        if !verify_certificate(&shifted, cert, None).passed() {
            return Err(format!("{name} #{k}: shifted certificate fails verification"));
        }
        if !matches!(cert.case, CaseTag::CompletedSquare { .. }) {
            return Err(format!("{name} #{k}: case {}", cert.case));
        }
        // rho(x) = rho'(X) + ha, rho(y) = rho'(Y) + hc,
        // rho(xy) = rho'(XY) + hc rho'(X) + ha rho'(Y) + ha hc.
        let [one, rx, ry, rxy] = base.retraction.clone();
        let expected =
            [one, rx.clone() + ha.clone(), ry.clone() + hc.clone(), rxy + hc.clone() * rx + ha.clone() * ry + ha * hc];
        if cert.retraction != expected {
            return Err(format!(
                "{name} #{k}: rho {:?} differs from shifted direct rho {:?}",
                cert.retraction, expected
            ));
        }
    }
    Ok(())
}

fn criterion_5(rng: &mut ChaCha8Rng) -> Outcome {
    let q = shift_suite::<QPoly>(rng, SHIFT_INSTANCES_PER_RING);
    let p = shift_suite::<FpPoly>(rng, SHIFT_INSTANCES_PER_RING);
    let err: Vec<String> = [q, p].into_iter().filter_map(Result::err).collect();
    outcome(
        err.is_empty(),
        format!(
            "{} instances per ring over Q[t] and F5[t] verify and equal the direct radical rho composed with the shift{}",
            SHIFT_INSTANCES_PER_RING,
            first(&err)
        ),
    )
}

// ---------------------------------------------------------------------------
// Criterion 6: worked examples.

fn criterion_6() -> Outcome {
    let cases = [
        ("ring: Z\nf1: x^2 - 18\nf2: y^2 - 8\nJ: 3*y - 2*x", [1, 0, 0, 12]),
        ("ring: Z\nf1: x^2 - x - 1\nf2: y^2 - y - 1\nJ: y - x", [1, 0, 0, 1]),
        ("ring: Z\nf1: x^2 - x - 1\nf2: y^2 - y - 1\nJ: y + x - 1", [1, 0, 1, -1]),
    ];
    let mut got = Vec::new();
    let mut ok = true;
    for (text, rho) in cases {
        let AnyProblem::Integers(p) = parse_problem(text).expect("example parses") else { unreachable!() };
        let certs = build_retraction(&p, &BuildOptions::default());
        let hit =
            certs.as_ref().is_ok_and(|c| c[0].retraction == rho.map(z) && verify_certificate(&p, &c[0], None).passed());
        ok &= hit;
        got.push(match &certs {
            Ok(c) => format!("({})", c[0].retraction.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")),
            Err(e) => e.to_string(),
        });
    }
    outcome(ok, format!("rho = {} (expected (1, 0, 0, 12), (1, 0, 0, 1), (1, 0, 1, -1))", got.join(", ")))
}

// ---------------------------------------------------------------------------
// Criteria 7 and 9: command line.

fn cli(args: &[&str]) -> ExitCode {
    let argv = std::iter::once("splitforge").chain(args.iter().copied());
    run_with(argv, None, &mut Vec::new(), &mut Vec::new())
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn criterion_7(dir: &Path) -> Outcome {
    let mut total = 0;
    let mut false_passes = Vec::new();
    let problems = [
        ("radical", "ring: Z\nf1: x^2 - 18\nf2: y^2 - 8\nJ: 3*y - 2*x\n"),
        ("rational", "ring: Q[t]\nf1: x^2 - 2*t*x + (t^2 - t)\nf2: y^2 - 2*y + (1 - 4*t)\n"),
        ("rational-j", "ring: Q[t]\nf1: x^2 - 2*t*x + (t^2 - t)\nf2: y^2 - 2*y + (1 - 4*t)\nJ: y - 2*x + 2*t - 1\n"),
    ];
    for (name, text) in problems {
        let prob = dir.join(format!("{name}.prob"));
        let cert = dir.join(format!("{name}.json"));
        std::fs::write(&prob, text).unwrap();
        if cli(&["split", s(&prob), "-o", s(&cert)]) != ExitCode::Success {
            return outcome(false, format!("{name}: split failed"));
        }
        let CertificateFile::One(doc) = from_json(&std::fs::read_to_string(&cert).unwrap()).unwrap() else {
            return outcome(false, format!("{name}: expected one certificate"));
        };
        for (k, m) in plus_one_mutations(&doc).into_iter().enumerate() {
            total += 1;
            let path = dir.join(format!("{name}-mut-{k}.json"));
            std::fs::write(&path, to_json(&CertificateFile::One(m))).unwrap();
            if cli(&["verify", s(&prob), s(&path)]) != ExitCode::VerificationFailed {
                false_passes.push(format!("{name} mutation {k}"));
            }
        }
    }
    outcome(
        false_passes.is_empty(),
        format!("{} of {total} single-field +1 mutations exit 3{}", total - false_passes.len(), first(&false_passes)),
    )
}

fn criterion_9(dir: &Path) -> Outcome {
    let solvable =
        ["radical", "golden_diagonal", "golden_antidiagonal", "free", "rational_shift", "prime_field", "split_point"];
    let mut problems = Vec::new();
    for name in solvable {
        let prob = fixture(&format!("{name}.prob"));
        let text = std::fs::read_to_string(&prob).unwrap();
        let parsed = parse_problem(&text).unwrap();
        if parse_problem(&print_any(&parsed)).as_ref() != Ok(&parsed) {
            problems.push(format!("{name}: problem print/parse differs"));
        }
        let cert = dir.join(format!("{name}.json"));
        if cli(&["split", s(&prob), "-o", s(&cert)]) != ExitCode::Success {
            problems.push(format!("{name}: split"));
            continue;
        }
        if cli(&["verify", s(&prob), s(&cert)]) != ExitCode::Success {
            problems.push(format!("{name}: verify"));
        }
        let json = std::fs::read_to_string(&cert).unwrap();
        if to_json(&from_json(&json).unwrap()) != json {
            problems.push(format!("{name}: JSON not byte-stable"));
        }
    }
    let tampered = dir.join("tampered.json");
    let radical = fixture("radical.prob");
    cli(&["split", s(&radical), "-o", s(&tampered)]);
    let t = std::fs::read_to_string(&tampered).unwrap().replacen("\"12\"", "\"13\"", 1);
    std::fs::write(&tampered, t).unwrap();
    let exits = [
        (cli(&["no-such-command"]), ExitCode::Usage, "usage"),
        (cli(&["analyze", s(&fixture("err_syntax.prob"))]), ExitCode::Input, "syntax"),
        (cli(&["analyze", s(&fixture("err_wrong_degree.prob"))]), ExitCode::Input, "degree"),
        (cli(&["analyze", s(&fixture("err_non_monic.prob"))]), ExitCode::Input, "monic"),
        (cli(&["analyze", s(&fixture("err_unknown_ring.prob"))]), ExitCode::Input, "ring"),
        (cli(&["analyze", s(&fixture("err_even_prime.prob"))]), ExitCode::Input, "even prime"),
        (cli(&["analyze", s(&fixture("err_hypotheses.prob"))]), ExitCode::Input, "hypotheses"),
        (cli(&["analyze", s(&fixture("err_no_prime.prob"))]), ExitCode::Input, "no prime"),
        (cli(&["verify", s(&radical), s(&tampered)]), ExitCode::VerificationFailed, "tampered"),
        (cli(&["--factor-budget", "5", "analyze", s(&fixture("timeout.prob"))]), ExitCode::Timeout, "timeout"),
    ];
    for (got, want, name) in exits {
        if got != want {
            problems.push(format!("{name}: exit {} expected {}", got as i32, want as i32));
        }
    }
    outcome(
        problems.is_empty(),
        format!(
            "{} fixtures split, verify and reserialize identically; exit codes 1-4 from {} error fixtures{}",
            solvable.len(),
            exits.len(),
            first(&problems)
        ),
    )
}

// ---------------------------------------------------------------------------
// Criterion 8: domain test.

fn t_mul_oracle(
    f1: &MonicQuadratic<Integer>,
    f2: &MonicQuadratic<Integer>,
    s: &TElement<Integer>,
    t: &TElement<Integer>,
) -> bool {
    // Expand in Z[x, y] and reduce by hand with x^2 = a x - b, y^2 = c y - d.
    let pres = Presentation::new(f1.clone(), f2.clone());
    let prod = pres.to_bipoly(s) * pres.to_bipoly(t);
    let mut coords = [BigInt::from(0), BigInt::from(0), BigInt::from(0), BigInt::from(0)];
    let (a, b, c, d) = (big(f1.a()), big(f1.b()), big(f2.a()), big(f2.b()));
    // x^i reduces to (p_i, q_i) in {1, x}.
    let reduce = |n: u32, a: &BigInt, b: &BigInt| -> (BigInt, BigInt) {
        let (mut p, mut q) = (BigInt::from(1), BigInt::from(0));
        for _ in 0..n {
            // (p + q x) x = p x + q (a x - b)
            let np = -(q.clone() * b);
            let nq = p + q * a;
            p = np;
            q = nq;
        }
        (p, q)
    };
    for (&(i, j), coeff) in prod.iter() {
        let (px, qx) = reduce(i, &a, &b);
        let (py, qy) = reduce(j, &c, &d);
        let k = big(coeff);
        coords[0] += k.clone() * px.clone() * py.clone();
        coords[1] += k.clone() * qx.clone() * py;
        coords[2] += k.clone() * px * qy.clone();
        coords[3] += k * qx * qy;
    }
    coords.iter().all(|v| *v == BigInt::from(0))
}

fn criterion_8(rng: &mut ChaCha8Rng) -> Outcome {
    let mut counts = [0usize; 3];
    let mut failures = Vec::new();
    for k in 0..DOMAIN_INSTANCES {
        // Plant non-domains: every third instance has disc f2 = m^2 disc f1,
        // every fifth has f1 split.
        let (a, b) = if k % 5 == 0 {
            let (r1, r2) = (rng.gen_range(-6..=6), rng.gen_range(-6..=6));
            (r1 + r2, r1 * r2)
        } else {
            (rng.gen_range(-6..=6), rng.gen_range(-9..=9))
        };
        let d1 = a * a - 4 * b;
        let (c, d) = if k % 3 == 0 {
            let m = nonzero(rng, 3);
            // c^2 - 4d = m^2 d1 with c = m a keeps d integral.
            (m * a, (m * a * m * a - m * m * d1) / 4)
        } else {
            (rng.gen_range(-6..=6), rng.gen_range(-9..=9))
        };
        let f1 = MonicQuadratic::new(z(a), z(b));
        let f2 = MonicQuadratic::new(z(c), z(d));
        let pres = Presentation::new(f1.clone(), f2.clone());
        let d2 = c * c - 4 * d;
        let f1_splits = is_square_i64(d1);
        let f2_splits_in_e = is_square_i64(d2) || is_square_i64(d1 * d2);
        let check_pair = |pair: &(TElement<Integer>, TElement<Integer>)| {
            !pair.0.is_zero()
                && !pair.1.is_zero()
                && pres.mul(&pair.0, &pair.1).is_zero()
                && t_mul_oracle(&f1, &f2, &pair.0, &pair.1)
        };
        let ok = match domain_test(&pres) {
            DomainVerdict::Domain => {
                counts[0] += 1;
                !f1_splits && !f2_splits_in_e
            }
            DomainVerdict::NonDomain { pair, .. } => {
                counts[1] += 1;
                !f1_splits && f2_splits_in_e && check_pair(&pair)
            }
            DomainVerdict::ReducibleF1 { pair, .. } => {
                counts[2] += 1;
                f1_splits && check_pair(&pair)
            }
        };
        if !ok {
            failures.push(format!("#{k}: f1 = x^2 - ({a})x + ({b}), f2 = y^2 - ({c})y + ({d})"));
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{} domains with no square witness, {} non-domains and {} split f1 with nonzero pairs multiplying to 0{}",
            counts[0],
            counts[1],
            counts[2],
            first(&failures)
        ),
    )
}

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let radical: Vec<RadicalInstance> = (0..RADICAL_INSTANCES).map(|_| radical_instance(&mut rng)).collect();
    let nonradical: Vec<NonradicalInstance> =
        (0..NONRADICAL_INSTANCES).map(|_| nonradical_instance(&mut rng)).collect();
    let dir = tempfile::tempdir().expect("temporary directory");

    let results: Vec<(u32, &str, Outcome)> = vec![
        (1, "radical suite", criterion_1(&radical)),
        (2, "membership oracle", criterion_2(&radical, &mut ChaCha8Rng::seed_from_u64(0x5eed_0002))),
        (3, "symbolic identities", criterion_3(&radical, &nonradical)),
        (4, "nonradical suite", criterion_4(&nonradical)),
        (5, "completed squares", criterion_5(&mut ChaCha8Rng::seed_from_u64(0x5eed_0005))),
        (6, "worked examples", criterion_6()),
        (7, "mutation robustness", criterion_7(dir.path())),
        (8, "domain test", criterion_8(&mut ChaCha8Rng::seed_from_u64(0x5eed_0008))),
        (9, "command line", criterion_9(dir.path())),
    ];

    let mut all = true;
    for (n, name, o) in &results {
        all &= o.passed;
        println!("criterion {n} [{}] {name}: {}", if o.passed { "PASS" } else { "FAIL" }, o.detail);
    }
    if !all {
        std::process::exit(1);
    }
}
