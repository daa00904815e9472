use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use splitforge_cli::document::{from_doc, from_json, to_doc, to_json, CertificateFile};
use splitforge_cli::parser::{parse_problem, print_any, print_problem, AnyProblem};
use splitforge_core::cert::ExtensionProblem;
use splitforge_core::poly::MonicQuadratic;
use splitforge_core::splitting::{build_retraction, BuildOptions};
use splitforge_core::ufd::{Fp, FpPoly, Integer, QPoly, Ufd};
use splitforge_core::verify::sample_bipoly;

fn random_problem<R: Ufd>(ctx: R::Ctx, seed: u64, size: u32, gens: usize) -> ExtensionProblem<R> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut q = || MonicQuadratic::new(R::sample(&ctx, &mut rng, size), R::sample(&ctx, &mut rng, size));
    let (f1, f2) = (q(), q());
    let j = (0..gens).map(|_| sample_bipoly(&ctx, &mut rng, 3, size)).collect();
    ExtensionProblem::new(ctx, f1, f2, j)
}

fn round_trips(p: AnyProblem) {
    let text = print_any(&p);
    let back = parse_problem(&text).unwrap_or_else(|e| panic!("{e}\n{text}"));
    assert_eq!(back, p);
    assert_eq!(print_any(&back), text);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn integer_problems_round_trip(seed in any::<u64>(), gens in 0usize..3) {
        round_trips(AnyProblem::Integers(random_problem::<Integer>((), seed, 1_000_000_000, gens)));
    }

    #[test]
    fn rational_problems_round_trip(seed in any::<u64>(), gens in 0usize..3) {
        round_trips(AnyProblem::Rational(random_problem::<QPoly>((), seed, 3, gens)));
    }

    #[test]
    fn prime_problems_round_trip(seed in any::<u64>(), gens in 0usize..3, p in prop::sample::select(vec![3u64, 5, 7, 101, 1_000_003])) {
        let ctx = Fp::modulus(p).unwrap();
        round_trips(AnyProblem::Prime(random_problem::<FpPoly>(ctx, seed, 3, gens)));
    }

    #[test]
    fn radical_certificates_are_byte_stable(c in 1i64..200, d in 1i64..200, u in prop::sample::select(vec![-5i64, 2, 3, 6, 7, 10, 15])) {
        prop_assume!(num_integer::gcd(c, d) == 1);
        let z = Integer::new;
        let text = format!("ring: Z\nf1: x^2 - ({})\nf2: y^2 - ({})\nJ: {d}*y - {c}*x", d * d * u, c * c * u);
        let AnyProblem::Integers(p) = parse_problem(&text).unwrap() else { unreachable!() };
        prop_assert_eq!(&p.f1, &MonicQuadratic::radical(z(d * d * u)));
        prop_assert!(parse_problem(&print_problem(&p)).is_ok());
        let opts = BuildOptions { all_primes: true, ..BuildOptions::default() };
        let certs = build_retraction(&p, &opts).unwrap();
        let json = to_json(&CertificateFile::Many(certs.iter().map(to_doc).collect()));
        let docs = from_json(&json).unwrap().into_vec();
        for (doc, cert) in docs.iter().zip(&certs) {
            prop_assert_eq!(&from_doc::<Integer>(&(), doc).unwrap(), cert);
        }
        prop_assert_eq!(to_json(&CertificateFile::Many(docs)), json);
    }
}
