//! Factorization of square-free polynomials.
//!
//! Over `F_p`: distinct-degree factorization followed by Cantor-Zassenhaus
//! equal-degree splitting. Over `Q`: Zassenhaus, i.e. factor modulo a
//! suitable prime, Hensel-lift to a modulus above the Mignotte bound and
//! recombine lifted factors by trial division.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::coeff::{CoeffField, Fp, OddPrime, Rational};
use super::field_poly::FieldPoly;
use super::{ArithError, Meter, Ring};

type FpPoly = FieldPoly<Fp>;
type QPoly = FieldPoly<Rational>;

const SPLIT_SEED: u64 = 0x5eed_f00d;

pub(crate) fn factor_squarefree_fp(f: &FpPoly, meter: &mut Meter) -> Result<Vec<FpPoly>, ArithError> {
    let p = f.ctx().get();
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
    let mut out = Vec::new();
    for (g, d) in distinct_degree(f) {
        equal_degree(&g, d, p, &mut rng, meter, &mut out)?;
    }
    Ok(out)
}

fn distinct_degree(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let p = BigUint::from(f.ctx().get());
    let x = FpPoly::var(f.ctx());
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = h.pow_mod(&p, &rest);
        let g = rest.gcd_monic(&(h.clone() - x.clone()));
        if g.degree().unwrap_or(0) > 0 {
            rest = rest.div_rem(&g).expect("nonzero").0;
            h = h.rem(&rest);
            out.push((g, d));
        }
        d += 1;
    }
    if let Some(deg) = rest.degree().filter(|&k| k > 0) {
        out.push((rest, deg));
    }
    out
}

fn equal_degree(
    g: &FpPoly,
    d: usize,
    p: u64,
    rng: &mut ChaCha8Rng,
    meter: &mut Meter,
    out: &mut Vec<FpPoly>,
) -> Result<(), ArithError> {
    let n = g.degree().unwrap_or(0);
    if n == d {
        out.push(g.clone());
        return Ok(());
    }
    let exp = (BigUint::from(p).pow(d as u32) - 1u32) >> 1;
    let one = FpPoly::one(&g.ctx());
    loop {
        meter.charge(1)?;
        let a = random_below(g, rng);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = a.pow_mod(&exp, g) - one.clone();
        let c = g.gcd_monic(&b);
        let k = c.degree().unwrap_or(0);
        if k > 0 && k < n {
            let other = g.div_rem(&c).expect("nonzero").0;
            equal_degree(&c, d, p, rng, meter, out)?;
            return equal_degree(&other, d, p, rng, meter, out);
        }
    }
}

fn random_below(g: &FpPoly, rng: &mut ChaCha8Rng) -> FpPoly {
    let m = g.ctx();
    let n = g.degree().unwrap_or(0);
    let coeffs = (0..n).map(|_| Fp::sample(&m, rng, 0)).collect();
    FpPoly::from_coeffs(m, coeffs)
}

/// Integer polynomial, lowest degree first.
type IntPoly = Vec<BigInt>;

fn trim(mut a: IntPoly) -> IntPoly {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

fn int_mul(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    trim(c)
}

fn int_mod(a: &[BigInt], m: &BigInt) -> IntPoly {
    trim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn to_fp(a: &[BigInt], p: OddPrime) -> FpPoly {
    FpPoly::from_coeffs(p, a.iter().map(|c| Fp::from_bigint(&p, c)).collect())
}

fn from_fp(a: &FpPoly) -> IntPoly {
    a.coeffs().iter().map(|c| BigInt::from(c.value())).collect()
}

/// Lifts `target ≡ g*h (mod p)`, `g` monic and coprime to `h`, to
/// `target ≡ G*H (mod p^k)` with `G` monic.
fn hensel_two(target: &[BigInt], g: &FpPoly, h: &FpPoly, p: u64, k: u32) -> (IntPoly, IntPoly) {
    let pk = BigInt::from(p).pow(k);
    let pm = g.ctx();
    let (one, s, t) = g.xgcd(h);
    debug_assert_eq!(one.degree(), Some(0), "factors must be coprime mod p");
    let mut big_g = from_fp(g);
    let mut big_h = from_fp(h);
    let mut pj = BigInt::from(p);
    for _ in 1..k {
        let prod = int_mul(&big_g, &big_h);
        let len = target.len().max(prod.len());
        let diff: IntPoly = (0..len)
            .map(|i| {
                let a = target.get(i).cloned().unwrap_or_default();
                let b = prod.get(i).cloned().unwrap_or_default();
                (a - b).mod_floor(&pk)
            })
            .collect();
        debug_assert!(diff.iter().all(|c| (c % &pj).is_zero()));
        let e = to_fp(&diff.iter().map(|c| c / &pj).collect::<Vec<_>>(), pm);
        let (q, r) = (t.clone() * e.clone()).div_rem(g).expect("monic");
        let dh = s.clone() * e + q * h.clone();
        big_g = add_scaled(&big_g, &from_fp(&r), &pj, &pk);
        big_h = add_scaled(&big_h, &from_fp(&dh), &pj, &pk);
        pj *= p;
    }
    (big_g, big_h)
}

fn add_scaled(a: &[BigInt], b: &[BigInt], scale: &BigInt, m: &BigInt) -> IntPoly {
    let len = a.len().max(b.len());
    let sum: IntPoly = (0..len)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_default();
            let y = b.get(i).cloned().unwrap_or_default();
            x + y * scale
        })
        .collect();
    int_mod(&sum, m)
}

fn symmetric(a: &[BigInt], m: &BigInt) -> IntPoly {
    let half = m >> 1;
    trim(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn primitive(a: IntPoly) -> IntPoly {
    let c = content(&a);
    let sign = if a.last().is_some_and(Signed::is_negative) { -BigInt::one() } else { BigInt::one() };
    if c.is_zero() {
        return a;
    }
    a.into_iter().map(|x| &x / &c * &sign).collect()
}

fn int_to_q(a: &[BigInt]) -> QPoly {
    QPoly::from_coeffs((), a.iter().map(|c| Rational(BigRational::from_integer(c.clone()))).collect())
}

/// Exact quotient `a / b` over `Z`, if it exists.
fn int_exact_div(a: &[BigInt], b: &[BigInt]) -> Option<IntPoly> {
    let (q, r) = int_to_q(a).div_rem(&int_to_q(b)).ok()?;
    if !r.is_zero() {
        return None;
    }
    q.coeffs().iter().map(|c| c.0.is_integer().then(|| c.0.to_integer())).collect()
}

fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut idx: Vec<usize> = (0..k).collect();
    let mut done = k > n;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let current = idx.clone();
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                done = true;
                break;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(current)
    })
}

pub(crate) fn factor_squarefree_rational(f: &QPoly, meter: &mut Meter) -> Result<Vec<QPoly>, ArithError> {
    if f.degree().unwrap_or(0) <= 1 {
        return Ok(vec![f.monic()]);
    }
    let den_lcm = f.coeffs().iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let big_f = primitive(
        f.coeffs().iter().map(|c| (&c.0 * BigRational::from_integer(den_lcm.clone())).to_integer()).collect(),
    );
    let n = big_f.len() - 1;
    let lc = big_f[n].clone();

    // A prime keeping the degree and square-freeness.
    let mut p = 3u64;
    let (pm, modp) = loop {
        if let Some(pm) = Fp::modulus(p) {
            if !(&lc % p).is_zero() {
                let fp = to_fp(&big_f, pm);
                if fp.gcd_monic(&fp.derivative()).degree() == Some(0) {
                    break (pm, fp);
                }
            }
        }
        p += 2;
    };
    let local = factor_squarefree_fp(&modp.monic(), meter)?;
    if local.len() == 1 {
        return Ok(vec![f.monic()]);
    }

    // Coefficients of any factor (times lc) are below lc * 2^n * |f|_2.
    let norm2 = big_f.iter().map(|c| c * c).fold(BigInt::zero(), |a, b| a + b).sqrt() + 1;
    let bound = lc.abs() * (BigInt::one() << n) * norm2 * 2;
    let mut k = 1u32;
    let mut pk = BigInt::from(p);
    while pk <= bound {
        pk *= p;
        k += 1;
    }

    // Lift the local factors one at a time against the running cofactor.
    let lc_mod_p = Fp::from_bigint(&pm, &lc);
    let mut lifted = Vec::with_capacity(local.len());
    let mut cofactor_target = int_mod(&big_f, &pk);
    for i in 0..local.len() - 1 {
        let rest = local[i + 1..].iter().fold(FpPoly::constant(pm, lc_mod_p), |acc, g| acc * g.clone());
        let (big_g, big_h) = hensel_two(&cofactor_target, &local[i], &rest, p, k);
        lifted.push(big_g);
        cofactor_target = big_h;
    }
    let lc_inv = lc.mod_floor(&pk).modinv(&pk).expect("p does not divide lc");
    lifted.push(int_mod(&cofactor_target.iter().map(|c| c * &lc_inv).collect::<Vec<_>>(), &pk));

    // Recombination.
    let mut remaining: Vec<IntPoly> = lifted;
    let mut current = big_f;
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= remaining.len() {
        let mut hit = None;
        for subset in combinations(remaining.len(), size) {
            meter.charge(1)?;
            let cur_lc = current.last().cloned().expect("nonzero");
            let prod = subset.iter().fold(vec![cur_lc], |acc, &i| int_mod(&int_mul(&acc, &remaining[i]), &pk));
            let candidate = primitive(symmetric(&prod, &pk));
            if let Some(q) = int_exact_div(&current, &candidate) {
                hit = Some((subset, candidate, q));
                break;
            }
        }
        match hit {
            Some((subset, candidate, q)) => {
                found.push(candidate);
                current = q;
                remaining =
                    remaining.into_iter().enumerate().filter(|(i, _)| !subset.contains(i)).map(|(_, g)| g).collect();
            }
            None => size += 1,
        }
    }
    if current.len() > 1 {
        found.push(current);
    }
    Ok(found.iter().map(|g| int_to_q(g).monic()).collect())
}
