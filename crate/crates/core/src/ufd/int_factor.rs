//! Integer factorization: trial division below 10^6, then Pollard rho
//! (Brent's cycle detection) on the cofactor, metered by a step budget.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::coeff::pow_mod;
use super::{ArithError, FactorBudget, Meter};

const TRIAL_LIMIT: u32 = 1_000_000;

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_LIMIT as usize;
        let mut composite = vec![false; n + 1];
        let mut out = Vec::new();
        for i in 2..=n {
            if !composite[i] {
                out.push(i as u32);
                let mut j = i * i;
                while j <= n {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        out
    })
}

const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic Miller-Rabin for 64-bit inputs.
pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((u128::from(x) * u128::from(x)) % u128::from(n)) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Miller-Rabin primality. Exact below 2^64 and below 3.3 * 10^24 (the first
/// twelve prime bases are deterministic there); probabilistic above, with
/// twenty-four bases.
pub fn is_probable_prime(n: &BigInt) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    if n.sign() != num_bigint::Sign::Plus {
        return false;
    }
    let one = BigInt::one();
    let n_minus_1 = n - &one;
    let mut d = n_minus_1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    let bases = small_primes().iter().take(24);
    'witness: for &a in bases {
        let a = BigInt::from(a);
        if (n % &a).is_zero() {
            return false;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Factors `n >= 1` into primes with multiplicity (unsorted, may repeat).
pub(crate) fn factor_positive(n: &BigInt, budget: &FactorBudget) -> Result<Vec<(BigInt, u32)>, ArithError> {
    let mut out = Vec::new();
    let mut m = n.clone();
    if let Some(small) = m.to_u64() {
        let mut v = small;
        for &p in small_primes() {
            let p = u64::from(p);
            if p * p > v {
                break;
            }
            let mut e = 0;
            while v % p == 0 {
                v /= p;
                e += 1;
            }
            if e > 0 {
                out.push((BigInt::from(p), e));
            }
        }
        m = BigInt::from(v);
    } else {
        for &p in small_primes() {
            let pb = BigInt::from(p);
            if &pb * &pb > m {
                break;
            }
            let mut e = 0;
            while (&m % p).is_zero() {
                m /= p;
                e += 1;
            }
            if e > 0 {
                out.push((pb, e));
            }
        }
    }
    if m.is_one() {
        return Ok(out);
    }
    let limit = BigInt::from(TRIAL_LIMIT);
    if m < &limit * &limit {
        out.push((m, 1));
        return Ok(out);
    }
    let mut meter = Meter::new(budget);
    split_large(m, &mut meter, &mut out)?;
    Ok(out)
}

fn split_large(n: BigInt, meter: &mut Meter, out: &mut Vec<(BigInt, u32)>) -> Result<(), ArithError> {
    if n.is_one() {
        return Ok(());
    }
    if is_probable_prime(&n) {
        out.push((n, 1));
        return Ok(());
    }
    let r = n.sqrt();
    if &r * &r == n {
        let mut sub = Vec::new();
        split_large(r, meter, &mut sub)?;
        out.extend(sub.into_iter().map(|(p, e)| (p, 2 * e)));
        return Ok(());
    }
    let mut c = 1u64;
    let d = loop {
        if let Some(d) = brent_rho(&n, c, meter)? {
            break d;
        }
        c += 1;
    };
    let cofactor = &n / &d;
    split_large(d, meter, out)?;
    split_large(cofactor, meter, out)
}

/// One run of Pollard rho with `x -> x^2 + c`; `None` when the run
/// degenerates and a different `c` is needed.
fn brent_rho(n: &BigInt, c: u64, meter: &mut Meter) -> Result<Option<BigInt>, ArithError> {
    let c = BigInt::from(c);
    let step = |v: &BigInt| (v * v + &c) % n;
    let batch = 128u64;
    let mut y = BigInt::from(2);
    let mut x = y.clone();
    let mut ys = y.clone();
    let mut q = BigInt::one();
    let mut g = BigInt::one();
    let mut r = 1u64;
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = step(&y);
        }
        meter.charge(r)?;
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            let steps = batch.min(r - k);
            for _ in 0..steps {
                y = step(&y);
                q = (q * (&x - &y).abs()) % n;
            }
            meter.charge(steps)?;
            g = q.gcd(n);
            k += steps;
        }
        r *= 2;
    }
    if &g == n {
        loop {
            ys = step(&ys);
            meter.charge(1)?;
            g = (&x - &ys).abs().gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    Ok((&g != n).then_some(g))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn product(f: &[(BigInt, u32)]) -> BigInt {
        f.iter().fold(BigInt::one(), |acc, (p, e)| acc * p.pow(*e))
    }

    #[test]
    fn u64_primality() {
        let primes: Vec<u64> = (0..200).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(&primes[..10], &[2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(3_215_031_751)); // strong pseudoprime to 2, 3, 5, 7
        assert!(is_prime_u64(18_446_744_073_709_551_557));
    }

    #[test]
    fn big_primality() {
        let m61: BigInt = (BigInt::one() << 61) - 1;
        let m89: BigInt = (BigInt::one() << 89) - 1;
        assert!(is_probable_prime(&m89));
        assert!(!is_probable_prime(&(&m61 * &m89)));
    }

    #[test]
    fn rho_splits_semiprime() {
        // two primes above the trial-division limit
        let p = BigInt::from(1_000_003u64);
        let q = BigInt::from(1_000_033u64);
        let n = &p * &q * &q;
        let f = factor_positive(&n, &FactorBudget::default()).unwrap();
        assert_eq!(product(&f), n);
        assert!(f.iter().all(|(p, _)| is_probable_prime(p)));
    }

    #[test]
    fn rho_respects_budget() {
        let p: BigInt = (BigInt::one() << 61) - 1;
        let q: BigInt = (BigInt::one() << 31) - 1;
        let n = p * q;
        let r = factor_positive(&n, &FactorBudget::new(10));
        assert_eq!(r, Err(ArithError::FactorizationTimeout { budget: 10 }));
    }
}
