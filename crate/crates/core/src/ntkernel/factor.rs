//! Factorization of 64-bit integers: trial division, then Pollard-Brent rho.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::primality::{is_prime, mul_mod};
use crate::error::{Error, Result};

const TRIAL_BOUND: u64 = 1 << 10;

/// Prime factorization with strictly increasing primes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    fn from_primes(mut primes: Vec<u64>) -> Self {
        primes.sort_unstable();
        let mut factors: Vec<(u64, u32)> = Vec::new();
        for p in primes {
            match factors.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => factors.push((p, 1)),
            }
        }
        Self { factors }
    }

    /// `(prime, exponent)` pairs, ascending by prime.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn largest(&self) -> Option<u64> {
        self.factors.last().map(|&(p, _)| p)
    }

    /// Product of `prime^exponent`; 1 for the empty factorization.
    pub fn value(&self) -> u128 {
        self.factors
            .iter()
            .map(|&(p, e)| (p as u128).pow(e))
            .product()
    }
}

/// Complete prime factorization of `m >= 2`.
pub fn factorize(m: u64) -> Result<Factorization> {
    if m < 2 {
        return Err(Error::BelowMinimum {
            what: "factorization input",
            min: 2,
            got: m,
        });
    }
    let mut primes = Vec::new();
    let mut rest = m;
    let tz = rest.trailing_zeros();
    primes.extend(std::iter::repeat_n(2, tz as usize));
    rest >>= tz;

    let mut d = 3;
    while d < TRIAL_BOUND && d * d <= rest {
        while rest.is_multiple_of(d) {
            primes.push(d);
            rest /= d;
        }
        d += 2;
    }
    if rest > 1 {
        if rest < TRIAL_BOUND * TRIAL_BOUND {
            // No factor below TRIAL_BOUND and rest < TRIAL_BOUND^2.
            primes.push(rest);
        } else {
            split_into(rest, &mut primes);
        }
    }
    Ok(Factorization::from_primes(primes))
}

fn split_into(m: u64, out: &mut Vec<u64>) {
    if m == 1 {
        return;
    }
    if is_prime(m) {
        out.push(m);
        return;
    }
    let d = find_divisor(m);
    split_into(d, out);
    split_into(m / d, out);
}

/// A nontrivial divisor of an odd composite `m`.
fn find_divisor(m: u64) -> u64 {
    for c in 1..64 {
        if let Some(d) = brent(m, c) {
            return d;
        }
    }
    // Deterministic fallback; never reached in practice.
    let mut d = 3;
    while !m.is_multiple_of(d) {
        d += 2;
    }
    d
}

fn brent(m: u64, c: u64) -> Option<u64> {
    let f = |x: u64| (mul_mod(x, x, m) + c) % m;
    let batch = 128u64;
    let mut y = 2u64;
    let mut x = y;
    let mut ys = y;
    let mut g = 1u64;
    let mut q = 1u64;
    let mut r = 1u64;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..batch.min(r - k) {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), m);
            }
            g = q.gcd(&m);
            k += batch;
        }
        r <<= 1;
        if r > 1 << 24 {
            return None;
        }
    }
    if g == m {
        // Batch overshot; replay one step at a time.
        loop {
            ys = f(ys);
            g = x.abs_diff(ys).gcd(&m);
            if g > 1 {
                break;
            }
        }
    }
    (g != m).then_some(g)
}

/// `P(m)`, the largest prime factor of `m >= 2`.
pub fn largest_prime_factor(m: u64) -> Result<u64> {
    Ok(factorize(m)?.largest().expect("m >= 2 has a prime factor"))
}

/// Largest divisor of `m` whose prime factors are all `<= r`.
pub fn smooth_divisor(r: u64, m: u64) -> u64 {
    if m <= 1 || r < 2 {
        return 1;
    }
    let mut s = 1u64;
    if r < TRIAL_BOUND {
        let mut rest = m;
        let mut p = 2;
        while p <= r {
            while rest.is_multiple_of(p) {
                rest /= p;
                s *= p;
            }
            p += if p == 2 { 1 } else { 2 };
        }
        return s;
    }
    for &(p, e) in factorize(m).expect("m >= 2").factors() {
        if p <= r {
            s *= p.pow(e);
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn trial_factor(mut m: u64) -> Vec<(u64, u32)> {
        let mut out: Vec<(u64, u32)> = Vec::new();
        let mut d = 2;
        while d * d <= m {
            let mut e = 0;
            while m.is_multiple_of(d) {
                m /= d;
                e += 1;
            }
            if e > 0 {
                out.push((d, e));
            }
            d += 1;
        }
        if m > 1 {
            out.push((m, 1));
        }
        out
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(360).unwrap().factors(), &[(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(97).unwrap().factors(), &[(97, 1)]);
        assert_eq!(trial_factor(1_048_575), vec![(3, 1), (5, 2), (11, 1), (31, 1), (41, 1)]);
        assert_eq!(
            factorize(1_048_575).unwrap().factors(),
            &[(3, 1), (5, 2), (11, 1), (31, 1), (41, 1)]
        );
        assert!(factorize(1).is_err());
        assert!(factorize(0).is_err());
    }

    #[test]
    fn factorize_hard_semiprimes() {
        let p = 4_294_967_291u64; // largest prime below 2^32
        let q = 4_294_967_279u64;
        assert_eq!(factorize(p * q).unwrap().factors(), &[(q, 1), (p, 1)]);
        let f = factorize(u64::MAX).unwrap();
        assert_eq!(f.value(), u64::MAX as u128);
        assert_eq!(f.primes().collect::<Vec<_>>(), vec![3, 5, 17, 257, 641, 65537, 6_700_417]);
        assert_eq!(factorize(1 << 63).unwrap().factors(), &[(2, 63)]);
    }

    #[test]
    fn factorize_reassembles_random_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..10_000 {
            let m = rng.gen_range(2..1u64 << 40);
            let f = factorize(m).unwrap();
            assert_eq!(f.value(), m as u128);
            assert!(f.factors().windows(2).all(|w| w[0].0 < w[1].0));
            assert!(f.factors().iter().all(|&(p, e)| e >= 1 && is_prime(p)));
        }
    }

    #[test]
    fn largest_prime_factor_examples() {
        assert_eq!(largest_prime_factor(12), Ok(3));
        assert_eq!(largest_prime_factor(97), Ok(97));
        assert_eq!(largest_prime_factor(1001), Ok(13));
        assert!(largest_prime_factor(1).is_err());
    }

    #[test]
    fn smooth_divisor_examples() {
        assert_eq!(smooth_divisor(3, 360), 72);
        assert_eq!(smooth_divisor(2, 360), 8);
        for m in 1..50 {
            assert_eq!(smooth_divisor(1, m), 1);
        }
        assert_eq!(smooth_divisor(5000, 1), 1);
        assert_eq!(smooth_divisor(2000, 1999 * 2003 * 4), 1999 * 4);
    }

    proptest! {
        #[test]
        fn largest_prime_factor_is_max_of_factorization(m in 2u64..u64::MAX) {
            let f = factorize(m).unwrap();
            prop_assert_eq!(largest_prime_factor(m).unwrap(), f.primes().max().unwrap());
        }

        #[test]
        fn smooth_divisor_properties(r in 1u64..3000, m in 1u64..1_000_000_000_000) {
            let s = smooth_divisor(r, m);
            prop_assert_eq!(m % s, 0);
            let cofactor = m / s;
            if cofactor > 1 {
                let smallest = factorize(cofactor).unwrap().primes().next().unwrap();
                prop_assert!(smallest > r);
            }
            prop_assert_eq!(m % smooth_divisor(r + 1, m), 0);
            prop_assert!(smooth_divisor(r + 1, m).is_multiple_of(s));
        }
    }
}
