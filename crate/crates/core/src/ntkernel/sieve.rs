//! Prime enumeration in bounded windows.

use std::sync::OnceLock;

use super::primality::is_prime;
use crate::error::{Error, Result};

/// Maximum accepted `b - a` for [`primes_in`].
pub const DEFAULT_WINDOW_LIMIT: u64 = 100_000_000;

const BASE_LIMIT: u64 = 1 << 20;

// Sieving pays off only while the base primes reach sqrt(b).
const SIEVE_CEILING: u64 = BASE_LIMIT * BASE_LIMIT;

const SEGMENT: u64 = 1 << 18;

fn base_primes() -> &'static [u64] {
    static BASE: OnceLock<Vec<u64>> = OnceLock::new();
    BASE.get_or_init(|| simple_sieve(BASE_LIMIT))
}

/// Primes `<= limit` by the sieve of Eratosthenes.
pub fn simple_sieve(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut i = 2;
    while i * i <= n {
        if !composite[i] {
            for j in (i * i..=n).step_by(i) {
                composite[j] = true;
            }
        }
        i += 1;
    }
    (2..=n).filter(|&i| !composite[i]).map(|i| i as u64).collect()
}

/// All primes in `[a, b]`, ascending.
pub fn primes_in(a: u64, b: u64) -> Result<Vec<u64>> {
    primes_in_with_limit(a, b, DEFAULT_WINDOW_LIMIT)
}

pub fn primes_in_with_limit(a: u64, b: u64, limit: u64) -> Result<Vec<u64>> {
    if a > b {
        return Ok(Vec::new());
    }
    let width = b - a;
    if width > limit {
        return Err(Error::WindowTooLarge {
            what: "prime",
            size: width,
            limit,
        });
    }
    // Sparse windows high up: test each odd candidate.
    if b > SIEVE_CEILING || width < 64 {
        return Ok((a..=b).filter(|&m| is_prime(m)).collect());
    }
    Ok(segmented(a.max(2), b))
}

fn segmented(a: u64, b: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let base = base_primes();
    let mut lo = a;
    loop {
        let hi = b.min(lo.saturating_add(SEGMENT - 1));
        let mut composite = vec![false; (hi - lo + 1) as usize];
        for &p in base {
            if p * p > hi {
                break;
            }
            let first = (p * p).max(lo.div_ceil(p) * p);
            let mut m = first;
            while m <= hi {
                composite[(m - lo) as usize] = true;
                m += p;
            }
        }
        out.extend(
            composite
                .iter()
                .enumerate()
                .filter(|(_, &c)| !c)
                .map(|(i, _)| lo + i as u64),
        );
        if hi == b {
            break;
        }
        lo = hi + 1;
    }
    out
}
