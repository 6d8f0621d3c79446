//! Deterministic Miller-Rabin for the full `u64` range.

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

// Jim Sinclair's base set; exact for every n < 2^64.
const WITNESSES: [u64; 7] = [2, 325, 9375, 28178, 450775, 9780504, 1795265022];

const SMALL_PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Primality for any `u64`. Deterministic: no error probability.
pub fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        if m == p {
            return true;
        }
        if m.is_multiple_of(p) {
            return false;
        }
    }
    if m < 41 * 41 {
        return true;
    }

    let d = (m - 1) >> (m - 1).trailing_zeros();
    let s = (m - 1).trailing_zeros();
    'witness: for &w in &WITNESSES {
        let a = w % m;
        if a == 0 {
            continue;
        }
        let mut x = pow_mod(a, d, m);
        if x == 1 || x == m - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, m);
            if x == m - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Least prime strictly greater than `n`, if one fits in a `u64`.
pub fn next_prime(n: u64) -> Option<u64> {
    let mut c = n.checked_add(1)?;
    loop {
        if is_prime(c) {
            return Some(c);
        }
        c = c.checked_add(1)?;
    }
}
