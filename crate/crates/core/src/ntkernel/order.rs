use serde::{Deserialize, Serialize};

use super::factor::{factorize, Factorization};
use super::primality::{is_prime, pow_mod};
use crate::error::{Error, Result};

/// An odd prime with its order of 2 and the factorization of `p - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeRecord {
    pub p: u64,
    pub order2: u64,
    pub pminus1: Factorization,
}

impl PrimeRecord {
    pub fn new(p: u64) -> Result<Self> {
        check_odd_prime(p)?;
        let pminus1 = factorize(p - 1)?;
        let order2 = order_from_factorization(p, &pminus1);
        Ok(Self { p, order2, pminus1 })
    }

    /// Re-checks minimality of the order against `p - 1`'s factorization.
    pub fn is_consistent(&self) -> bool {
        is_prime(self.p)
            && self.p > 2
            && self.pminus1.value() == (self.p - 1) as u128
            && (self.p - 1).is_multiple_of(self.order2)
            && pow_mod(2, self.order2, self.p) == 1
            && self
                .pminus1
                .primes()
                .filter(|q| self.order2.is_multiple_of(*q))
                .all(|q| pow_mod(2, self.order2 / q, self.p) != 1)
    }
}

fn check_odd_prime(p: u64) -> Result<()> {
    if p == 2 {
        return Err(Error::EvenPrime);
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

/// Multiplicative order of 2 modulo an odd prime `p`.
pub fn order2(p: u64) -> Result<u64> {
    check_odd_prime(p)?;
    Ok(order_from_factorization(p, &factorize(p - 1)?))
}

fn order_from_factorization(p: u64, pminus1: &Factorization) -> u64 {
    let mut t = p - 1;
    for q in pminus1.primes() {
        while t.is_multiple_of(q) && pow_mod(2, t / q, p) == 1 {
            t /= q;
        }
    }
    t
}
