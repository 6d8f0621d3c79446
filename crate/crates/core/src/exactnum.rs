//! Exact integer and rational arithmetic.
//!
//! Everything above the 64-bit kernel is done in arbitrary precision: the
//! summands of the binomial sums, their common denominators, and every
//! comparison against a fractional power of `r`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};
use crate::ntkernel::is_prime;

/// Signed arbitrary-precision integer.
pub type ExactInteger = BigInt;

/// Arbitrary-precision rational kept in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ExactRational(BigRational);

impl ExactRational {
    /// Builds `numer / denom` in reduced form. Returns `None` for a zero
    /// denominator.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Option<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return None;
        }
        Some(Self(BigRational::new(numer.into(), denom)))
    }

    pub fn from_integer(value: impl Into<BigInt>) -> Self {
        Self(BigRational::from_integer(value.into()))
    }

    pub fn zero() -> Self {
        Self(BigRational::zero())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    /// Always positive.
    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for ExactRational {
    fn from(value: BigRational) -> Self {
        // `BigRational` arithmetic already reduces; `new` is reducing too.
        Self(value)
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: ExactRational) -> ExactRational {
                ExactRational(self.0.$method(rhs.0))
            }
        }

        impl<'a> $trait<&'a ExactRational> for &'a ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &'a ExactRational) -> ExactRational {
                ExactRational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational(-self.0)
    }
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// p-adic valuation of a nonzero rational: `v_p(numer) - v_p(denom)`.
pub fn valuation(p: u64, x: &ExactRational) -> Result<i64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if x.is_zero() {
        return Err(Error::ZeroValuation);
    }
    Ok(int_valuation(p, x.numer().magnitude()) - int_valuation(p, x.denom().magnitude()))
}

/// Exponent of `p` in a nonzero integer.
pub(crate) fn int_valuation(p: u64, m: &BigUint) -> i64 {
    debug_assert!(!m.is_zero());
    let mut count = 0;
    let mut m = m.clone();
    loop {
        let (q, rem) = m.div_rem(&BigUint::from(p));
        if !rem.is_zero() {
            return count;
        }
        m = q;
        count += 1;
    }
}

/// Orders `a` against `b^(p/q)` by comparing `a^q` with `b^p` exactly.
pub fn power_compare(a: &BigUint, b: &BigUint, p: u32, q: u32) -> Ordering {
    debug_assert!(q >= 1, "exponent denominator must be positive");
    Pow::pow(a, q).cmp(&Pow::pow(b, p))
}

/// [`power_compare`] for machine integers.
pub fn power_compare_u64(a: u64, b: u64, p: u32, q: u32) -> Ordering {
    power_compare(&BigUint::from(a), &BigUint::from(b), p, q)
}

/// Largest `a` with `a^q <= b^p`, i.e. `floor(b^(p/q))`.
pub fn floor_power(b: u64, p: u32, q: u32) -> BigUint {
    let target = Pow::pow(&BigUint::from(b), p);
    let root = target.nth_root(q);
    // `nth_root` is already the floor; guard the boundary anyway.
    debug_assert!(Pow::pow(&root, q) <= target);
    root
}

pub(crate) fn to_signed(value: BigUint) -> BigInt {
    BigInt::from_biguint(Sign::Plus, value)
}
