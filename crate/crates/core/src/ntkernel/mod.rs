//! Number-theoretic kernel over `u64`: primality, factorization, the order
//! of 2, smooth parts and prime enumeration.
//!
//! The whole kernel is confined to the 64-bit scan domain; callers that
//! need larger values work in [`crate::exactnum`].

mod factor;
mod order;
mod primality;
mod sieve;

pub use factor::{factorize, largest_prime_factor, smooth_divisor, Factorization};
pub use order::{order2, PrimeRecord};
pub use primality::{is_prime, next_prime, pow_mod};
pub use sieve::{primes_in, primes_in_with_limit, simple_sieve, DEFAULT_WINDOW_LIMIT};
