use thiserror::Error;

/// Errors raised by the library. Every variant names the violated
/// precondition; none of them indicate a bug in the caller's data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what} must be at least {min}, got {got}")]
    BelowMinimum {
        what: &'static str,
        min: u64,
        got: u64,
    },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("order of 2 is undefined modulo 2")]
    EvenPrime,
    #[error("valuation of zero is undefined")]
    ZeroValuation,
    #[error("n + r overflows the 64-bit scan domain (r = {r}, n = {n})")]
    DomainOverflow { r: u64, n: u64 },
    #[error("n = {n} exceeds the oracle cutoff {cutoff}")]
    OracleCutoff { n: u64, cutoff: u64 },
    #[error("r = {r} exceeds the closed-form cutoff {cutoff}")]
    ClosedFormCutoff { r: u64, cutoff: u64 },
    #[error("{what} window of {size} exceeds the limit {limit}")]
    WindowTooLarge {
        what: &'static str,
        size: u64,
        limit: u64,
    },
    #[error("no prime above {0} fits in 64 bits")]
    NoPrimeAbove(u64),
    #[error("empty range [{start}, {end}]")]
    EmptyRange { start: u64, end: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
