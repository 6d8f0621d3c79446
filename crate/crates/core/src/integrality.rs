//! Exact evaluation of the binomial sums
//!
//! ```text
//! S_r(n) = sum_{k=1}^{n} k/(k+r) * C(n,k)
//! S(r,n) = sum_{k=0}^{n} r/(k+r) * C(n,k)      S(r,n) + S_r(n) = 2^n
//! ```
//!
//! together with three nonintegrality certificates and the classification
//! pipeline that tries them before falling back to the exact oracle.
//!
//! # Certificates
//!
//! * [`Certificate::Sylvester`]: a prime `p > n` dividing `k0 + r` for some
//!   `1 <= k0 <= n`. No other `k + r` in the window is a multiple of `p`, so
//!   the `k0` term is the only one with `p` in its reduced denominator.
//! * [`Certificate::Order`]: an odd prime `p > r` dividing `n + j` for some
//!   `1 <= j <= r` with `ord_p(2)` not dividing `n + j`. Using
//!   `S(r,n) = sum_j (-1)^(r-j) r C(r-1,j-1) (2^(n+j) - 1)/(n+j)`:
//!   `p > r` means `p` divides exactly one of `n+1..n+r`, `p` does not divide
//!   `r`, and `p` does not divide `C(r-1, j-1)` (all its prime factors are
//!   below `r`). Since `ord_p(2)` does not divide `n + j`, `p` does not
//!   divide `2^(n+j) - 1`. So the `j` term alone has negative `p`-adic
//!   valuation, `S(r,n)` is not an integer, and neither is
//!   `S_r(n) = 2^n - S(r,n)`. `p = 2` is excluded because `2^(n+j) - 1` is
//!   odd and the argument says nothing.
//! * [`Certificate::Smooth`]: `M_r(n) = min_j s_r(n+j)` with
//!   `2^M_r(n) <= r`, the exact form of `M_r(n) <= log2 r`, a known
//!   sufficient condition for nonintegrality.
//!
//! Searches return the smallest qualifying prime, then the smallest index.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{binomial, to_signed, ExactRational};
use crate::ntkernel::{factorize, is_prime, order2, smooth_divisor};

/// Largest `n` the direct-summation oracle accepts by default.
pub const DEFAULT_ORACLE_CUTOFF: u64 = 3000;
/// Largest `r` the closed form accepts by default.
pub const DEFAULT_CLOSED_FORM_CUTOFF: u64 = 200;
/// Largest number of integers a certificate search will factor.
pub const DEFAULT_CERTIFICATE_WINDOW: u64 = 10_000_000;

/// A pair `(r, n)` naming the sum `S_r(n)`. Both are at least 1 and
/// `n + r` fits in a `u64`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Instance {
    r: u64,
    n: u64,
}

impl Instance {
    pub fn new(r: u64, n: u64) -> Result<Self> {
        if r == 0 {
            return Err(Error::BelowMinimum { what: "r", min: 1, got: r });
        }
        if n == 0 {
            return Err(Error::BelowMinimum { what: "n", min: 1, got: n });
        }
        if n.checked_add(r).is_none() {
            return Err(Error::DomainOverflow { r, n });
        }
        Ok(Self { r, n })
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn n(&self) -> u64 {
        self.n
    }
}

fn check_oracle(inst: &Instance, cutoff: u64) -> Result<()> {
    if inst.n > cutoff {
        return Err(Error::OracleCutoff { n: inst.n, cutoff });
    }
    Ok(())
}

/// `sum_{k=from}^{n} weight(k) * C(n,k) / (k + r)` over a single common
/// denominator, reduced once at the end.
fn binomial_fraction_sum(inst: &Instance, from: u64, weight: impl Fn(u64) -> u64) -> ExactRational {
    let (n, r) = (inst.n, inst.r);
    let mut denom = BigUint::one();
    for k in from..=n {
        let d = k + r;
        let g = (&denom % d).to_u64().unwrap().gcd(&d);
        denom *= d / g;
    }
    let mut numer = BigUint::zero();
    let mut c = binomial(n, from);
    for k in from..=n {
        let w = weight(k);
        if w != 0 {
            numer += &c * w * (&denom / (k + r));
        }
        c = c * (n - k) / (k + 1);
    }
    ExactRational::new(to_signed(numer), to_signed(denom)).expect("denominator is positive")
}

/// `S_r(n)` by direct summation, default cutoff.
pub fn s_lower(inst: &Instance) -> Result<ExactRational> {
    s_lower_with_cutoff(inst, DEFAULT_ORACLE_CUTOFF)
}

pub fn s_lower_with_cutoff(inst: &Instance, cutoff: u64) -> Result<ExactRational> {
    check_oracle(inst, cutoff)?;
    Ok(binomial_fraction_sum(inst, 1, |k| k))
}

/// `S(r,n)` by direct summation, default cutoff.
pub fn s_upper(inst: &Instance) -> Result<ExactRational> {
    s_upper_with_cutoff(inst, DEFAULT_ORACLE_CUTOFF)
}

pub fn s_upper_with_cutoff(inst: &Instance, cutoff: u64) -> Result<ExactRational> {
    check_oracle(inst, cutoff)?;
    let r = inst.r;
    Ok(binomial_fraction_sum(inst, 0, |_| r))
}

/// `S(r,n)` through the alternating closed form
/// `sum_{j=1}^{r} (-1)^(r-j) r C(r-1, j-1) (2^(n+j) - 1)/(n+j)`.
pub fn s_upper_closed(inst: &Instance) -> Result<ExactRational> {
    s_upper_closed_with_cutoffs(inst, DEFAULT_CLOSED_FORM_CUTOFF, DEFAULT_ORACLE_CUTOFF)
}

/// `r_cutoff` bounds the number of terms; `n_cutoff` bounds the size of
/// `2^(n+j)`.
pub fn s_upper_closed_with_cutoffs(inst: &Instance, r_cutoff: u64, n_cutoff: u64) -> Result<ExactRational> {
    let (n, r) = (inst.n, inst.r);
    if r > r_cutoff {
        return Err(Error::ClosedFormCutoff { r, cutoff: r_cutoff });
    }
    check_oracle(inst, n_cutoff)?;

    let mut denom = BigUint::one();
    for j in 1..=r {
        let d = n + j;
        let g = (&denom % d).to_u64().unwrap().gcd(&d);
        denom *= d / g;
    }
    let mut positive = BigUint::zero();
    let mut negative = BigUint::zero();
    let mut power = BigUint::one() << (n + 1);
    let mut c = BigUint::one(); // C(r-1, j-1)
    for j in 1..=r {
        let term = &c * r * (&power - 1u32) * (&denom / (n + j));
        if (r - j) % 2 == 0 {
            positive += term;
        } else {
            negative += term;
        }
        power <<= 1;
        c = c * (r - j) / j;
    }
    let numer: BigInt = to_signed(positive) - to_signed(negative);
    Ok(ExactRational::new(numer, to_signed(denom)).expect("denominator is positive"))
}

/// Whether `S_r(n) + S(r,n) = 2^n` holds exactly.
pub fn complement_check(inst: &Instance) -> Result<bool> {
    let total = s_lower(inst)? + s_upper(inst)?;
    Ok(total == ExactRational::from_integer(BigInt::one() << inst.n))
}

/// Which certificate search produced (or was skipped for) a result.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    Sylvester,
    Order,
    Smooth,
}

/// Independently re-checkable evidence that `S_r(n)` is not an integer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Certificate {
    /// Prime `p > n` dividing `k0 + r`.
    Sylvester { p: u64, k0: u64 },
    /// Odd prime `p > r` dividing `n + j` with `ord_p(2)` not dividing `n + j`.
    Order { p: u64, j: u64 },
    /// `M_r(n) = m_value` with `2^m_value <= r`.
    Smooth { m_value: u64 },
}

impl Certificate {
    pub fn kind(&self) -> CertificateKind {
        match self {
            Certificate::Sylvester { .. } => CertificateKind::Sylvester,
            Certificate::Order { .. } => CertificateKind::Order,
            Certificate::Smooth { .. } => CertificateKind::Smooth,
        }
    }

    /// Re-checks the defining conditions from scratch.
    pub fn verify(&self, inst: &Instance) -> bool {
        let (r, n) = (inst.r, inst.n);
        match *self {
            Certificate::Sylvester { p, k0 } => {
                (1..=n).contains(&k0) && p > n && is_prime(p) && (k0 + r) % p == 0
            }
            Certificate::Order { p, j } => {
                (1..=r).contains(&j)
                    && p > r
                    && p > 2
                    && is_prime(p)
                    && (n + j) % p == 0
                    && order2(p).is_ok_and(|ord| (n + j) % ord != 0)
            }
            Certificate::Smooth { m_value } => {
                m_lower_with_limit(inst, u64::MAX).is_ok_and(|m| m == m_value) && smooth_bound_holds(m_value, r)
            }
        }
    }
}

fn smooth_bound_holds(m_value: u64, r: u64) -> bool {
    m_value < 64 && (1u64 << m_value) <= r
}

fn check_window(what: &'static str, size: u64, limit: u64) -> Result<()> {
    if size > limit {
        return Err(Error::WindowTooLarge { what, size, limit });
    }
    Ok(())
}

/// Smallest prime `p > n` dividing one of `1+r, ..., n+r`.
pub fn sylvester_certificate(inst: &Instance) -> Result<Option<Certificate>> {
    sylvester_certificate_with_limit(inst, DEFAULT_CERTIFICATE_WINDOW)
}

pub fn sylvester_certificate_with_limit(inst: &Instance, limit: u64) -> Result<Option<Certificate>> {
    let (r, n) = (inst.r, inst.n);
    if r < n {
        // k + r < 2n < 2p, so the qualifying primes are exactly the primes
        // in (n, n + r].
        check_window("sylvester", r, limit)?;
        return Ok(((n + 1)..=(n + r))
            .find(|&m| is_prime(m))
            .map(|p| Certificate::Sylvester { p, k0: p - r }));
    }
    check_window("sylvester", n, limit)?;
    let mut best: Option<(u64, u64)> = None;
    for k in 1..=n {
        let value = k + r;
        if let Some(p) = factorize(value)?.primes().find(|&p| p > n) {
            if best.is_none_or(|(bp, _)| p < bp) {
                best = Some((p, k));
            }
        }
    }
    Ok(best.map(|(p, k0)| Certificate::Sylvester { p, k0 }))
}

/// Smallest odd prime `p > r` dividing some `n + j` with `ord_p(2)`
/// not dividing `n + j`.
pub fn order_certificate(inst: &Instance) -> Result<Option<Certificate>> {
    order_certificate_with_limit(inst, DEFAULT_CERTIFICATE_WINDOW)
}

pub fn order_certificate_with_limit(inst: &Instance, limit: u64) -> Result<Option<Certificate>> {
    let (r, n) = (inst.r, inst.n);
    check_window("order", r, limit)?;
    let mut candidates = Vec::new();
    for j in 1..=r {
        let value = n + j;
        candidates.extend(
            factorize(value)?
                .primes()
                .filter(|&p| p > r && p > 2)
                .map(|p| (p, j)),
        );
    }
    candidates.sort_unstable();
    for (p, j) in candidates {
        if (n + j) % order2(p)? != 0 {
            return Ok(Some(Certificate::Order { p, j }));
        }
    }
    Ok(None)
}

/// `M_r(n) = min_{1 <= j <= r} s_r(n + j)`.
pub fn m_lower(inst: &Instance) -> Result<u64> {
    m_lower_with_limit(inst, DEFAULT_CERTIFICATE_WINDOW)
}

pub fn m_lower_with_limit(inst: &Instance, limit: u64) -> Result<u64> {
    let (r, n) = (inst.r, inst.n);
    check_window("smooth", r, limit)?;
    let mut best = u64::MAX;
    for j in 1..=r {
        best = best.min(smooth_divisor(r, n + j));
        if best == 1 {
            break;
        }
    }
    Ok(best)
}

/// `Smooth { M_r(n) }` exactly when `2^M_r(n) <= r`.
pub fn smooth_certificate(inst: &Instance) -> Result<Option<Certificate>> {
    smooth_certificate_with_limit(inst, DEFAULT_CERTIFICATE_WINDOW)
}

pub fn smooth_certificate_with_limit(inst: &Instance, limit: u64) -> Result<Option<Certificate>> {
    let m_value = m_lower_with_limit(inst, limit)?;
    Ok(smooth_bound_holds(m_value, inst.r).then_some(Certificate::Smooth { m_value }))
}

/// Resource limits for [`classify`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyBudget {
    /// Largest `n` handed to the exact oracle.
    pub oracle_cutoff: u64,
    /// Largest window a certificate search may cover; larger searches are skipped.
    pub certificate_window: u64,
}

impl Default for ClassifyBudget {
    fn default() -> Self {
        Self {
            oracle_cutoff: DEFAULT_ORACLE_CUTOFF,
            certificate_window: DEFAULT_CERTIFICATE_WINDOW,
        }
    }
}

/// Why an instance was left undecided.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UndecidedReason {
    pub oracle_cutoff: u64,
    /// Searches skipped because their window exceeded the budget.
    pub skipped: Vec<CertificateKind>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    CertifiedNonintegral(Certificate),
    OracleNonintegral(ExactRational),
    OracleIntegral(ExactRational),
    Undecided(UndecidedReason),
}

impl Classification {
    pub fn label(&self) -> &'static str {
        match self {
            Classification::CertifiedNonintegral(_) => "certified_nonintegral",
            Classification::OracleNonintegral(_) => "oracle_nonintegral",
            Classification::OracleIntegral(_) => "oracle_integral",
            Classification::Undecided(_) => "undecided",
        }
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Classification::CertifiedNonintegral(c) => Some(c),
            _ => None,
        }
    }

    pub fn value(&self) -> Option<&ExactRational> {
        match self {
            Classification::OracleNonintegral(v) | Classification::OracleIntegral(v) => Some(v),
            _ => None,
        }
    }
}

type CertificateSearch = fn(&Instance, u64) -> Result<Option<Certificate>>;

/// Tries sylvester, order and smooth certificates in that order, then the
/// oracle when `n` is within the budget's cutoff.
pub fn classify(inst: &Instance, budget: &ClassifyBudget) -> Classification {
    let limit = budget.certificate_window;
    let searches: [(CertificateKind, CertificateSearch); 3] = [
        (CertificateKind::Sylvester, sylvester_certificate_with_limit),
        (CertificateKind::Order, order_certificate_with_limit),
        (CertificateKind::Smooth, smooth_certificate_with_limit),
    ];
    let mut skipped = Vec::new();
    for (kind, search) in searches {
        match search(inst, limit) {
            Ok(Some(cert)) => return Classification::CertifiedNonintegral(cert),
            Ok(None) => {}
            Err(_) => skipped.push(kind),
        }
    }
    match s_lower_with_cutoff(inst, budget.oracle_cutoff) {
        Ok(value) if value.is_integer() => Classification::OracleIntegral(value),
        Ok(value) => Classification::OracleNonintegral(value),
        Err(_) => Classification::Undecided(UndecidedReason {
            oracle_cutoff: budget.oracle_cutoff,
            skipped,
        }),
    }
}
