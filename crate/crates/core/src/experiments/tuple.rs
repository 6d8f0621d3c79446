//! Six primes just above `r` with large order of 2 and nearly coprime
//! shifts `p - 1`, and the modulus `M` they force on `n`.
//!
//! All thresholds are rational powers of `r` and are compared exactly.
//! With the default exponents the witness conditions are
//!
//! ```text
//! r < p_i,  (p_i - r)^100 <= r^61         p_i in (r, r + r^0.61]
//! ord_{p_i}(2)^10 > r^3                   ord > r^0.3
//! gcd(p_i - 1, p_j - 1)^1000 < r          gcd < r^0.001
//! M^500 > r^2597                          M > r^5.194
//! ```
//!
//! where `M = lcm(p_1..p_4, ord(p_1)..ord(p_4))`. The exponent of the `M`
//! bound is derived from the others as `4 + 4*order - 6*gcd`.

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{floor_power, power_compare, power_compare_u64};
use crate::ntkernel::{is_prime, order2, primes_in};

pub const TUPLE_SIZE: usize = 6;
const LCM_PRIMES: usize = 4;

/// Backtracking gives up after visiting this many partial tuples.
const SEARCH_NODE_LIMIT: u64 = 5_000_000;

/// Rational exponent `num/den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exponent {
    pub num: u32,
    pub den: u32,
}

impl Exponent {
    pub const fn new(num: u32, den: u32) -> Self {
        Self { num, den }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TupleThresholds {
    /// Interval is `(r, r + floor(r^width)]`.
    pub width: Exponent,
    /// Orders must exceed `r^order`.
    pub order: Exponent,
    /// Pairwise gcds of `p - 1` must stay below `r^gcd`.
    pub gcd: Exponent,
}

impl Default for TupleThresholds {
    fn default() -> Self {
        Self {
            width: Exponent::new(61, 100),
            order: Exponent::new(3, 10),
            gcd: Exponent::new(1, 1000),
        }
    }
}

impl TupleThresholds {
    /// Exponent `e` such that the conditions imply `M > r^e`, as a reduced
    /// fraction; `None` when `e <= 0` (the bound is then vacuous).
    pub fn m_bound(&self) -> Option<Exponent> {
        let (a, b) = (self.order.num as i64, self.order.den as i64);
        let (c, d) = (self.gcd.num as i64, self.gcd.den as i64);
        let pairs = (LCM_PRIMES * (LCM_PRIMES - 1) / 2) as i64;
        let num = LCM_PRIMES as i64 * b * d + LCM_PRIMES as i64 * a * d - pairs * c * b;
        let den = b * d;
        if num <= 0 {
            return None;
        }
        let g = num.gcd(&den);
        Some(Exponent::new((num / g) as u32, (den / g) as u32))
    }
}

/// A concrete tuple for one `r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TupleWitness {
    pub r: u64,
    pub thresholds: TupleThresholds,
    pub primes: Vec<u64>,
    pub orders: Vec<u64>,
    /// `gcd(p_i - 1, p_j - 1)` for `i < j`, lexicographic in `(i, j)`.
    pub pair_gcds: Vec<u64>,
    /// `lcm` of the four smallest primes and their orders, decimal.
    #[serde(with = "decimal")]
    pub lcm_m: BigUint,
}

mod decimal {
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_str_radix(10))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        BigUint::parse_bytes(s.as_bytes(), 10).ok_or_else(|| D::Error::custom("expected a decimal integer"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TupleDiagnostics {
    /// Right endpoint `r + floor(r^width)`.
    pub interval_end: u64,
    pub primes_in_interval: usize,
    pub primes_passing_order: usize,
    /// Size of the largest pairwise-compatible set the search reached.
    pub best_partial: usize,
    /// The search stopped at its node limit before exhausting the space.
    pub truncated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TupleSearch {
    pub r: u64,
    pub witness: Option<TupleWitness>,
    pub diagnostics: TupleDiagnostics,
}

fn interval_end(r: u64, width: Exponent) -> Result<u64> {
    let w = floor_power(r, width.num, width.den);
    w.to_u64()
        .and_then(|w| r.checked_add(w))
        .ok_or(Error::DomainOverflow { r, n: u64::MAX })
}

fn pair_gcds(primes: &[u64]) -> Vec<u64> {
    let mut out = Vec::with_capacity(primes.len() * (primes.len() - 1) / 2);
    for (i, &p) in primes.iter().enumerate() {
        for &q in &primes[i + 1..] {
            out.push((p - 1).gcd(&(q - 1)));
        }
    }
    out
}

fn lcm_m(primes: &[u64], orders: &[u64]) -> BigUint {
    primes[..LCM_PRIMES]
        .iter()
        .chain(&orders[..LCM_PRIMES])
        .fold(BigUint::one(), |acc, &v| acc.lcm(&BigUint::from(v)))
}

/// Searches `(r, r + floor(r^width)]` for six primes meeting the order and
/// gcd conditions: order-filtered primes in ascending order, greedy with
/// backtracking on gcd conflicts.
pub fn find_tuple(r: u64, thresholds: &TupleThresholds) -> Result<TupleSearch> {
    if r < 2 {
        return Err(Error::BelowMinimum { what: "r", min: 2, got: r });
    }
    let end = interval_end(r, thresholds.width)?;
    let primes = primes_in(r + 1, end)?;
    let mut candidates = Vec::new();
    for &p in primes.iter().filter(|&&p| p > 2) {
        let ord = order2(p)?;
        if power_compare_u64(ord, r, thresholds.order.num, thresholds.order.den) == Ordering::Greater {
            candidates.push((p, ord));
        }
    }

    let gcd_ok = |p: u64, q: u64| {
        power_compare_u64((p - 1).gcd(&(q - 1)), r, thresholds.gcd.num, thresholds.gcd.den) == Ordering::Less
    };
    let mut search = Backtrack {
        candidates: &candidates,
        compatible: &gcd_ok,
        chosen: Vec::with_capacity(TUPLE_SIZE),
        best: 0,
        nodes: 0,
    };
    let found = search.run(0);

    let diagnostics = TupleDiagnostics {
        interval_end: end,
        primes_in_interval: primes.len(),
        primes_passing_order: candidates.len(),
        best_partial: search.best,
        truncated: search.nodes >= SEARCH_NODE_LIMIT,
    };
    let witness = found.then(|| {
        let primes: Vec<u64> = search.chosen.iter().map(|&i| candidates[i].0).collect();
        let orders: Vec<u64> = search.chosen.iter().map(|&i| candidates[i].1).collect();
        TupleWitness {
            r,
            thresholds: *thresholds,
            pair_gcds: pair_gcds(&primes),
            lcm_m: lcm_m(&primes, &orders),
            primes,
            orders,
        }
    });
    Ok(TupleSearch { r, witness, diagnostics })
}

struct Backtrack<'a, F> {
    candidates: &'a [(u64, u64)],
    compatible: &'a F,
    chosen: Vec<usize>,
    best: usize,
    nodes: u64,
}

impl<F: Fn(u64, u64) -> bool> Backtrack<'_, F> {
    fn run(&mut self, from: usize) -> bool {
        self.best = self.best.max(self.chosen.len());
        if self.chosen.len() == TUPLE_SIZE {
            return true;
        }
        for i in from..self.candidates.len() {
            // Stop once this branch can neither reach six nor beat `best`.
            if self.chosen.len() + (self.candidates.len() - i) <= self.best || self.nodes >= SEARCH_NODE_LIMIT {
                break;
            }
            self.nodes += 1;
            let p = self.candidates[i].0;
            if self
                .chosen
                .iter()
                .all(|&c| (self.compatible)(self.candidates[c].0, p))
            {
                self.chosen.push(i);
                if self.run(i + 1) {
                    return true;
                }
                self.chosen.pop();
            }
        }
        false
    }
}

/// Outcome of [`verify_tuple`], one flag per condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TupleCheck {
    /// Six distinct odd primes in ascending order.
    pub distinct_primes: bool,
    pub in_interval: bool,
    /// Stored orders equal the recomputed ones.
    pub orders_correct: bool,
    pub orders_large: bool,
    /// Stored gcds equal the recomputed ones.
    pub gcds_correct: bool,
    pub gcds_small: bool,
    /// Stored `M` equals the recomputed lcm.
    pub lcm_correct: bool,
    /// `M > r^(4 + 4*order - 6*gcd)`, checked on the recomputed `M`.
    pub m_bound: bool,
}

impl TupleCheck {
    /// Every condition except the derived `M` bound.
    pub fn conditions_hold(&self) -> bool {
        self.distinct_primes
            && self.in_interval
            && self.orders_correct
            && self.orders_large
            && self.gcds_correct
            && self.gcds_small
            && self.lcm_correct
    }

    pub fn holds(&self) -> bool {
        self.conditions_hold() && self.m_bound
    }
}

/// Re-derives every witness condition from the primes alone.
pub fn verify_tuple(w: &TupleWitness) -> TupleCheck {
    let t = &w.thresholds;
    let r = w.r;
    let primes = &w.primes;
    let shape_ok = primes.len() == TUPLE_SIZE && w.orders.len() == TUPLE_SIZE;

    let distinct_primes =
        shape_ok && primes.windows(2).all(|p| p[0] < p[1]) && primes.iter().all(|&p| p > 2 && is_prime(p));
    if !distinct_primes {
        return TupleCheck {
            distinct_primes,
            in_interval: false,
            orders_correct: false,
            orders_large: false,
            gcds_correct: false,
            gcds_small: false,
            lcm_correct: false,
            m_bound: false,
        };
    }

    let in_interval = primes
        .iter()
        .all(|&p| p > r && power_compare_u64(p - r, r, t.width.num, t.width.den) != Ordering::Greater);
    let orders: Vec<u64> = primes.iter().map(|&p| order2(p).expect("odd prime")).collect();
    let orders_correct = orders == w.orders;
    let orders_large = w
        .orders
        .iter()
        .all(|&o| power_compare_u64(o, r, t.order.num, t.order.den) == Ordering::Greater);
    let gcds = pair_gcds(primes);
    let gcds_correct = gcds == w.pair_gcds;
    let gcds_small = gcds
        .iter()
        .all(|&g| power_compare_u64(g, r, t.gcd.num, t.gcd.den) == Ordering::Less);
    let m = lcm_m(primes, &orders);
    let lcm_correct = m == w.lcm_m;
    let m_bound = match t.m_bound() {
        Some(e) => power_compare(&m, &BigUint::from(r), e.num, e.den) == Ordering::Greater,
        None => true,
    };
    TupleCheck {
        distinct_primes,
        in_interval,
        orders_correct,
        orders_large,
        gcds_correct,
        gcds_small,
        lcm_correct,
        m_bound,
    }
}
