use std::cmp::Ordering;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::power_compare_u64;
use crate::ntkernel::{order2, simple_sieve};

pub const DEFAULT_CENSUS_LIMIT: u64 = 10_000_000;

/// Odd primes `q <= t` with `ord_q(2) <= q^0.3`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub t: u64,
    pub count: usize,
    pub primes: Vec<u64>,
}

impl Census {
    /// `count <= t^0.6`, compared as `count^5 <= t^3`.
    pub fn within_bound(&self) -> bool {
        census_bound_holds(self.count as u64, self.t)
    }
}

pub fn census_bound_holds(count: u64, t: u64) -> bool {
    power_compare_u64(count, t, 3, 5) != Ordering::Greater
}

pub fn small_order_census(t: u64) -> Result<Census> {
    small_order_census_with_limit(t, DEFAULT_CENSUS_LIMIT)
}

pub fn small_order_census_with_limit(t: u64, limit: u64) -> Result<Census> {
    if t > limit {
        return Err(Error::WindowTooLarge { what: "census", size: t, limit });
    }
    let primes: Vec<u64> = simple_sieve(t)
        .into_par_iter()
        .filter(|&q| q > 2)
        .filter(|&q| {
            // ord^10 <= q^3
            let ord = order2(q).expect("odd prime");
            power_compare_u64(ord, q, 3, 10) != Ordering::Greater
        })
        .collect();
    Ok(Census { t, count: primes.len(), primes })
}
