use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::power_compare_u64;
use crate::ntkernel::next_prime;

/// Serializable [`Ordering`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    Less,
    Equal,
    Greater,
}

impl From<Ordering> for Comparison {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Less => Comparison::Less,
            Ordering::Equal => Comparison::Equal,
            Ordering::Greater => Comparison::Greater,
        }
    }
}

/// Distance from `n` to the next prime, set against `n^(1/20)` and
/// `n^(1/11)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapProbe {
    pub n: u64,
    pub next_prime: u64,
    pub gap: u64,
    /// `gap^20` against `n`.
    pub vs_twentieth_root: Comparison,
    /// `gap^11` against `n`.
    pub vs_eleventh_root: Comparison,
}

pub fn gap_probe(n: u64) -> Result<GapProbe> {
    let next = next_prime(n).ok_or(Error::NoPrimeAbove(n))?;
    let gap = next - n;
    Ok(GapProbe {
        n,
        next_prime: next,
        gap,
        vs_twentieth_root: power_compare_u64(gap, n, 1, 20).into(),
        vs_eleventh_root: power_compare_u64(gap, n, 1, 11).into(),
    })
}
