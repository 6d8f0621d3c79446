use std::collections::VecDeque;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::integrality::DEFAULT_CERTIFICATE_WINDOW;
use crate::ntkernel::simple_sieve;

/// Default cap on `r * n_max`.
pub const DEFAULT_SMOOTH_WORK_LIMIT: u64 = 100_000_000_000;

const CHUNK: u64 = 1 << 16;

/// Largest `M_r(n)` seen for `1 <= n <= n_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmoothStats {
    pub r: u64,
    pub n_max: u64,
    pub m_max: u64,
    /// Least `n` attaining `m_max`.
    pub argmax_n: u64,
    /// `2^m_max > r`, i.e. `M_r(n) <= log2 r` fails somewhere.
    pub exceeds_log: bool,
}

pub fn m_of_r(r: u64, n_max: u64) -> Result<SmoothStats> {
    m_of_r_with_limit(r, n_max, DEFAULT_SMOOTH_WORK_LIMIT)
}

pub fn m_of_r_with_limit(r: u64, n_max: u64, work_limit: u64) -> Result<SmoothStats> {
    if r == 0 {
        return Err(Error::BelowMinimum { what: "r", min: 1, got: r });
    }
    if n_max == 0 {
        return Err(Error::BelowMinimum { what: "n_max", min: 1, got: n_max });
    }
    let work = r.saturating_mul(n_max);
    if work > work_limit {
        return Err(Error::WindowTooLarge { what: "smooth statistics", size: work, limit: work_limit });
    }
    if r > DEFAULT_CERTIFICATE_WINDOW {
        return Err(Error::WindowTooLarge { what: "smooth", size: r, limit: DEFAULT_CERTIFICATE_WINDOW });
    }
    if n_max.checked_add(r).is_none() {
        return Err(Error::DomainOverflow { r, n: n_max });
    }

    let primes = simple_sieve(r);
    let chunks = n_max.div_ceil(CHUNK);
    let (m_max, argmax_n) = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let lo = 1 + c * CHUNK;
            let hi = (lo + CHUNK - 1).min(n_max);
            chunk_max(&primes, r, lo, hi)
        })
        .reduce(|| (0, u64::MAX), pick);
    Ok(SmoothStats {
        r,
        n_max,
        m_max,
        argmax_n,
        exceeds_log: m_max >= 64 || (1u64 << m_max) > r,
    })
}

/// Larger value wins; ties go to the smaller `n`.
fn pick(a: (u64, u64), b: (u64, u64)) -> (u64, u64) {
    if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
        b
    } else {
        a
    }
}

/// `max_{lo <= n <= hi} min_{1 <= j <= r} s_r(n + j)` with least argmax.
fn chunk_max(primes: &[u64], r: u64, lo: u64, hi: u64) -> (u64, u64) {
    // s[i] = s_r(lo + 1 + i) for lo + 1 <= m <= hi + r
    let first = lo + 1;
    let last = hi + r;
    let mut smooth = vec![1u64; (last - first + 1) as usize];
    for &p in primes {
        let mut pk = p;
        loop {
            let start = first.div_ceil(pk) * pk;
            let mut m = start;
            while m <= last {
                smooth[(m - first) as usize] *= p;
                m += pk;
            }
            match pk.checked_mul(p) {
                Some(next) if next <= last => pk = next,
                _ => break,
            }
        }
    }

    // Sliding-window minimum over windows of length r.
    let window = r as usize;
    let mut best = (0u64, u64::MAX);
    let mut deque: VecDeque<usize> = VecDeque::new();
    for (i, &v) in smooth.iter().enumerate() {
        while deque.back().is_some_and(|&b| smooth[b] >= v) {
            deque.pop_back();
        }
        deque.push_back(i);
        if deque[0] + window <= i {
            deque.pop_front();
        }
        if i + 1 >= window {
            // window [i + 1 - r, i] belongs to n = lo + i + 1 - r
            let n = lo + (i + 1 - window) as u64;
            best = pick(best, (smooth[deque[0]], n));
        }
    }
    best
}
