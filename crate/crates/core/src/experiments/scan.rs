//! Range scans over `n` for a fixed `r`.
//!
//! Work is split into contiguous chunks. Results are merged (or emitted)
//! in chunk order, so the output never depends on the number of workers.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::mpsc;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::integrality::{classify, Classification, ClassifyBudget, Instance};

/// Largest accepted number of `n` values in one scan.
pub const DEFAULT_MAX_SCAN: u64 = 100_000_000;

/// At most this many undecided `n` are listed in a report (the smallest).
pub const UNDECIDED_CAP: usize = 1000;

/// Inclusive range of `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NRange {
    pub start: u64,
    pub end: u64,
}

impl NRange {
    pub fn new(start: u64, end: u64) -> Result<Self> {
        if start > end {
            return Err(Error::EmptyRange { start, end });
        }
        if start == 0 {
            return Err(Error::BelowMinimum { what: "n", min: 1, got: 0 });
        }
        Ok(Self { start, end })
    }

    pub fn len(&self) -> u64 {
        self.end - self.start + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn chunk(&self, index: u64, size: u64) -> Option<(u64, u64)> {
        let lo = self.start.checked_add(index.checked_mul(size)?)?;
        if lo > self.end {
            return None;
        }
        Some((lo, lo.saturating_add(size - 1).min(self.end)))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanCounts {
    pub sylvester: u64,
    pub order: u64,
    pub smooth: u64,
    pub oracle_nonintegral: u64,
    pub oracle_integral: u64,
    pub undecided: u64,
}

impl ScanCounts {
    pub fn record(&mut self, c: &Classification) {
        use crate::integrality::Certificate;
        match c {
            Classification::CertifiedNonintegral(Certificate::Sylvester { .. }) => self.sylvester += 1,
            Classification::CertifiedNonintegral(Certificate::Order { .. }) => self.order += 1,
            Classification::CertifiedNonintegral(Certificate::Smooth { .. }) => self.smooth += 1,
            Classification::OracleNonintegral(_) => self.oracle_nonintegral += 1,
            Classification::OracleIntegral(_) => self.oracle_integral += 1,
            Classification::Undecided(_) => self.undecided += 1,
        }
    }

    pub fn merge(&mut self, other: &ScanCounts) {
        self.sylvester += other.sylvester;
        self.order += other.order;
        self.smooth += other.smooth;
        self.oracle_nonintegral += other.oracle_nonintegral;
        self.oracle_integral += other.oracle_integral;
        self.undecided += other.undecided;
    }

    pub fn certified(&self) -> u64 {
        self.sylvester + self.order + self.smooth
    }

    pub fn total(&self) -> u64 {
        self.certified() + self.oracle_nonintegral + self.oracle_integral + self.undecided
    }
}

/// Aggregate of a scan. `elapsed` is the only field that varies between
/// runs of the same scan.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub r: u64,
    pub n_range: NRange,
    pub counts: ScanCounts,
    pub integral_witnesses: Vec<u64>,
    pub undecided_list: Vec<u64>,
    pub elapsed: f64,
}

impl ScanReport {
    fn empty(r: u64, n_range: NRange) -> Self {
        Self {
            r,
            n_range,
            counts: ScanCounts::default(),
            integral_witnesses: Vec::new(),
            undecided_list: Vec::new(),
            elapsed: 0.0,
        }
    }

    pub fn record(&mut self, result: &InstanceResult) {
        self.counts.record(&result.classification);
        match result.classification {
            Classification::OracleIntegral(_) => self.integral_witnesses.push(result.n),
            Classification::Undecided(_) if self.undecided_list.len() < UNDECIDED_CAP => {
                self.undecided_list.push(result.n)
            }
            _ => {}
        }
    }

    /// Order-independent merge of two disjoint partial reports.
    pub fn merge(&mut self, other: &ScanReport) {
        self.counts.merge(&other.counts);
        self.integral_witnesses.extend_from_slice(&other.integral_witnesses);
        self.integral_witnesses.sort_unstable();
        self.undecided_list.extend_from_slice(&other.undecided_list);
        self.undecided_list.sort_unstable();
        self.undecided_list.truncate(UNDECIDED_CAP);
    }

    /// Same report with the timing stripped, for comparisons.
    pub fn without_timing(&self) -> ScanReport {
        ScanReport { elapsed: 0.0, ..self.clone() }
    }
}

/// One classified `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceResult {
    pub r: u64,
    pub n: u64,
    pub classification: Classification,
}

fn validate(r: u64, range: &NRange, max_scan: u64) -> Result<()> {
    Instance::new(r, range.end)?;
    if range.len() > max_scan {
        return Err(Error::WindowTooLarge {
            what: "scan",
            size: range.len(),
            limit: max_scan,
        });
    }
    Ok(())
}

fn scan_slice(r: u64, lo: u64, hi: u64, budget: &ClassifyBudget) -> ScanReport {
    let mut report = ScanReport::empty(r, NRange { start: lo, end: hi });
    for n in lo..=hi {
        let inst = Instance::new(r, n).expect("validated range");
        report.record(&InstanceResult { r, n, classification: classify(&inst, budget) });
    }
    report
}

/// Classifies every `n` in the range using the global rayon pool.
pub fn scan_density(r: u64, range: NRange, budget: &ClassifyBudget) -> Result<ScanReport> {
    let partitions = range.len().div_ceil(4096).max(1);
    scan_density_partitioned(r, range, budget, partitions)
}

/// [`scan_density`] with an explicit number of contiguous partitions.
pub fn scan_density_partitioned(r: u64, range: NRange, budget: &ClassifyBudget, partitions: u64) -> Result<ScanReport> {
    validate(r, &range, DEFAULT_MAX_SCAN)?;
    let started = Instant::now();
    let size = range.len().div_ceil(partitions.max(1));
    let parts: Vec<(u64, u64)> = (0..).map_while(|i| range.chunk(i, size)).collect();
    let partials: Vec<ScanReport> = parts
        .par_iter()
        .map(|&(lo, hi)| scan_slice(r, lo, hi, budget))
        .collect();
    let mut report = ScanReport::empty(r, range);
    for partial in &partials {
        report.merge(partial);
    }
    report.elapsed = started.elapsed().as_secs_f64();
    Ok(report)
}

/// Streams classified instances to `sink` in ascending `n`, one chunk at a
/// time, computing chunks on `threads` workers. `n` values for which
/// `skip(n)` holds are left out. Returns the aggregate of the emitted
/// instances.
pub fn scan_ordered<S, E>(
    r: u64,
    range: NRange,
    budget: &ClassifyBudget,
    threads: usize,
    chunk_size: u64,
    skip: impl Fn(u64) -> bool + Sync,
    mut sink: S,
) -> std::result::Result<ScanReport, E>
where
    S: FnMut(&[InstanceResult]) -> std::result::Result<(), E>,
    E: From<Error>,
{
    validate(r, &range, DEFAULT_MAX_SCAN)?;
    let started = Instant::now();
    let chunk_size = chunk_size.max(1);
    let threads = threads.max(1);
    let next = AtomicU64::new(0);
    let stop = AtomicBool::new(false);
    let mut report = ScanReport::empty(r, range);

    let worker = |tx: mpsc::SyncSender<(u64, Vec<InstanceResult>)>| loop {
        if stop.load(Ordering::Relaxed) {
            break;
        }
        let index = next.fetch_add(1, Ordering::Relaxed);
        let Some((lo, hi)) = range.chunk(index, chunk_size) else {
            break;
        };
        let results = (lo..=hi)
            .filter(|&n| !skip(n))
            .map(|n| {
                let inst = Instance::new(r, n).expect("validated range");
                InstanceResult { r, n, classification: classify(&inst, budget) }
            })
            .collect();
        if tx.send((index, results)).is_err() {
            break;
        }
    };

    let outcome = std::thread::scope(|scope| {
        let (tx, rx) = mpsc::sync_channel(threads * 2);
        let worker = &worker;
        for _ in 0..threads {
            let tx = tx.clone();
            scope.spawn(move || worker(tx));
        }
        drop(tx);

        let mut pending = BTreeMap::new();
        let mut expected = 0u64;
        for (index, results) in rx.iter() {
            pending.insert(index, results);
            while let Some(results) = pending.remove(&expected) {
                for result in &results {
                    report.record(result);
                }
                if let Err(e) = sink(&results) {
                    stop.store(true, Ordering::Relaxed);
                    return Err(e);
                }
                expected += 1;
            }
        }
        Ok(())
    });
    outcome?;
    report.elapsed = started.elapsed().as_secs_f64();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_scans() {
        let budget = ClassifyBudget::default();
        let report = scan_density(1, NRange::new(1, 100).unwrap(), &budget).unwrap();
        assert_eq!(report.counts.total(), 100);
        assert_eq!(report.counts.oracle_integral, 0);
        assert!(report.integral_witnesses.is_empty());

        let report = scan_density(2, NRange::new(1, 1).unwrap(), &budget).unwrap();
        assert_eq!(report.counts.total(), 1);
        assert_eq!(report.counts.oracle_integral, 0);
        assert_eq!(report.counts.undecided, 0);

        assert_eq!(NRange::new(10, 9), Err(Error::EmptyRange { start: 10, end: 9 }));
    }

    #[test]
    fn partitioning_does_not_change_the_report() {
        let budget = ClassifyBudget { oracle_cutoff: 50, ..Default::default() };
        let range = NRange::new(1, 700).unwrap();
        let base = scan_density_partitioned(1, range, &budget, 1).unwrap().without_timing();
        assert!(base.counts.undecided > 0);
        for parts in [2, 3, 7, 64, 700, 5000] {
            let other = scan_density_partitioned(1, range, &budget, parts).unwrap().without_timing();
            assert_eq!(base, other, "partitions = {parts}");
        }
    }

    #[test]
    fn ordered_stream_is_sorted_and_complete() {
        let budget = ClassifyBudget { oracle_cutoff: 100, ..Default::default() };
        let range = NRange::new(5, 1000).unwrap();
        for threads in [1, 4] {
            let mut seen = Vec::new();
            let report = scan_ordered::<_, Error>(2, range, &budget, threads, 37, |n| n % 10 == 0, |chunk| {
                seen.extend(chunk.iter().map(|res| res.n));
                Ok(())
            })
            .unwrap();
            let expect: Vec<u64> = (5..=1000).filter(|n| n % 10 != 0).collect();
            assert_eq!(seen, expect);
            assert_eq!(report.counts.total(), expect.len() as u64);
        }
    }

    #[test]
    fn sink_errors_stop_the_scan() {
        let budget = ClassifyBudget::default();
        let range = NRange::new(1, 100_000).unwrap();
        let mut calls = 0;
        let got = scan_ordered(23, range, &budget, 2, 10, |_| false, |_| {
            calls += 1;
            if calls == 3 {
                Err(Error::NotPrime(4))
            } else {
                Ok(())
            }
        });
        assert_eq!(got, Err(Error::NotPrime(4)));
    }

    #[test]
    fn oversized_scan_rejected() {
        let range = NRange::new(1, DEFAULT_MAX_SCAN + 1).unwrap();
        assert!(matches!(
            scan_density(1, range, &ClassifyBudget::default()),
            Err(Error::WindowTooLarge { .. })
        ));
    }
}
