//! Drivers for the finite-range experiments: density scans, short-interval
//! prime tuples, the small-order census, smooth-divisor statistics and
//! prime-gap probes.

mod census;
mod gaps;
mod scan;
mod smooth;
mod tuple;

pub use census::{census_bound_holds, small_order_census, small_order_census_with_limit, Census, DEFAULT_CENSUS_LIMIT};
pub use gaps::{gap_probe, Comparison, GapProbe};
pub use scan::{
    scan_density, scan_density_partitioned, scan_ordered, InstanceResult, NRange, ScanCounts, ScanReport,
    DEFAULT_MAX_SCAN, UNDECIDED_CAP,
};
pub use smooth::{m_of_r, m_of_r_with_limit, SmoothStats, DEFAULT_SMOOTH_WORK_LIMIT};
pub use tuple::{
    find_tuple, verify_tuple, Exponent, TupleCheck, TupleDiagnostics, TupleSearch, TupleThresholds, TupleWitness,
    TUPLE_SIZE,
};

/// Sizes the global rayon pool used by the parallel drivers. Fails if the
/// pool was already initialised.
pub fn configure_threads(threads: usize) -> std::result::Result<(), String> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| e.to_string())
}
