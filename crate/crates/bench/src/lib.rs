//! Shared workloads for the criterion benches.

use binsum_core::Instance;

/// Instances spanning the oracle's working range for a fixed `r`.
pub fn oracle_instances(r: u64) -> Vec<Instance> {
    [100, 500, 1500, 3000]
        .into_iter()
        .map(|n| Instance::new(r, n).expect("valid instance"))
        .collect()
}

/// `p - 1` values of mixed difficulty for the factorization benches.
pub const FACTOR_INPUTS: [u64; 5] = [
    1_000_002,
    4_294_967_290,
    1_152_921_504_606_846_976 - 2,
    18_446_744_073_709_551_556,
    4_294_967_291 * 4_294_967_279 - 1,
];
