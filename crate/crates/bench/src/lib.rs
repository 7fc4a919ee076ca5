//! Inputs shared by the criterion benches: the same generated families the
//! acceptance suite times, so the two measurements are comparable.

use wgfam_core::scaling::{scaling_input, Workload};
use wgfam_core::{SetFamily, SizeParams};

/// Sizes swept by the benches.
pub const SIZES: [usize; 5] = [25, 50, 100, 200, 400];

/// Largest set size of the generated families.
pub const ELL: usize = 6;

pub const SEED: u64 = 7;

/// The generated input for `workload` at each size in `sizes`.
pub fn inputs(workload: Workload, sizes: &[usize]) -> Vec<(SizeParams, SetFamily)> {
    sizes
        .iter()
        .map(|&n| {
            let b = scaling_input(workload, n, ELL, SEED).expect("generator parameters fit");
            (b.size_params(), b)
        })
        .collect()
}
