//! Wall-clock scaling measurements against the asymptotic bounds of the
//! main operations, shared by the acceptance suite, the `bench` command and
//! the criterion benches.

use std::fmt;
use std::hint::black_box;
use std::time::{Duration, Instant};

use crate::endpoints::EndpointScanner;
use crate::error::Result;
use crate::extension::{minimal_wg_extension_with, ExtensionOptions};
use crate::family::{SetFamily, SizeParams};
use crate::generate::{random_base, random_learning_space_base, GenParams};
use crate::verify::{is_base, is_learning_space_base, is_wg_base};

/// Number of endpoint computations in one [`Workload::Endpoints`] run,
/// cycling through the family.
pub const ENDPOINT_PROBES: usize = 64;

/// An operation whose running time is measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Workload {
    /// Endpoints of a fixed number of sets, `O(m)` each.
    Endpoints,
    IsBase,
    IsLearningSpaceBase,
    IsWgBase,
    Extension,
}

impl Workload {
    pub const ALL: [Workload; 5] = [
        Workload::Endpoints,
        Workload::IsBase,
        Workload::IsLearningSpaceBase,
        Workload::IsWgBase,
        Workload::Extension,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Workload::Endpoints => "endpoints",
            Workload::IsBase => "is_base",
            Workload::IsLearningSpaceBase => "is_learning_space_base",
            Workload::IsWgBase => "is_wg_base",
            Workload::Extension => "minimal_wg_extension",
        }
    }

    pub fn bound_name(self) -> &'static str {
        match self {
            Workload::Endpoints => "m",
            Workload::IsBase | Workload::IsLearningSpaceBase => "nm",
            Workload::IsWgBase => "n²m",
            Workload::Extension => "nmℓ+n³m",
        }
    }

    /// The asymptotic bound evaluated at `p`.
    pub fn bound(self, p: SizeParams) -> f64 {
        let (n, m, ell) = (p.n as f64, p.m as f64, p.ell as f64);
        match self {
            Workload::Endpoints => m,
            Workload::IsBase | Workload::IsLearningSpaceBase => n * m,
            Workload::IsWgBase => n * n * m,
            Workload::Extension => n * m * ell + n * n * n * m,
        }
    }

    /// Runs the operation once on `b`.
    pub fn run(self, b: &SetFamily) {
        match self {
            Workload::Endpoints => {
                let mut scanner = EndpointScanner::new(b.ground().len());
                let mut out = Vec::new();
                for k in 0..ENDPOINT_PROBES {
                    scanner.endpoints_into(b.members(k % b.len()), b.member_lists(), &mut out);
                    black_box(&out);
                }
            }
            Workload::IsBase => {
                black_box(is_base(b));
            }
            Workload::IsLearningSpaceBase => {
                black_box(is_learning_space_base(b));
            }
            Workload::IsWgBase => {
                black_box(is_wg_base(b));
            }
            Workload::Extension => {
                let options = ExtensionOptions {
                    verify_tables: false,
                    build_paths: true,
                };
                black_box(minimal_wg_extension_with(b, options));
            }
        }
    }
}

impl fmt::Display for Workload {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The generated input for a scaling run of `workload`, with set sizes up
/// to `ell` over a ground of `4 · ell`, so `m` grows in proportion to `n`.
///
/// The verifications get learning-space bases, on which every check passes
/// and so runs to completion; the extension gets an arbitrary random base
/// with `∅`, which it has to repair.
pub fn scaling_input(workload: Workload, n: usize, ell: usize, seed: u64) -> Result<SetFamily> {
    let params = GenParams {
        with_empty: true,
        ..GenParams::new(n, ell, seed)
    };
    match workload {
        Workload::Extension => random_base(params),
        _ => random_learning_space_base(params),
    }
}

/// Seconds per call of `f`: the best of five batches, each repeated until
/// it has run for at least `min_batch`.
pub fn time_per_call<F: FnMut()>(mut f: F, min_batch: Duration) -> f64 {
    let mut best = f64::INFINITY;
    for _ in 0..5 {
        let start = Instant::now();
        let mut calls = 0u32;
        loop {
            f();
            calls += 1;
            let elapsed = start.elapsed();
            if elapsed >= min_batch {
                best = best.min(elapsed.as_secs_f64() / f64::from(calls));
                break;
            }
        }
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Measurement {
    pub params: SizeParams,
    pub seconds: f64,
    pub bound: f64,
}

impl Measurement {
    pub fn ratio(&self) -> f64 {
        self.seconds / self.bound
    }
}

/// Times `workload` on [`scaling_input`] for each `n`.
pub fn measure(
    workload: Workload,
    sizes: &[usize],
    ell: usize,
    seed: u64,
    min_batch: Duration,
) -> Result<Vec<Measurement>> {
    sizes
        .iter()
        .map(|&n| {
            let b = scaling_input(workload, n, ell, seed)?;
            let params = b.size_params();
            let seconds = time_per_call(|| workload.run(&b), min_batch);
            Ok(Measurement {
                params,
                seconds,
                bound: workload.bound(params),
            })
        })
        .collect()
}

/// Least-squares fit of `t = a · bound` on a log scale.
#[derive(Debug, Clone, PartialEq)]
pub struct Fit {
    /// The constant `a`: geometric mean of `t / bound`.
    pub constant: f64,
    /// Largest `max(r / a, a / r)` over the points' ratios `r`.
    pub worst_factor: f64,
}

impl Fit {
    pub fn within(&self, factor: f64) -> bool {
        self.worst_factor <= factor
    }
}

pub fn fit(samples: &[Measurement]) -> Fit {
    assert!(!samples.is_empty(), "nothing to fit");
    let logs: Vec<f64> = samples.iter().map(|s| s.ratio().ln()).collect();
    let constant = (logs.iter().sum::<f64>() / logs.len() as f64).exp();
    let worst_factor = samples
        .iter()
        .map(|s| {
            let r = s.ratio() / constant;
            r.max(1.0 / r)
        })
        .fold(1.0, f64::max);
    Fit {
        constant,
        worst_factor,
    }
}

/// Least-squares slope of `ln t` against `ln bound`; 1 means the bound's
/// growth rate is matched exactly.
pub fn log_slope(samples: &[Measurement]) -> f64 {
    let xs: Vec<f64> = samples.iter().map(|s| s.bound.ln()).collect();
    let ys: Vec<f64> = samples.iter().map(|s| s.seconds.ln()).collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let cov: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if var == 0.0 {
        f64::NAN
    } else {
        cov / var
    }
}
