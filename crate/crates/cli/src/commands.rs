//! Argument definitions and the subcommand implementations.

use std::fmt::Write as _;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use wgfam_core::closure::{atoms, base_of, span_with_limit, DEFAULT_SPAN_LIMIT};
use wgfam_core::extension::verify_extension;
use wgfam_core::generate::{random_base, random_learning_space_base, GenParams};
use wgfam_core::oracle::oracle_tight_path;
use wgfam_core::sat::reduce_3sat;
use wgfam_core::scaling::{fit, log_slope, measure, Workload};
use wgfam_core::{
    is_base, is_learning_space_base, is_wg_base, is_wg_base_parallel, minimal_wg_extension,
    surmise, surmise_is_partition, SetFamily,
};

use crate::dimacs::parse_dimacs;
use crate::error::CliError;
use crate::format::{parse_family_bytes, parse_set, ParseOptions};
use crate::report::{braced, names, sets_value, OutputFormat, Report, WitnessLine};

#[derive(Debug, Parser)]
#[command(name = "wgfam", version, about = "Check and repair well-graded union-closed set families")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    pub format: OutputFormat,

    /// Drop repeated sets in input files instead of failing.
    #[arg(long, global = true)]
    pub dedupe: bool,

    /// Write `timing_ms` as 0 so JSON output is reproducible.
    #[arg(long, global = true)]
    pub no_timing: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Whether no set is a union of other sets.
    CheckBase { input: PathBuf },
    /// Whether the family is the base of a learning space.
    CheckLearningSpace { input: PathBuf },
    /// Whether the family is the base of a well-graded ∪-closed family.
    CheckWg {
        input: PathBuf,
        /// Check the quotients on all cores.
        #[arg(long)]
        parallel: bool,
    },
    /// The base of the family: sets that are not unions of other sets.
    Base { input: PathBuf },
    /// All unions of sets of the family.
    Span {
        input: PathBuf,
        /// Refuse to produce more sets than this.
        #[arg(long, default_value_t = DEFAULT_SPAN_LIMIT)]
        limit: usize,
    },
    /// The atoms of a ∪-closed family.
    Atoms { input: PathBuf },
    /// The surmise function of a base.
    Surmise { input: PathBuf },
    /// A tight path between two sets of the family, by brute force.
    TightPath {
        input: PathBuf,
        /// Start set, e.g. "a b" or "{}".
        p: String,
        /// End set.
        q: String,
        /// Search in the span of the family instead of the family itself.
        #[arg(long)]
        span: bool,
    },
    /// A minimal well-graded ∪-closed extension; prints its base.
    Extend {
        input: PathBuf,
        /// Also write the tight paths that generate the extension here.
        #[arg(long)]
        paths: Option<PathBuf>,
        /// Check the result by brute force (small inputs only).
        #[arg(long)]
        verify: bool,
    },
    /// The family built from a DIMACS 3-CNF file.
    ReduceSat { input: PathBuf },
    /// A seeded random base.
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of sets.
        #[arg(long)]
        n: usize,
        /// Largest set size.
        #[arg(long)]
        ell: usize,
        /// Ground set size (default 4·ell, grown when too small).
        #[arg(long)]
        ground: Option<usize>,
        /// Include the empty set (counted in n).
        #[arg(long)]
        with_empty: bool,
        /// Generate a learning-space base (always contains the empty set).
        #[arg(long)]
        learning_space: bool,
    },
    /// Timing table of the main operations against their bounds.
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = [25, 50, 100, 200, 400])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 6)]
        ell: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Minimum duration of each timing batch, in milliseconds.
        #[arg(long, default_value_t = 40)]
        min_batch_ms: u64,
        /// Operations to time (default all).
        #[arg(long, value_enum)]
        workload: Vec<WorkloadArg>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WorkloadArg {
    Endpoints,
    IsBase,
    IsLearningSpaceBase,
    IsWgBase,
    Extension,
}

impl From<WorkloadArg> for Workload {
    fn from(w: WorkloadArg) -> Self {
        match w {
            WorkloadArg::Endpoints => Workload::Endpoints,
            WorkloadArg::IsBase => Workload::IsBase,
            WorkloadArg::IsLearningSpaceBase => Workload::IsLearningSpaceBase,
            WorkloadArg::IsWgBase => Workload::IsWgBase,
            WorkloadArg::Extension => Workload::Extension,
        }
    }
}

/// Runs a parsed command line, returning the rendered output and exit code.
pub fn run(cli: &Cli) -> Result<(String, u8), CliError> {
    let options = ParseOptions { dedupe: cli.dedupe };
    let report = execute(&cli.command, options)?;
    Ok((report.render(cli.format, !cli.no_timing), report.exit_code()))
}

fn execute(command: &Command, options: ParseOptions) -> Result<Report, CliError> {
    match command {
        Command::CheckBase { input } => {
            let f = read_family(input, options)?;
            timed(|| Ok(Report::verification(f.ground(), &is_base(&f))))
        }
        Command::CheckLearningSpace { input } => {
            let f = read_family(input, options)?;
            timed(|| Ok(Report::verification(f.ground(), &is_learning_space_base(&f))))
        }
        Command::CheckWg { input, parallel } => {
            let f = read_family(input, options)?;
            timed(|| {
                let report = if *parallel { is_wg_base_parallel(&f) } else { is_wg_base(&f) };
                Ok(Report::verification(f.ground(), &report))
            })
        }
        Command::Base { input } => {
            let f = read_family(input, options)?;
            timed(|| Ok(Report::family(&base_of(&f).sorted())))
        }
        Command::Span { input, limit } => {
            let f = read_family(input, options)?;
            timed(|| Ok(Report::family(&span_with_limit(&f, *limit)?.sorted())))
        }
        Command::Atoms { input } => {
            let f = read_family(input, options)?;
            timed(|| Ok(Report::family(&atoms(&f)?.sorted())))
        }
        Command::Surmise { input } => {
            let f = read_family(input, options)?;
            timed(|| surmise_report(&f))
        }
        Command::TightPath { input, p, q, span } => {
            let f = read_family(input, options)?;
            let p = parse_set(f.ground(), p).map_err(CliError::Usage)?;
            let q = parse_set(f.ground(), q).map_err(CliError::Usage)?;
            timed(|| {
                let family = if *span { span_with_limit(&f, DEFAULT_SPAN_LIMIT)? } else { f.clone() };
                let g = family.ground();
                Ok(match oracle_tight_path(&family, &p, &q)? {
                    Some(path) => {
                        let mut text = String::new();
                        for s in path.steps() {
                            text.push_str(&g.display(s));
                            text.push('\n');
                        }
                        Report::success(text).with("path", sets_value(g, path.steps()))
                    }
                    None => Report {
                        verdict: false,
                        show_verdict: true,
                        witnesses: vec![WitnessLine::new(
                            g,
                            &q,
                            format!("no tight path from {}", braced(g, &p)),
                        )],
                        ..Report::default()
                    },
                })
            })
        }
        Command::Extend { input, paths, verify } => {
            let f = read_family(input, options)?;
            let (report, path_text) = timed_pair(|| extend_report(&f, *verify))?;
            if let Some(path) = paths {
                std::fs::write(path, path_text).map_err(|source| CliError::Io {
                    path: path.clone(),
                    source,
                })?;
            }
            Ok(report)
        }
        Command::ReduceSat { input } => {
            let text = read_text(input)?;
            let inst = parse_dimacs(&text).map_err(|source| CliError::Parse {
                path: input.clone(),
                source,
            })?;
            timed(|| Ok(Report::family(&reduce_3sat(&inst))))
        }
        Command::Gen {
            seed,
            n,
            ell,
            ground,
            with_empty,
            learning_space,
        } => timed(|| {
            let params = GenParams {
                n: *n,
                ell: *ell,
                ground: *ground,
                with_empty: *with_empty,
                seed: *seed,
            };
            let b = if *learning_space {
                random_learning_space_base(params)?
            } else {
                random_base(params)?
            };
            let mut report = Report::family(&b);
            let kind = if *learning_space { " learning-space" } else { "" };
            report.text = format!(
                "# wgfam gen{kind} seed={seed} n={n} ell={ell} ground={}\n{}",
                b.ground().len(),
                report.text
            );
            Ok(report.with("seed", *seed))
        }),
        Command::Bench {
            sizes,
            ell,
            seed,
            min_batch_ms,
            workload,
        } => {
            if sizes.is_empty() {
                return Err(CliError::Usage("--sizes needs at least one size".into()));
            }
            let workloads: Vec<Workload> = if workload.is_empty() {
                Workload::ALL.to_vec()
            } else {
                workload.iter().map(|&w| w.into()).collect()
            };
            timed(|| bench_report(&workloads, sizes, *ell, *seed, Duration::from_millis(*min_batch_ms)))
        }
    }
}

fn surmise_report(f: &SetFamily) -> Result<Report, CliError> {
    let sigma = surmise(f)?;
    let partition = surmise_is_partition(f)?;
    let g = f.ground();
    let mut text = String::new();
    let mut entries = Vec::new();
    for (x, sets) in sigma.iter() {
        let listed: Vec<String> = sets.iter().map(|s| braced(g, s)).collect();
        let _ = writeln!(text, "{}: {}", g.name(x), listed.join(" "));
        entries.push(json!({ "element": g.name(x), "atoms": sets_value(g, sets) }));
    }
    let _ = writeln!(text, "# partition: {}", if partition { "yes" } else { "no" });
    Ok(Report::success(text)
        .with("surmise", Value::from(entries))
        .with("partition", partition))
}

/// The report for `extend` and the text of its path family.
fn extend_report(f: &SetFamily, verify: bool) -> Result<(Report, String), CliError> {
    let ext = minimal_wg_extension(f);
    let g = f.ground();
    let base = ext.base().sorted();
    let input = ext.input();

    let mut path_text = String::new();
    let mut path_values = Vec::new();
    for ((k, l), path) in ext.paths().iter() {
        let steps: Vec<String> = path.steps().iter().map(|s| braced(g, s)).collect();
        let _ = writeln!(
            path_text,
            "{} -> {}: {}",
            braced(g, input.get(k)),
            braced(g, input.get(l)),
            steps.join(" | ")
        );
        path_values.push(json!({
            "from": names(g, input.get(k)),
            "with": names(g, input.get(l)),
            "steps": sets_value(g, path.steps()),
        }));
    }

    let mut report = Report::family(&base);
    if verify {
        let check = verify_extension(f, &ext.family()?)?;
        if !check.verdict() {
            let mut failed = Report::verification(g, &check);
            failed.extra = std::mem::take(&mut report.extra);
            report = failed;
        }
    }
    report = report
        .with("added", sets_value(g, ext.added()))
        .with("paths", Value::from(path_values));
    Ok((report, path_text))
}

fn bench_report(
    workloads: &[Workload],
    sizes: &[usize],
    ell: usize,
    seed: u64,
    min_batch: Duration,
) -> Result<Report, CliError> {
    let mut text = String::from("workload                 bound       n      m  ell     seconds    t/bound\n");
    let mut rows = Vec::new();
    let mut fits = Vec::new();
    for &w in workloads {
        let samples = measure(w, sizes, ell, seed, min_batch)?;
        for s in &samples {
            let _ = writeln!(
                text,
                "{:<24} {:<8} {:>5} {:>6} {:>4} {:>11.4e} {:>10.3e}",
                w.name(),
                w.bound_name(),
                s.params.n,
                s.params.m,
                s.params.ell,
                s.seconds,
                s.ratio()
            );
            rows.push(json!({
                "workload": w.name(),
                "n": s.params.n,
                "m": s.params.m,
                "ell": s.params.ell,
                "seconds": s.seconds,
                "bound": s.bound,
            }));
        }
        let fit = fit(&samples);
        let slope = log_slope(&samples);
        fits.push(json!({
            "workload": w.name(),
            "bound": w.bound_name(),
            "constant": fit.constant,
            "worst_factor": fit.worst_factor,
            "log_slope": if slope.is_finite() { json!(slope) } else { Value::Null },
        }));
    }
    text.push('\n');
    for f in &fits {
        let _ = writeln!(
            text,
            "fit {:<24} worst factor {:>6.2}  log-log slope {}",
            f["workload"].as_str().unwrap_or_default(),
            f["worst_factor"].as_f64().unwrap_or(f64::NAN),
            f["log_slope"].as_f64().map_or("n/a".into(), |s| format!("{s:.2}")),
        );
    }
    Ok(Report::success(text).with("rows", Value::from(rows)).with("fits", Value::from(fits)))
}

fn timed<F: FnOnce() -> Result<Report, CliError>>(f: F) -> Result<Report, CliError> {
    let start = Instant::now();
    let mut report = f()?;
    report.timing_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

fn timed_pair<T, F>(f: F) -> Result<(Report, T), CliError>
where
    F: FnOnce() -> Result<(Report, T), CliError>,
{
    let start = Instant::now();
    let (mut report, other) = f()?;
    report.timing_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok((report, other))
}

fn read_bytes(path: &Path) -> Result<Vec<u8>, CliError> {
    let io = |source| CliError::Io {
        path: path.to_owned(),
        source,
    };
    if path == Path::new("-") {
        let mut buf = Vec::new();
        std::io::stdin().read_to_end(&mut buf).map_err(io)?;
        Ok(buf)
    } else {
        std::fs::read(path).map_err(io)
    }
}

fn read_text(path: &Path) -> Result<String, CliError> {
    String::from_utf8(read_bytes(path)?).map_err(|e| {
        let bytes = e.as_bytes();
        let valid = e.utf8_error().valid_up_to();
        let line = 1 + bytes[..valid].iter().filter(|&&b| b == b'\n').count();
        CliError::Parse {
            path: path.to_owned(),
            source: crate::error::ParseError::new(line, "invalid UTF-8"),
        }
    })
}

fn read_family(path: &Path, options: ParseOptions) -> Result<SetFamily, CliError> {
    let bytes = read_bytes(path)?;
    parse_family_bytes(&bytes, options)
        .map(|doc| doc.family)
        .map_err(|source| CliError::Parse {
            path: path.to_owned(),
            source,
        })
}
