use std::path::PathBuf;
use std::time::Duration;

use topksum::bench::{emit_results, run_experiment, summarize, ExperimentSpec, ResultFormat, SortMode};
use topksum::{Error, Method, Result};

use crate::Status;

#[derive(Debug, clap::Args)]
pub struct Args {
    /// Comma-separated instance sizes.
    #[arg(long, value_delimiter = ',', default_value = "10000")]
    n: Vec<usize>,
    /// Comma-separated budget multipliers r / top_k_sum(x0).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "-0.1,0.1,0.99")]
    tau_r: Vec<f64>,
    /// Comma-separated fractions k / n.
    #[arg(long, value_delimiter = ',', default_value = "0.001,0.05")]
    tau_k_comp: Vec<f64>,
    #[arg(long, default_value_t = 10)]
    reps: usize,
    #[arg(long, value_delimiter = ',', default_value = "esgs,plcp,grid")]
    methods: Vec<Method>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Per-solve limit in seconds for the grid search.
    #[arg(long, default_value_t = 60.0)]
    time_limit: f64,
    #[arg(long, default_value = "csv")]
    format: ResultFormat,
    #[arg(long)]
    output: PathBuf,
    /// presorted, unsorted or partial.
    #[arg(long, default_value = "presorted")]
    sort_mode: SortMode,
    /// Worker threads across cells.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Also write every generated instance into this directory.
    #[arg(long)]
    dump_instances: Option<PathBuf>,
    #[arg(long, default_value_t = 1e-10)]
    agree_tol: f64,
}

pub fn run(a: Args) -> Result<Status> {
    if !(a.time_limit > 0.0) || !a.time_limit.is_finite() {
        return Err(Error::InvalidArgument("--time-limit must be positive".into()));
    }
    let spec = ExperimentSpec {
        n_list: a.n,
        tau_r: a.tau_r,
        tau_k_comp: a.tau_k_comp,
        reps: a.reps,
        seed: a.seed,
        methods: a.methods,
        sort_mode: a.sort_mode,
        time_limit: Some(Duration::from_secs_f64(a.time_limit)),
        agree_tol: a.agree_tol,
        jobs: a.jobs,
        dump_dir: a.dump_instances,
    };
    spec.validate()?;
    let report = run_experiment(&spec)?;
    emit_results(&report.records, a.format, &a.output)?;

    println!(
        "{:<6} {:>10} {:>9} {:>8} {:>10} {:>5} {:>11} {:>11} {:>11}",
        "method", "n", "k", "tau_r", "tau_k_comp", "reps", "median_s", "mean_s", "std_s"
    );
    for c in summarize(&report.records) {
        let note = if c.timed_out { "  timed out" } else { "" };
        println!(
            "{:<6} {:>10} {:>9} {:>8} {:>10} {:>5} {:>11.3e} {:>11.3e} {:>11.3e}{note}",
            c.method.name(),
            c.n,
            c.k,
            c.tau_r,
            c.tau_k_comp,
            c.reps,
            c.median,
            c.mean,
            c.std
        );
    }
    for f in &report.failures {
        eprintln!("FAIL {f}");
    }
    Ok(if report.passed() { Status::Ok } else { Status::Failed })
}
