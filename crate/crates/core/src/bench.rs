//! Benchmark harness: random instances, timed solves, cross-method checks and
//! CSV/JSON output.
//!
//! Instances draw `x0` uniformly from `[0, 1)^n` with ChaCha8 (`rand_chacha`),
//! seeded by `seed` and using the stream `(cell << 32) | rep`, so every
//! `(cell, rep)` pair gets the same vector regardless of scheduling. `k` is
//! `max(1, floor(tau_k_comp · n))` and `r = tau_r · top_k_sum(x0, k)`.

use std::fmt;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ext::{project_partial_sort, PartialSortHint};
use crate::project::solve_sorted_until;
use crate::sorting::{sort_desc, top_k_sum};
use crate::types::{Method, ProjectionInstance, ProjectionResult};
use crate::{io, project, Tolerances};

/// Budget multipliers used in the reference experiments.
pub const REFERENCE_TAU_R: [f64; 12] = [
    -8.0, -4.0, -2.0, -1.0, -0.5, -0.1, 0.0, 0.1, 0.5, 0.9, 0.99, 0.999,
];

/// Complementary fractions `k / n` used in the reference experiments.
pub const REFERENCE_TAU_K_COMP: [f64; 10] = [1e-4, 1e-3, 1e-2, 0.05, 0.1, 0.5, 0.9, 0.99, 0.999, 0.9999];

/// `(tau_r, tau_k_comp)` of the six timing-table experiments.
pub const REFERENCE_EXPERIMENTS: [(f64, f64); 6] = [
    (-0.1, 1e-3),
    (0.1, 1e-3),
    (0.99, 1e-3),
    (-0.1, 0.05),
    (0.1, 0.05),
    (0.99, 0.05),
];

/// Relative bound on `top_k_sum(x) − r` accepted for a benchmarked solution.
pub const FEAS_RTOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SortMode {
    /// Sort once (timed separately), then time the sorted engine.
    Presorted,
    /// Time the whole pipeline including the sort; `sort_seconds` is 0.
    Unsorted,
    /// Time the partial-sort front end (early-stopping engine only).
    Partial,
}

impl FromStr for SortMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "presorted" => Ok(SortMode::Presorted),
            "unsorted" => Ok(SortMode::Unsorted),
            "partial" => Ok(SortMode::Partial),
            other => Err(Error::arg(format!("unknown sort mode `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResultFormat {
    Csv,
    Json,
}

impl FromStr for ResultFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(ResultFormat::Csv),
            "json" => Ok(ResultFormat::Json),
            other => Err(Error::arg(format!("unknown result format `{other}`"))),
        }
    }
}

impl fmt::Display for ResultFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ResultFormat::Csv => "csv",
            ResultFormat::Json => "json",
        })
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    pub n_list: Vec<usize>,
    pub tau_r: Vec<f64>,
    pub tau_k_comp: Vec<f64>,
    pub reps: usize,
    pub seed: u64,
    pub methods: Vec<Method>,
    pub sort_mode: SortMode,
    /// Per-solve limit for the grid search; a cell that hits it is recorded
    /// once and its remaining repetitions are skipped.
    pub time_limit: Option<Duration>,
    pub agree_tol: f64,
    /// Worker threads over cells; repetitions inside a cell stay sequential.
    pub jobs: usize,
    /// Directory receiving every generated `x0` as a `.f64` file plus a
    /// manifest of `k` and `r`.
    pub dump_dir: Option<PathBuf>,
}

impl Default for ExperimentSpec {
    fn default() -> Self {
        ExperimentSpec {
            n_list: vec![10_000],
            tau_r: vec![-0.1],
            tau_k_comp: vec![0.05],
            reps: 3,
            seed: 0,
            methods: vec![Method::Esgs, Method::Plcp],
            sort_mode: SortMode::Presorted,
            time_limit: None,
            agree_tol: Tolerances::default().agree_tol,
            jobs: 1,
            dump_dir: None,
        }
    }
}

impl ExperimentSpec {
    pub fn validate(&self) -> Result<()> {
        if self.reps == 0 {
            return Err(Error::arg("reps must be at least 1"));
        }
        if self.n_list.is_empty() || self.n_list.contains(&0) {
            return Err(Error::arg("n list must be nonempty and positive"));
        }
        if self.tau_r.is_empty() || self.tau_r.iter().any(|t| !t.is_finite()) {
            return Err(Error::arg("tau_r list must be nonempty and finite"));
        }
        if self.tau_k_comp.is_empty() || self.tau_k_comp.iter().any(|&t| !(t > 0.0 && t <= 1.0)) {
            return Err(Error::arg("every tau_k_comp must lie in (0, 1]"));
        }
        if self.methods.is_empty() {
            return Err(Error::arg("no methods selected"));
        }
        if self.sort_mode == SortMode::Partial && self.methods.iter().any(|&m| m != Method::Esgs) {
            return Err(Error::arg("partial sort mode only runs the esgs engine"));
        }
        if !(self.agree_tol >= 0.0) {
            return Err(Error::arg("agreement tolerance must be nonnegative"));
        }
        if self.jobs == 0 {
            return Err(Error::arg("jobs must be at least 1"));
        }
        Ok(())
    }

    /// Every `(n, tau_r, tau_k_comp)` combination, in output order.
    pub fn cells(&self) -> Vec<(usize, f64, f64)> {
        let mut out = Vec::new();
        for &n in &self.n_list {
            for &tr in &self.tau_r {
                for &tk in &self.tau_k_comp {
                    out.push((n, tr, tk));
                }
            }
        }
        out
    }
}

/// One timed solve. `k0`, `k1` and `feas_residual` are empty when the solve
/// hit the time limit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub method: Method,
    pub n: usize,
    pub k: usize,
    pub tau_r: f64,
    pub tau_k_comp: f64,
    pub rep: usize,
    pub solve_seconds: f64,
    pub sort_seconds: f64,
    pub iterations: u64,
    pub k0: Option<usize>,
    pub k1: Option<usize>,
    pub feas_residual: Option<f64>,
}

impl BenchRecord {
    pub fn timed_out(&self) -> bool {
        self.k0.is_none()
    }
}

#[derive(Debug, Clone, Default)]
pub struct ExperimentReport {
    pub records: Vec<BenchRecord>,
    /// Infeasible or disagreeing solves, one message each.
    pub failures: Vec<String>,
}

impl ExperimentReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn derive_k(n: usize, tau_k_comp: f64) -> usize {
    ((tau_k_comp * n as f64).floor() as usize).clamp(1, n)
}

/// Generator for repetition `rep` of cell `cell`.
pub fn instance_rng(seed: u64, cell: usize, rep: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((cell as u64) << 32) | rep as u64);
    rng
}

pub fn generate_instance(n: usize, tau_r: f64, tau_k_comp: f64, seed: u64) -> Result<ProjectionInstance> {
    generate_with(&mut ChaCha8Rng::seed_from_u64(seed), n, tau_r, tau_k_comp, Vec::new())
}

/// Fills `buf` (reusing its allocation) with a fresh instance.
pub fn generate_with<R: Rng>(
    rng: &mut R,
    n: usize,
    tau_r: f64,
    tau_k_comp: f64,
    mut buf: Vec<f64>,
) -> Result<ProjectionInstance> {
    if n == 0 {
        return Err(Error::arg("n must be positive"));
    }
    let k = derive_k(n, tau_k_comp);
    buf.clear();
    buf.extend((0..n).map(|_| rng.random::<f64>()));
    let r = tau_r * top_k_sum(&buf, k)?;
    ProjectionInstance::finite(buf, k, r)
}

pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentReport> {
    spec.validate()?;
    if let Some(dir) = &spec.dump_dir {
        fs::create_dir_all(dir)?;
    }
    let cells = spec.cells();
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<Result<ExperimentReport>>>> = Mutex::new((0..cells.len()).map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..spec.jobs.min(cells.len()) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= cells.len() {
                    break;
                }
                let out = run_cell(spec, i, cells[i]);
                slots.lock().unwrap()[i] = Some(out);
            });
        }
    });

    let mut report = ExperimentReport::default();
    for slot in slots.into_inner().unwrap() {
        let cell = slot.expect("every cell was run")?;
        report.records.extend(cell.records);
        report.failures.extend(cell.failures);
    }
    if let Some(dir) = &spec.dump_dir {
        write_manifest(spec, dir)?;
    }
    Ok(report)
}

fn run_cell(spec: &ExperimentSpec, cell: usize, (n, tau_r, tau_k): (usize, f64, f64)) -> Result<ExperimentReport> {
    let mut report = ExperimentReport::default();
    let mut timed_out = vec![false; spec.methods.len()];
    let mut buf = Vec::with_capacity(n);
    for rep in 0..spec.reps {
        let inst = generate_with(&mut instance_rng(spec.seed, cell, rep), n, tau_r, tau_k, buf)?;
        if let Some(dir) = &spec.dump_dir {
            io::write_vector(&dir.join(format!("cell{cell}_rep{rep}.f64")), inst.x0())?;
        }
        let scale = top_k_sum(&inst.x0().iter().map(|v| v.abs()).collect::<Vec<_>>(), inst.k())?.max(1.0);
        let mut reference: Option<(Method, Vec<f64>)> = None;
        for (mi, &method) in spec.methods.iter().enumerate() {
            if timed_out[mi] {
                continue;
            }
            if rep == 0 && method != Method::Grid {
                timed_solve(spec, &inst, method)?;
            }
            let (rec, x) = timed_solve(spec, &inst, method)?;
            let rec = BenchRecord {
                tau_r,
                tau_k_comp: tau_k,
                rep,
                ..rec
            };
            if let Some(x) = x {
                let resid = rec.feas_residual.unwrap_or(0.0);
                if resid > FEAS_RTOL * inst.r().abs().max(1.0) {
                    report.failures.push(format!(
                        "{method} n={n} tau_r={tau_r} tau_k_comp={tau_k} rep={rep}: infeasible by {resid:e}"
                    ));
                }
                match &reference {
                    None => reference = Some((method, x)),
                    Some((m0, x0)) => {
                        let diff = x.iter().zip(x0).fold(0.0f64, |d, (a, b)| d.max((a - b).abs()));
                        if diff > spec.agree_tol * scale {
                            report.failures.push(format!(
                                "{method} vs {m0} n={n} tau_r={tau_r} tau_k_comp={tau_k} rep={rep}: max difference {diff:e}"
                            ));
                        }
                    }
                }
            } else {
                timed_out[mi] = true;
            }
            report.records.push(rec);
        }
        buf = inst.into_parts().0;
    }
    Ok(report)
}

/// Returns the record (cell fields left for the caller) and, unless the
/// solve timed out, the solution in input order.
fn timed_solve(
    spec: &ExperimentSpec,
    inst: &ProjectionInstance,
    method: Method,
) -> Result<(BenchRecord, Option<Vec<f64>>)> {
    let (k, r) = (inst.k(), inst.r());
    let mut sort_seconds = 0.0;
    let mut view = None;
    let start;
    // Results from the sorted paths stay in sorted order until the clock stops.
    let outcome: Result<ProjectionResult> = match spec.sort_mode {
        SortMode::Presorted => {
            let t = Instant::now();
            let v = view.insert(sort_desc(inst.x0())?);
            sort_seconds = t.elapsed().as_secs_f64();
            start = Instant::now();
            let deadline = spec.time_limit.map(|d| start + d);
            solve_sorted_until(&v.values, k, r, method, deadline)
        }
        SortMode::Unsorted if method == Method::Grid && spec.time_limit.is_some() => {
            start = Instant::now();
            let v = view.insert(sort_desc(inst.x0())?);
            let deadline = spec.time_limit.map(|d| start + d);
            solve_sorted_until(&v.values, k, r, method, deadline)
        }
        SortMode::Unsorted => {
            start = Instant::now();
            project(inst, method, &Tolerances::default())
        }
        SortMode::Partial => {
            start = Instant::now();
            project_partial_sort(inst, PartialSortHint::new(k)).map(|(res, _)| res)
        }
    };
    let solve_seconds = start.elapsed().as_secs_f64();
    let outcome = outcome.map(|mut res| {
        if let Some(v) = &view {
            res.x = v.unpermute(&res.x);
        }
        res
    });
    let base = BenchRecord {
        method,
        n: inst.n(),
        k,
        tau_r: 0.0,
        tau_k_comp: 0.0,
        rep: 0,
        solve_seconds,
        sort_seconds,
        iterations: 0,
        k0: None,
        k1: None,
        feas_residual: None,
    };
    match outcome {
        Ok(res) => {
            let resid = (top_k_sum(&res.x, k)? - r).max(0.0);
            let rec = BenchRecord {
                iterations: res.iterations as u64,
                k0: Some(res.k0),
                k1: Some(res.k1),
                feas_residual: Some(resid),
                ..base
            };
            Ok((rec, Some(res.x)))
        }
        Err(Error::TimedOut { visited }) => Ok((
            BenchRecord {
                iterations: visited,
                ..base
            },
            None,
        )),
        Err(e) => Err(e),
    }
}

fn write_manifest(spec: &ExperimentSpec, dir: &Path) -> Result<()> {
    let mut out = BufWriter::new(File::create(dir.join("manifest.csv"))?);
    writeln!(out, "file,n,k,r,tau_r,tau_k_comp,rep")?;
    for (cell, (n, tau_r, tau_k)) in spec.cells().into_iter().enumerate() {
        for rep in 0..spec.reps {
            let inst = generate_with(&mut instance_rng(spec.seed, cell, rep), n, tau_r, tau_k, Vec::new())?;
            writeln!(
                out,
                "cell{cell}_rep{rep}.f64,{n},{},{},{tau_r},{tau_k},{rep}",
                inst.k(),
                inst.r()
            )?;
        }
    }
    out.flush()?;
    Ok(())
}

pub fn write_csv<W: Write>(records: &[BenchRecord], w: W) -> Result<()> {
    let mut wr = csv::Writer::from_writer(w);
    for rec in records {
        wr.serialize(rec)?;
    }
    wr.flush()?;
    Ok(())
}

pub fn write_json<W: Write>(records: &[BenchRecord], w: W) -> Result<()> {
    serde_json::to_writer_pretty(w, records)?;
    Ok(())
}

/// Writes `records` to `path`. Refuses an empty record list.
pub fn emit_results(records: &[BenchRecord], format: ResultFormat, path: &Path) -> Result<()> {
    if records.is_empty() {
        return Err(Error::arg("no benchmark records to write"));
    }
    let mut out = BufWriter::new(File::create(path)?);
    match format {
        ResultFormat::Csv => write_csv(records, &mut out)?,
        ResultFormat::Json => write_json(records, &mut out)?,
    }
    out.flush()?;
    Ok(())
}

pub fn read_results(format: ResultFormat, path: &Path) -> Result<Vec<BenchRecord>> {
    let file = File::open(path)?;
    match format {
        ResultFormat::Csv => csv::Reader::from_reader(file)
            .deserialize()
            .map(|r| r.map_err(Error::from))
            .collect(),
        ResultFormat::Json => Ok(serde_json::from_reader(std::io::BufReader::new(file))?),
    }
}

/// Median, mean and sample standard deviation of one cell's solve times.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellSummary {
    pub method: Method,
    pub n: usize,
    pub k: usize,
    pub tau_r: f64,
    pub tau_k_comp: f64,
    pub reps: usize,
    pub timed_out: bool,
    pub median: f64,
    pub mean: f64,
    pub std: f64,
}

pub fn summarize(records: &[BenchRecord]) -> Vec<CellSummary> {
    let mut out: Vec<(CellSummary, Vec<f64>)> = Vec::new();
    for rec in records {
        let pos = out.iter().position(|(c, _)| {
            c.method == rec.method && c.n == rec.n && c.tau_r == rec.tau_r && c.tau_k_comp == rec.tau_k_comp
        });
        let i = pos.unwrap_or_else(|| {
            out.push((
                CellSummary {
                    method: rec.method,
                    n: rec.n,
                    k: rec.k,
                    tau_r: rec.tau_r,
                    tau_k_comp: rec.tau_k_comp,
                    reps: 0,
                    timed_out: false,
                    median: 0.0,
                    mean: 0.0,
                    std: 0.0,
                },
                Vec::new(),
            ));
            out.len() - 1
        });
        out[i].0.timed_out |= rec.timed_out();
        out[i].1.push(rec.solve_seconds);
    }
    out.into_iter()
        .map(|(mut c, times)| {
            c.reps = times.len();
            c.median = median(&times);
            c.mean = times.iter().sum::<f64>() / times.len() as f64;
            c.std = if times.len() > 1 {
                let var = times.iter().map(|t| (t - c.mean).powi(2)).sum::<f64>() / (times.len() - 1) as f64;
                var.sqrt()
            } else {
                0.0
            };
            c
        })
        .collect()
}

pub fn median(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return f64::NAN;
    }
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        0.5 * (v[m - 1] + v[m])
    }
}

/// Least-squares slope of `log y` against `log x`.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let (mx, my) = (lx.iter().sum::<f64>() / n, ly.iter().sum::<f64>() / n);
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}
