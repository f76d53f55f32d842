use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use topksum::bench::REFERENCE_TAU_R;
use topksum::oracle::{kkt_verify, project_exhaustive, MAX_EXHAUSTIVE_N};
use topksum::{find_index_pair, project, sort_desc, top_k_sum, Error, Method, ProjectionInstance, Result, Tolerances};

use crate::Status;

#[derive(Debug, clap::Args)]
pub struct Args {
    /// Largest instance size; sizes are drawn from 2..=n-max.
    #[arg(long, default_value_t = 64)]
    n_max: usize,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// File receiving the first failing instance.
    #[arg(long, default_value = "check_failure.txt")]
    dump: PathBuf,
    /// Corrupt one engine's output, to exercise the failure path.
    #[arg(long, hide = true)]
    inject_fault: bool,
}

pub fn run(a: Args) -> Result<Status> {
    if a.trials == 0 {
        return Err(Error::InvalidArgument("--trials must be positive".into()));
    }
    if a.n_max < 2 || a.n_max > MAX_EXHAUSTIVE_N {
        return Err(Error::InvalidArgument(format!(
            "--n-max must lie in 2..={MAX_EXHAUSTIVE_N}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let (mut passed, mut failed) = (0usize, 0usize);
    let mut first_failure: Option<(ProjectionInstance, String)> = None;
    for trial in 0..a.trials {
        let inst = random_instance(&mut rng, a.n_max, trial % 2 == 1)?;
        match check_instance(&inst, a.inject_fault)? {
            None => passed += 1,
            Some(why) => {
                failed += 1;
                if first_failure.is_none() {
                    first_failure = Some((inst, why));
                }
            }
        }
    }
    println!("passed={passed} failed={failed}");
    match first_failure {
        None => Ok(Status::Ok),
        Some((inst, why)) => {
            let mut out = format!("# {why}\n# n={} k={} r={}\n", inst.n(), inst.k(), inst.r());
            for v in inst.x0() {
                writeln!(out, "{v}").unwrap();
            }
            fs::write(&a.dump, out)?;
            eprintln!("first failure written to {}: {why}", a.dump.display());
            Ok(Status::Failed)
        }
    }
}

/// Uniform data, or small integers to force ties when `ties` is set.
fn random_instance(rng: &mut ChaCha8Rng, n_max: usize, ties: bool) -> Result<ProjectionInstance> {
    let n = rng.random_range(2..=n_max);
    let k = rng.random_range(1..=n);
    let x0: Vec<f64> = if ties {
        (0..n).map(|_| rng.random_range(0..6) as f64).collect()
    } else {
        (0..n).map(|_| rng.random::<f64>()).collect()
    };
    let tau_r = REFERENCE_TAU_R[rng.random_range(0..REFERENCE_TAU_R.len())];
    let r = tau_r * top_k_sum(&x0, k)?;
    ProjectionInstance::finite(x0, k, r)
}

/// `None` when every engine matches the oracle and passes the KKT check.
fn check_instance(inst: &ProjectionInstance, inject_fault: bool) -> Result<Option<String>> {
    let (k, r) = (inst.k(), inst.r());
    let view = sort_desc(inst.x0())?;
    let feasible = top_k_sum(inst.x0(), k)? <= r;
    let (reference, pair) = if feasible {
        (inst.x0().to_vec(), find_index_pair(&view.values, k)?)
    } else {
        match project_exhaustive(&view.values, k, r) {
            Ok(res) => (view.unpermute(&res.x), (res.k0, res.k1)),
            Err(e) => return Ok(Some(format!("oracle: {e}"))),
        }
    };
    let scale = inst.x0().iter().fold(1.0f64, |m, v| m.max(v.abs()));
    for method in Method::ALL {
        let mut res = match project(inst, method, &Tolerances::default()) {
            Ok(res) => res,
            Err(e) => return Ok(Some(format!("{method}: {e}"))),
        };
        if inject_fault && method == Method::Plcp {
            res.x[0] += 1e-3;
        }
        let diff = res.x.iter().zip(&reference).fold(0.0f64, |d, (a, b)| d.max((a - b).abs()));
        if diff > 1e-10 * scale {
            return Ok(Some(format!("{method} differs from the oracle by {diff:e}")));
        }
        // Float rounding can stop pivoting one breakpoint early when the
        // budget is met exactly at it; the plateau reported is then a
        // sub-block of the true one (x itself is unaffected).
        let pair_ok = if method == Method::Plcp {
            pair.0 <= res.k0 && res.k1 <= pair.1
        } else {
            (res.k0, res.k1) == pair
        };
        if !pair_ok {
            return Ok(Some(format!(
                "{method} reports index pair ({}, {}), oracle has {pair:?}",
                res.k0, res.k1
            )));
        }
        let sorted = topksum::ProjectionResult {
            x: view.perm.iter().map(|&i| res.x[i]).collect(),
            ..res
        };
        if !kkt_verify(&view.values, &sorted, k, r) {
            return Ok(Some(format!("{method} fails the optimality check")));
        }
    }
    Ok(None)
}
