use std::path::PathBuf;

use clap::ArgGroup;
use topksum::io::{read_vector, write_vector};
use topksum::{
    project, project_partial_sort, top_k_sum, Method, PartialSortHint, ProjectionInstance, Result, Tolerances,
};

use crate::Status;

#[derive(Debug, clap::Args)]
#[command(group(ArgGroup::new("budget").required(true).args(["r", "tau_r"])))]
pub struct Args {
    /// Input vector (.txt: one value per line, .f64: binary).
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    k: usize,
    /// Budget on the sum of the k largest entries.
    #[arg(long, allow_negative_numbers = true)]
    r: Option<f64>,
    /// Budget as a multiple of the input's own top-k sum.
    #[arg(long, allow_negative_numbers = true)]
    tau_r: Option<f64>,
    #[arg(long, default_value = "esgs")]
    method: Method,
    /// Sort only the L largest entries, escalating as needed (esgs only).
    #[arg(long, value_name = "L")]
    partial_sort: Option<usize>,
    /// Where to write the solution; same format rules as --input.
    #[arg(long)]
    output: Option<PathBuf>,
}

pub fn run(a: Args) -> Result<Status> {
    if let Some(out) = &a.output {
        topksum::io::VectorFormat::from_path(out)?;
    }
    let x0 = read_vector(&a.input)?;
    if a.k == 0 || a.k > x0.len() {
        return Err(topksum::Error::InvalidArgument(format!(
            "--k {} outside 1..={}",
            a.k,
            x0.len()
        )));
    }
    let r = match (a.r, a.tau_r) {
        (Some(r), _) => r,
        (None, Some(t)) => t * top_k_sum(&x0, a.k)?,
        (None, None) => unreachable!("clap requires one budget flag"),
    };
    let inst = ProjectionInstance::finite(x0, a.k, r)?;
    let res = match a.partial_sort {
        Some(l) => {
            if a.method != Method::Esgs {
                return Err(topksum::Error::InvalidArgument(
                    "--partial-sort runs the esgs engine only".into(),
                ));
            }
            project_partial_sort(&inst, PartialSortHint::new(l))?.0
        }
        None => project(&inst, a.method, &Tolerances::default())?,
    };
    if let Some(out) = &a.output {
        write_vector(out, &res.x)?;
    }
    let theta = res.theta.map_or_else(|| "none".to_string(), |t| t.to_string());
    println!(
        "lambda={} theta={} k0={} k1={} iters={}",
        res.lambda, theta, res.k0, res.k1, res.iterations
    );
    Ok(Status::Ok)
}
