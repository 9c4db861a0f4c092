//! Runs the verification campaign and writes a JSON report.
//!
//! Exit codes: 0 when every check passes, 1 on failures, 2 on usage errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use supersphere::campaign::{check_single, run_campaign, CampaignConfig, CampaignError, Report, Status};
use supersphere::exec::Exec;

#[derive(Debug, Parser)]
#[command(name = "supersphere", version, about = "Exact verification campaign for N=2 super-Riemann spheres")]
struct Args {
    /// Number of Grassmann generators L (at least 4).
    #[arg(long, default_value_t = 6)]
    generators: usize,
    /// Index band for the Neveu-Schwarz checks.
    #[arg(long, default_value_t = 3)]
    band: i64,
    /// Truncation order of formal flows.
    #[arg(long, default_value_t = 8)]
    flow_order: usize,
    /// Degrees n for the per-sphere checks: `A..B` (inclusive) or a comma list.
    #[arg(long, default_value = "-3..3", allow_hyphen_values = true, value_parser = parse_n_range)]
    n_range: NRange,
    /// Random samples per property.
    #[arg(long, default_value_t = 20)]
    samples: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Run one check by id, e.g. `ns.jacobi` or `spheres.closure.n=2`.
    #[arg(long)]
    check: Option<String>,
    /// Record per-check wall time in the report.
    #[arg(long)]
    timings: bool,
    /// Evaluate samples on one thread.
    #[arg(long)]
    sequential: bool,
}

#[derive(Debug, Clone)]
struct NRange(Vec<i32>);

fn parse_n_range(s: &str) -> Result<NRange, String> {
    let bad = |_| format!("invalid n range '{s}'");
    let v: Vec<i32> = if let Some((a, b)) = s.split_once("..") {
        let (a, b): (i32, i32) = (a.trim().parse().map_err(bad)?, b.trim().parse().map_err(bad)?);
        (a..=b).collect()
    } else {
        s.split(',').map(|x| x.trim().parse().map_err(bad)).collect::<Result<_, _>>()?
    };
    if v.is_empty() {
        return Err(format!("n range '{s}' is empty"));
    }
    Ok(NRange(v))
}

fn run(args: Args) -> Result<Report, CampaignError> {
    let cfg = CampaignConfig {
        generators: args.generators,
        band: args.band,
        flow_order: args.flow_order,
        n_range: args.n_range.0,
        samples: args.samples,
        seed: args.seed,
        timings: args.timings,
        exec: if args.sequential { Exec::Sequential } else { Exec::default() },
    };
    let report = match &args.check {
        Some(id) => check_single(id, &cfg)?,
        None => run_campaign(&cfg)?,
    };
    match &args.report {
        Some(path) => std::fs::write(path, report.to_json())?,
        None => print!("{}", report.to_json()),
    }
    Ok(report)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let to_file = args.report.is_some();
    match run(args) {
        Ok(report) => {
            for c in &report.checks {
                let tag = if c.status == Status::Pass { "pass" } else { "FAIL" };
                if to_file {
                    println!("{tag} {} ({})", c.id, c.summary);
                } else {
                    eprintln!("{tag} {} ({})", c.id, c.summary);
                }
            }
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CampaignError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n_ranges() {
        assert_eq!(parse_n_range("-3..3").unwrap().0, (-3..=3).collect::<Vec<_>>());
        assert_eq!(parse_n_range("2, -5").unwrap().0, vec![2, -5]);
        assert!(parse_n_range("3..1").is_err());
        assert!(parse_n_range("x").is_err());
    }
}
