//! Batch front end: build systems and modules from a JSON config, run
//! the exact check suites, emit a machine-readable report.
//!
//! Exit codes: 0 all jobs pass, 1 some job failed (the report carries a
//! witness), 2 the config was malformed.

mod config;
mod jobs;
mod report;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use config::{JobConfig, KNOWN_JOBS};
use report::{Report, Status};

#[derive(Parser, Debug)]
#[command(name = "toroidal", version, about = "exact toroidal Lie algebra check runner")]
struct Args {
    /// Path to the JSON job configuration
    #[arg(long)]
    config: Option<PathBuf>,

    /// Where to write the JSON report (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,

    /// Override the seed from the config
    #[arg(long)]
    seed: Option<u64>,

    /// Suppress the per-job progress lines
    #[arg(long)]
    quiet: bool,

    /// List the known job names and exit
    #[arg(long)]
    list_jobs: bool,

    /// Run independent jobs on separate threads
    #[arg(long)]
    parallel: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    if args.list_jobs {
        for name in KNOWN_JOBS {
            println!("{name}");
        }
        return ExitCode::SUCCESS;
    }
    let Some(config_path) = &args.config else {
        eprintln!("error: --config is required (or use --list-jobs)");
        return ExitCode::from(2);
    };
    let raw = match std::fs::read_to_string(config_path) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", config_path.display());
            return ExitCode::from(2);
        }
    };
    let cfg: JobConfig = match serde_json::from_str(&raw) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: config does not match the schema: {e}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = cfg.validate() {
        eprintln!("error: invalid config: {e}");
        return ExitCode::from(2);
    }
    let seed = args.seed.unwrap_or(cfg.seed);

    let started: Vec<Instant> = Vec::new();
    drop(started);
    let mut results: Vec<(usize, report::JobResult, u128)> = if args.parallel {
        std::thread::scope(|scope| {
            let mut handles = Vec::new();
            for (i, job) in cfg.jobs.iter().enumerate() {
                let cfg_ref = &cfg;
                handles.push(scope.spawn(move || {
                    let t0 = Instant::now();
                    let r = jobs::run_job(cfg_ref, job, seed);
                    (i, r, t0.elapsed().as_millis())
                }));
            }
            handles.into_iter().map(|h| h.join().expect("job thread")).collect()
        })
    } else {
        cfg.jobs
            .iter()
            .enumerate()
            .map(|(i, job)| {
                let t0 = Instant::now();
                let r = jobs::run_job(&cfg, job, seed);
                (i, r, t0.elapsed().as_millis())
            })
            .collect()
    };
    results.sort_by_key(|(i, _, _)| *i);

    let mut timing_ms = BTreeMap::new();
    let mut job_results = Vec::new();
    let mut all_pass = true;
    for (i, r, ms) in results {
        timing_ms.insert(format!("{i}:{}", r.name), ms);
        if r.status == Status::Fail {
            all_pass = false;
        }
        if !args.quiet {
            let tag = match r.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
            };
            eprintln!("[{tag}] {}", r.name);
        }
        job_results.push(r);
    }
    let report = Report { version: 1, seed, jobs: job_results, timing_ms };
    let rendered = serde_json::to_string_pretty(&report).expect("report serializes");
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, rendered + "\n") {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => println!("{rendered}"),
    }
    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
