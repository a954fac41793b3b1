//! Manifests of jobs, run on a bounded pool with a content-addressed cache.

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use taumackey::characters::DEFAULT_TABLE_SEED;

use crate::{run_job, CliError, JobSpec, EXIT_OK, VERSION};

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum Manifest {
    List(Vec<JobSpec>),
    Object { jobs: Vec<JobSpec> },
}

impl Manifest {
    pub fn parse(text: &str) -> Result<Vec<JobSpec>, CliError> {
        let m: Manifest =
            serde_json::from_str(text).map_err(|e| CliError::usage(format!("manifest: {e}")))?;
        Ok(match m {
            Manifest::List(jobs) | Manifest::Object { jobs } => jobs,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BatchOutcome {
    pub report: Value,
    pub exit_code: i32,
    pub cache_hits: usize,
    pub cache_misses: usize,
}

/// Content hash of `(spec, seed, version)`.
pub fn cache_key(job: &JobSpec, seed: u64) -> String {
    let canonical = json!({ "spec": job, "seed": seed.to_string(), "version": VERSION });
    hex::encode(Sha256::digest(canonical.to_string().as_bytes()))
}

fn cached(dir: Option<&Path>, key: &str) -> Option<Value> {
    let text = fs::read_to_string(dir?.join(format!("{key}.json"))).ok()?;
    serde_json::from_str(&text).ok()
}

fn store(dir: &Path, key: &str, report: &Value) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    let tmp: PathBuf = dir.join(format!("{key}.json.tmp"));
    fs::write(&tmp, serde_json::to_string_pretty(report).expect("reports serialize"))?;
    fs::rename(tmp, dir.join(format!("{key}.json")))
}

/// Runs every job; per-job failures stay in that job's report. The
/// aggregate exit code is the largest job exit code.
pub fn run_batch(jobs: &[JobSpec], default_seed: Option<u64>, cache_dir: Option<&Path>, threads: usize) -> BatchOutcome {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .expect("thread pool");
    let results: Vec<(String, Value, bool)> = pool.install(|| {
        jobs.par_iter()
            .map(|job| {
                let seed = job.seed.or(default_seed).unwrap_or(DEFAULT_TABLE_SEED);
                let key = cache_key(job, seed);
                if let Some(report) = cached(cache_dir, &key) {
                    return (key, report, true);
                }
                let outcome = run_job(job, default_seed);
                if let Some(dir) = cache_dir {
                    if let Err(e) = store(dir, &key, &outcome.report) {
                        eprintln!("warning: cannot write cache entry {key}: {e}");
                    }
                }
                (key, outcome.report, false)
            })
            .collect()
    });

    let hits = results.iter().filter(|r| r.2).count();
    let exit_code = results
        .iter()
        .map(|(_, r, _)| r["exit_code"].as_i64().unwrap_or(1) as i32)
        .max()
        .unwrap_or(EXIT_OK);
    let summary: Vec<Value> = results
        .iter()
        .enumerate()
        .map(|(i, (key, r, _))| {
            json!({
                "index": i,
                "command": r["command"],
                "group": r["input"]["group"],
                "status": r["status"],
                "exit_code": r["exit_code"],
                "key": key,
            })
        })
        .collect();
    let report = json!({
        "tool": "taumackey",
        "version": VERSION,
        "jobs": jobs.len(),
        "exit_code": exit_code,
        "summary": summary,
        "reports": results.into_iter().map(|(_, r, _)| r).collect::<Vec<_>>(),
    });
    BatchOutcome {
        report,
        exit_code,
        cache_hits: hits,
        cache_misses: jobs.len() - hits,
    }
}
