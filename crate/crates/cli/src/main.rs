use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;
use taumackey_cli::spec::{read_json, read_json_or_word};
use taumackey_cli::{render_text, run_batch, run_job, CliError, Command, JobSpec, Manifest, EXIT_USAGE};

#[derive(Parser)]
#[command(name = "taumackey", version, about = "Twisted Frobenius-Schur indicators, simple reducibility and Gelfand pairs")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for the random combination in the character-table solver.
    #[arg(long, global = true, env = "TAUMACKEY_SEED")]
    seed: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Sub {
    /// Character table with classes, degrees and Frobenius-Schur indicators.
    CharTable(JobArgs),
    /// Classical and twisted indicators, self-conjugate census, ζ expansion.
    Fs(JobArgs),
    /// τ-simple reducibility by definition, Mackey cosets and Mackey-Wigner.
    SimplyReducible(JobArgs),
    /// Gelfand criteria, spherical functions and twisted identities on G/K.
    Gelfand(JobArgs),
    /// CL(1..=n) with the Clifford τ, or the index-two Clifford theory of --group.
    CliffordBattery(JobArgs),
    /// Condition (★) for an automorphism σ.
    ConditionStar(JobArgs),
    /// Σ ζ_τ^{n+1} against Σ v^n, cross-checked by orbit scans.
    PowerSums(JobArgs),
    /// Run a JSON manifest of jobs.
    Batch(BatchArgs),
}

#[derive(Args)]
struct JobArgs {
    /// Group spec as JSON, or @file.
    #[arg(long)]
    group: Option<String>,
    /// `inverse`, `identity`, `clifford`, or a JSON τ spec.
    #[arg(long)]
    tau: Option<String>,
    #[arg(long)]
    subgroup: Option<String>,
    /// `identity`, `swap`, or a JSON σ spec.
    #[arg(long)]
    sigma: Option<String>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    budget_pairs: Option<usize>,
}

#[derive(Args)]
struct BatchArgs {
    manifest: PathBuf,
    #[arg(long, default_value = ".taumackey-cache")]
    cache_dir: PathBuf,
    #[arg(long)]
    no_cache: bool,
    #[arg(long, default_value_t = 4)]
    threads: usize,
}

fn job_spec(command: Command, a: JobArgs) -> Result<JobSpec, CliError> {
    Ok(JobSpec {
        command,
        group: a.group.map(|g| read_json(&g, "group")).transpose()?,
        tau: a.tau.map(|t| read_json_or_word(&t, "tau")).transpose()?,
        subgroup: a.subgroup.map(|s| read_json(&s, "subgroup")).transpose()?,
        sigma: a.sigma.map(|s| read_json_or_word(&s, "sigma")).transpose()?,
        n: a.n,
        seed: None,
        budget_pairs: a.budget_pairs,
    })
}

fn emit(report: &Value, format: Format, out: Option<&PathBuf>) -> std::io::Result<()> {
    let text = match format {
        Format::Json => serde_json::to_string_pretty(report).expect("reports serialize") + "\n",
        Format::Text => render_text(report),
    };
    match out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let start = Instant::now();
    let command = match cli.command {
        Sub::CharTable(a) => (Command::CharTable, a),
        Sub::Fs(a) => (Command::Fs, a),
        Sub::SimplyReducible(a) => (Command::SimplyReducible, a),
        Sub::Gelfand(a) => (Command::Gelfand, a),
        Sub::CliffordBattery(a) => (Command::CliffordBattery, a),
        Sub::ConditionStar(a) => (Command::ConditionStar, a),
        Sub::PowerSums(a) => (Command::PowerSums, a),
        Sub::Batch(b) => {
            let jobs = match std::fs::read_to_string(&b.manifest)
                .map_err(|e| CliError::usage(format!("manifest: cannot read {}: {e}", b.manifest.display())))
                .and_then(|t| Manifest::parse(&t))
            {
                Ok(j) => j,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(e.code as u8);
                }
            };
            let cache = (!b.no_cache).then_some(b.cache_dir.as_path());
            let outcome = run_batch(&jobs, cli.seed, cache, b.threads);
            eprintln!(
                "{} jobs, {} cache hits, {} misses, {:.2?}",
                jobs.len(),
                outcome.cache_hits,
                outcome.cache_misses,
                start.elapsed()
            );
            if let Err(e) = emit(&outcome.report, cli.format, cli.out.as_ref()) {
                eprintln!("error: cannot write report: {e}");
                return ExitCode::from(EXIT_USAGE as u8);
            }
            return ExitCode::from(outcome.exit_code as u8);
        }
    };
    let job = match job_spec(command.0, command.1) {
        Ok(j) => j,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.code as u8);
        }
    };
    let outcome = run_job(&job, cli.seed);
    if let Some(msg) = outcome.report.get("error").and_then(Value::as_str) {
        eprintln!("error: {msg}");
    }
    eprintln!("{} finished in {:.2?}", job.command.name(), start.elapsed());
    if let Err(e) = emit(&outcome.report, cli.format, cli.out.as_ref()) {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(EXIT_USAGE as u8);
    }
    ExitCode::from(outcome.exit_code as u8)
}
