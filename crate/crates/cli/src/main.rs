//! `lsa-sim`: batch runner for single runs and three-policy sweeps.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use lsa_core::config::DEFAULT_CONFIG;
use lsa_core::metrics::{comparison_csv, export_run};
use lsa_core::{load_config, Policy, RunOutput, ScenarioConfig, Simulation};

const THREADS_ENV: &str = "LSA_SIM_THREADS";

#[derive(Parser)]
#[command(name = "lsa-sim", version, about = "Airport LSA uplink simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate one policy and write its CSV set.
    Run {
        #[command(flatten)]
        common: CommonArgs,
        /// Control policy: ignore, shutdown or limit-power.
        #[arg(long)]
        policy: Policy,
    },
    /// Simulate all three policies on one deployment and compare them.
    Sweep {
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Args)]
struct CommonArgs {
    /// Configuration file; the bundled defaults apply when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Deployment and shadowing seed (overrides `seed`).
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
    /// Simulated duration in seconds (overrides `observation_s`).
    #[arg(long)]
    duration: Option<f64>,
    /// Comma-separated snapshot times in seconds (overrides `snapshot_times_s`).
    #[arg(long)]
    snapshots: Option<String>,
    /// Interference threshold in dBm (overrides `interference_threshold_dbm`).
    #[arg(long = "i0", allow_negative_numbers = true)]
    i0: Option<f64>,
}

enum Failure {
    Config(String),
    Runtime(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Runtime(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Runtime(e.into())
    }
}

/// Effective configuration: defaults, then the file, then flags.
fn resolve(args: &CommonArgs) -> Result<(ScenarioConfig, Option<f64>), Failure> {
    let text = match &args.config {
        Some(path) => fs::read_to_string(path)
            .map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?,
        None => DEFAULT_CONFIG.to_string(),
    };
    let mut cfg = load_config(&text).map_err(|e| match &args.config {
        Some(path) => Failure::Config(format!("{}: {e}", path.display())),
        None => Failure::Config(e.to_string()),
    })?;
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if let Some(i0) = args.i0 {
        cfg.interference_threshold_dbm = i0;
    }
    if let Some(times) = &args.snapshots {
        cfg.set("snapshot_times_s", times)
            .map_err(|e| Failure::Config(format!("--snapshots: {e}")))?;
    }
    cfg.validate().map_err(|e| Failure::Config(e.to_string()))?;
    if let Some(d) = args.duration {
        if !(d.is_finite() && d >= 0.0) {
            return Err(Failure::Config(format!(
                "--duration: `{d}` must be a finite number >= 0"
            )));
        }
    }
    Ok((cfg, args.duration))
}

fn simulate(cfg: &ScenarioConfig, policy: Policy, duration: Option<f64>) -> RunOutput {
    let sim = Simulation::new(cfg, policy);
    match duration {
        Some(d) => sim.with_duration(d),
        None => sim,
    }
    .run()
}

#[derive(Serialize)]
struct FileEntry {
    name: String,
    bytes: u64,
}

#[derive(Serialize)]
struct Manifest {
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    policies: Vec<&'static str>,
    seed: u64,
    duration_override_s: Option<f64>,
    config: String,
    wall_clock_s: f64,
    files: Vec<FileEntry>,
    warnings: Vec<String>,
}

fn file_entries(root: &Path, paths: &[PathBuf]) -> std::io::Result<Vec<FileEntry>> {
    paths
        .iter()
        .map(|p| {
            Ok(FileEntry {
                name: p
                    .strip_prefix(root)
                    .unwrap_or(p)
                    .to_string_lossy()
                    .replace('\\', "/"),
                bytes: fs::metadata(p)?.len(),
            })
        })
        .collect()
}

/// Writes `manifest.json` through a temporary file and a rename.
fn write_manifest(dir: &Path, manifest: &Manifest) -> anyhow::Result<()> {
    let tmp = dir.join("manifest.json.tmp");
    let mut body = serde_json::to_string_pretty(manifest)?;
    body.push('\n');
    fs::write(&tmp, body).with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, dir.join("manifest.json")).context("finalising manifest.json")?;
    Ok(())
}

/// Exports one run and its manifest into `dir`.
fn write_run(
    dir: &Path,
    out: &RunOutput,
    duration: Option<f64>,
    started: Instant,
) -> anyhow::Result<Vec<PathBuf>> {
    let files =
        export_run(&out.records, dir).with_context(|| format!("writing {}", dir.display()))?;
    let manifest = Manifest {
        tool: "lsa-sim",
        version: env!("CARGO_PKG_VERSION"),
        command: "run",
        policies: vec![out.records.policy.as_str()],
        seed: out.config.seed,
        duration_override_s: duration,
        config: out.config.to_text(),
        wall_clock_s: started.elapsed().as_secs_f64(),
        files: file_entries(dir, &files)?,
        warnings: out.warnings.clone(),
    };
    write_manifest(dir, &manifest)?;
    Ok(files)
}

fn run(common: &CommonArgs, policy: Policy) -> Result<(), Failure> {
    let (cfg, duration) = resolve(common)?;
    let started = Instant::now();
    let out = simulate(&cfg, policy, duration);
    for w in &out.warnings {
        eprintln!("warning: {w}");
    }
    write_run(&common.out, &out, duration, started)?;
    Ok(())
}

/// Worker count for a sweep of `jobs` runs; 0 in the environment means serial.
fn sweep_threads(jobs: usize) -> Result<usize, Failure> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => {
            let n: usize = v.trim().parse().map_err(|_| {
                Failure::Config(format!("{THREADS_ENV}=`{v}` is not a non-negative integer"))
            })?;
            Ok(n.clamp(1, jobs))
        }
        Err(_) => Ok(std::thread::available_parallelism()
            .map_or(1, |n| n.get())
            .clamp(1, jobs)),
    }
}

type RunResult = anyhow::Result<(RunOutput, Vec<PathBuf>)>;

fn sweep(common: &CommonArgs) -> Result<(), Failure> {
    let (cfg, duration) = resolve(common)?;
    let threads = sweep_threads(Policy::ALL.len())?;
    let started = Instant::now();
    fs::create_dir_all(&common.out)?;

    let next = AtomicUsize::new(0);
    let failed = AtomicBool::new(false);
    let results: Mutex<Vec<Option<RunResult>>> =
        Mutex::new((0..Policy::ALL.len()).map(|_| None).collect());
    let worker = || loop {
        let i = next.fetch_add(1, Ordering::SeqCst);
        if i >= Policy::ALL.len() || failed.load(Ordering::SeqCst) {
            break;
        }
        let policy = Policy::ALL[i];
        let run_started = Instant::now();
        let out = simulate(&cfg, policy, duration);
        let written = write_run(
            &common.out.join(policy.as_str()),
            &out,
            duration,
            run_started,
        );
        if written.is_err() {
            failed.store(true, Ordering::SeqCst);
        }
        results.lock().expect("no worker panicked")[i] = Some(written.map(|w| (out, w)));
    };
    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(worker);
        }
    });

    let mut outputs = Vec::with_capacity(Policy::ALL.len());
    let mut written = Vec::new();
    for (policy, slot) in Policy::ALL
        .iter()
        .zip(results.into_inner().expect("no worker panicked"))
    {
        match slot {
            Some(Ok((out, files))) => {
                for w in &out.warnings {
                    eprintln!("warning [{policy}]: {w}");
                }
                written.extend(files);
                written.push(common.out.join(policy.as_str()).join("manifest.json"));
                outputs.push(out);
            }
            Some(Err(e)) => return Err(e.context(format!("{policy} run failed")).into()),
            None => {
                return Err(anyhow::anyhow!("{policy} run aborted after an earlier failure").into())
            }
        }
    }

    let by_policy =
        |p: Policy| &outputs[Policy::ALL.iter().position(|q| *q == p).expect("listed")].records;
    let table = comparison_csv(
        by_policy(Policy::Ignore),
        by_policy(Policy::Shutdown),
        by_policy(Policy::LimitPower),
    )
    .map_err(|e| anyhow::anyhow!("joining energy series: {e}"))?;
    let comparison = common.out.join("comparison.csv");
    fs::write(&comparison, table)?;
    written.push(comparison);

    let manifest = Manifest {
        tool: "lsa-sim",
        version: env!("CARGO_PKG_VERSION"),
        command: "sweep",
        policies: Policy::ALL.iter().map(|p| p.as_str()).collect(),
        seed: cfg.seed,
        duration_override_s: duration,
        config: cfg.to_text(),
        wall_clock_s: started.elapsed().as_secs_f64(),
        files: file_entries(&common.out, &written)?,
        warnings: outputs
            .iter()
            .flat_map(|o| o.warnings.iter().cloned())
            .collect(),
    };
    write_manifest(&common.out, &manifest)?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run { common, policy } => run(common, *policy),
        Command::Sweep { common } => sweep(common),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
