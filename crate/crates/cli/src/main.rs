use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::LazyLock;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use log::info;

use industrial_benchmark::harness::{
    write_dataset, write_trace, EvalStats, DEFAULT_SET_POINTS, REFERENCE_MEAN_REWARD,
    REFERENCE_MEAN_UNCERTAINTY, REFERENCE_SD,
};
use industrial_benchmark::{
    evaluate_policy, generate_dataset, names, rollout, BuiltinPolicy, Format, MisCalibrationMode,
    RunSpec, SetPoint,
};

/// Directory used for outputs when `--out` is not given.
const OUTPUT_DIR_VAR: &str = "IB_OUTPUT_DIR";

static VERSION: LazyLock<String> = LazyLock::new(|| {
    format!(
        "{} (schema {:016x})",
        env!("CARGO_PKG_VERSION"),
        names::schema_fingerprint()
    )
});

#[derive(Debug, Parser)]
#[command(name = "ibench", version = VERSION.as_str(), about = "Industrial Benchmark simulator")]
struct Cli {
    /// Increase log verbosity (-v info, -vv debug)
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a max-entropy dataset of (O, a, O', r) tuples
    Generate {
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Evaluate the max-entropy policy and compare with the published figures
    Baseline {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
        episodes: u64,
    },
    /// Evaluate a built-in policy (max-entropy, constant:dv,dg,ds, hold[:v,g,s])
    Evaluate {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
        episodes: u64,
        #[arg(long, value_parser = parse_policy)]
        policy: BuiltinPolicy<f64>,
    },
    /// Step with random actions and record the full extended state
    Trace {
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Args)]
struct RunArgs {
    #[arg(long, default_value_t = 1)]
    seed: u64,

    /// Comma-separated set points in [0, 100] [default: 10,20,...,100; trace: 50]
    #[arg(long, value_parser = parse_set_points)]
    set_points: Option<SetPoints>,

    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    steps: u64,

    #[arg(long, default_value = "disabled", value_parser = parse_miscalibration)]
    miscal: MisCalibrationMode<f64>,
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Output file (default: a seed-stamped file in $IB_OUTPUT_DIR or the current directory)
    #[arg(long)]
    out: Option<PathBuf>,

    #[arg(long, default_value = "csv", value_parser = parse_format)]
    format: Format,
}

#[derive(Debug, Clone)]
struct SetPoints(Vec<f64>);

fn parse_set_points(s: &str) -> Result<SetPoints, String> {
    let mut points = s
        .split(',')
        .map(|p| {
            let x: f64 = p
                .trim()
                .parse()
                .map_err(|_| format!("`{p}` is not a number"))?;
            SetPoint::new(x)
                .map(|sp| sp.value())
                .map_err(|e| e.to_string())
        })
        .collect::<Result<Vec<_>, _>>()?;
    points.sort_by(f64::total_cmp);
    points.dedup();
    Ok(SetPoints(points))
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse()
        .map_err(|e: industrial_benchmark::Error| e.to_string())
}

fn parse_miscalibration(s: &str) -> Result<MisCalibrationMode<f64>, String> {
    match s {
        "disabled" => Ok(MisCalibrationMode::Disabled),
        _ => Err(format!(
            "unknown mis-calibration mode `{s}` (available: disabled)"
        )),
    }
}

fn parse_policy(s: &str) -> Result<BuiltinPolicy<f64>, String> {
    s.parse()
        .map_err(|e: industrial_benchmark::Error| e.to_string())
}

impl RunArgs {
    fn spec(&self, default_set_points: &[f64]) -> RunSpec<f64> {
        let set_points = match &self.set_points {
            Some(SetPoints(points)) => points.clone(),
            None => default_set_points.to_vec(),
        };
        let mut spec = RunSpec::new(set_points, self.steps as usize, self.seed);
        spec.miscalibration = self.miscal.clone();
        spec
    }
}

impl OutputArgs {
    fn path(&self, kind: &str, seed: u64) -> PathBuf {
        self.out.clone().unwrap_or_else(|| {
            let dir = std::env::var_os(OUTPUT_DIR_VAR)
                .map(PathBuf::from)
                .unwrap_or_else(|| PathBuf::from("."));
            dir.join(format!("ib-{kind}-seed{seed}.{}", self.format.extension()))
        })
    }
}

fn ensure_parent(path: &Path) -> Result<()> {
    match path.parent() {
        Some(dir) if !dir.as_os_str().is_empty() => std::fs::create_dir_all(dir)
            .with_context(|| format!("creating output directory {}", dir.display())),
        _ => Ok(()),
    }
}

fn print_stats(label: &str, stats: &EvalStats) {
    println!("policy            {label}");
    println!(
        "episodes          {} ({} steps total)",
        stats.episodes, stats.steps
    );
    println!("mean reward       {:.4}", stats.mean);
    println!("sd (episodes)     {:.4}", stats.sd);
    println!("stderr (episodes) {:.4}", stats.stderr);
    println!(
        "sd/stderr (steps) {:.4} / {:.4}",
        stats.per_step.sd, stats.per_step.stderr
    );
    println!(
        "sd/stderr (set points) {:.4} / {:.4}",
        stats.per_set_point.sd, stats.per_set_point.stderr
    );
    if stats.clamped_actions > 0 {
        println!("clamped actions   {}", stats.clamped_actions);
    }
    let mut by_point = stats.set_point_means.clone();
    by_point.sort_by(|a, b| a.0.total_cmp(&b.0));
    for (p, mean) in by_point {
        println!("  p={p:<5} mean {mean:.4}");
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Generate { run, output } => {
            let spec = run.spec(&DEFAULT_SET_POINTS);
            let path = output.path("dataset", spec.seed);
            let started = Instant::now();
            let dataset = generate_dataset(&spec)?;
            ensure_parent(&path)?;
            write_dataset(&dataset, &path, output.format)?;
            info!("generated in {:.2?}", started.elapsed());
            println!(
                "{} tuples written to {}",
                dataset.tuple_count(),
                path.display()
            );
        }
        Command::Baseline { run, episodes } => {
            let stats = evaluate_policy(
                &BuiltinPolicy::MaxEntropy,
                &run.spec(&DEFAULT_SET_POINTS),
                episodes,
            )?;
            print_stats("max-entropy", &stats);
            println!(
                "published         mean {REFERENCE_MEAN_REWARD} ± {REFERENCE_MEAN_UNCERTAINTY}, sd {REFERENCE_SD}"
            );
        }
        Command::Evaluate {
            run,
            episodes,
            policy,
        } => {
            let stats = evaluate_policy(&policy, &run.spec(&DEFAULT_SET_POINTS), episodes)?;
            print_stats(&policy.to_string(), &stats);
        }
        Command::Trace { run, output } => {
            let spec = run.spec(&[50.0]);
            let path = output.path("trace", spec.seed);
            let dataset = rollout(&spec, &BuiltinPolicy::MaxEntropy, true)?;
            ensure_parent(&path)?;
            write_trace(&dataset, &path, output.format)?;
            println!(
                "{} extended-state records written to {}",
                dataset.tuple_count(),
                path.display()
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
