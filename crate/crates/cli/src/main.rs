//! `ghopt` command-line runner: the worked example, interval-lasso fitting,
//! and prediction reports.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use ghopt::interval::{format_real, Interval, Weights};
use ghopt::lasso::{fit, predict_report, LassoDataset, LassoError, LassoFit, TuningParameter};
use ghopt::solver::{solve, Archive, IterationTrace, SolverConfig, SolverError, StepSchedule};
use ghopt::worked_example::kinked_example;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

const DEBUG_ASSERT_ENV: &str = "GHOPT_DEBUG_ASSERT";
const ARCHIVE_TOLERANCE: f64 = 1e-9;

#[derive(Parser)]
#[command(name = "ghopt", version, about = "gH-subgradient method for interval-valued optimization")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the built-in one-variable example and check its final archives.
    Demo(DemoArgs),
    /// Fit an interval lasso model to a CSV dataset.
    LassoFit(FitArgs),
    /// Write a prediction report for a fitted model.
    LassoPredict(PredictArgs),
}

#[derive(Args)]
struct DemoArgs {
    /// Weight on lower endpoints in the search direction (upper weight is 1 - w).
    #[arg(long, default_value_t = 2.0 / 3.0)]
    w: f64,
    /// Number of iterations.
    #[arg(long, default_value_t = 2)]
    m: usize,
}

#[derive(Args)]
struct FitArgs {
    /// Dataset CSV with header x1_lo,x1_hi,...,xl_lo,xl_hi,y_lo,y_hi.
    data: PathBuf,
    /// Weight on lower endpoints; repeat with --grid to sweep.
    #[arg(long, num_args = 1, default_values_t = vec![0.5])]
    w: Vec<f64>,
    /// Lower endpoint of the tuning interval L.
    #[arg(long, default_value_t = 0.03)]
    l_lo: f64,
    /// Upper endpoint of the tuning interval L.
    #[arg(long, default_value_t = 0.06)]
    l_hi: f64,
    /// Step schedule: harmonic:c (c/k) or shifted:c,s (c/(k+s)).
    #[arg(long, default_value = "shifted:7,100000")]
    schedule: String,
    /// Number of iterations.
    #[arg(long, default_value_t = 10_000)]
    iters: usize,
    /// Initial coefficients, comma separated; repeat with --grid to sweep.
    /// Defaults to the zero vector.
    #[arg(long, num_args = 1, allow_hyphen_values = true)]
    init: Vec<String>,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
    /// Run every (w, init) combination concurrently, one subdirectory each.
    #[arg(long)]
    grid: bool,
}

#[derive(Args)]
struct PredictArgs {
    /// Dataset CSV in the same format as for lasso-fit.
    data: PathBuf,
    /// fit.json written by lasso-fit.
    #[arg(long)]
    fit: PathBuf,
    /// Report CSV to write.
    #[arg(long)]
    out: PathBuf,
}

/// Failure classes, each with its own exit status.
#[derive(Debug)]
enum Failure {
    /// The demo ran but did not reach the expected archives.
    Mismatch,
    Input(anyhow::Error),
    Solver(anyhow::Error),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Mismatch => 1,
            Failure::Input(_) => 2,
            Failure::Solver(_) => 3,
        }
    }
}

impl From<LassoError> for Failure {
    fn from(e: LassoError) -> Self {
        match e {
            LassoError::Solver(_) => Failure::Solver(e.into()),
            other => Failure::Input(other.into()),
        }
    }
}

fn input<E: Into<anyhow::Error>>(e: E) -> Failure {
    Failure::Input(e.into())
}

fn debug_asserts() -> bool {
    std::env::var(DEBUG_ASSERT_ENV).is_ok_and(|v| v == "1")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Demo(a) => cmd_demo(&a),
        Command::LassoFit(a) => cmd_lasso_fit(&a),
        Command::LassoPredict(a) => cmd_lasso_predict(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Mismatch => {}
                Failure::Input(e) => eprintln!("error: {e:#}"),
                Failure::Solver(e) => eprintln!("solver error: {e:#}"),
            }
            ExitCode::from(f.exit_code())
        }
    }
}

// ---------------------------------------------------------------------------
// demo

/// Archives the example reaches after `m` iterations with the default weights.
fn expected_demo_archive(m: usize) -> (f64, Interval) {
    let iv = |lo, hi| Interval::new(lo, hi).expect("ordered");
    match m {
        0 => (-1.0, iv(4.0, 7.0)),
        1 => (1.0 / 6.0, iv(19.0 / 6.0, 7.0)),
        _ => (0.0, iv(3.0, 7.0)),
    }
}

fn print_iteration_table(trace: &IterationTrace) {
    println!("{:>4}  {:>22}  {:>44}  {:>44}  {:>22}  {:>10}", "k", "x_k", "F(x_k)", "G_k", "W(G_k)", "alpha_k");
    for p in &trace.points {
        let step = trace.steps.get(p.k - 1);
        let g = step.map_or(String::new(), |s| s.subgradient[0].to_string());
        let d = step.map_or(String::new(), |s| format_real(s.direction[0]));
        let a = step.map_or(String::new(), |s| format_real(s.alpha));
        println!("{:>4}  {:>22}  {:>44}  {:>44}  {:>22}  {:>10}", p.k, format_real(p.x[0]), p.value.to_string(), g, d, a);
    }
}

fn print_archive(archive: &Archive) {
    let points: Vec<String> = archive.efficient_set.iter().map(|x| format_real(x[0])).collect();
    let values: Vec<String> = archive.nondominated_set.iter().map(|v| v.to_string()).collect();
    println!("efficient set:    {{{}}}", points.join(", "));
    println!("nondominated set: {{{}}}", values.join(", "));
}

fn cmd_demo(a: &DemoArgs) -> Result<(), Failure> {
    let weights = Weights::from_lower_weight(a.w).map_err(input)?;
    let cfg = SolverConfig::new(weights, a.m, vec![-1.0], StepSchedule::harmonic(1.0))
        .with_invariant_checks(debug_asserts());
    let (archive, trace) = match solve(&kinked_example(), &cfg) {
        Ok(r) => r,
        Err(SolverError::ZeroDirectionExhausted { k, partial, .. }) => {
            println!("scalarized subgradient vanished at iteration {k}; stopping there");
            *partial
        }
        Err(e) => return Err(Failure::Solver(e.into())),
    };
    print_iteration_table(&trace);
    print_archive(&archive);

    let (x_exp, v_exp) = expected_demo_archive(a.m);
    let ok = archive.efficient_set.len() == 1
        && (archive.efficient_set[0][0] - x_exp).abs() <= ARCHIVE_TOLERANCE
        && archive.nondominated_set.len() == 1
        && (archive.nondominated_set[0].lo() - v_exp.lo()).abs() <= ARCHIVE_TOLERANCE
        && (archive.nondominated_set[0].hi() - v_exp.hi()).abs() <= ARCHIVE_TOLERANCE;
    if ok {
        println!("reproduced: efficient set {{{x_exp}}}, nondominated set {{{v_exp}}}");
        Ok(())
    } else {
        println!("mismatch: expected efficient set {{{x_exp}}}, nondominated set {{{v_exp}}}");
        Err(Failure::Mismatch)
    }
}

// ---------------------------------------------------------------------------
// lasso-fit

#[derive(Serialize)]
struct InputDigest {
    path: String,
    sha256: String,
}

#[derive(Serialize)]
struct RunConfig {
    w: Vec<f64>,
    schedule: String,
    iters: usize,
    init: Vec<Vec<f64>>,
    tuning: Interval,
    grid: bool,
    debug_assert: bool,
}

#[derive(Serialize)]
struct RunManifest {
    command: Vec<String>,
    config: RunConfig,
    inputs: Vec<InputDigest>,
    outputs: Vec<String>,
    wall_time_seconds: f64,
}

fn digest(path: &Path, bytes: &[u8]) -> InputDigest {
    InputDigest {
        path: path.display().to_string(),
        sha256: hex::encode(Sha256::digest(bytes)),
    }
}

fn parse_init(s: &str, dim: usize) -> Result<Vec<f64>, Failure> {
    let v = s
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<Vec<_>, _>>()
        .with_context(|| format!("--init {s:?}: expected comma-separated numbers"))
        .map_err(Failure::Input)?;
    if v.len() != dim {
        return Err(input(anyhow!("--init {s:?} has {} values but the dataset has {dim} features", v.len())));
    }
    Ok(v)
}

fn read_dataset(path: &Path) -> Result<(LassoDataset, Vec<u8>), Failure> {
    let bytes = fs::read(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(Failure::Input)?;
    let ds = LassoDataset::from_csv(bytes.as_slice())
        .with_context(|| format!("parsing {}", path.display()))
        .map_err(Failure::Input)?;
    Ok((ds, bytes))
}

fn write(path: &Path, contents: &str, outputs: &mut Vec<String>) -> Result<(), Failure> {
    fs::write(path, contents)
        .with_context(|| format!("writing {}", path.display()))
        .map_err(Failure::Input)?;
    outputs.push(path.display().to_string());
    Ok(())
}

fn run_dir_name(w: f64, init: &[f64]) -> String {
    let init: Vec<String> = init.iter().map(|v| format_real(*v)).collect();
    format!("w{w}_init{}", init.join("_"))
}

fn format_beta(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|b| format!("{b:.3}")).collect();
    format!("({})", parts.join(", "))
}

fn cmd_lasso_fit(a: &FitArgs) -> Result<(), Failure> {
    let start = Instant::now();
    let (ds, bytes) = read_dataset(&a.data)?;
    let tuning = Interval::new(a.l_lo, a.l_hi)
        .map_err(input)
        .and_then(|l| TuningParameter::new(l).map_err(Failure::from))?;
    let schedule: StepSchedule = a.schedule.parse().map_err(|e: String| input(anyhow!("--schedule: {e}")))?;
    schedule
        .validate(a.iters)
        .map_err(|e| input(anyhow!("--schedule: {e}")))?;
    let weights = a
        .w
        .iter()
        .map(|&w| Weights::from_lower_weight(w).map_err(|e| input(anyhow!("--w {w}: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let inits = if a.init.is_empty() {
        vec![vec![0.0; ds.feature_dim()]]
    } else {
        a.init
            .iter()
            .map(|s| parse_init(s, ds.feature_dim()))
            .collect::<Result<Vec<_>, _>>()?
    };
    if !a.grid && (weights.len() > 1 || inits.len() > 1) {
        return Err(input(anyhow!("repeated --w or --init requires --grid")));
    }

    let debug = debug_asserts();
    let configs: Vec<SolverConfig> = weights
        .iter()
        .flat_map(|w| {
            inits.iter().map(|x0| {
                SolverConfig::new(*w, a.iters, x0.clone(), schedule.clone()).with_invariant_checks(debug)
            })
        })
        .collect();

    let fits: Vec<Result<LassoFit, LassoError>> = if configs.len() == 1 {
        vec![fit(&ds, tuning, &configs[0])]
    } else {
        std::thread::scope(|s| {
            let handles: Vec<_> = configs
                .iter()
                .map(|cfg| {
                    let ds = &ds;
                    s.spawn(move || fit(ds, tuning, cfg))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("fit thread panicked"))
                .collect()
        })
    };

    fs::create_dir_all(&a.out)
        .with_context(|| format!("creating {}", a.out.display()))
        .map_err(Failure::Input)?;
    let mut outputs = Vec::new();
    println!("{:>6}  {:>20}  {:>22}  {:>22}", "w", "init", "beta_hat", "E(beta_hat)");
    for (cfg, result) in configs.iter().zip(fits) {
        let f = result?;
        let dir = if a.grid {
            a.out.join(run_dir_name(cfg.weights.w(), &cfg.x0))
        } else {
            a.out.clone()
        };
        fs::create_dir_all(&dir)
            .with_context(|| format!("creating {}", dir.display()))
            .map_err(Failure::Input)?;
        let json = serde_json::to_string_pretty(&f).map_err(input)?;
        write(&dir.join("fit.json"), &(json + "\n"), &mut outputs)?;
        write(&dir.join("trace.csv"), &f.trace.to_csv(), &mut outputs)?;
        println!(
            "{:>6}  {:>20}  {:>22}  {:>22}",
            format!("{:.3}", f.w),
            format_beta(&f.x0),
            format_beta(&f.beta_hat),
            format!("{:.3}", f.error_at_beta_hat)
        );
    }

    let manifest_path = a.out.join("manifest.json");
    outputs.push(manifest_path.display().to_string());
    let manifest = RunManifest {
        command: std::env::args().collect(),
        config: RunConfig {
            w: a.w.clone(),
            schedule: schedule.to_string(),
            iters: a.iters,
            init: inits,
            tuning: tuning.interval(),
            grid: a.grid,
            debug_assert: debug,
        },
        inputs: vec![digest(&a.data, &bytes)],
        outputs,
        wall_time_seconds: start.elapsed().as_secs_f64(),
    };
    let json = serde_json::to_string_pretty(&manifest).map_err(input)?;
    fs::write(&manifest_path, json + "\n")
        .with_context(|| format!("writing {}", manifest_path.display()))
        .map_err(Failure::Input)?;
    Ok(())
}

// ---------------------------------------------------------------------------
// lasso-predict

/// The part of fit.json that prediction needs.
#[derive(Deserialize)]
struct StoredFit {
    beta_hat: Vec<f64>,
}

fn cmd_lasso_predict(a: &PredictArgs) -> Result<(), Failure> {
    let (ds, _) = read_dataset(&a.data)?;
    let text = fs::read_to_string(&a.fit)
        .with_context(|| format!("reading {}", a.fit.display()))
        .map_err(Failure::Input)?;
    let stored: StoredFit = serde_json::from_str(&text)
        .with_context(|| format!("{}: not a lasso-fit result", a.fit.display()))
        .map_err(Failure::Input)?;
    if stored.beta_hat.len() != ds.feature_dim() {
        return Err(input(anyhow!(
            "{} has {} coefficients but {} has {} features",
            a.fit.display(),
            stored.beta_hat.len(),
            a.data.display(),
            ds.feature_dim()
        )));
    }
    let report = predict_report(&ds, &stored.beta_hat)?;
    fs::write(&a.out, report.to_csv())
        .with_context(|| format!("writing {}", a.out.display()))
        .map_err(Failure::Input)?;

    println!("{:>4}  {:>22}  {:>22}  {:>22}", "k", "Y", "Yhat", "overlap");
    for r in &report.rows {
        let overlap = r.overlap.map_or("-".to_string(), |o| format!("{o:.3}"));
        println!(
            "{:>4}  {:>22}  {:>22}  {:>22}",
            r.k,
            format!("{:.3}", r.actual),
            format!("{:.3}", r.estimate),
            overlap
        );
    }
    Ok(())
}
