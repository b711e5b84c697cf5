//! CLI for band structure, spectra, gap scans, and the verification suite.
//!
//! Output goes to stdout (or `--out`); diagnostics go to stderr. Exit codes:
//! 0 on success, 1 on verification or numerical failure, 2 on usage errors.
//! `LATTICE_FLOQUET_THREADS` caps the worker pool.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use lattice_floquet::bands::{band_edges, gap_scan, spectrum, GridSpec};
use lattice_floquet::verify::{run_suite, CheckResult, Suite};
use lattice_floquet::{
    builtin, load, random_potential, sorted_eigs, FloquetPoint, LatticeKind, PeriodicPotential,
    Periods,
};

#[derive(Parser)]
#[command(
    name = "lattice-floquet",
    version,
    about = "Spectral bands and gaps of periodic Schrödinger operators on 2D lattices",
    after_help = "Exit codes: 0 success, 1 verification/numerical failure, 2 usage error.\n\
                  LATTICE_FLOQUET_THREADS caps parallelism."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the spectrum of Delta + lambda*Q as disjoint intervals.
    ///
    /// CSV columns: interval,left,right (one row per component).
    Spectrum(ProblemArgs),
    /// Dump per-band ranges, optionally with raw grid samples.
    ///
    /// CSV columns: band,emin,emax (with --samples: theta1,theta2,E1..EP).
    Bands(BandsArgs),
    /// Sweep the coupling constant and report components and gaps.
    ///
    /// CSV columns: lambda,components,gap_left,gap_right,width,nearest_exceptional.
    GapScan(GapScanArgs),
    /// Run a verification suite; the report is a JSON list of checks.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct ProblemArgs {
    /// Lattice geometry: square | triangular | hexagonal | ehm
    #[arg(long)]
    lattice: String,
    /// Potential periods
    #[arg(long, num_args = 2, value_names = ["P1", "P2"])]
    periods: Vec<usize>,
    /// Potential source: zero | builtin:NAME | file:PATH | random:SUP[:SEED]
    #[arg(long, default_value = "zero")]
    potential: String,
    /// Coupling constant multiplying the potential
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,
    /// Grid samples per torus direction (default: period-scaled 64)
    #[arg(long, num_args = 2, value_names = ["N1", "N2"])]
    grid: Option<Vec<usize>>,
    /// Band merge tolerance
    #[arg(long, default_value_t = 1e-7)]
    merge_tol: f64,
    /// Band-edge refinement tolerance
    #[arg(long, default_value_t = 1e-9)]
    refine_tol: f64,
    /// Output format: json | csv
    #[arg(long, default_value = "json")]
    format: String,
    /// Write output to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for random potentials given without one
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct BandsArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    /// Also dump the raw grid samples theta1,theta2,E_1..E_P (CSV only)
    #[arg(long)]
    samples: bool,
}

#[derive(Args)]
struct GapScanArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    /// Smallest coupling of the sweep
    #[arg(long)]
    lambda_min: Option<f64>,
    /// Largest coupling of the sweep
    #[arg(long)]
    lambda_max: Option<f64>,
    /// Number of sweep points
    #[arg(long, default_value_t = 7)]
    steps: usize,
    /// Space sweep points geometrically instead of linearly
    #[arg(long)]
    log: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite to run: all | tri | hex | ehm | lemmas | floquet
    #[arg(long, default_value = "all")]
    suite: String,
    /// Replace the suite's worked-example potential: builtin:NAME | file:PATH
    #[arg(long)]
    potential: Option<String>,
    /// Output format (the report is always JSON)
    #[arg(long)]
    out: Option<PathBuf>,
}

/// A usage-level error (exit 2) as opposed to a numerical one (exit 1).
struct UsageError(String);

fn parse_problem(args: &ProblemArgs) -> Result<(LatticeKind, Periods, PeriodicPotential), UsageError> {
    let kind = LatticeKind::parse(&args.lattice)
        .ok_or_else(|| UsageError(format!("unknown lattice {:?}", args.lattice)))?;
    if args.periods.len() != 2 || args.periods[0] == 0 || args.periods[1] == 0 {
        return Err(UsageError("--periods requires two positive integers".into()));
    }
    let periods = Periods::new(args.periods[0], args.periods[1]);
    let q = parse_potential(&args.potential, kind, periods, args.seed)?;
    q.check_binding(kind, periods)
        .map_err(|e| UsageError(e.to_string()))?;
    Ok((kind, periods, q))
}

fn parse_potential(
    spec: &str,
    kind: LatticeKind,
    periods: Periods,
    default_seed: u64,
) -> Result<PeriodicPotential, UsageError> {
    if spec == "zero" {
        return Ok(PeriodicPotential::zero(kind, periods));
    }
    if let Some(name) = spec.strip_prefix("builtin:") {
        return builtin(name).map_err(|e| UsageError(e.to_string()));
    }
    if let Some(path) = spec.strip_prefix("file:") {
        return load(path).map_err(|e| UsageError(e.to_string()));
    }
    if let Some(rest) = spec.strip_prefix("random:") {
        let mut parts = rest.split(':');
        let sup: f64 = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| UsageError(format!("bad random potential spec {spec:?}")))?;
        let seed: u64 = match parts.next() {
            Some(s) => s
                .parse()
                .map_err(|_| UsageError(format!("bad seed in {spec:?}")))?,
            None => default_seed,
        };
        if sup < 0.0 {
            return Err(UsageError("random potential sup norm must be >= 0".into()));
        }
        return Ok(random_potential(kind, periods, sup, seed));
    }
    Err(UsageError(format!(
        "unknown potential source {spec:?}; expected zero, builtin:NAME, file:PATH, or random:SUP[:SEED]"
    )))
}

fn grid_for(args: &ProblemArgs, periods: Periods) -> Result<GridSpec, UsageError> {
    let base = match &args.grid {
        Some(g) if g.len() == 2 && g[0] >= 4 && g[1] >= 4 => GridSpec::new(g[0], g[1]),
        Some(_) => return Err(UsageError("--grid requires two integers >= 4".into())),
        None => GridSpec::default_for(periods),
    };
    if args.refine_tol <= 0.0 || args.merge_tol <= 0.0 {
        return Err(UsageError("tolerances must be positive".into()));
    }
    Ok(base.with_refine_tol(args.refine_tol))
}

fn emit(out: &Option<PathBuf>, content: &str) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, content),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn cmd_spectrum(args: &ProblemArgs) -> Result<String, String> {
    let (kind, periods, q) = parse_problem(args).map_err(|e| usage(e))?;
    let grid = grid_for(args, periods).map_err(|e| usage(e))?;
    let table =
        band_edges(kind, periods, &q.scaled(args.lambda), grid).map_err(|e| e.to_string())?;
    let spec = spectrum(&table, args.merge_tol);
    let gaps: Vec<_> = spec
        .gaps()
        .iter()
        .map(|&(left, right)| {
            let mid = 0.5 * (left + right);
            let nearest = kind
                .exceptional_energies()
                .iter()
                .copied()
                .min_by(|a, b| (a - mid).abs().partial_cmp(&(b - mid).abs()).unwrap());
            json!({"left": left, "right": right, "nearest_exceptional": nearest})
        })
        .collect();
    match args.format.as_str() {
        "json" => {
            let doc = json!({
                "schema": 1,
                "command": "spectrum",
                "lattice": kind.name(),
                "periods": [periods.p1, periods.p2],
                "lambda": args.lambda,
                "components": spec.components(),
                "intervals": spec.intervals(),
                "gaps": gaps,
            });
            Ok(format!("{}\n", serde_json::to_string_pretty(&doc).unwrap()))
        }
        "csv" => {
            let mut s = String::from("interval,left,right\n");
            for (i, (a, b)) in spec.intervals().iter().enumerate() {
                s.push_str(&format!("{i},{a},{b}\n"));
            }
            Ok(s)
        }
        other => Err(usage(UsageError(format!("unknown format {other:?}")))),
    }
}

fn cmd_bands(args: &BandsArgs) -> Result<String, String> {
    let (kind, periods, q) = parse_problem(&args.problem).map_err(|e| usage(e))?;
    let grid = grid_for(&args.problem, periods).map_err(|e| usage(e))?;
    let scaled = q.scaled(args.problem.lambda);
    let table = band_edges(kind, periods, &scaled, grid).map_err(|e| e.to_string())?;
    match args.problem.format.as_str() {
        "json" => {
            let bands: Vec<_> = table
                .bands
                .iter()
                .enumerate()
                .map(|(k, b)| {
                    json!({
                        "band": k,
                        "emin": b.emin,
                        "emax": b.emax,
                        "argmin": [b.argmin.theta1, b.argmin.theta2],
                        "argmax": [b.argmax.theta1, b.argmax.theta2],
                    })
                })
                .collect();
            let doc = json!({
                "schema": 1,
                "command": "bands",
                "lattice": kind.name(),
                "periods": [periods.p1, periods.p2],
                "lambda": args.problem.lambda,
                "bands": bands,
            });
            Ok(format!("{}\n", serde_json::to_string_pretty(&doc).unwrap()))
        }
        "csv" => {
            let mut s = String::from("band,emin,emax\n");
            for (k, b) in table.bands.iter().enumerate() {
                s.push_str(&format!("{k},{},{}\n", b.emin, b.emax));
            }
            if args.samples {
                s.push('\n');
                let p = periods.site_count(kind);
                s.push_str("theta1,theta2");
                for k in 1..=p {
                    s.push_str(&format!(",E{k}"));
                }
                s.push('\n');
                let tau = 2.0 * std::f64::consts::PI;
                for i in 0..grid.n1 {
                    for j in 0..grid.n2 {
                        let th = FloquetPoint::new(
                            tau * i as f64 / grid.n1 as f64,
                            tau * j as f64 / grid.n2 as f64,
                        );
                        let ev = sorted_eigs(kind, periods, &scaled, th)
                            .map_err(|e| e.to_string())?;
                        s.push_str(&format!("{},{}", th.theta1, th.theta2));
                        for e in ev {
                            s.push_str(&format!(",{e}"));
                        }
                        s.push('\n');
                    }
                }
            }
            Ok(s)
        }
        other => Err(usage(UsageError(format!("unknown format {other:?}")))),
    }
}

fn cmd_gap_scan(args: &GapScanArgs) -> Result<String, String> {
    let (kind, periods, q) = parse_problem(&args.problem).map_err(|e| usage(e))?;
    let grid = grid_for(&args.problem, periods).map_err(|e| usage(e))?;
    let lambdas: Vec<f64> = match (args.lambda_min, args.lambda_max) {
        (Some(lo), Some(hi)) if lo > 0.0 || !args.log => {
            let n = args.steps.max(2);
            (0..n)
                .map(|i| {
                    let t = i as f64 / (n - 1) as f64;
                    if args.log {
                        lo * (hi / lo).powf(t)
                    } else {
                        lo + (hi - lo) * t
                    }
                })
                .collect()
        }
        (None, None) => vec![args.problem.lambda],
        _ => return Err(usage(UsageError(
            "--lambda-min/--lambda-max must be given together (positive for --log)".into(),
        ))),
    };
    let reports = gap_scan(kind, periods, &q, &lambdas, grid, args.problem.merge_tol)
        .map_err(|e| e.to_string())?;
    match args.problem.format.as_str() {
        "json" => {
            let doc = json!({
                "schema": 1,
                "command": "gap-scan",
                "lattice": kind.name(),
                "periods": [periods.p1, periods.p2],
                "reports": reports,
            });
            Ok(format!("{}\n", serde_json::to_string_pretty(&doc).unwrap()))
        }
        "csv" => {
            let mut s =
                String::from("lambda,components,gap_left,gap_right,width,nearest_exceptional\n");
            for rep in &reports {
                if rep.gaps.is_empty() {
                    s.push_str(&format!("{},{},,,,\n", rep.lambda, rep.components));
                }
                for g in &rep.gaps {
                    s.push_str(&format!(
                        "{},{},{},{},{},{}\n",
                        rep.lambda,
                        rep.components,
                        g.left,
                        g.right,
                        g.right - g.left,
                        g.nearest_exceptional.map_or(String::new(), |e| e.to_string()),
                    ));
                }
            }
            Ok(s)
        }
        other => Err(usage(UsageError(format!("unknown format {other:?}")))),
    }
}

fn cmd_verify(args: &VerifyArgs) -> Result<(String, bool), String> {
    let suite = Suite::parse(&args.suite)
        .ok_or_else(|| usage(UsageError(format!("unknown suite {:?}", args.suite))))?;
    let override_q = match &args.potential {
        None => None,
        Some(spec) => {
            if let Some(name) = spec.strip_prefix("builtin:") {
                Some(builtin(name).map_err(|e| usage(UsageError(e.to_string())))?)
            } else if let Some(path) = spec.strip_prefix("file:") {
                Some(load(path).map_err(|e| usage(UsageError(e.to_string())))?)
            } else {
                return Err(usage(UsageError(format!(
                    "verify --potential accepts builtin:NAME or file:PATH, got {spec:?}"
                ))));
            }
        }
    };
    let results: Vec<CheckResult> = run_suite(suite, override_q.as_ref());
    let all_pass = results.iter().all(|r| r.passed());
    let n_fail = results.iter().filter(|r| !r.passed()).count();
    eprintln!(
        "suite {}: {} checks, {} failed",
        args.suite,
        results.len(),
        n_fail
    );
    let text = format!("{}\n", serde_json::to_string_pretty(&results).unwrap());
    Ok((text, all_pass))
}

fn usage(e: UsageError) -> String {
    format!("usage: {}", e.0)
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("LATTICE_FLOQUET_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    let cli = Cli::parse();
    let result: Result<(String, bool, Option<PathBuf>), String> = match &cli.command {
        Command::Spectrum(a) => cmd_spectrum(a).map(|s| (s, true, a.out.clone())),
        Command::Bands(a) => cmd_bands(a).map(|s| (s, true, a.problem.out.clone())),
        Command::GapScan(a) => cmd_gap_scan(a).map(|s| (s, true, a.problem.out.clone())),
        Command::Verify(a) => cmd_verify(a).map(|(s, ok)| (s, ok, a.out.clone())),
    };
    match result {
        Ok((content, ok, out)) => {
            if let Err(e) = emit(&out, &content) {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            if msg.starts_with("usage:") {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
