//! growthlab — batch profiles of pullback-metric growth and exact
//! Lie-algebra checks.
//!
//! ```text
//! growthlab profile  --model iwasawa --t-min 0.25 --t-max 3 --t-steps 24 \
//!                    --quad gl --order 64 --out-csv iwasawa.csv --out-json iwasawa.json
//! growthlab classify --model torus --n 3 --t-max 160 --t-steps 80
//! growthlab lie      --structure sl2c.json --check witness,pmap --out-json certs.json
//! ```

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use growthlab::growth::QuadratureSpec;
use growthlab::runner::{self, Command as RunCommand, GridKind, RunConfig};

#[derive(Parser)]
#[command(
    name = "growthlab",
    about = "volume growth profiles and invariant cohomology checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute a growth profile: CSV series plus JSON report.
    Profile(GrowthArgs),
    /// Classification only: JSON report without the CSV series.
    Classify(GrowthArgs),
    /// Exact checks on a Lie algebra given by structure constants.
    Lie(LieArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum QuadKind {
    Gl,
    Mc,
}

#[derive(Clone, Copy, ValueEnum)]
enum GridArg {
    Geometric,
    Uniform,
}

#[derive(Args)]
struct GrowthArgs {
    /// Gallery model: torus | iwasawa | nakamura | sl2c | fubini_study
    #[arg(long)]
    model: String,
    /// Ambient complex dimension (torus and fubini_study only).
    #[arg(long, default_value_t = 3)]
    n: usize,
    #[arg(long = "t-min", default_value_t = 0.25)]
    t_min: f64,
    #[arg(long = "t-max", default_value_t = 8.0)]
    t_max: f64,
    #[arg(long = "t-steps", default_value_t = 24)]
    t_steps: usize,
    /// Radius grid spacing.
    #[arg(long, value_enum, default_value_t = GridArg::Uniform)]
    grid: GridArg,
    /// Quadrature method.
    #[arg(long, value_enum, default_value_t = QuadKind::Gl)]
    quad: QuadKind,
    /// Gauss–Legendre order (radial and polar).
    #[arg(long, default_value_t = 16)]
    order: usize,
    /// Monte Carlo sample count.
    #[arg(long = "mc-samples", default_value_t = 200_000)]
    mc_samples: usize,
    /// Seed for Monte Carlo quadrature.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Tail start r₀ for the sphere-to-ball comparison condition.
    #[arg(long = "r0", default_value_t = 1.0)]
    r0: f64,
    /// Also run the direct sphere quadrature (positive-definite models).
    #[arg(long)]
    direct: bool,
    /// Skip the half-resolution convergence control.
    #[arg(long = "no-convergence-check")]
    no_convergence_check: bool,
    #[arg(long = "out-csv")]
    out_csv: Option<PathBuf>,
    #[arg(long = "out-json")]
    out_json: Option<PathBuf>,
}

#[derive(Args)]
struct LieArgs {
    /// Structure-constant JSON file: {dim, constants: [[k,i,j,re,im]...], labels}.
    #[arg(long)]
    structure: Option<PathBuf>,
    /// Built-in algebra name when no file is given (sl2c).
    #[arg(long, default_value = "sl2c")]
    model: String,
    /// Comma-separated checks: jacobi|structure-eqs|witness|pmap|dk-search.
    #[arg(long = "check", value_delimiter = ',')]
    check: Vec<String>,
    #[arg(long = "out-json")]
    out_json: Option<PathBuf>,
}

fn growth_config(cmd: RunCommand, a: &GrowthArgs) -> RunConfig {
    RunConfig {
        command: cmd,
        model: a.model.clone(),
        n: a.n,
        t_min: a.t_min,
        t_max: a.t_max,
        t_steps: a.t_steps,
        grid: match a.grid {
            GridArg::Geometric => GridKind::Geometric,
            GridArg::Uniform => GridKind::Uniform,
        },
        quad: match a.quad {
            QuadKind::Gl => QuadratureSpec::GaussLegendreProduct {
                radial_order: a.order,
                angular_order: a.order,
            },
            QuadKind::Mc => QuadratureSpec::MonteCarlo {
                sample_count: a.mc_samples,
                seed: a.seed,
            },
        },
        r0: a.r0,
        seed: a.seed,
        with_direct: a.direct,
        structure: None,
        checks: vec![],
        out_csv: a.out_csv.clone(),
        out_json: a.out_json.clone(),
        verify_convergence: !a.no_convergence_check,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Cmd::Profile(a) => run_growth(RunCommand::Profile, a),
        Cmd::Classify(a) => run_growth(RunCommand::Classify, a),
        Cmd::Lie(a) => run_lie(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("growthlab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run_growth(cmd: RunCommand, args: &GrowthArgs) -> Result<(), runner::RunError> {
    let config = growth_config(cmd, args);
    let run = runner::run_profile(&config)?;
    println!(
        "{}: classification = {}, verdict = {}",
        run.report.model, run.report.classification, run.report.verdict
    );
    if let (Some(ci), Some(c1)) = (&run.report.condition_i, run.report.c1) {
        println!(
            "condition (i): holds = {}, C₁ = {:.4}, trend slope = {:+.4}",
            ci.holds, c1, ci.trend_slope
        );
    }
    if let Some(lambda) = run.report.condition_ii_lambda {
        println!(
            "condition (ii): λ = {:.4}, holds = {:?}",
            lambda, run.report.condition_ii_holds
        );
    }
    if config.out_csv.is_none() && config.out_json.is_none() {
        eprintln!("note: no --out-csv/--out-json given; nothing written");
    }
    Ok(())
}

fn run_lie(args: &LieArgs) -> Result<(), runner::RunError> {
    let config = RunConfig {
        command: RunCommand::Lie,
        model: args.model.clone(),
        structure: args.structure.clone(),
        checks: args.check.clone(),
        out_json: args.out_json.clone(),
        ..RunConfig::default()
    };
    let report = runner::run_lie(&config)?;
    println!("algebra: dim {}, labels {:?}", report.dim, report.labels);
    for check in &report.checks {
        let name = check["check"].as_str().unwrap_or("check");
        if let Some(verdict) = check.get("verdict") {
            println!("{name}: {verdict}");
        } else {
            println!("{name}: ok");
        }
    }
    Ok(())
}
