//! `friable`: smooth-number counting and estimation experiments.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use friable_cli::config::{Experiment, ExperimentConfig};
use friable_cli::experiments;
use friable_core::Error;

#[derive(Parser)]
#[command(
    name = "friable",
    version,
    about = "Count smooth (friable) integers in long and short intervals and \
             compare exact counts against saddle-point, contour-integral, and \
             explicit-formula estimates"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact smooth counts (long range or interval)
    Count(CommonArgs),
    /// Saddle point, Rankin bound, approximation diagnostics
    Saddle(CommonArgs),
    /// Vertical-line Perron integral against the exact count
    Perron(CommonArgs),
    /// The h-independent main-term functional over the saddle contour
    Ftheta(CommonArgs),
    /// Large-y density estimator g(x, y)
    Hildebrand(CommonArgs),
    /// Interval-size dependence example at scale x
    #[command(name = "boundary-example")]
    BoundaryExample(CommonArgs),
    /// Explicit-formula Chebyshev psi / short-interval prime counts
    #[command(name = "explicit-psi")]
    ExplicitPsi(CommonArgs),
    /// |zeta(alpha+it,y)| / zeta(alpha,y) along a t grid
    #[command(name = "decay-profile")]
    DecayProfile(CommonArgs),
    /// Short-versus-long density ratios over a grid
    #[command(name = "theorem-main")]
    TheoremMain(CommonArgs),
    /// Sample a contour polyline to CSV
    #[command(name = "export-contour")]
    ExportContour(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Flat key=value config file; flags override file values
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    x: Option<u64>,
    #[arg(long)]
    y: Option<u64>,
    #[arg(long)]
    h: Option<u64>,
    /// Contour parameter epsilon (contour experiments accept (0, 0.2])
    #[arg(long)]
    eps: Option<f64>,
    /// Perron truncation height
    #[arg(long = "H")]
    big_h: Option<f64>,
    /// Interval exponent used when a grid row has h = 0
    #[arg(long)]
    theta: Option<f64>,
    /// Grid file of x,y,h triples
    #[arg(long)]
    grid: Option<PathBuf>,
    /// Zeros dataset (one ascending ordinate per line)
    #[arg(long)]
    zeros: Option<PathBuf>,
    #[arg(long = "max-zeros")]
    max_zeros: Option<usize>,
    /// Append-only exact-count cache (CSV: x,y,h,count)
    #[arg(long)]
    cache: Option<PathBuf>,
    /// Report path; stdout when omitted
    #[arg(long)]
    output: Option<PathBuf>,
    /// csv or jsonl
    #[arg(long)]
    format: Option<String>,
    /// Worker threads (0 = all cores); totals are identical for any value
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Comma-separated ordinates for decay-profile
    #[arg(long = "t-grid")]
    t_grid: Option<String>,
    /// Polyline sample count for export-contour
    #[arg(long)]
    samples: Option<usize>,
    /// Polyline output path for export-contour
    #[arg(long = "export-path")]
    export_path: Option<PathBuf>,
    /// Print the effective configuration and exit
    #[arg(long = "print-config")]
    print_config: bool,
    /// Emit wall-clock fields (makes reports non-reproducible)
    #[arg(long)]
    timing: bool,
}

fn build_config(experiment: Experiment, args: &CommonArgs) -> Result<ExperimentConfig, Error> {
    let mut config = ExperimentConfig::new(experiment);
    if let Some(path) = &args.config {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Domain(format!("cannot read config {}: {e}", path.display())))?;
        config.apply_file(&text, &path.display().to_string())?;
    }
    if let Some(v) = args.x {
        config.x = Some(v);
    }
    if let Some(v) = args.y {
        config.y = Some(v);
    }
    if let Some(v) = args.h {
        config.h = Some(v);
    }
    if let Some(v) = args.eps {
        config.eps = v;
    }
    if let Some(v) = args.big_h {
        config.big_h = v;
    }
    if let Some(v) = args.theta {
        config.theta = v;
    }
    if let Some(v) = &args.grid {
        config.grid = Some(v.clone());
    }
    if let Some(v) = &args.zeros {
        config.zeros = Some(v.clone());
    }
    if let Some(v) = args.max_zeros {
        config.max_zeros = v;
    }
    if let Some(v) = &args.cache {
        config.cache = Some(v.clone());
    }
    if let Some(v) = &args.output {
        config.output = Some(v.clone());
    }
    if let Some(v) = &args.format {
        config.format = friable_cli::config::ReportFormat::parse(v)?;
    }
    if let Some(v) = args.workers {
        config.workers = v;
    }
    if let Some(v) = args.seed {
        config.seed = v;
    }
    if let Some(v) = &args.t_grid {
        config.t_grid = friable_cli::config::parse_t_grid(v)?;
    }
    if let Some(v) = args.samples {
        config.samples = v;
    }
    if let Some(v) = &args.export_path {
        config.export_path = Some(v.clone());
    }
    if args.timing {
        config.timing = true;
    }
    Ok(config)
}

fn execute(args: &CommonArgs, experiment: Experiment) -> Result<(), Error> {
    let config = build_config(experiment, args)?;
    if args.print_config {
        for line in config.print_lines() {
            println!("{line}");
        }
        return Ok(());
    }
    config.validate()?;

    let run_it = || experiments::run(&config);
    let report = if config.workers > 0 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.workers)
            .build()
            .map_err(|e| Error::Domain(format!("cannot build worker pool: {e}")))?;
        pool.install(run_it)?
    } else {
        run_it()?
    };

    let timestamp = if config.timing {
        Some(unix_timestamp())
    } else {
        None
    };
    match &config.output {
        Some(path) => {
            let mut file = fs::File::create(path)
                .map_err(|e| Error::Domain(format!("cannot create {}: {e}", path.display())))?;
            report.write(&mut file, config.format, timestamp.as_deref())?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            report.write(&mut lock, config.format, timestamp.as_deref())?;
        }
    }
    Ok(())
}

fn unix_timestamp() -> String {
    let secs = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    format!("{secs}")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (args, experiment) = match &cli.cmd {
        Cmd::Count(a) => (a, Experiment::Count),
        Cmd::Saddle(a) => (a, Experiment::Saddle),
        Cmd::Perron(a) => (a, Experiment::Perron),
        Cmd::Ftheta(a) => (a, Experiment::Ftheta),
        Cmd::Hildebrand(a) => (a, Experiment::Hildebrand),
        Cmd::BoundaryExample(a) => (a, Experiment::BoundaryExample),
        Cmd::ExplicitPsi(a) => (a, Experiment::ExplicitPsi),
        Cmd::DecayProfile(a) => (a, Experiment::DecayProfile),
        Cmd::TheoremMain(a) => (a, Experiment::TheoremMain),
        Cmd::ExportContour(a) => (a, Experiment::ExportContour),
    };
    match execute(args, experiment) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::Budget(_) => 3,
                Error::Dataset(_) => 4,
                _ => 2,
            };
            ExitCode::from(code)
        }
    }
}
