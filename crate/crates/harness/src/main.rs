use clap::{Args, Parser, Subcommand};
use dimlab_harness::config::ExperimentConfig;
use dimlab_harness::report::{
    construct_csv, fubini_csv, graph_csv, prevalence_csv, prevalence_svg, profile_csv,
    write_json,
};
use dimlab_harness::{experiments, HarnessError, Result};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

#[derive(Parser)]
#[command(
    name = "dimlab",
    version,
    about = "Cantor constructions, Riesz energies, and dimension experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the configured Cantor set and emit its interval family.
    Construct(RunArgs),
    /// Riesz energies of the coding measure across depths, per t.
    EnergyProfile(RunArgs),
    /// Exact verification of the energy inequality chain on a (t, n) grid.
    Fubini(RunArgs),
    /// Lambda sweep: image dimension estimates along the probe line.
    Prevalence(RunArgs),
    /// Box-dimension estimates for X, f(X), the graph, and the product.
    Graph(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Experiment config file (line-oriented key = value).
    #[arg(long)]
    config: PathBuf,
    /// Override the series seed of the f spec.
    #[arg(long)]
    seed: Option<u64>,
    /// Override the construction depth.
    #[arg(long)]
    depth: Option<u32>,
    /// Output directory for reports.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Omit the timestamp so identical configs give byte-identical files.
    #[arg(long)]
    deterministic: bool,
    /// Worker threads (default: all cores). Results do not depend on this.
    #[arg(long)]
    threads: Option<usize>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
        Err(e) => {
            // --help / --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn load_config(args: &RunArgs) -> Result<ExperimentConfig> {
    let text = fs::read_to_string(&args.config).map_err(|e| {
        HarnessError::Config(format!("cannot read {}: {e}", args.config.display()))
    })?;
    let mut cfg = ExperimentConfig::parse(&text)?;
    if let Some(seed) = args.seed {
        cfg = cfg.with_seed(seed);
    }
    if let Some(depth) = args.depth {
        cfg = cfg.with_depth(depth);
    }
    cfg.validate()?;
    Ok(cfg)
}

fn timestamp(args: &RunArgs) -> Option<u64> {
    if args.deterministic {
        None
    } else {
        Some(
            SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        )
    }
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text)?;
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    let args = match &cli.command {
        Command::Construct(a)
        | Command::EnergyProfile(a)
        | Command::Fubini(a)
        | Command::Prevalence(a)
        | Command::Graph(a) => a,
    };
    if let Some(threads) = args.threads {
        // ignore the error if a pool already exists; thread count never
        // changes results, only wall time
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    let cfg = load_config(args)?;
    fs::create_dir_all(&args.out)?;
    let stamp = timestamp(args);
    let out = &args.out;

    match &cli.command {
        Command::Construct(_) => {
            let mut report = experiments::run_construct(&cfg)?;
            report.timestamp = stamp;
            write_json(&out.join("construct.json"), &report)?;
            write_text(&out.join("intervals.csv"), &construct_csv(&report))?;
            println!(
                "construct: depth {} -> {} intervals, total length {}",
                cfg.depth,
                report.intervals.len(),
                report.levels.last().map(|l| l.total_length).unwrap_or(0.0)
            );
        }
        Command::EnergyProfile(_) => {
            let mut report = experiments::run_energy_profile(&cfg)?;
            report.timestamp = stamp;
            write_json(&out.join("profile.json"), &report)?;
            write_text(&out.join("profile.csv"), &profile_csv(&report))?;
            for entry in &report.profiles {
                println!("energy-profile: t = {} -> {:?}", entry.t, entry.classification);
            }
        }
        Command::Fubini(_) => {
            let mut report = experiments::run_fubini(&cfg)?;
            report.timestamp = stamp;
            write_json(&out.join("fubini.json"), &report)?;
            write_text(&out.join("fubini.csv"), &fubini_csv(&report))?;
            for case in &report.cases {
                println!(
                    "fubini: t = {}, n = {} -> ratio_tight = {:.6}",
                    case.t, case.n, case.ratio_tight
                );
            }
        }
        Command::Prevalence(_) => {
            let mut report = experiments::run_prevalence(&cfg)?;
            report.timestamp = stamp;
            write_json(&out.join("prevalence.json"), &report)?;
            write_text(&out.join("prevalence.csv"), &prevalence_csv(&report))?;
            write_text(&out.join("prevalence.svg"), &prevalence_svg(&report))?;
            println!(
                "prevalence: {} records, median slope {:.4}, {:.1}% above {}, collapses at {:?}",
                report.records.len(),
                report.summary.median_slope,
                100.0 * report.summary.frac_above_threshold,
                report.summary.slope_threshold,
                report.summary.collapse_lambdas
            );
        }
        Command::Graph(_) => {
            let mut report = experiments::run_graph(&cfg)?;
            report.timestamp = stamp;
            write_json(&out.join("graph.json"), &report)?;
            write_text(&out.join("graph.csv"), &graph_csv(&report))?;
            println!(
                "graph: est(X) = {:.4}, est(f(X)) = {:.4}, est(G_f) = {:.4}, est(X x f(X)) = {:.4}",
                report.est_x.slope,
                report.est_image.slope,
                report.est_graph.slope,
                report.est_product.slope
            );
        }
    }
    Ok(())
}
