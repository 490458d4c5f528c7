//! `hardyscope`: estimate Hardy and Bergman numbers of planar domains.
//!
//! Exit codes: 0 on success, 2 when a checked inequality or certificate
//! fails, 1 on errors.

mod commands;
mod manifest;
mod spec_io;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use hardyscope_core::config::Thresholds;

use manifest::{write_outputs, RunManifest, Versions};

#[derive(Parser, Debug)]
#[command(
    name = "hardyscope",
    version,
    about = "Hardy and Bergman numbers of planar domains"
)]
struct Cli {
    /// TOML file overriding the default thresholds.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Directory for the results CSV and run manifest.
    #[arg(long, global = true, default_value = ".")]
    out_dir: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct WalkArgs {
    /// RNG seed; defaults to the configured fixed seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Walks per estimate.
    #[arg(long)]
    samples: Option<u64>,
    /// Absolute boundary shell; defaults to `eps_relative * scale_hint`.
    #[arg(long)]
    eps: Option<f64>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodArg {
    Eks,
    Green,
    Both,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileArg {
    /// Exit points of walks started at the base point.
    Base,
    /// Walks started on each circle.
    Angular,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Hardy number by harmonic-measure decay and/or the Green profile.
    EstimateHardy {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, value_enum, default_value = "both")]
        method: MethodArg,
        /// Comma-separated truncation radii; default `scale * 2^k`, k = 2..9.
        #[arg(long, value_delimiter = ',')]
        radii: Option<Vec<f64>>,
        /// Weights α reported for `b_α`.
        #[arg(long, value_delimiter = ',', default_value = "0,1")]
        alphas: Vec<f64>,
        #[command(flatten)]
        walk: WalkArgs,
    },
    /// Radial Green profile `ψ(r)`.
    EstimateGreenProfile {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, value_delimiter = ',')]
        radii: Option<Vec<f64>>,
        #[arg(long, value_enum, default_value = "base")]
        estimator: ProfileArg,
        #[command(flatten)]
        walk: WalkArgs,
    },
    /// Bloch test by the largest inscribed disk.
    BlochCheck {
        #[arg(long)]
        spec: PathBuf,
        /// Search region `|z| ≤ S`; default `32 * scale`.
        #[arg(long)]
        search_radius: Option<f64>,
        /// Grid step; default `scale / 16`.
        #[arg(long)]
        step: Option<f64>,
    },
    /// Class-𝒟 test and the constants `R < ρ < σ`.
    ClassD {
        #[arg(long)]
        spec: PathBuf,
        #[command(flatten)]
        walk: WalkArgs,
    },
    /// Circular-arc domain with certified ring widths.
    BuildArcDomain {
        /// Target constant; measured on the slit plane when omitted.
        #[arg(long = "A")]
        a: Option<f64>,
        #[arg(long)]
        rings: usize,
        #[command(flatten)]
        walk: WalkArgs,
    },
    /// Littlewood–Paley classification of a catalog map.
    ClassifyMap {
        /// Catalog label; see `--list`.
        #[arg(long, required_unless_present = "list")]
        map: Option<String>,
        #[arg(long)]
        list: bool,
        #[arg(long, required_unless_present_any = ["list", "bracket"])]
        p: Option<f64>,
        /// Bergman weight; Hardy when omitted.
        #[arg(long)]
        alpha: Option<f64>,
        /// Bisect for the transition exponent in `[p_min, p_max]`.
        #[arg(long, num_args = 2, value_names = ["P_MIN", "P_MAX"])]
        bracket: Option<Vec<f64>>,
        #[arg(long, default_value_t = 12)]
        iterations: u32,
    },
    /// Inclusion between Hardy and weighted Bergman spaces.
    CheckInclusion {
        /// `A^p_α ⊂ A^q_β`?
        #[arg(long, num_args = 4, value_names = ["P", "ALPHA", "Q", "BETA"], allow_negative_numbers = true)]
        bergman: Option<Vec<f64>>,
        /// `H^q ⊂ A^p_α`?
        #[arg(long, num_args = 3, value_names = ["Q", "P", "ALPHA"], allow_negative_numbers = true)]
        hardy: Option<Vec<f64>>,
    },
    /// Checks `h ≤ b_α/(α+2) ≤ b` on given values (`inf`, `>=x` accepted).
    Consistency {
        #[arg(long)]
        h: String,
        #[arg(long)]
        b: String,
        /// `alpha:value`, repeatable.
        #[arg(long = "b-alpha")]
        b_alpha: Vec<String>,
        #[arg(long)]
        tol: Option<f64>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::EstimateHardy { .. } => "estimate-hardy",
            Command::EstimateGreenProfile { .. } => "estimate-green-profile",
            Command::BlochCheck { .. } => "bloch-check",
            Command::ClassD { .. } => "class-d",
            Command::BuildArcDomain { .. } => "build-arc-domain",
            Command::ClassifyMap { .. } => "classify-map",
            Command::CheckInclusion { .. } => "check-inclusion",
            Command::Consistency { .. } => "consistency",
        }
    }
}

fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var("HARDYSCOPE_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .with_context(|| format!("HARDYSCOPE_THREADS={v:?}"))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()?;
    }
    Ok(())
}

fn load_thresholds(path: Option<&PathBuf>) -> Result<Thresholds> {
    match path {
        None => Ok(Thresholds::default()),
        Some(p) => {
            let text =
                std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            toml::from_str(&text).with_context(|| format!("in {}", p.display()))
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    configure_threads()?;
    let start = Instant::now();
    let th = load_thresholds(cli.config.as_ref())?;
    let name = cli.command.name();
    let outcome = match cli.command {
        Command::EstimateHardy {
            spec,
            method,
            radii,
            alphas,
            walk,
        } => commands::estimate_hardy(&spec, method, radii, &alphas, &walk, &th)?,
        Command::EstimateGreenProfile {
            spec,
            radii,
            estimator,
            walk,
        } => commands::estimate_green_profile(&spec, radii, estimator, &walk, &th)?,
        Command::BlochCheck {
            spec,
            search_radius,
            step,
        } => commands::bloch(&spec, search_radius, step)?,
        Command::ClassD { spec, walk } => commands::class_d(&spec, &walk, &th)?,
        Command::BuildArcDomain { a, rings, walk } => {
            commands::build_arc_domain(a, rings, &walk, &th)?
        }
        Command::ClassifyMap {
            map,
            list,
            p,
            alpha,
            bracket,
            iterations,
        } => commands::classify_map(map.as_deref(), list, p, alpha, bracket, iterations, &th)?,
        Command::CheckInclusion { bergman, hardy } => commands::check_inclusion(bergman, hardy)?,
        Command::Consistency { h, b, b_alpha, tol } => {
            commands::consistency(&h, &b, &b_alpha, tol.unwrap_or(th.consistency.tol))?
        }
    };
    {
        // A closed pipe (e.g. `| head`) is not an error of the run.
        let mut stdout = std::io::stdout().lock();
        for line in &outcome.report {
            if writeln!(stdout, "{line}").is_err() {
                break;
            }
        }
    }
    let manifest = RunManifest {
        command: std::env::args().skip(1).collect(),
        spec_hash: outcome.spec_hash.clone(),
        cfg: outcome.cfg.clone(),
        thresholds: th,
        versions: Versions {
            hardyscope: env!("CARGO_PKG_VERSION"),
        },
        wall_time: start.elapsed().as_secs_f64(),
    };
    write_outputs(&cli.out_dir, name, &outcome, &manifest)?;
    Ok(outcome.violation)
}

fn main() -> ExitCode {
    // Usage errors exit with 1, keeping 2 for failed inequalities.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
