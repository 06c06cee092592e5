use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use helixkit_core::{basis, generate, run_battery, BatteryOptions, Family, Helix, Metric};
use serde::Serialize;

mod config;
mod output;

use config::{split_pair, ConfigError, RawConfig, RunConfig};

/// Generate and verify helices in Euclidean and hyperbolic 3-space.
#[derive(Parser)]
#[command(name = "helixkit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a curve and write its polyline with κ, τ, |axis| and angle.
    Generate(RunArgs),
    /// Run the verification battery for a curve; exits 1 if any check fails.
    Verify(RunArgs),
    /// Print the curve families and Killing fields.
    List {
        #[arg(long, value_enum, default_value = "text")]
        format: ListFormat,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    family: Option<String>,
    /// Family parameter, `name=value`; angles take a `deg:` prefix.
    #[arg(long = "param", value_name = "KEY=VALUE")]
    params: Vec<String>,
    #[arg(long)]
    samples: Option<String>,
    /// Arc-length range `a:b`.
    #[arg(long)]
    range: Option<String>,
    /// json or csv
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Tolerance override, `name=value`.
    #[arg(long = "tol", value_name = "NAME=VALUE")]
    tols: Vec<String>,
    /// `key = value` file; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ListFormat {
    Text,
    Json,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Core(#[from] helixkit_core::Error),
    #[error("cannot write output: {0}")]
    Io(#[from] io::Error),
}

impl RunArgs {
    fn resolve(self) -> Result<RunConfig, ConfigError> {
        let file = match &self.config {
            Some(path) => RawConfig::from_file(path)?,
            None => RawConfig::default(),
        };
        let flags = RawConfig {
            family: self.family,
            params: self
                .params
                .iter()
                .map(|p| split_pair(p))
                .collect::<Result<_, _>>()?,
            samples: self.samples,
            range: self.range,
            format: self.format,
            out: self.out,
            tols: self
                .tols
                .iter()
                .map(|p| split_pair(p))
                .collect::<Result<_, _>>()?,
        };
        RunConfig::from_raw(file.overlay(flags))
    }
}

fn build(cfg: &RunConfig) -> Result<Helix, CliError> {
    let domain = cfg.range.unwrap_or_else(|| cfg.spec.default_domain());
    Ok(generate(cfg.spec.clone(), domain)?)
}

fn sink(cfg: &RunConfig) -> Result<Box<dyn Write>, CliError> {
    Ok(match &cfg.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn cmd_generate(cfg: RunConfig) -> Result<bool, CliError> {
    let helix = build(&cfg)?;
    let samples = output::sample(&helix, cfg.samples)?;
    let mut w = sink(&cfg)?;
    output::write_polyline(&mut w, cfg.format, &output::Meta::new(&cfg), &samples)?;
    w.flush()?;
    Ok(true)
}

fn cmd_verify(cfg: RunConfig) -> Result<bool, CliError> {
    let helix = build(&cfg)?;
    let opts = BatteryOptions {
        samples: cfg.samples,
        demand_lancret: cfg.demand_lancret,
    };
    let report = run_battery(&helix, opts, &cfg.tolerances)?;
    let mut w = sink(&cfg)?;
    output::write_report(
        &mut w,
        cfg.format,
        &output::Meta::new(&cfg),
        &cfg.tolerances,
        &report,
    )?;
    w.flush()?;
    for c in report.failures() {
        eprintln!(
            "fail: {}{} residual {:e} > {:e}",
            c.name,
            c.target
                .as_deref()
                .map(|t| format!(" [{t}]"))
                .unwrap_or_default(),
            c.residual,
            c.tolerance.unwrap_or(f64::NAN)
        );
    }
    Ok(report.passed())
}

#[derive(Serialize)]
struct FamilyEntry {
    name: &'static str,
    metric: &'static str,
    params: Vec<ParamEntry>,
}

#[derive(Serialize)]
struct ParamEntry {
    name: &'static str,
    default: &'static str,
}

#[derive(Serialize)]
struct FieldEntry {
    name: &'static str,
    metric: &'static str,
    formula: &'static str,
}

#[derive(Serialize)]
struct Catalog {
    families: Vec<FamilyEntry>,
    killing_fields: Vec<FieldEntry>,
}

fn catalog() -> Catalog {
    let families = Family::ALL
        .into_iter()
        .map(|f| FamilyEntry {
            name: f.name(),
            metric: f.metric().name(),
            params: f
                .parameters()
                .iter()
                .map(|(name, default)| ParamEntry { name, default })
                .collect(),
        })
        .collect();
    let killing_fields = [Metric::Euclidean, Metric::HyperbolicUhs]
        .into_iter()
        .flat_map(basis)
        .map(|k| FieldEntry {
            name: k.name,
            metric: k.metric.name(),
            formula: k.kind.formula(),
        })
        .collect();
    Catalog {
        families,
        killing_fields,
    }
}

fn cmd_list(format: ListFormat) -> Result<bool, CliError> {
    let cat = catalog();
    let mut out = io::stdout().lock();
    match format {
        ListFormat::Json => {
            serde_json::to_writer_pretty(&mut out, &cat).map_err(io::Error::from)?;
            writeln!(out)?;
        }
        ListFormat::Text => {
            writeln!(out, "families:")?;
            for f in &cat.families {
                let params: Vec<String> = f
                    .params
                    .iter()
                    .map(|p| format!("{}={}", p.name, p.default))
                    .collect();
                writeln!(
                    out,
                    "  {:<22} {:<16} {}",
                    f.name,
                    f.metric,
                    params.join(" ")
                )?;
            }
            writeln!(out, "killing fields:")?;
            for k in &cat.killing_fields {
                writeln!(out, "  {:<20} {:<16} {}", k.name, k.metric, k.formula)?;
            }
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::List { format } => cmd_list(format),
        Command::Generate(args) => args
            .resolve()
            .map_err(CliError::from)
            .and_then(cmd_generate),
        Command::Verify(args) => args.resolve().map_err(CliError::from).and_then(cmd_verify),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("helixkit: {e}");
            ExitCode::from(2)
        }
    }
}
