use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use commitrep::harness::{self, ExperimentConfig, ExperimentKind, FigureScale};
use commitrep::{Error, Regime, StateIndexing};

#[derive(Parser, Debug)]
#[command(
    name = "commitrep",
    version,
    about = "Reputation-gated commitment experiments"
)]
struct Cli {
    /// Increase log verbosity (-v info, -vv debug).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a config file as-is (flags override its keys).
    Run(ConfigArgs),
    /// Evolve populations and record trajectories.
    Evolve(ConfigArgs),
    /// Mean cooperation over a benefit × arrangement-cost grid.
    Sweep(ConfigArgs),
    /// Pairwise fixation probability tables.
    Fixation(ConfigArgs),
    /// Compare simulated reputations with analytic predictions.
    ReputationValidate(ConfigArgs),
    /// Sample population compositions from evolution runs.
    CompositionsSample(ConfigArgs),
    /// Re-execute the config recorded in a manifest.
    Rerun { manifest: PathBuf },
    /// Produce the CSVs behind every figure.
    ReproduceFigures {
        #[arg(long, value_enum, default_value_t = ScaleArg::Desk)]
        scale: ScaleArg,
        #[arg(long, env = "COMMITREP_OUT", default_value = "out")]
        out: PathBuf,
        /// Override the number of evolution turns (smoke runs).
        #[arg(long)]
        turns: Option<u64>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ScaleArg {
    Desk,
    Full,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum IndexingArg {
    Invaders,
    Residents,
}

#[derive(Args, Debug, Default)]
struct ConfigArgs {
    /// TOML config; unspecified keys take their defaults.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_delimiter = ',')]
    benefits: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    arrangement_costs: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    epsilons: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',', value_parser = parse_regime)]
    regimes: Option<Vec<Regime>>,
    /// Four assessment rules, e.g. `1,-1,0,0`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    norm: Option<Vec<i8>>,
    #[arg(long)]
    population: Option<u32>,
    #[arg(long)]
    turns: Option<u64>,
    #[arg(long)]
    mutation: Option<f64>,
    #[arg(long)]
    selection: Option<f64>,
    #[arg(long)]
    snapshot_stride: Option<u64>,
    #[arg(long)]
    replicates: Option<u32>,
    /// Seed of replicate 0.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, env = "COMMITREP_OUT")]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    indexing: Option<IndexingArg>,
    #[arg(long)]
    rounds: Option<u64>,
    #[arg(long)]
    compositions: Option<usize>,
}

fn parse_regime(s: &str) -> Result<Regime, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

impl ConfigArgs {
    fn resolve(self, kind: Option<ExperimentKind>) -> Result<ExperimentConfig, Error> {
        let mut c = match &self.config {
            Some(path) => ExperimentConfig::load(path)?,
            None => ExperimentConfig::default(),
        };
        if let Some(kind) = kind {
            c.kind = kind;
        }
        macro_rules! set {
            ($($field:ident),*) => { $( if let Some(v) = self.$field { c.$field = v; } )* };
        }
        set!(
            benefits,
            arrangement_costs,
            epsilons,
            regimes,
            population,
            turns,
            mutation,
            selection
        );
        set!(snapshot_stride, replicates, rounds, compositions);
        if let Some(v) = self.norm {
            c.norm = v.try_into().map_err(|v: Vec<i8>| Error::InvalidConfig {
                field: "norm",
                reason: format!("expected four rules, got {}", v.len()),
            })?;
        }
        if let Some(v) = self.seed {
            c.seed_base = v;
        }
        if let Some(v) = self.out {
            c.out_dir = v;
        }
        if let Some(v) = self.indexing {
            c.indexing = match v {
                IndexingArg::Invaders => StateIndexing::Invaders,
                IndexingArg::Residents => StateIndexing::Residents,
            };
        }
        Ok(c)
    }
}

fn execute(command: Command) -> Result<Vec<PathBuf>, Error> {
    let (args, kind) = match command {
        Command::Run(a) => (a, None),
        Command::Evolve(a) => (a, Some(ExperimentKind::Evolve)),
        Command::Sweep(a) => (a, Some(ExperimentKind::Sweep)),
        Command::Fixation(a) => (a, Some(ExperimentKind::Fixation)),
        Command::ReputationValidate(a) => (a, Some(ExperimentKind::ReputationValidate)),
        Command::CompositionsSample(a) => (a, Some(ExperimentKind::CompositionsSample)),
        Command::Rerun { manifest } => {
            let out = harness::rerun_manifest(&manifest)?;
            return Ok(out.files.into_iter().chain([out.manifest]).collect());
        }
        Command::ReproduceFigures { scale, out, turns } => {
            let mut scale = match scale {
                ScaleArg::Desk => FigureScale::desk(),
                ScaleArg::Full => FigureScale::full(),
            };
            if let Some(t) = turns {
                scale.turns = t;
            }
            return harness::reproduce_figures(&out, &scale);
        }
    };
    let config = args.resolve(kind)?;
    let out = harness::run_config(&config)?;
    Ok(out.files.into_iter().chain([out.manifest]).collect())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();

    match execute(cli.command) {
        Ok(files) => {
            for f in files {
                println!("{}", f.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            let line = serde_json::json!({
                "error": e.kind(),
                "field": e.field(),
                "message": e.to_string(),
            });
            eprintln!("{line}");
            match e {
                Error::InvalidConfig { .. } | Error::ConfigParse(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
