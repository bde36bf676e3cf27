//! Experiment configuration, execution and persistence.
//!
//! A config is a flat TOML file. Every list-valued game key spans a scenario
//! grid (benefit × arrangement cost × epsilon × regime); replicate `r` of any
//! scenario is seeded with `seed_base + r`. Each run writes its CSVs plus a
//! `manifest.toml` holding the resolved config, so re-running a manifest
//! reproduces the CSVs byte for byte.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytic::{GameParams, PopulationState, Regime};
use crate::error::{Error, Result};
use crate::evolution::{
    self, replicate_params, run_evolution, EvolutionParams, SweepGrid, Trajectory,
};
use crate::fixation::{fixation_table, StateIndexing, FIXATION_SCHEMA};
use crate::reputation::{
    self, sample_compositions, simulate_reputations, ReportRow, ReputationReport,
};
use crate::strategy::{Norm, Strategy};

pub const MANIFEST_FILE: &str = "manifest.toml";
pub const COMPOSITIONS_SCHEMA: &str = "commitrep/compositions/v1";
pub const MEAN_TRAJECTORY_SCHEMA: &str = "commitrep/mean-trajectory/v1";
pub const REPUTATION_SUMMARY_SCHEMA: &str = "commitrep/reputation-summary/v1";

/// Offset separating composition-sampling streams from evolution seeds.
const SAMPLING_SEED_OFFSET: u64 = 0x5EED_0000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    Evolve,
    Sweep,
    Fixation,
    ReputationValidate,
    CompositionsSample,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub benefits: Vec<f64>,
    pub arrangement_costs: Vec<f64>,
    pub epsilons: Vec<f64>,
    pub regimes: Vec<Regime>,
    /// Assessment rules `[γ11, γ10, γ01, γ00]`.
    pub norm: [i8; 4],
    pub population: u32,
    pub turns: u64,
    pub mutation: f64,
    pub selection: f64,
    pub snapshot_stride: u64,
    pub replicates: u32,
    pub seed_base: u64,
    pub out_dir: PathBuf,
    /// Fixation only.
    pub indexing: StateIndexing,
    /// Reputation simulation rounds per composition.
    pub rounds: u64,
    /// Compositions sampled per scenario.
    pub compositions: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        let evo = EvolutionParams::default();
        ExperimentConfig {
            kind: ExperimentKind::Evolve,
            benefits: vec![5.5],
            arrangement_costs: vec![1.0],
            epsilons: vec![0.01],
            regimes: vec![Regime::A2b],
            norm: Norm::STUDY.values(),
            population: evo.population,
            turns: evo.turns,
            mutation: evo.mutation,
            selection: evo.selection,
            snapshot_stride: evo.snapshot_stride,
            replicates: 1,
            seed_base: 1,
            out_dir: PathBuf::from("out"),
            indexing: StateIndexing::default(),
            rounds: 1_000_000,
            compositions: 20,
        }
    }
}

/// One point of the scenario grid.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Scenario {
    pub index: usize,
    pub game: GameParams,
}

impl Scenario {
    pub fn id(&self) -> String {
        format!(
            "b{}_ca{}_eps{}_{}",
            self.game.benefit, self.game.arrangement_cost, self.game.epsilon, self.game.regime
        )
    }
}

fn non_empty<T>(field: &'static str, v: &[T]) -> Result<()> {
    if v.is_empty() {
        Err(Error::InvalidConfig {
            field,
            reason: "list must not be empty".into(),
        })
    } else {
        Ok(())
    }
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        Ok(toml::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> Result<String> {
        Ok(toml::to_string(self)?)
    }

    pub fn evolution_params(&self) -> EvolutionParams {
        EvolutionParams {
            population: self.population,
            turns: self.turns,
            mutation: self.mutation,
            selection: self.selection,
            seed: self.seed_base,
            snapshot_stride: self.snapshot_stride,
            record_events: false,
        }
    }

    pub fn norm(&self) -> Result<Norm> {
        Norm::from_values(self.norm).map_err(|_| Error::InvalidConfig {
            field: "norm",
            reason: format!("rules must each be -1, 0 or 1, got {:?}", self.norm),
        })
    }

    /// Benefit-major cartesian product of the game lists.
    pub fn scenarios(&self) -> Vec<Scenario> {
        let mut out = Vec::new();
        for &benefit in &self.benefits {
            for &arrangement_cost in &self.arrangement_costs {
                for &epsilon in &self.epsilons {
                    for &regime in &self.regimes {
                        out.push(Scenario {
                            index: out.len(),
                            game: GameParams {
                                benefit,
                                arrangement_cost,
                                epsilon,
                                regime,
                            },
                        });
                    }
                }
            }
        }
        out
    }

    /// Checks every field; returns non-fatal warnings.
    pub fn validate(&self) -> Result<Vec<String>> {
        non_empty("benefits", &self.benefits)?;
        non_empty("arrangement_costs", &self.arrangement_costs)?;
        non_empty("epsilons", &self.epsilons)?;
        non_empty("regimes", &self.regimes)?;
        let mut warnings = Vec::new();
        for s in self.scenarios() {
            let rename = |e: Error| match e {
                Error::InvalidConfig { field, reason } => Error::InvalidConfig {
                    field: match field {
                        "benefit" => "benefits",
                        "arrangement_cost" => "arrangement_costs",
                        "epsilon" => "epsilons",
                        other => other,
                    },
                    reason,
                },
                other => other,
            };
            warnings.extend(s.game.validate().map_err(rename)?);
        }
        warnings.sort();
        warnings.dedup();
        self.norm()?;
        self.evolution_params().validate()?;
        if self.replicates == 0 {
            return Err(Error::InvalidConfig {
                field: "replicates",
                reason: "must be >= 1".into(),
            });
        }
        if matches!(
            self.kind,
            ExperimentKind::ReputationValidate | ExperimentKind::CompositionsSample
        ) {
            if self.compositions == 0 {
                return Err(Error::InvalidConfig {
                    field: "compositions",
                    reason: "must be >= 1".into(),
                });
            }
            if self.kind == ExperimentKind::ReputationValidate
                && (self.rounds == 0 || !self.rounds.is_multiple_of(2))
            {
                return Err(Error::InvalidConfig {
                    field: "rounds",
                    reason: format!("must be even and positive, got {}", self.rounds),
                });
            }
        }
        Ok(warnings)
    }
}

/// Written next to the outputs of every run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    pub outputs: Vec<String>,
    /// Seeds of replicate 0 and the last replicate.
    pub seeds: Vec<u64>,
    pub wall_time_seconds: f64,
    pub config: ExperimentConfig,
}

impl Manifest {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(toml::from_str(&text)?)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunOutput {
    pub files: Vec<PathBuf>,
    pub manifest: PathBuf,
}

struct Outputs {
    dir: PathBuf,
    files: Vec<PathBuf>,
}

impl Outputs {
    fn create(&mut self, name: &str) -> Result<BufWriter<File>> {
        let path = self.dir.join(name);
        let file = File::create(&path).map_err(|e| Error::io(&path, e))?;
        self.files.push(path);
        Ok(BufWriter::new(file))
    }
}

fn finish<W: Write>(mut w: W, path: &Path) -> Result<()> {
    w.flush().map_err(|e| Error::io(path, e))
}

/// Validates and executes `config`, writing CSVs and a manifest into `config.out_dir`.
pub fn run_config(config: &ExperimentConfig) -> Result<RunOutput> {
    for w in config.validate()? {
        log::warn!("{w}");
    }
    let started = Instant::now();
    fs::create_dir_all(&config.out_dir).map_err(|e| Error::io(&config.out_dir, e))?;
    let mut out = Outputs {
        dir: config.out_dir.clone(),
        files: Vec::new(),
    };
    match config.kind {
        ExperimentKind::Evolve => run_evolve(config, &mut out)?,
        ExperimentKind::Sweep => run_sweep(config, &mut out)?,
        ExperimentKind::Fixation => run_fixation(config, &mut out)?,
        ExperimentKind::CompositionsSample => run_compositions(config, &mut out)?,
        ExperimentKind::ReputationValidate => run_reputation(config, &mut out)?,
    }
    let manifest = Manifest {
        tool: "commitrep".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        outputs: out
            .files
            .iter()
            .filter_map(|p| p.file_name().map(|n| n.to_string_lossy().into_owned()))
            .collect(),
        seeds: vec![
            config.seed_base,
            config.seed_base.wrapping_add(config.replicates as u64 - 1),
        ],
        wall_time_seconds: started.elapsed().as_secs_f64(),
        config: config.clone(),
    };
    let path = config.out_dir.join(MANIFEST_FILE);
    let text = toml::to_string(&manifest)?;
    fs::write(&path, text).map_err(|e| Error::io(&path, e))?;
    log::info!("{:?} finished in {:.2?}", config.kind, started.elapsed());
    Ok(RunOutput {
        files: out.files,
        manifest: path,
    })
}

/// Re-executes the config stored in a manifest.
pub fn rerun_manifest(path: &Path) -> Result<RunOutput> {
    run_config(&Manifest::load(path)?.config)
}

fn scenario_columns(s: &Scenario) -> Vec<String> {
    vec![
        s.id(),
        s.game.benefit.to_string(),
        s.game.arrangement_cost.to_string(),
        s.game.epsilon.to_string(),
        s.game.regime.to_string(),
    ]
}

const SCENARIO_HEADER: [&str; 5] = ["scenario", "b", "c_a", "epsilon", "regime"];

/// All replicates of every scenario, in (scenario, replicate) order.
fn evolve_all(config: &ExperimentConfig) -> Result<Vec<(Scenario, Vec<Trajectory>)>> {
    let evo = config.evolution_params();
    config
        .scenarios()
        .into_iter()
        .map(|s| {
            let runs = (0..config.replicates)
                .into_par_iter()
                .map(|r| run_evolution(&s.game, &replicate_params(&evo, r)))
                .collect::<Result<Vec<_>>>()?;
            Ok((s, runs))
        })
        .collect()
}

fn run_evolve(config: &ExperimentConfig, out: &mut Outputs) -> Result<()> {
    let all = evolve_all(config)?;

    let mut w = out.create("trajectories.csv")?;
    writeln!(w, "# schema: {}", evolution::TRAJECTORY_SCHEMA)
        .map_err(|e| Error::io("trajectories.csv", e))?;
    let mut csv_w = csv::Writer::from_writer(w);
    let mut header: Vec<String> = SCENARIO_HEADER.iter().map(|s| s.to_string()).collect();
    header.extend(["replicate".to_string(), "seed".to_string()]);
    header.extend(evolution::trajectory_header());
    csv_w.write_record(&header)?;
    for (s, runs) in &all {
        for (r, t) in runs.iter().enumerate() {
            for snap in &t.snapshots {
                let mut row = scenario_columns(s);
                row.push(r.to_string());
                row.push(config.seed_base.wrapping_add(r as u64).to_string());
                row.push(snap.turn.to_string());
                row.extend(snap.state.counts().iter().map(|c| c.to_string()));
                row.push(t.cooperation[snap.turn as usize].to_string());
                csv_w.write_record(&row)?;
            }
        }
    }
    let w = csv_w
        .into_inner()
        .map_err(|e| Error::io("trajectories.csv", e.into_error()))?;
    finish(w, Path::new("trajectories.csv"))?;

    // replicate-averaged frequencies at each snapshot turn
    let mut w = out.create("mean_trajectory.csv")?;
    writeln!(w, "# schema: {MEAN_TRAJECTORY_SCHEMA}")
        .map_err(|e| Error::io("mean_trajectory.csv", e))?;
    let mut csv_w = csv::Writer::from_writer(w);
    let mut header: Vec<String> = SCENARIO_HEADER.iter().map(|s| s.to_string()).collect();
    header.push("turn".into());
    header.extend(Strategy::ALL.iter().map(|s| format!("f_{s}")));
    header.extend(["cooperation".to_string(), "replicates".to_string()]);
    csv_w.write_record(&header)?;
    for (s, runs) in &all {
        for (k, snap) in runs[0].snapshots.iter().enumerate() {
            let mut freq = [0.0; Strategy::COUNT];
            let mut coop = 0.0;
            for t in runs {
                for (acc, f) in freq.iter_mut().zip(t.snapshots[k].state.frequencies()) {
                    *acc += f;
                }
                coop += t.cooperation[snap.turn as usize];
            }
            let n = runs.len() as f64;
            let mut row = scenario_columns(s);
            row.push(snap.turn.to_string());
            row.extend(freq.iter().map(|f| (f / n).to_string()));
            row.push((coop / n).to_string());
            row.push(runs.len().to_string());
            csv_w.write_record(&row)?;
        }
    }
    let w = csv_w
        .into_inner()
        .map_err(|e| Error::io("mean_trajectory.csv", e.into_error()))?;
    finish(w, Path::new("mean_trajectory.csv"))
}

fn run_sweep(config: &ExperimentConfig, out: &mut Outputs) -> Result<()> {
    let evo = config.evolution_params();
    let grid = SweepGrid {
        benefits: config.benefits.clone(),
        arrangement_costs: config.arrangement_costs.clone(),
    };
    let mut w = out.create("sweep.csv")?;
    writeln!(w, "# schema: {}", evolution::SWEEP_SCHEMA).map_err(|e| Error::io("sweep.csv", e))?;
    let mut csv_w = csv::Writer::from_writer(w);
    csv_w.write_record([
        "epsilon",
        "regime",
        "b",
        "c_a",
        "mean_cooperation",
        "replicates",
        "seed_base",
    ])?;
    for &epsilon in &config.epsilons {
        for &regime in &config.regimes {
            let template = GameParams {
                epsilon,
                regime,
                ..GameParams::default()
            };
            let result = evolution::sweep(&grid, &template, &evo, config.replicates)?;
            for p in &result.points {
                csv_w.write_record([
                    epsilon.to_string(),
                    regime.to_string(),
                    p.benefit.to_string(),
                    p.arrangement_cost.to_string(),
                    p.mean_cooperation.to_string(),
                    p.replicates.to_string(),
                    p.seed_base.to_string(),
                ])?;
            }
        }
    }
    let w = csv_w
        .into_inner()
        .map_err(|e| Error::io("sweep.csv", e.into_error()))?;
    finish(w, Path::new("sweep.csv"))
}

fn run_fixation(config: &ExperimentConfig, out: &mut Outputs) -> Result<()> {
    let tables = config
        .scenarios()
        .iter()
        .map(|s| {
            fixation_table(
                &Strategy::ALL,
                &s.game,
                config.population,
                config.selection,
                config.indexing,
            )
        })
        .collect::<Result<Vec<_>>>()?;

    let mut w = out.create("fixation.csv")?;
    writeln!(w, "# schema: {FIXATION_SCHEMA}").map_err(|e| Error::io("fixation.csv", e))?;
    for (i, t) in tables.iter().enumerate() {
        let mut buf = Vec::new();
        t.write_csv(&mut buf)?;
        let text = String::from_utf8(buf).expect("csv output is utf-8");
        // drop each table's schema line, and the header for all but the first
        let skip = if i == 0 { 1 } else { 2 };
        for line in text.lines().skip(skip) {
            writeln!(w, "{line}").map_err(|e| Error::io("fixation.csv", e))?;
        }
    }
    finish(w, Path::new("fixation.csv"))?;

    let mut w = out.create("fixation_tables.txt")?;
    for (s, t) in config.scenarios().iter().zip(&tables) {
        writeln!(
            w,
            "# {} (N={}, s={})\n{}",
            s.id(),
            config.population,
            config.selection,
            t.to_text()
        )
        .map_err(|e| Error::io("fixation_tables.txt", e))?;
    }
    finish(w, Path::new("fixation_tables.txt"))
}

struct SampledScenario {
    scenario: Scenario,
    compositions: Vec<PopulationState>,
    with_replacement: bool,
}

fn sample_all(config: &ExperimentConfig) -> Result<Vec<SampledScenario>> {
    evolve_all(config)?
        .into_iter()
        .map(|(scenario, runs)| {
            let mut rng = ChaCha8Rng::seed_from_u64(
                config
                    .seed_base
                    .wrapping_add(SAMPLING_SEED_OFFSET)
                    .wrapping_add(scenario.index as u64),
            );
            let sample = sample_compositions(&runs, config.compositions, &mut rng)?;
            if sample.with_replacement {
                log::warn!("scenario {}: sampled with replacement", scenario.id());
            }
            Ok(SampledScenario {
                scenario,
                compositions: sample.compositions,
                with_replacement: sample.with_replacement,
            })
        })
        .collect()
}

fn run_compositions(config: &ExperimentConfig, out: &mut Outputs) -> Result<()> {
    let sampled = sample_all(config)?;
    let mut w = out.create("compositions.csv")?;
    writeln!(w, "# schema: {COMPOSITIONS_SCHEMA}").map_err(|e| Error::io("compositions.csv", e))?;
    let mut csv_w = csv::Writer::from_writer(w);
    let mut header: Vec<&str> = SCENARIO_HEADER.to_vec();
    header.extend(["sample", "composition", "num_observers", "with_replacement"]);
    csv_w.write_record(&header)?;
    for s in &sampled {
        for (i, c) in s.compositions.iter().enumerate() {
            let mut row = scenario_columns(&s.scenario);
            row.extend([
                i.to_string(),
                c.to_string(),
                c.num_observers().to_string(),
                s.with_replacement.to_string(),
            ]);
            csv_w.write_record(&row)?;
        }
    }
    let w = csv_w
        .into_inner()
        .map_err(|e| Error::io("compositions.csv", e.into_error()))?;
    finish(w, Path::new("compositions.csv"))
}

fn run_reputation(config: &ExperimentConfig, out: &mut Outputs) -> Result<()> {
    let norm = config.norm()?;
    let sampled = sample_all(config)?;
    let jobs: Vec<(usize, &Scenario, &PopulationState)> = sampled
        .iter()
        .flat_map(|s| s.compositions.iter().map(move |c| (&s.scenario, c)))
        .enumerate()
        .map(|(i, (s, c))| (i, s, c))
        .collect();
    let reports: Vec<ReputationReport> = jobs
        .par_iter()
        .map(|&(i, s, c)| {
            simulate_reputations(
                c,
                &s.game,
                &norm,
                config.rounds,
                config.seed_base.wrapping_add(i as u64),
            )
        })
        .collect::<Result<_>>()?;

    let ids: Vec<String> = jobs.iter().map(|(_, s, _)| s.id()).collect();
    let rows: Vec<ReportRow<'_>> = ids
        .iter()
        .zip(&reports)
        .map(|(id, report)| ReportRow {
            scenario: id,
            report,
        })
        .collect();
    let w = out.create("reputation.csv")?;
    reputation::write_reputation_csv(w, &rows)?;

    let mut w = out.create("reputation_summary.csv")?;
    writeln!(w, "# schema: {REPUTATION_SUMMARY_SCHEMA}")
        .map_err(|e| Error::io("reputation_summary.csv", e))?;
    let mut csv_w = csv::Writer::from_writer(w);
    let mut header: Vec<&str> = SCENARIO_HEADER.to_vec();
    header.extend(["sampled", "without_observers", "with_replacement"]);
    csv_w.write_record(&header)?;
    for s in &sampled {
        let without = s
            .compositions
            .iter()
            .filter(|c| c.num_observers() == 0)
            .count();
        let mut row = scenario_columns(&s.scenario);
        row.extend([
            s.compositions.len().to_string(),
            without.to_string(),
            s.with_replacement.to_string(),
        ]);
        csv_w.write_record(&row)?;
    }
    let w = csv_w
        .into_inner()
        .map_err(|e| Error::io("reputation_summary.csv", e.into_error()))?;
    finish(w, Path::new("reputation_summary.csv"))
}

/// Sizes for [`reproduce_figures`]. Only grid density and replicate counts
/// differ between presets; `turns` is exposed for smoke tests.
#[derive(Clone, Debug, PartialEq)]
pub struct FigureScale {
    pub grid_points: usize,
    pub sweep_replicates: u32,
    pub trajectory_replicates: u32,
    pub sampling_replicates: u32,
    pub compositions_per_scenario: usize,
    pub turns: u64,
    pub rounds: u64,
}

impl FigureScale {
    pub fn desk() -> Self {
        FigureScale {
            grid_points: 5,
            sweep_replicates: 20,
            trajectory_replicates: 100,
            sampling_replicates: 4,
            compositions_per_scenario: 10,
            turns: 100_000,
            rounds: 1_000_000,
        }
    }

    pub fn full() -> Self {
        FigureScale {
            grid_points: 17,
            sweep_replicates: 100,
            trajectory_replicates: 1000,
            sampling_replicates: 100,
            compositions_per_scenario: 1000,
            turns: 100_000,
            rounds: 1_000_000,
        }
    }
}

/// Runs one experiment per figure into `out_dir/<figure>/` and returns the figure CSVs.
pub fn reproduce_figures(out_dir: &Path, scale: &FigureScale) -> Result<Vec<PathBuf>> {
    let benefit_cases = vec![1.5, 5.5, 9.5];
    let base = ExperimentConfig {
        turns: scale.turns,
        ..ExperimentConfig::default()
    };
    let figures = [
        (
            "fig2",
            "sweep.csv",
            ExperimentConfig {
                kind: ExperimentKind::Sweep,
                benefits: SweepGrid::linspace(1.5, 9.5, scale.grid_points),
                arrangement_costs: SweepGrid::linspace(0.25, 1.75, scale.grid_points),
                replicates: scale.sweep_replicates,
                snapshot_stride: scale.turns.max(1),
                ..base.clone()
            },
        ),
        (
            "fig3a",
            "mean_trajectory.csv",
            ExperimentConfig {
                kind: ExperimentKind::Evolve,
                benefits: benefit_cases.clone(),
                replicates: scale.trajectory_replicates,
                snapshot_stride: (scale.turns / 200).max(1),
                ..base.clone()
            },
        ),
        (
            "fig3b",
            "fixation.csv",
            ExperimentConfig {
                kind: ExperimentKind::Fixation,
                benefits: benefit_cases.clone(),
                ..base.clone()
            },
        ),
        (
            "fig3c",
            "trajectories.csv",
            ExperimentConfig {
                kind: ExperimentKind::Evolve,
                benefits: benefit_cases.clone(),
                replicates: 1,
                snapshot_stride: (scale.turns / 1000).max(1),
                ..base.clone()
            },
        ),
        (
            "fig4",
            "reputation.csv",
            ExperimentConfig {
                kind: ExperimentKind::ReputationValidate,
                benefits: benefit_cases,
                arrangement_costs: vec![0.25, 1.0, 1.75],
                epsilons: vec![0.05],
                regimes: Regime::ALL.to_vec(),
                replicates: scale.sampling_replicates,
                compositions: scale.compositions_per_scenario,
                rounds: scale.rounds,
                ..base
            },
        ),
    ];
    let mut csvs = Vec::new();
    for (name, main_csv, config) in figures {
        let config = ExperimentConfig {
            out_dir: out_dir.join(name),
            ..config
        };
        run_config(&config)?;
        csvs.push(config.out_dir.join(main_csv));
    }
    Ok(csvs)
}

/// Reads the `# schema:` line of a harness CSV and checks it.
pub fn check_schema(path: &Path, expected: &str) -> Result<()> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let found = text
        .lines()
        .next()
        .and_then(|l| l.strip_prefix("# schema: "))
        .unwrap_or("")
        .to_string();
    if found == expected {
        Ok(())
    } else {
        Err(Error::SchemaMismatch {
            path: path.to_path_buf(),
            expected: expected.to_string(),
            found,
        })
    }
}
