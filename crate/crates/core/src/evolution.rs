//! Selection-mutation process over the nine strategies.
//!
//! Each turn either one random player mutates to a uniformly drawn strategy
//! (probability `mu`), or a random learner compares its average payoff with a
//! random model and imitates it with Fermi probability. Payoffs come from the
//! analytic payoff matrix at the current composition; no games are sampled.

use std::io::Write;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytic::{
    arrangement_probability, average_payoff_unchecked, cooperation_probability, regime_reputations,
    GameParams, PayoffMatrix, PopulationState,
};
use crate::error::{Error, Result};
use crate::strategy::Strategy;

pub const TRAJECTORY_SCHEMA: &str = "commitrep/trajectory/v1";
pub const SWEEP_SCHEMA: &str = "commitrep/sweep/v1";

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvolutionParams {
    pub population: u32,
    pub turns: u64,
    /// Mutation probability per turn.
    pub mutation: f64,
    /// Imitation strength `s`.
    pub selection: f64,
    pub seed: u64,
    /// Keep every `snapshot_stride`-th composition; the final one is always kept.
    pub snapshot_stride: u64,
    pub record_events: bool,
}

impl Default for EvolutionParams {
    fn default() -> Self {
        EvolutionParams {
            population: 100,
            turns: 100_000,
            mutation: 0.01,
            selection: 1.0,
            seed: 0,
            snapshot_stride: 100,
            record_events: false,
        }
    }
}

impl EvolutionParams {
    pub fn validate(&self) -> Result<()> {
        if self.population < 2 {
            return Err(Error::InvalidConfig {
                field: "population",
                reason: format!("must be >= 2, got {}", self.population),
            });
        }
        if !(0.0..=1.0).contains(&self.mutation) {
            return Err(Error::InvalidConfig {
                field: "mutation",
                reason: format!("must lie in [0, 1], got {}", self.mutation),
            });
        }
        if !(self.selection.is_finite() && self.selection >= 0.0) {
            return Err(Error::InvalidConfig {
                field: "selection",
                reason: format!("must be >= 0, got {}", self.selection),
            });
        }
        if self.snapshot_stride == 0 {
            return Err(Error::InvalidConfig {
                field: "snapshot_stride",
                reason: "must be >= 1".into(),
            });
        }
        Ok(())
    }
}

/// Fermi imitation probability for a payoff gap `model - learner`.
pub fn adoption_probability(selection: f64, payoff_gap: f64) -> f64 {
    1.0 / (1.0 + (-selection * payoff_gap).exp())
}

/// Expected fraction of cooperative acts in a random encounter at composition `pop`.
pub fn cooperation_frequency(pop: &PopulationState, params: &GameParams) -> f64 {
    cooperation_with(pop, &regime_reputations(pop, params))
}

fn cooperation_with(pop: &PopulationState, reps: &[f64; Strategy::COUNT]) -> f64 {
    let n = pop.size() as f64;
    let mut total = 0.0;
    for (i, ni) in pop.present() {
        let fi = ni as f64 / n;
        for (j, nj) in pop.present() {
            let others = if i == j { nj - 1 } else { nj };
            if others == 0 {
                continue;
            }
            let a = arrangement_probability(i, j, reps[i.index()], reps[j.index()]);
            total += fi * (others as f64 / (n - 1.0)) * cooperation_probability(i, a);
        }
    }
    total
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EventKind {
    Mutation,
    Imitation,
}

/// A change of strategy by one player.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Event {
    pub turn: u64,
    pub kind: EventKind,
    pub from: Strategy,
    pub to: Strategy,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Snapshot {
    pub turn: u64,
    pub state: PopulationState,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub snapshots: Vec<Snapshot>,
    /// Cooperation frequency after each turn; index 0 is the initial state.
    pub cooperation: Vec<f64>,
    pub events: Vec<Event>,
}

impl Trajectory {
    /// Cooperation averaged over every turn of the run (the initial state
    /// only counts when no turn was played).
    pub fn mean_cooperation(&self) -> f64 {
        let turns = &self.cooperation[1.min(self.cooperation.len() - 1)..];
        turns.iter().sum::<f64>() / turns.len() as f64
    }

    pub fn final_state(&self) -> &PopulationState {
        &self
            .snapshots
            .last()
            .expect("trajectory holds the initial snapshot")
            .state
    }

    /// Mean strategy frequencies over snapshots with `turn >= from_turn`.
    pub fn mean_frequencies_from(&self, from_turn: u64) -> [f64; Strategy::COUNT] {
        let mut sum = [0.0; Strategy::COUNT];
        let mut count = 0usize;
        for snap in self.snapshots.iter().filter(|s| s.turn >= from_turn) {
            for (acc, f) in sum.iter_mut().zip(snap.state.frequencies()) {
                *acc += f;
            }
            count += 1;
        }
        sum.map(|v| v / count.max(1) as f64)
    }

    /// Trajectory CSV: `turn, n_RA, ..., n_1-, cooperation` at every snapshot.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = writer;
        writeln!(w, "# schema: {TRAJECTORY_SCHEMA}")
            .map_err(|e| Error::io("<trajectory csv>", e))?;
        let mut w = csv::Writer::from_writer(w);
        w.write_record(trajectory_header())?;
        for snap in &self.snapshots {
            let mut row = vec![snap.turn.to_string()];
            row.extend(snap.state.counts().iter().map(|c| c.to_string()));
            row.push(self.cooperation[snap.turn as usize].to_string());
            w.write_record(&row)?;
        }
        w.flush().map_err(|e| Error::io("<trajectory csv>", e))?;
        Ok(())
    }
}

pub fn trajectory_header() -> Vec<String> {
    let mut header = vec!["turn".to_string()];
    header.extend(Strategy::ALL.iter().map(|s| format!("n_{s}")));
    header.push("cooperation".into());
    header
}

/// Composition together with its payoff matrix, refreshed on every change.
struct Cached {
    pop: PopulationState,
    matrix: PayoffMatrix,
    cooperation: f64,
}

impl Cached {
    fn new(pop: PopulationState, game: &GameParams) -> Self {
        let reps = regime_reputations(&pop, game);
        Cached {
            pop,
            matrix: PayoffMatrix::full(&reps, game),
            cooperation: cooperation_with(&pop, &reps),
        }
    }
}

/// Outcome of a single turn.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepOutcome {
    Unchanged,
    Changed(Event),
}

fn step_in_place<R: Rng + ?Sized>(
    pop: &mut PopulationState,
    matrix: &PayoffMatrix,
    evo: &EvolutionParams,
    turn: u64,
    rng: &mut R,
) -> StepOutcome {
    let n = pop.size();
    if rng.random_bool(evo.mutation) {
        let from = pop.strategy_at(rng.random_range(0..n));
        let to = Strategy::ALL[rng.random_range(0..Strategy::COUNT)];
        if from == to {
            return StepOutcome::Unchanged;
        }
        pop.transfer(from, to);
        return StepOutcome::Changed(Event {
            turn,
            kind: EventKind::Mutation,
            from,
            to,
        });
    }
    let learner_idx = rng.random_range(0..n);
    let mut model_idx = rng.random_range(0..n - 1);
    if model_idx >= learner_idx {
        model_idx += 1;
    }
    let learner = pop.strategy_at(learner_idx);
    let model = pop.strategy_at(model_idx);
    if learner == model {
        return StepOutcome::Unchanged;
    }
    let gap = average_payoff_unchecked(model, pop, matrix)
        - average_payoff_unchecked(learner, pop, matrix);
    if rng.random::<f64>() < adoption_probability(evo.selection, gap) {
        pop.transfer(learner, model);
        StepOutcome::Changed(Event {
            turn,
            kind: EventKind::Imitation,
            from: learner,
            to: model,
        })
    } else {
        StepOutcome::Unchanged
    }
}

/// One turn of the process starting from `pop`.
pub fn evolution_step<R: Rng + ?Sized>(
    pop: &PopulationState,
    game: &GameParams,
    evo: &EvolutionParams,
    rng: &mut R,
) -> PopulationState {
    let matrix = PayoffMatrix::for_population(pop, game);
    let mut next = *pop;
    step_in_place(&mut next, &matrix, evo, 0, rng);
    next
}

/// Runs `evo.turns` turns from an all-`0-` population.
pub fn run_evolution(game: &GameParams, evo: &EvolutionParams) -> Result<Trajectory> {
    evo.validate()?;
    let initial = PopulationState::homogeneous(Strategy::ZERO_MINUS, evo.population)?;
    Ok(run_from(initial, game, evo))
}

/// Runs `evo.turns` turns from `initial`.
pub fn run_from(initial: PopulationState, game: &GameParams, evo: &EvolutionParams) -> Trajectory {
    let mut rng = ChaCha8Rng::seed_from_u64(evo.seed);
    let mut cached = Cached::new(initial, game);
    let mut snapshots = vec![Snapshot {
        turn: 0,
        state: initial,
    }];
    let mut cooperation = Vec::with_capacity(evo.turns as usize + 1);
    cooperation.push(cached.cooperation);
    let mut events = Vec::new();
    for turn in 1..=evo.turns {
        let mut pop = cached.pop;
        if let StepOutcome::Changed(event) =
            step_in_place(&mut pop, &cached.matrix, evo, turn, &mut rng)
        {
            cached = Cached::new(pop, game);
            if evo.record_events {
                events.push(event);
            }
        }
        cooperation.push(cached.cooperation);
        if turn % evo.snapshot_stride == 0 || turn == evo.turns {
            snapshots.push(Snapshot {
                turn,
                state: cached.pop,
            });
        }
    }
    Trajectory {
        snapshots,
        cooperation,
        events,
    }
}

/// Grid of benefit × arrangement-cost values.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepGrid {
    pub benefits: Vec<f64>,
    pub arrangement_costs: Vec<f64>,
}

impl SweepGrid {
    /// `count` evenly spaced values from `lo` to `hi` inclusive.
    pub fn linspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
        match count {
            0 => Vec::new(),
            1 => vec![lo],
            _ => (0..count)
                .map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepPoint {
    pub benefit: f64,
    pub arrangement_cost: f64,
    pub mean_cooperation: f64,
    pub replicates: u32,
    pub seed_base: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult {
    /// Benefit-major order.
    pub points: Vec<SweepPoint>,
    pub benefits: Vec<f64>,
    pub arrangement_costs: Vec<f64>,
}

impl SweepResult {
    pub fn get(&self, bi: usize, ci: usize) -> &SweepPoint {
        &self.points[bi * self.arrangement_costs.len() + ci]
    }

    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = writer;
        writeln!(w, "# schema: {SWEEP_SCHEMA}").map_err(|e| Error::io("<sweep csv>", e))?;
        let mut w = csv::Writer::from_writer(w);
        w.write_record(["b", "c_a", "mean_cooperation", "replicates", "seed_base"])?;
        for p in &self.points {
            w.write_record([
                p.benefit.to_string(),
                p.arrangement_cost.to_string(),
                p.mean_cooperation.to_string(),
                p.replicates.to_string(),
                p.seed_base.to_string(),
            ])?;
        }
        w.flush().map_err(|e| Error::io("<sweep csv>", e))?;
        Ok(())
    }
}

/// Replicate `r` runs with seed `evo.seed + r`.
pub fn replicate_params(evo: &EvolutionParams, replicate: u32) -> EvolutionParams {
    EvolutionParams {
        seed: evo.seed.wrapping_add(replicate as u64),
        ..*evo
    }
}

/// Mean cooperation over all turns and replicates at every grid point.
pub fn sweep(
    grid: &SweepGrid,
    template: &GameParams,
    evo: &EvolutionParams,
    replicates: u32,
) -> Result<SweepResult> {
    evo.validate()?;
    if grid.benefits.is_empty() || grid.arrangement_costs.is_empty() {
        return Err(Error::InvalidConfig {
            field: "benefits",
            reason: "sweep grid must be non-empty".into(),
        });
    }
    if replicates == 0 {
        return Err(Error::InvalidConfig {
            field: "replicates",
            reason: "must be >= 1".into(),
        });
    }
    let cells: Vec<(f64, f64)> = grid
        .benefits
        .iter()
        .flat_map(|&b| grid.arrangement_costs.iter().map(move |&c| (b, c)))
        .collect();
    let lean = EvolutionParams {
        snapshot_stride: evo.turns.max(1),
        record_events: false,
        ..*evo
    };
    let points = cells
        .par_iter()
        .map(|&(b, c)| {
            let started = Instant::now();
            let game = GameParams {
                benefit: b,
                arrangement_cost: c,
                ..*template
            };
            // summed in replicate order so the result is independent of scheduling
            let per_run: Vec<f64> = (0..replicates)
                .into_par_iter()
                .map(|r| {
                    run_from(
                        initial_state(lean.population),
                        &game,
                        &replicate_params(&lean, r),
                    )
                    .mean_cooperation()
                })
                .collect();
            let mean = per_run.iter().sum::<f64>() / replicates as f64;
            log::info!(
                "sweep point b={b} c_a={c}: cooperation {mean:.4} in {:.2?}",
                started.elapsed()
            );
            SweepPoint {
                benefit: b,
                arrangement_cost: c,
                mean_cooperation: mean,
                replicates,
                seed_base: evo.seed,
            }
        })
        .collect();
    Ok(SweepResult {
        points,
        benefits: grid.benefits.clone(),
        arrangement_costs: grid.arrangement_costs.clone(),
    })
}

fn initial_state(population: u32) -> PopulationState {
    PopulationState::homogeneous(Strategy::ZERO_MINUS, population)
        .expect("validated population size")
}
