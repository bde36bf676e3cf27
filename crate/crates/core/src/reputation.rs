//! Agent-based image-matrix simulation of opinion dynamics.
//!
//! Only reputation-conditional players (`R*`) act on opinions, so only their
//! rows of the image matrix are ever updated and only their opinions count
//! toward a player's reputation. The simulation keeps a running count of good
//! opinions per player so that sampling reputations every round is cheap.

use std::collections::BTreeMap;
use std::io::Write;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::analytic::{
    predict_reputation, redemption_possible, GameParams, PopulationState, ReputationPrediction,
};
use crate::error::{Error, Result};
use crate::evolution::Trajectory;
use crate::strategy::{
    assess, choose_action, commit_offer, form_arrangement, Norm, Opinion, Strategy,
};

pub const REPUTATION_SCHEMA: &str = "commitrep/reputation/v1";

/// Every player's private opinion of every other player.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImageMatrix {
    size: usize,
    /// Row-major: `good[observer * size + target]`.
    good: Vec<bool>,
    observers: Vec<usize>,
    /// Good opinions about each player among observers.
    good_counts: Vec<u32>,
}

impl ImageMatrix {
    /// All opinions start good.
    pub fn new(players: &[Strategy]) -> Self {
        let size = players.len();
        let observers: Vec<usize> = players
            .iter()
            .enumerate()
            .filter(|(_, s)| s.is_observer())
            .map(|(i, _)| i)
            .collect();
        ImageMatrix {
            size,
            good: vec![true; size * size],
            good_counts: vec![observers.len() as u32; size],
            observers,
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn observers(&self) -> &[usize] {
        &self.observers
    }

    pub fn opinion(&self, observer: usize, target: usize) -> Opinion {
        Opinion::from(self.good[observer * self.size + target])
    }

    pub fn row(&self, observer: usize) -> &[bool] {
        &self.good[observer * self.size..(observer + 1) * self.size]
    }

    /// Number of observers holding a good opinion of `target`.
    pub fn good_count(&self, target: usize) -> u32 {
        self.good_counts[target]
    }

    /// Fraction of observers with a good opinion of `target`; `None` without observers.
    pub fn reputation(&self, target: usize) -> Option<f64> {
        if self.observers.is_empty() {
            None
        } else {
            Some(self.good_counts[target] as f64 / self.observers.len() as f64)
        }
    }

    fn set(&mut self, observer: usize, target: usize, opinion: Opinion) {
        let cell = &mut self.good[observer * self.size + target];
        let good = opinion.is_good();
        if *cell != good {
            *cell = good;
            if good {
                self.good_counts[target] += 1;
            } else {
                self.good_counts[target] -= 1;
            }
        }
    }
}

/// What happened in one round.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RoundRecord {
    pub players: (usize, usize),
    pub offers: (bool, bool),
    pub arrangement: bool,
    /// `true` for cooperation.
    pub actions: (bool, bool),
}

/// Plays one round between two distinct random players and lets every
/// observer assess both of them. Each assessment misreads the cooperation
/// bit independently with probability `epsilon`; arrangements are seen without error.
pub fn play_round<R: Rng + ?Sized>(
    matrix: &mut ImageMatrix,
    players: &[Strategy],
    norm: &Norm,
    epsilon: f64,
    rng: &mut R,
) -> RoundRecord {
    let n = players.len();
    assert!(n >= 2, "a round needs two players");
    let x = rng.random_range(0..n);
    let mut y = rng.random_range(0..n - 1);
    if y >= x {
        y += 1;
    }
    let (sx, sy) = (players[x], players[y]);
    let offers = (
        commit_offer(sx, matrix.opinion(x, y)),
        commit_offer(sy, matrix.opinion(y, x)),
    );
    let arrangement = form_arrangement(offers.0, offers.1);
    let actions = (
        choose_action(sx, arrangement),
        choose_action(sy, arrangement),
    );

    if !norm.is_silent(arrangement) {
        for oi in 0..matrix.observers.len() {
            let o = matrix.observers[oi];
            for (target, acted) in [(x, actions.0), (y, actions.1)] {
                let perceived = acted ^ (epsilon > 0.0 && rng.random_bool(epsilon));
                let updated = assess(norm, arrangement, perceived, matrix.opinion(o, target));
                matrix.set(o, target, updated);
            }
        }
    }
    RoundRecord {
        players: (x, y),
        offers,
        arrangement,
        actions,
    }
}

/// Players laid out in canonical strategy order.
pub fn materialize(composition: &PopulationState) -> Vec<Strategy> {
    composition
        .present()
        .flat_map(|(s, n)| std::iter::repeat_n(s, n as usize))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StrategyReputation {
    pub strategy: Strategy,
    pub players: u32,
    /// Time- and player-averaged fraction of good opinions among observers.
    pub mean: f64,
    /// Same, with each observer's opinion of itself left out.
    pub mean_excluding_self: Option<f64>,
    pub redemption: bool,
    pub prediction: f64,
    pub prediction_kind: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReputationReport {
    pub composition: PopulationState,
    pub num_observers: u32,
    /// Empty when there are no observers: reputation is undefined.
    pub strategies: Vec<StrategyReputation>,
    pub rounds: u64,
    pub seed: u64,
}

impl ReputationReport {
    pub fn reputations_absent(&self) -> bool {
        self.num_observers == 0
    }

    pub fn get(&self, strategy: Strategy) -> Option<&StrategyReputation> {
        self.strategies.iter().find(|r| r.strategy == strategy)
    }
}

/// Runs `rounds` rounds from an all-good image matrix and averages each
/// strategy's reputation over the second half of the rounds.
pub fn simulate_reputations(
    composition: &PopulationState,
    params: &GameParams,
    norm: &Norm,
    rounds: u64,
    seed: u64,
) -> Result<ReputationReport> {
    if rounds == 0 || !rounds.is_multiple_of(2) {
        return Err(Error::InvalidConfig {
            field: "rounds",
            reason: format!("must be even and positive, got {rounds}"),
        });
    }
    let players = materialize(composition);
    let mut matrix = ImageMatrix::new(&players);
    let num_observers = matrix.observers.len() as u32;
    let mut report = ReputationReport {
        composition: *composition,
        num_observers,
        strategies: Vec::new(),
        rounds,
        seed,
    };
    if num_observers == 0 {
        return Ok(report);
    }

    // contiguous player ranges per present strategy
    let mut ranges = Vec::new();
    let mut start = 0usize;
    for (s, n) in composition.present() {
        ranges.push((s, start..start + n as usize));
        start += n as usize;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let burn_in = rounds / 2;
    let mut good_sums = vec![0u64; ranges.len()];
    let mut self_good_sums = vec![0u64; ranges.len()];
    for round in 0..rounds {
        play_round(&mut matrix, &players, norm, params.epsilon, &mut rng);
        if round >= burn_in {
            for (k, (s, range)) in ranges.iter().enumerate() {
                good_sums[k] += range
                    .clone()
                    .map(|p| matrix.good_counts[p] as u64)
                    .sum::<u64>();
                if s.is_observer() {
                    self_good_sums[k] += range
                        .clone()
                        .filter(|&p| matrix.good[p * matrix.size + p])
                        .count() as u64;
                }
            }
        }
    }

    let samples = (rounds - burn_in) as f64;
    let obs = num_observers as f64;
    for (k, (s, range)) in ranges.iter().enumerate() {
        let players_of = range.len() as f64;
        let mean = good_sums[k] as f64 / (samples * players_of * obs);
        let mean_excluding_self = if !s.is_observer() {
            Some(mean)
        } else if num_observers > 1 {
            Some((good_sums[k] - self_good_sums[k]) as f64 / (samples * players_of * (obs - 1.0)))
        } else {
            None
        };
        let redemption = redemption_possible(composition, *s)?;
        let ReputationPrediction { kind, value } = predict_reputation(*s, params, redemption);
        report.strategies.push(StrategyReputation {
            strategy: *s,
            players: range.len() as u32,
            mean,
            mean_excluding_self,
            redemption,
            prediction: value,
            prediction_kind: kind.to_string(),
        });
    }
    Ok(report)
}

/// Compositions drawn uniformly from every stored snapshot of `traces`.
#[derive(Clone, Debug, PartialEq)]
pub struct CompositionSample {
    pub compositions: Vec<PopulationState>,
    /// More samples were requested than snapshots exist.
    pub with_replacement: bool,
}

pub fn sample_compositions<R: Rng + ?Sized>(
    traces: &[Trajectory],
    count: usize,
    rng: &mut R,
) -> Result<CompositionSample> {
    let pool: Vec<&PopulationState> = traces
        .iter()
        .flat_map(|t| t.snapshots.iter().map(|s| &s.state))
        .collect();
    if pool.is_empty() {
        return Err(Error::EmptyTraceStore);
    }
    if count > pool.len() {
        let compositions = (0..count)
            .map(|_| *pool[rng.random_range(0..pool.len())])
            .collect();
        return Ok(CompositionSample {
            compositions,
            with_replacement: true,
        });
    }
    let compositions = index::sample(rng, pool.len(), count)
        .into_iter()
        .map(|i| *pool[i])
        .collect();
    Ok(CompositionSample {
        compositions,
        with_replacement: false,
    })
}

/// One line of the reputation CSV.
#[derive(Clone, Debug)]
pub struct ReportRow<'a> {
    pub scenario: &'a str,
    pub report: &'a ReputationReport,
}

pub fn reputation_header() -> [&'static str; 12] {
    [
        "scenario",
        "composition",
        "strategy",
        "players",
        "mean_reputation",
        "mean_excluding_self",
        "prediction",
        "prediction_kind",
        "num_observers",
        "redemption",
        "rounds",
        "seed",
    ]
}

/// Reputation CSV, one row per (report, strategy). Reports without
/// observers contribute no rows.
pub fn write_reputation_csv<W: Write>(writer: W, rows: &[ReportRow<'_>]) -> Result<()> {
    let mut w = writer;
    writeln!(w, "# schema: {REPUTATION_SCHEMA}").map_err(|e| Error::io("<reputation csv>", e))?;
    let mut w = csv::Writer::from_writer(w);
    w.write_record(reputation_header())?;
    for row in rows {
        let r = row.report;
        for sr in &r.strategies {
            w.write_record([
                row.scenario.to_string(),
                r.composition.to_string(),
                sr.strategy.to_string(),
                sr.players.to_string(),
                sr.mean.to_string(),
                sr.mean_excluding_self
                    .map(|v| v.to_string())
                    .unwrap_or_default(),
                sr.prediction.to_string(),
                sr.prediction_kind.clone(),
                r.num_observers.to_string(),
                sr.redemption.to_string(),
                r.rounds.to_string(),
                r.seed.to_string(),
            ])?;
        }
    }
    w.flush().map_err(|e| Error::io("<reputation csv>", e))?;
    Ok(())
}

/// Mean reputation per strategy across many reports.
pub fn pooled_means(reports: &[ReputationReport]) -> BTreeMap<Strategy, f64> {
    let mut acc: BTreeMap<Strategy, (f64, usize)> = BTreeMap::new();
    for r in reports {
        for sr in &r.strategies {
            let e = acc.entry(sr.strategy).or_default();
            e.0 += sr.mean;
            e.1 += 1;
        }
    }
    acc.into_iter()
        .map(|(s, (sum, n))| (s, sum / n as f64))
        .collect()
}
