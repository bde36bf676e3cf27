//! Pairwise fixation probabilities in the limit of rare mutations.
//!
//! A single invader of strategy `i` enters a resident population of `j`.
//! With Fermi imitation the ratio of backward to forward transition rates in
//! a state is `exp(-s (π_i - π_j))`, and the fixation probability is
//!
//! ```text
//! ρ = 1 / (1 + Σ_{m=1}^{N-1} Π_{k=1}^{m} exp(-s Δ_k))
//! ```
//!
//! evaluated here in log space. [`StateIndexing`] selects which population
//! state the k-th factor refers to.

use std::fmt::Write as _;
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytic::regime_reputations;
use crate::analytic::{pairwise_payoff, GameParams, PopulationState};
use crate::error::{Error, Result};
use crate::strategy::Strategy;

/// Which population count the product index `k` denotes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StateIndexing {
    /// `k` counts invaders: the textbook birth-death chain started from one mutant.
    Invaders,
    /// `k` counts residents: factor `k` uses the state with `N - k` invaders.
    /// This is the convention of the published reference tables.
    #[default]
    Residents,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FixationQuery {
    pub invader: Strategy,
    pub resident: Strategy,
    pub game: GameParams,
    pub population: u32,
    /// Selection intensity.
    pub selection: f64,
    pub indexing: StateIndexing,
}

impl FixationQuery {
    pub fn new(
        invader: Strategy,
        resident: Strategy,
        game: GameParams,
        population: u32,
        selection: f64,
    ) -> Self {
        FixationQuery {
            invader,
            resident,
            game,
            population,
            selection,
            indexing: StateIndexing::default(),
        }
    }

    pub fn with_indexing(mut self, indexing: StateIndexing) -> Self {
        self.indexing = indexing;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.invader == self.resident {
            return Err(Error::InvalidQuery(format!(
                "invader and resident are both {}",
                self.invader
            )));
        }
        if self.population < 2 {
            return Err(Error::PopulationTooSmall(self.population));
        }
        if !(self.selection.is_finite() && self.selection >= 0.0) {
            return Err(Error::InvalidQuery(format!(
                "selection intensity {} must be >= 0",
                self.selection
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FixationResult {
    pub rho: f64,
    /// `rho * N`: multiples of neutral drift.
    pub drift_multiple: f64,
}

/// Average payoffs `(π_i(k), π_j(k))` with `k` invaders of `i` among `N - k` residents of `j`.
///
/// Reputations follow the prediction regime at that two-strategy composition.
pub fn state_payoffs(
    invader: Strategy,
    resident: Strategy,
    k: u32,
    population: u32,
    game: &GameParams,
) -> (f64, f64) {
    debug_assert!(k >= 1 && k < population);
    let n = population;
    let pop = PopulationState::from_pairs([(invader, k), (resident, n - k)])
        .expect("two-strategy state holds N >= 2 players");
    let reps = regime_reputations(&pop, game);
    let (ri, rj) = (reps[invader.index()], reps[resident.index()]);
    let p_ii = pairwise_payoff(invader, invader, ri, ri, game);
    let p_ij = pairwise_payoff(invader, resident, ri, rj, game);
    let p_ji = pairwise_payoff(resident, invader, rj, ri, game);
    let p_jj = pairwise_payoff(resident, resident, rj, rj, game);
    let (k, n) = (k as f64, n as f64);
    let pi_i = (p_ii * (k - 1.0) + p_ij * (n - k)) / (n - 1.0);
    let pi_j = (p_ji * k + p_jj * (n - k - 1.0)) / (n - 1.0);
    (pi_i, pi_j)
}

pub fn fixation_probability(query: &FixationQuery) -> Result<FixationResult> {
    query.validate()?;
    let n = query.population;
    // log of every partial product, plus the leading 1 as log 0
    let mut logs = Vec::with_capacity(n as usize);
    logs.push(0.0);
    let mut acc = 0.0;
    for k in 1..n {
        let state = match query.indexing {
            StateIndexing::Invaders => k,
            StateIndexing::Residents => n - k,
        };
        let (pi_i, pi_j) = state_payoffs(query.invader, query.resident, state, n, &query.game);
        acc -= query.selection * (pi_i - pi_j);
        logs.push(acc);
    }
    let max = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let log_sum = max + logs.iter().map(|l| (l - max).exp()).sum::<f64>().ln();
    let rho = (-log_sum).exp();
    if !rho.is_finite() {
        return Err(Error::NonFinite);
    }
    Ok(FixationResult {
        rho,
        drift_multiple: rho * n as f64,
    })
}

/// Fixation probabilities for every ordered pair of a strategy set.
#[derive(Clone, Debug, PartialEq)]
pub struct FixationTable {
    pub strategies: Vec<Strategy>,
    pub game: GameParams,
    pub population: u32,
    pub selection: f64,
    pub indexing: StateIndexing,
    /// `rho[invader][resident]`, `None` on the diagonal.
    rho: Vec<Vec<Option<f64>>>,
}

pub const FIXATION_SCHEMA: &str = "commitrep/fixation/v1";

impl FixationTable {
    pub fn get(&self, invader: Strategy, resident: Strategy) -> Option<f64> {
        let i = self.strategies.iter().position(|&s| s == invader)?;
        let j = self.strategies.iter().position(|&s| s == resident)?;
        self.rho[i][j]
    }

    /// The risk-dominant strategy of the pair, if either is.
    pub fn risk_dominant(&self, a: Strategy, b: Strategy) -> Option<Strategy> {
        let ab = self.get(a, b)?;
        let ba = self.get(b, a)?;
        if ab > ba {
            Some(a)
        } else if ba > ab {
            Some(b)
        } else {
            None
        }
    }

    /// Long-format CSV at full precision.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = writer;
        writeln!(w, "# schema: {FIXATION_SCHEMA}").map_err(|e| Error::io("<fixation csv>", e))?;
        let mut w = csv::Writer::from_writer(w);
        w.write_record([
            "invader",
            "resident",
            "rho",
            "drift_multiple",
            "benefit",
            "arrangement_cost",
            "epsilon",
            "regime",
            "population",
            "selection",
            "indexing",
        ])?;
        for (i, &inv) in self.strategies.iter().enumerate() {
            for (j, &res) in self.strategies.iter().enumerate() {
                let Some(rho) = self.rho[i][j] else { continue };
                w.write_record([
                    inv.to_string(),
                    res.to_string(),
                    rho.to_string(),
                    (rho * self.population as f64).to_string(),
                    self.game.benefit.to_string(),
                    self.game.arrangement_cost.to_string(),
                    self.game.epsilon.to_string(),
                    self.game.regime.to_string(),
                    self.population.to_string(),
                    self.selection.to_string(),
                    format!("{:?}", self.indexing).to_lowercase(),
                ])?;
            }
        }
        w.flush().map_err(|e| Error::io("<fixation csv>", e))?;
        Ok(())
    }

    /// Invaders as rows, residents as columns, percentages to two decimals.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = write!(out, "{:>8}", "inv\\res");
        for s in &self.strategies {
            let _ = write!(out, "{:>9}", s.to_string());
        }
        out.push('\n');
        for (i, s) in self.strategies.iter().enumerate() {
            let _ = write!(out, "{:>8}", s.to_string());
            for cell in &self.rho[i] {
                match cell {
                    Some(rho) => {
                        let _ = write!(out, "{:>8.2}%", rho * 100.0);
                    }
                    None => out.push_str(&" ".repeat(9)),
                }
            }
            out.push('\n');
        }
        out
    }
}

pub fn fixation_table(
    strategies: &[Strategy],
    game: &GameParams,
    population: u32,
    selection: f64,
    indexing: StateIndexing,
) -> Result<FixationTable> {
    let rho = strategies
        .par_iter()
        .map(|&inv| {
            strategies
                .iter()
                .map(|&res| {
                    if inv == res {
                        return Ok(None);
                    }
                    let q = FixationQuery::new(inv, res, *game, population, selection)
                        .with_indexing(indexing);
                    fixation_probability(&q).map(|r| Some(r.rho))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FixationTable {
        strategies: strategies.to_vec(),
        game: *game,
        population,
        selection,
        indexing,
        rho,
    })
}
