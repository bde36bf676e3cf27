//! Predicted long-run reputations and the analytic payoffs built on them.
//!
//! Under the study norm a player is only judged inside arrangements, so its
//! long-run reputation is fixed by its strategy and the perception error:
//! players that never commit keep their initial good standing, cooperators in
//! arrangements sit at `1 - ε` and fakers at `ε`. When nobody in the
//! population commits unconditionally, a player whose reputation collapses to
//! zero can never re-enter an arrangement; the prediction regime decides how
//! that case is treated.

use std::collections::HashMap;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::strategy::{CommitmentRule, CooperationRule, Strategy};

/// How players that cannot be redeemed are treated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regime {
    /// Short horizon: collapse to zero is rare enough to ignore.
    #[serde(rename = "2a")]
    A2a,
    /// Long horizon: fakers without redemption end at zero.
    #[serde(rename = "2b")]
    A2b,
    /// Infinite horizon: everyone who commits and cannot be redeemed ends at zero.
    #[serde(rename = "2c")]
    A2c,
}

impl Regime {
    pub const ALL: [Regime; 3] = [Regime::A2a, Regime::A2b, Regime::A2c];
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::A2a => "2a",
            Regime::A2b => "2b",
            Regime::A2c => "2c",
        })
    }
}

impl FromStr for Regime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s
            .trim()
            .to_ascii_lowercase()
            .trim_start_matches('a')
            .trim_start_matches('.')
        {
            "2a" | "2.a" => Ok(Regime::A2a),
            "2b" | "2.b" => Ok(Regime::A2b),
            "2c" | "2.c" => Ok(Regime::A2c),
            _ => Err(Error::ParseRegime(s.to_string())),
        }
    }
}

/// Game parameters. The cost of cooperating is fixed at [`GameParams::COOPERATION_COST`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GameParams {
    /// Benefit `b` received from a cooperating partner.
    pub benefit: f64,
    /// Cost `c_a` each participant pays when an arrangement forms.
    pub arrangement_cost: f64,
    /// Perception error probability.
    pub epsilon: f64,
    pub regime: Regime,
}

impl Default for GameParams {
    fn default() -> Self {
        GameParams {
            benefit: 5.5,
            arrangement_cost: 1.0,
            epsilon: 0.01,
            regime: Regime::A2b,
        }
    }
}

impl GameParams {
    pub const COOPERATION_COST: f64 = 1.0;

    pub fn new(benefit: f64, arrangement_cost: f64, epsilon: f64, regime: Regime) -> Self {
        GameParams {
            benefit,
            arrangement_cost,
            epsilon,
            regime,
        }
    }

    /// Rejects impossible values; returns warnings for values that are legal
    /// but leave the Prisoner's Dilemma degenerate (`b <= 1`).
    pub fn validate(&self) -> Result<Vec<String>> {
        if !self.benefit.is_finite() {
            return Err(Error::InvalidConfig {
                field: "benefit",
                reason: format!("must be finite, got {}", self.benefit),
            });
        }
        if !(self.arrangement_cost.is_finite() && self.arrangement_cost >= 0.0) {
            return Err(Error::InvalidConfig {
                field: "arrangement_cost",
                reason: format!("must be >= 0, got {}", self.arrangement_cost),
            });
        }
        if !(0.0..=1.0).contains(&self.epsilon) {
            return Err(Error::InvalidConfig {
                field: "epsilon",
                reason: format!("must lie in [0, 1], got {}", self.epsilon),
            });
        }
        let mut warnings = Vec::new();
        if self.benefit <= Self::COOPERATION_COST {
            warnings.push(format!(
                "benefit {} does not exceed the cooperation cost; mutual cooperation is not better than mutual defection",
                self.benefit
            ));
        }
        Ok(warnings)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PredictionKind {
    /// Never judged; keeps the initial good reputation.
    None,
    /// `ε`
    Low,
    /// `1 - ε`
    High,
    Zero,
}

impl fmt::Display for PredictionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PredictionKind::None => "none",
            PredictionKind::Low => "low",
            PredictionKind::High => "high",
            PredictionKind::Zero => "zero",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReputationPrediction {
    pub kind: PredictionKind,
    pub value: f64,
}

impl ReputationPrediction {
    pub fn new(kind: PredictionKind, epsilon: f64) -> Self {
        let value = match kind {
            PredictionKind::None => 1.0,
            PredictionKind::Low => epsilon,
            PredictionKind::High => 1.0 - epsilon,
            PredictionKind::Zero => 0.0,
        };
        ReputationPrediction { kind, value }
    }
}

/// Strategy counts of a well-mixed population.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PopulationState {
    counts: [u32; Strategy::COUNT],
}

impl PopulationState {
    /// Counts are indexed by [`Strategy::index`].
    pub fn from_counts(counts: [u32; Strategy::COUNT]) -> Result<Self> {
        let pop = PopulationState { counts };
        if pop.size() < 2 {
            return Err(Error::PopulationTooSmall(pop.size()));
        }
        Ok(pop)
    }

    pub fn from_pairs<I: IntoIterator<Item = (Strategy, u32)>>(pairs: I) -> Result<Self> {
        let mut counts = [0; Strategy::COUNT];
        for (s, n) in pairs {
            counts[s.index()] += n;
        }
        Self::from_counts(counts)
    }

    pub fn homogeneous(strategy: Strategy, size: u32) -> Result<Self> {
        Self::from_pairs([(strategy, size)])
    }

    pub fn counts(&self) -> &[u32; Strategy::COUNT] {
        &self.counts
    }

    pub fn count(&self, strategy: Strategy) -> u32 {
        self.counts[strategy.index()]
    }

    /// Total population size `N`.
    pub fn size(&self) -> u32 {
        self.counts.iter().sum()
    }

    /// Strategies with a nonzero count, in canonical order.
    pub fn present(&self) -> impl Iterator<Item = (Strategy, u32)> + '_ {
        Strategy::ALL
            .iter()
            .map(|&s| (s, self.count(s)))
            .filter(|&(_, n)| n > 0)
    }

    pub fn num_observers(&self) -> u32 {
        self.present()
            .filter(|(s, _)| s.is_observer())
            .map(|(_, n)| n)
            .sum()
    }

    pub fn frequencies(&self) -> [f64; Strategy::COUNT] {
        let n = self.size() as f64;
        self.counts.map(|c| c as f64 / n)
    }

    /// Moves one player from `from` to `to`. Caller guarantees `from` is present.
    pub(crate) fn transfer(&mut self, from: Strategy, to: Strategy) {
        debug_assert!(self.counts[from.index()] > 0);
        self.counts[from.index()] -= 1;
        self.counts[to.index()] += 1;
    }

    /// Strategy of the player at position `index` when players are laid out
    /// in canonical strategy order.
    pub fn strategy_at(&self, mut index: u32) -> Strategy {
        for (s, &n) in Strategy::ALL.iter().zip(&self.counts) {
            if index < n {
                return *s;
            }
            index -= n;
        }
        panic!("player index out of range")
    }
}

impl fmt::Display for PopulationState {
    /// `RA:60;1A:30;R-:10`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (s, n) in self.present() {
            if !first {
                f.write_str(";")?;
            }
            write!(f, "{s}:{n}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for PopulationState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ParseComposition(s.to_string());
        let mut pairs = Vec::new();
        for part in s.split([';', ',']).map(str::trim).filter(|p| !p.is_empty()) {
            let (name, n) = part.split_once(':').ok_or_else(bad)?;
            let strategy: Strategy = name.parse().map_err(|_| bad())?;
            let n: u32 = n.trim().parse().map_err(|_| bad())?;
            pairs.push((strategy, n));
        }
        Self::from_pairs(pairs)
    }
}

/// Number of `Always` committers other than one copy of `focal`.
fn other_unconditional_committers(pop: &PopulationState, focal: Strategy) -> u32 {
    let always: u32 = pop
        .present()
        .filter(|(s, _)| s.alpha == CommitmentRule::Always)
        .map(|(_, n)| n)
        .sum();
    if focal.alpha == CommitmentRule::Always {
        always.saturating_sub(1)
    } else {
        always
    }
}

/// Whether a player of `focal` that fell to zero reputation could still
/// enter an arrangement: some other player commits unconditionally.
pub fn redemption_possible(pop: &PopulationState, focal: Strategy) -> Result<bool> {
    if pop.count(focal) == 0 {
        return Err(Error::StrategyAbsent(focal));
    }
    Ok(other_unconditional_committers(pop, focal) >= 1)
}

pub fn predict_reputation(
    strategy: Strategy,
    params: &GameParams,
    redemption: bool,
) -> ReputationPrediction {
    let kind = if strategy.alpha == CommitmentRule::Never {
        PredictionKind::None
    } else {
        let defects = strategy.beta == CooperationRule::AlwaysDefect;
        match (redemption, params.regime) {
            (true, _) | (false, Regime::A2a) => {
                if defects {
                    PredictionKind::Low
                } else {
                    PredictionKind::High
                }
            }
            (false, Regime::A2b) => {
                if defects {
                    PredictionKind::Zero
                } else {
                    PredictionKind::High
                }
            }
            (false, Regime::A2c) => PredictionKind::Zero,
        }
    };
    ReputationPrediction::new(kind, params.epsilon)
}

/// Probability that none of `num_observers` observers misperceives a defection.
pub fn absorption_probability(num_observers: u32, epsilon: f64) -> f64 {
    (1.0 - epsilon).powi(num_observers as i32)
}

/// Probability that `strategy` offers to commit to a partner of reputation `partner_reputation`.
pub fn commit_probability(strategy: Strategy, partner_reputation: f64) -> f64 {
    match strategy.alpha {
        CommitmentRule::Always => 1.0,
        CommitmentRule::ReputationConditional => partner_reputation,
        CommitmentRule::Never => 0.0,
    }
}

/// Probability of cooperating given the arrangement probability.
pub fn cooperation_probability(strategy: Strategy, arrangement: f64) -> f64 {
    match strategy.beta {
        CooperationRule::AlwaysCooperate => 1.0,
        CooperationRule::CooperateInArrangement => arrangement,
        CooperationRule::AlwaysDefect => 0.0,
    }
}

/// Probability that `i` and `j` form an arrangement.
pub fn arrangement_probability(i: Strategy, j: Strategy, r_i: f64, r_j: f64) -> f64 {
    commit_probability(i, r_j) * commit_probability(j, r_i)
}

/// Expected payoff of `i` in one encounter with `j`.
pub fn pairwise_payoff(i: Strategy, j: Strategy, r_i: f64, r_j: f64, params: &GameParams) -> f64 {
    let a = arrangement_probability(i, j, r_i, r_j);
    let x_ij = cooperation_probability(i, a);
    let x_ji = cooperation_probability(j, a);
    -params.arrangement_cost * a - GameParams::COOPERATION_COST * x_ij + params.benefit * x_ji
}

/// Predicted reputation value for every strategy at composition `pop`.
/// Absent strategies are evaluated as if one player of them were present.
pub fn regime_reputations(pop: &PopulationState, params: &GameParams) -> [f64; Strategy::COUNT] {
    Strategy::ALL.map(|s| {
        let redemption = other_unconditional_committers(pop, s) >= 1;
        predict_reputation(s, params, redemption).value
    })
}

/// Expected pairwise payoffs among a set of strategies.
#[derive(Clone, Debug, PartialEq)]
pub struct PayoffMatrix {
    strategies: Vec<Strategy>,
    values: [[f64; Strategy::COUNT]; Strategy::COUNT],
}

impl PayoffMatrix {
    pub fn new(
        strategies: &[Strategy],
        reputations: &HashMap<Strategy, f64>,
        params: &GameParams,
    ) -> Result<Self> {
        let mut reps = [f64::NAN; Strategy::COUNT];
        for &s in strategies {
            reps[s.index()] = *reputations.get(&s).ok_or(Error::MissingReputation(s))?;
        }
        Ok(Self::build(strategies, &reps, params))
    }

    /// All nine strategies, reputations indexed by [`Strategy::index`].
    pub fn full(reputations: &[f64; Strategy::COUNT], params: &GameParams) -> Self {
        Self::build(&Strategy::ALL, reputations, params)
    }

    /// Matrix over all strategies with reputations predicted for `pop`.
    pub fn for_population(pop: &PopulationState, params: &GameParams) -> Self {
        Self::full(&regime_reputations(pop, params), params)
    }

    fn build(strategies: &[Strategy], reps: &[f64; Strategy::COUNT], params: &GameParams) -> Self {
        let mut values = [[f64::NAN; Strategy::COUNT]; Strategy::COUNT];
        for &i in strategies {
            for &j in strategies {
                values[i.index()][j.index()] =
                    pairwise_payoff(i, j, reps[i.index()], reps[j.index()], params);
            }
        }
        let mut strategies = strategies.to_vec();
        strategies.dedup();
        PayoffMatrix { strategies, values }
    }

    pub fn strategies(&self) -> &[Strategy] {
        &self.strategies
    }

    /// Entry for `(i, j)`; NaN when either strategy is not in the matrix.
    pub fn get(&self, i: Strategy, j: Strategy) -> f64 {
        self.values[i.index()][j.index()]
    }

    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        let mut header = vec!["strategy".to_string()];
        header.extend(self.strategies.iter().map(|s| s.to_string()));
        w.write_record(&header)?;
        for &i in &self.strategies {
            let mut row = vec![i.to_string()];
            row.extend(self.strategies.iter().map(|&j| self.get(i, j).to_string()));
            w.write_record(&row)?;
        }
        w.flush().map_err(|e| Error::io("<payoff matrix>", e))?;
        Ok(())
    }
}

/// Mean payoff of a player of strategy `i` against everyone else in `pop`.
pub fn average_payoff(i: Strategy, pop: &PopulationState, matrix: &PayoffMatrix) -> Result<f64> {
    if pop.count(i) == 0 {
        return Err(Error::StrategyAbsent(i));
    }
    Ok(average_payoff_unchecked(i, pop, matrix))
}

pub(crate) fn average_payoff_unchecked(
    i: Strategy,
    pop: &PopulationState,
    matrix: &PayoffMatrix,
) -> f64 {
    let n = pop.size();
    let mut total = 0.0;
    for (j, count) in pop.present() {
        let others = if j == i { count - 1 } else { count };
        if others > 0 {
            total += matrix.get(i, j) * others as f64;
        }
    }
    total / (n - 1) as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(name: &str) -> Strategy {
        name.parse().unwrap()
    }

    fn pop(text: &str) -> PopulationState {
        text.parse().unwrap()
    }

    fn params(b: f64, ca: f64, eps: f64, regime: Regime) -> GameParams {
        GameParams::new(b, ca, eps, regime)
    }

    #[test]
    fn regime_parsing() {
        assert_eq!("2b".parse::<Regime>().unwrap(), Regime::A2b);
        assert_eq!("A2c".parse::<Regime>().unwrap(), Regime::A2c);
        assert_eq!("2.a".parse::<Regime>().unwrap(), Regime::A2a);
        assert!("3".parse::<Regime>().is_err());
    }

    #[test]
    fn validation() {
        assert!(params(5.5, 1.0, 0.01, Regime::A2b)
            .validate()
            .unwrap()
            .is_empty());
        assert_eq!(
            params(1.0, 1.0, 0.01, Regime::A2b)
                .validate()
                .unwrap()
                .len(),
            1
        );
        assert!(params(5.5, -1.0, 0.01, Regime::A2b).validate().is_err());
        assert!(params(5.5, 1.0, 1.5, Regime::A2b).validate().is_err());
    }

    #[test]
    fn composition_text_roundtrip() {
        let p = pop("RA:60;1A:30;R-:10");
        assert_eq!(p.size(), 100);
        assert_eq!(p.num_observers(), 70);
        assert_eq!(p.to_string().parse::<PopulationState>().unwrap(), p);
        assert!("RA:1".parse::<PopulationState>().is_err());
        assert!("RA=3".parse::<PopulationState>().is_err());
    }

    #[test]
    fn strategy_at_walks_canonical_order() {
        let p = pop("RA:2;0-:3");
        let got: Vec<Strategy> = (0..5).map(|i| p.strategy_at(i)).collect();
        assert_eq!(got, [s("RA"), s("RA"), s("0-"), s("0-"), s("0-")]);
    }

    #[test]
    fn redemption_examples() {
        assert!(redemption_possible(&pop("RA:99;1A:1"), s("RA")).unwrap());
        assert!(!redemption_possible(&pop("1A:1;RA:99"), s("1A")).unwrap());
        assert!(redemption_possible(&pop("1A:2;R-:98"), s("1A")).unwrap());
        assert!(matches!(
            redemption_possible(&pop("RA:100"), s("1A")),
            Err(Error::StrategyAbsent(_))
        ));
    }

    #[test]
    fn prediction_examples() {
        let p = |eps, regime| params(5.5, 1.0, eps, regime);
        let r = predict_reputation(s("0A"), &p(0.05, Regime::A2c), false);
        assert_eq!((r.kind, r.value), (PredictionKind::None, 1.0));
        let r = predict_reputation(s("R-"), &p(0.05, Regime::A2b), true);
        assert_eq!((r.kind, r.value), (PredictionKind::Low, 0.05));
        let r = predict_reputation(s("RA"), &p(0.01, Regime::A2b), false);
        assert_eq!((r.kind, r.value), (PredictionKind::High, 0.99));
        let r = predict_reputation(s("1A"), &p(0.01, Regime::A2c), false);
        assert_eq!((r.kind, r.value), (PredictionKind::Zero, 0.0));
    }

    #[test]
    fn prediction_table_is_total() {
        use PredictionKind::*;
        let mut count = 0;
        for st in Strategy::ALL {
            for regime in Regime::ALL {
                for redemption in [false, true] {
                    let pr = predict_reputation(st, &params(5.5, 1.0, 0.05, regime), redemption);
                    let expected = match (st.alpha, st.beta, redemption, regime) {
                        (CommitmentRule::Never, ..) => None,
                        (_, CooperationRule::AlwaysDefect, true, _)
                        | (_, CooperationRule::AlwaysDefect, false, Regime::A2a) => Low,
                        (_, CooperationRule::AlwaysDefect, false, _) => Zero,
                        (_, _, false, Regime::A2c) => Zero,
                        _ => High,
                    };
                    assert_eq!(pr.kind, expected, "{st} {regime} {redemption}");
                    count += 1;
                }
            }
        }
        assert_eq!(count, 54);
    }

    #[test]
    fn absorption_examples() {
        let p = absorption_probability(50, 0.05);
        assert!((p - 0.076_944_975_276_713_6).abs() < 1e-12);
        assert_eq!(absorption_probability(17, 0.0), 1.0);
        // every one of 50 observers must err for a cooperator to hit zero
        let all_err = 0.05f64.powi(50);
        assert!(all_err > 1e-66 && all_err < 1e-64);
    }

    #[test]
    fn commit_probability_examples() {
        assert_eq!(commit_probability(s("1-"), 0.3), 1.0);
        assert_eq!(commit_probability(s("RA"), 0.99), 0.99);
        assert_eq!(commit_probability(s("0+"), 1.0), 0.0);
    }

    #[test]
    fn pairwise_examples() {
        let g = params(5.5, 1.0, 0.01, Regime::A2b);
        for r in [0.0, 0.3, 1.0] {
            assert_eq!(pairwise_payoff(s("0-"), s("0-"), r, r, &g), 0.0);
        }
        let p = pairwise_payoff(s("RA"), s("RA"), 0.99, 0.99, &g);
        assert!((p - 3.430_35).abs() < 1e-12);
        let p = pairwise_payoff(s("RA"), s("R-"), 0.99, 0.01, &g);
        assert!((p + 0.0198).abs() < 1e-12);
    }

    #[test]
    fn matrix_requires_all_reputations() {
        let g = GameParams::default();
        let reps = HashMap::from([(s("RA"), 0.99)]);
        assert!(matches!(
            PayoffMatrix::new(&[s("RA"), s("0-")], &reps, &g),
            Err(Error::MissingReputation(_))
        ));
        let reps = HashMap::from([(s("RA"), 0.99), (s("0-"), 1.0)]);
        let m = PayoffMatrix::new(&[s("RA"), s("0-")], &reps, &g).unwrap();
        assert_eq!(m.get(s("0-"), s("RA")), 0.0);
        assert!(m.get(s("1A"), s("RA")).is_nan());
    }

    #[test]
    fn matrix_bounds_and_zero_row() {
        let g = params(5.5, 1.0, 0.01, Regime::A2b);
        let m = PayoffMatrix::for_population(&pop("RA:50;1A:10;0-:40"), &g);
        for &i in &Strategy::ALL {
            for &j in &Strategy::ALL {
                let v = m.get(i, j);
                assert!(v >= -g.arrangement_cost - 1.0 - 1e-12 && v <= g.benefit + 1e-12);
                if j.beta != CooperationRule::AlwaysCooperate && i == s("0-") {
                    assert_eq!(v, 0.0);
                }
            }
        }
    }

    #[test]
    fn average_payoff_examples() {
        let g = params(5.5, 1.0, 0.01, Regime::A2b);
        let p = pop("0-:100");
        let m = PayoffMatrix::for_population(&p, &g);
        assert_eq!(average_payoff(s("0-"), &p, &m).unwrap(), 0.0);

        let p = pop("RA:100");
        let m = PayoffMatrix::for_population(&p, &g);
        assert!((average_payoff(s("RA"), &p, &m).unwrap() - 3.430_35).abs() < 1e-12);

        let p = pop("RA:50;0-:50");
        let m = PayoffMatrix::for_population(&p, &g);
        let expect = 50.0 * m.get(s("0-"), s("RA")) / 99.0;
        assert_eq!(average_payoff(s("0-"), &p, &m).unwrap(), expect);
        assert!(average_payoff(s("1A"), &p, &m).is_err());
    }

    #[test]
    fn upholders_profit_when_benefit_covers_costs() {
        for (b, ca) in [(3.0, 1.0), (5.5, 1.0), (2.2, 1.1), (9.5, 0.25)] {
            let g = params(b, ca, 0.01, Regime::A2b);
            let r = predict_reputation(s("RA"), &g, false).value;
            assert!(pairwise_payoff(s("RA"), s("RA"), r, r, &g) > 0.0);
        }
    }

    #[test]
    fn payoff_csv_has_named_header() {
        let g = GameParams::default();
        let m = PayoffMatrix::for_population(&pop("RA:100"), &g);
        let mut buf = Vec::new();
        m.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("strategy,RA,1A,1+,R+,0+,0-,0A,R-,1-\n"));
        assert_eq!(text.lines().count(), 10);
    }
}
