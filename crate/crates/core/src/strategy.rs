//! Strategies, norms and the three per-round decisions: commit, act, assess.
//!
//! A strategy pairs a commitment rule (whether to offer a joint commitment)
//! with a cooperation rule (what to do in the Prisoner's Dilemma). Strategies
//! are named by two characters, commitment rule first: `RA`, `1+`, `0-`, ...

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// When a player offers to enter a joint commitment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CommitmentRule {
    /// `1`: always offers.
    Always,
    /// `R`: offers only to partners it holds in good opinion.
    ReputationConditional,
    /// `0`: never offers.
    Never,
}

impl CommitmentRule {
    pub const ALL: [CommitmentRule; 3] = [
        CommitmentRule::Always,
        CommitmentRule::ReputationConditional,
        CommitmentRule::Never,
    ];

    pub fn symbol(self) -> char {
        match self {
            CommitmentRule::Always => '1',
            CommitmentRule::ReputationConditional => 'R',
            CommitmentRule::Never => '0',
        }
    }
}

/// What a player does in the Prisoner's Dilemma.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CooperationRule {
    /// `+`
    AlwaysCooperate,
    /// `A`: cooperates exactly when an arrangement was made.
    CooperateInArrangement,
    /// `-`
    AlwaysDefect,
}

impl CooperationRule {
    pub const ALL: [CooperationRule; 3] = [
        CooperationRule::AlwaysCooperate,
        CooperationRule::CooperateInArrangement,
        CooperationRule::AlwaysDefect,
    ];

    pub fn symbol(self) -> char {
        match self {
            CooperationRule::AlwaysCooperate => '+',
            CooperationRule::CooperateInArrangement => 'A',
            CooperationRule::AlwaysDefect => '-',
        }
    }
}

/// Coarse grouping used when discussing invasion cycles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Category {
    /// The observant arrangement upholder, `RA`.
    Upholder,
    /// `1A`, `1+`, `R+`, `0+`: more naive and/or more generous than `RA`.
    Nice,
    /// `0-`, `0A`, `R-`, `1-`: never cooperate.
    Mean,
}

/// A pure strategy: a commitment rule paired with a cooperation rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Strategy {
    pub alpha: CommitmentRule,
    pub beta: CooperationRule,
}

impl Strategy {
    pub const RA: Strategy = Strategy::new(
        CommitmentRule::ReputationConditional,
        CooperationRule::CooperateInArrangement,
    );
    pub const ONE_A: Strategy = Strategy::new(
        CommitmentRule::Always,
        CooperationRule::CooperateInArrangement,
    );
    pub const ONE_PLUS: Strategy =
        Strategy::new(CommitmentRule::Always, CooperationRule::AlwaysCooperate);
    pub const R_PLUS: Strategy = Strategy::new(
        CommitmentRule::ReputationConditional,
        CooperationRule::AlwaysCooperate,
    );
    pub const ZERO_PLUS: Strategy =
        Strategy::new(CommitmentRule::Never, CooperationRule::AlwaysCooperate);
    pub const ZERO_MINUS: Strategy =
        Strategy::new(CommitmentRule::Never, CooperationRule::AlwaysDefect);
    pub const ZERO_A: Strategy = Strategy::new(
        CommitmentRule::Never,
        CooperationRule::CooperateInArrangement,
    );
    pub const R_MINUS: Strategy = Strategy::new(
        CommitmentRule::ReputationConditional,
        CooperationRule::AlwaysDefect,
    );
    pub const ONE_MINUS: Strategy =
        Strategy::new(CommitmentRule::Always, CooperationRule::AlwaysDefect);

    /// All nine strategies in canonical column order: `RA`, then the nice
    /// strategies, then the mean ones. `index()` is the position in this array.
    pub const ALL: [Strategy; 9] = [
        Strategy::RA,
        Strategy::ONE_A,
        Strategy::ONE_PLUS,
        Strategy::R_PLUS,
        Strategy::ZERO_PLUS,
        Strategy::ZERO_MINUS,
        Strategy::ZERO_A,
        Strategy::R_MINUS,
        Strategy::ONE_MINUS,
    ];

    pub const COUNT: usize = 9;

    pub const fn new(alpha: CommitmentRule, beta: CooperationRule) -> Self {
        Strategy { alpha, beta }
    }

    /// Position in [`Strategy::ALL`].
    pub fn index(self) -> usize {
        use CommitmentRule::*;
        use CooperationRule::*;
        match (self.alpha, self.beta) {
            (ReputationConditional, CooperateInArrangement) => 0,
            (Always, CooperateInArrangement) => 1,
            (Always, AlwaysCooperate) => 2,
            (ReputationConditional, AlwaysCooperate) => 3,
            (Never, AlwaysCooperate) => 4,
            (Never, AlwaysDefect) => 5,
            (Never, CooperateInArrangement) => 6,
            (ReputationConditional, AlwaysDefect) => 7,
            (Always, AlwaysDefect) => 8,
        }
    }

    pub fn from_index(index: usize) -> Option<Strategy> {
        Strategy::ALL.get(index).copied()
    }

    pub fn category(self) -> Category {
        if self == Strategy::RA {
            Category::Upholder
        } else if self.beta == CooperationRule::AlwaysCooperate || self == Strategy::ONE_A {
            Category::Nice
        } else {
            Category::Mean
        }
    }

    /// Enters arrangements but always defects (`R-`, `1-`).
    pub fn is_faker(self) -> bool {
        self.alpha != CommitmentRule::Never && self.beta == CooperationRule::AlwaysDefect
    }

    /// Players whose opinions are tracked and count toward reputation.
    pub fn is_observer(self) -> bool {
        self.alpha == CommitmentRule::ReputationConditional
    }

    /// Two-character name, e.g. `"R-"`.
    pub fn name(self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.alpha.symbol(), self.beta.symbol())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut chars = s.trim().chars();
        let (Some(a), Some(b), None) = (chars.next(), chars.next(), chars.next()) else {
            return Err(Error::ParseStrategy(s.to_string()));
        };
        let alpha = match a {
            '1' => CommitmentRule::Always,
            'R' | 'r' => CommitmentRule::ReputationConditional,
            '0' => CommitmentRule::Never,
            _ => return Err(Error::ParseStrategy(s.to_string())),
        };
        let beta = match b {
            '+' => CooperationRule::AlwaysCooperate,
            'A' | 'a' => CooperationRule::CooperateInArrangement,
            // ASCII hyphen, unicode minus and en dash all read as defection
            '-' | '\u{2212}' | '\u{2013}' => CooperationRule::AlwaysDefect,
            _ => return Err(Error::ParseStrategy(s.to_string())),
        };
        Ok(Strategy { alpha, beta })
    }
}

impl Serialize for Strategy {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Strategy {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A private, binary opinion one player holds about another.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Opinion {
    #[default]
    Good,
    Bad,
}

impl Opinion {
    pub fn is_good(self) -> bool {
        self == Opinion::Good
    }
}

impl From<bool> for Opinion {
    fn from(good: bool) -> Self {
        if good {
            Opinion::Good
        } else {
            Opinion::Bad
        }
    }
}

/// Reaction of an assessment rule to an observed action.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Judgement {
    Approve,
    Disapprove,
    Neutral,
}

impl Judgement {
    pub fn as_i8(self) -> i8 {
        match self {
            Judgement::Approve => 1,
            Judgement::Disapprove => -1,
            Judgement::Neutral => 0,
        }
    }

    pub fn from_i8(v: i8) -> Option<Self> {
        match v {
            1 => Some(Judgement::Approve),
            -1 => Some(Judgement::Disapprove),
            0 => Some(Judgement::Neutral),
            _ => None,
        }
    }
}

/// Four assessment rules indexed by (arrangement present, assessed player cooperated).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Norm {
    /// `[γ11, γ10, γ01, γ00]`
    pub rules: [Judgement; 4],
}

impl Norm {
    /// Judges only inside arrangements: cooperation is approved, defection disapproved.
    pub const STUDY: Norm = Norm {
        rules: [
            Judgement::Approve,
            Judgement::Disapprove,
            Judgement::Neutral,
            Judgement::Neutral,
        ],
    };

    pub fn from_values(values: [i8; 4]) -> Result<Norm, Error> {
        let mut rules = [Judgement::Neutral; 4];
        for (rule, v) in rules.iter_mut().zip(values) {
            *rule = Judgement::from_i8(v).ok_or(Error::InvalidNorm(values))?;
        }
        Ok(Norm { rules })
    }

    pub fn values(&self) -> [i8; 4] {
        self.rules.map(Judgement::as_i8)
    }

    pub fn rule(&self, arrangement: bool, cooperated: bool) -> Judgement {
        let idx = match (arrangement, cooperated) {
            (true, true) => 0,
            (true, false) => 1,
            (false, true) => 2,
            (false, false) => 3,
        };
        self.rules[idx]
    }

    /// True when no observed action in this arrangement context can change an opinion.
    pub fn is_silent(&self, arrangement: bool) -> bool {
        self.rule(arrangement, true) == Judgement::Neutral
            && self.rule(arrangement, false) == Judgement::Neutral
    }
}

impl Default for Norm {
    fn default() -> Self {
        Norm::STUDY
    }
}

/// Whether `strategy` offers to commit to a partner it currently holds `opinion_of_partner` of.
pub fn commit_offer(strategy: Strategy, opinion_of_partner: Opinion) -> bool {
    match strategy.alpha {
        CommitmentRule::Always => true,
        CommitmentRule::ReputationConditional => opinion_of_partner.is_good(),
        CommitmentRule::Never => false,
    }
}

/// An arrangement forms only when both sides offer.
pub fn form_arrangement(offer_x: bool, offer_y: bool) -> bool {
    offer_x && offer_y
}

/// Returns `true` to cooperate.
pub fn choose_action(strategy: Strategy, arrangement: bool) -> bool {
    match strategy.beta {
        CooperationRule::AlwaysCooperate => true,
        CooperationRule::CooperateInArrangement => arrangement,
        CooperationRule::AlwaysDefect => false,
    }
}

/// Updates `current` after seeing an action judged by `norm`.
pub fn assess(
    norm: &Norm,
    arrangement: bool,
    perceived_cooperation: bool,
    current: Opinion,
) -> Opinion {
    match (norm.rule(arrangement, perceived_cooperation), current) {
        (Judgement::Approve, Opinion::Bad) => Opinion::Good,
        (Judgement::Disapprove, Opinion::Good) => Opinion::Bad,
        _ => current,
    }
}
