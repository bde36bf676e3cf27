#![allow(dead_code)]

pub mod reference;

use commitrep::strategy::{CommitmentRule, CooperationRule};
use commitrep::Strategy;

/// Expected payoff of `i` against `j`, enumerating the four offer outcomes.
/// `r_i`, `r_j` are the players' reputations as seen by the partner.
pub fn brute_force_payoff(
    i: Strategy,
    j: Strategy,
    r_i: f64,
    r_j: f64,
    benefit: f64,
    arrangement_cost: f64,
) -> f64 {
    let offer = |s: Strategy, partner_rep: f64| match s.alpha {
        CommitmentRule::Always => 1.0,
        CommitmentRule::Never => 0.0,
        CommitmentRule::ReputationConditional => partner_rep,
    };
    let cooperates = |s: Strategy, arrangement: bool| match s.beta {
        CooperationRule::AlwaysCooperate => true,
        CooperationRule::AlwaysDefect => false,
        CooperationRule::CooperateInArrangement => arrangement,
    };
    let (p_i, p_j) = (offer(i, r_j), offer(j, r_i));
    let mut total = 0.0;
    for oi in [true, false] {
        for oj in [true, false] {
            let prob = (if oi { p_i } else { 1.0 - p_i }) * (if oj { p_j } else { 1.0 - p_j });
            let arrangement = oi && oj;
            let mut payoff = 0.0;
            if arrangement {
                payoff -= arrangement_cost;
            }
            if cooperates(i, arrangement) {
                payoff -= 1.0;
            }
            if cooperates(j, arrangement) {
                payoff += benefit;
            }
            total += prob * payoff;
        }
    }
    total
}

/// Reference percentage for `invader -> resident` at `benefit`, if tabulated.
pub fn reference_percent(benefit: f64, invader: &str, resident: &str) -> Option<f64> {
    let (_, rows) = reference::TABLES.iter().find(|(b, _)| *b == benefit)?;
    let (_, row) = rows.iter().find(|(name, _)| *name == invader)?;
    let col = reference::COLUMNS.iter().position(|c| *c == resident)?;
    Some(row[col]).filter(|v| !v.is_nan())
}
