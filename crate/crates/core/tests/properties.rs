mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use commitrep::analytic::{average_payoff, pairwise_payoff, regime_reputations};
use commitrep::evolution::{adoption_probability, evolution_step, run_from};
use commitrep::fixation::fixation_probability;
use commitrep::reputation::{materialize, play_round, ImageMatrix};
use commitrep::{
    EvolutionParams, FixationQuery, GameParams, Norm, PayoffMatrix, PopulationState, Regime,
};

fn strategy() -> impl proptest::strategy::Strategy<Value = commitrep::Strategy> {
    (0..commitrep::Strategy::COUNT).prop_map(|i| commitrep::Strategy::from_index(i).unwrap())
}

fn regime() -> impl proptest::strategy::Strategy<Value = Regime> {
    prop::sample::select(Regime::ALL.to_vec())
}

fn game() -> impl proptest::strategy::Strategy<Value = GameParams> {
    (0.0..20.0f64, 0.0..5.0f64, 0.0..0.5f64, regime())
        .prop_map(|(b, c, e, r)| GameParams::new(b, c, e, r))
}

fn population(max: u32) -> impl proptest::strategy::Strategy<Value = PopulationState> {
    prop::collection::vec(0..max, commitrep::Strategy::COUNT)
        .prop_filter("at least two players", |v| v.iter().sum::<u32>() >= 2)
        .prop_map(|v| PopulationState::from_counts(v.try_into().unwrap()).unwrap())
}

proptest! {
    #[test]
    fn pairwise_payoff_matches_enumeration(i in strategy(), j in strategy(), ri in 0.0..=1.0f64, rj in 0.0..=1.0f64, g in game()) {
        let want = common::brute_force_payoff(i, j, ri, rj, g.benefit, g.arrangement_cost);
        prop_assert!((pairwise_payoff(i, j, ri, rj, &g) - want).abs() < 1e-12);
    }

    #[test]
    fn pairwise_payoff_is_affine_in_benefit_and_cost(
        i in strategy(), j in strategy(), ri in 0.0..=1.0f64, rj in 0.0..=1.0f64,
        b1 in 0.0..20.0f64, b2 in 0.0..20.0f64, c1 in 0.0..5.0f64, c2 in 0.0..5.0f64,
    ) {
        let p = |b: f64, c: f64| pairwise_payoff(i, j, ri, rj, &GameParams::new(b, c, 0.01, Regime::A2b));
        let mid = p((b1 + b2) / 2.0, (c1 + c2) / 2.0);
        prop_assert!((p(b1, c1) + p(b2, c2) - 2.0 * mid).abs() < 1e-9);
    }

    #[test]
    fn fermi_rule_is_symmetric(s in 0.0..10.0f64, d in -100.0..100.0f64) {
        prop_assert!((adoption_probability(s, d) + adoption_probability(s, -d) - 1.0).abs() < 1e-12);
        prop_assert!((0.0..=1.0).contains(&adoption_probability(s, d)));
    }

    #[test]
    fn evolution_step_conserves_population(pop in population(30), g in game(), seed in any::<u64>(), mu in 0.0..=1.0f64) {
        let evo = EvolutionParams { mutation: mu, ..EvolutionParams::default() };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let next = evolution_step(&pop, &g, &evo, &mut rng);
        prop_assert_eq!(next.size(), pop.size());
        let moved: u32 = pop.counts().iter().zip(next.counts()).map(|(a, b)| a.abs_diff(*b)).sum();
        prop_assert!(moved == 0 || moved == 2);
    }

    #[test]
    fn runs_are_deterministic(pop in population(15), g in game(), seed in any::<u64>()) {
        let evo = EvolutionParams { turns: 300, seed, snapshot_stride: 7, ..EvolutionParams::default() };
        prop_assert_eq!(run_from(pop, &g, &evo), run_from(pop, &g, &evo));
    }

    #[test]
    fn regime_reputations_lie_in_unit_interval(pop in population(30), g in game()) {
        for r in regime_reputations(&pop, &g) {
            prop_assert!((0.0..=1.0).contains(&r));
        }
    }

    #[test]
    fn average_payoff_is_frequency_weighted(pop in population(20), g in game()) {
        let m = PayoffMatrix::for_population(&pop, &g);
        let n = pop.size() as f64;
        for (i, ni) in pop.present() {
            let want: f64 = pop
                .present()
                .map(|(j, nj)| {
                    let others = if i == j { nj - 1 } else { nj } as f64;
                    others / (n - 1.0) * m.get(i, j)
                })
                .sum();
            prop_assert!((average_payoff(i, &pop, &m).unwrap() - want).abs() < 1e-9, "{} x{}", i, ni);
        }
    }

    #[test]
    fn fixation_probability_is_a_probability(i in strategy(), j in strategy(), g in game(), n in 2u32..60, s in 0.0..5.0f64) {
        prop_assume!(i != j);
        let rho = fixation_probability(&FixationQuery::new(i, j, g, n, s)).unwrap().rho;
        prop_assert!((0.0..=1.0).contains(&rho));
    }

    #[test]
    fn only_observer_rows_change(pop in population(8), seed in any::<u64>(), eps in 0.0..=0.5f64) {
        let players = materialize(&pop);
        let mut m = ImageMatrix::new(&players);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..50 {
            play_round(&mut m, &players, &Norm::STUDY, eps, &mut rng);
        }
        for (o, s) in players.iter().enumerate() {
            if !s.is_observer() {
                prop_assert!(m.row(o).iter().all(|&g| g));
            }
        }
    }

    #[test]
    fn population_text_roundtrips(pop in population(40)) {
        prop_assert_eq!(pop.to_string().parse::<PopulationState>().unwrap(), pop);
    }
}
