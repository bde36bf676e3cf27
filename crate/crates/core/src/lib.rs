//! Reputation-gated joint commitment in the one-shot Prisoner's Dilemma.
//!
//! * [`strategy`]: strategies, norms and the per-round decisions.
//! * [`analytic`]: predicted reputations, pairwise and average payoffs.
//! * [`fixation`]: pairwise fixation probabilities under rare mutation.
//! * [`evolution`]: the selection-mutation process and parameter sweeps.
//! * [`reputation`]: the image-matrix simulation of opinion dynamics.
//! * [`harness`]: experiment configs, CSV outputs and manifests.

pub mod analytic;
pub mod error;
pub mod evolution;
pub mod fixation;
pub mod harness;
pub mod reputation;
pub mod strategy;

pub use analytic::{GameParams, PayoffMatrix, PopulationState, Regime};
pub use error::{Error, Result};
pub use evolution::{EvolutionParams, Trajectory};
pub use fixation::{FixationQuery, FixationResult, StateIndexing};
pub use strategy::{Norm, Opinion, Strategy};
