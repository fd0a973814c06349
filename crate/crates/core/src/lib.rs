//! Epidemic simulation on synthetic community networks, with local and
//! global immunization strategies.
//!
//! The crate is organised as a pipeline:
//!
//! - [`graph`]: compact undirected simple graphs with sorted adjacency.
//! - [`netgen`]: scale-free community network generation (power-law degrees,
//!   power-law community sizes, tunable mixing) plus structural measurement.
//! - [`centrality`]: degree, neighbour, betweenness, structural and
//!   community centralities, ranking, and an operation counter for cost
//!   comparisons.
//! - [`epidemic`]: discrete-time SIR dynamics with a fixed infectious
//!   window and an immunized compartment.
//! - [`strategy`]: the local neighbour-centrality immunization strategy and
//!   the global top-f baselines, dispatched as the third step of each round.
//! - [`experiment`]: seeded single runs, budget sweeps, time-evolution
//!   averaging and cost reports, with CSV output.
//!
//! All randomness flows through [`rng`], which derives an independent
//! ChaCha8 stream per `(seed, purpose, index)` triple; every public entry
//! point that takes a seed is bit-reproducible across runs and thread
//! counts.

pub mod centrality;
pub mod epidemic;
pub mod experiment;
pub mod graph;
pub mod netgen;
pub mod rng;
pub mod strategy;

#[cfg(test)]
pub(crate) mod testutil;

pub use centrality::{CentralityKind, CentralityScores, OpCounter};
pub use epidemic::{Compartment, EpidemicParams, SimState};
pub use experiment::{AggregateRow, ExperimentConfig, RunResult, SweepPlan};
pub use graph::{Graph, NodeId};
pub use netgen::{CommunityAssignment, GenReport, NetGenConfig};
pub use strategy::{Budget, StrategyKind, StrategySpec};
