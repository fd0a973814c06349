//! Discrete-time SIR dynamics with a fixed infectious window and an
//! immunized compartment.
//!
//! A round consists of three steps applied in order: [`SimState::spread_step`]
//! (infection travels one hop), [`SimState::recovery_step`] (infected nodes
//! recover or age), and an immunization step supplied by the strategy
//! module. Spreading is synchronous over a pre-step snapshot, so a node
//! infected this round transmits no earlier than the next round; an infected
//! node transmits only while its infection age is below the window, though
//! it still counts as infected (and can recover) afterwards.
//!
//! All stochastic draws consume the generator in ascending node id, then
//! ascending neighbour id, giving byte-reproducible trajectories for a fixed
//! stream.

use rand::Rng;

use crate::graph::{Graph, NodeId};
use crate::rng::Stream;

/// Abort threshold for runaway configurations (e.g. σ = 0 with reinfection
/// impossible but extinction never reached); hitting it is an error, never a
/// silent truncation.
pub const ROUND_CAP: u32 = 10_000;

/// Infection and recovery parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpidemicParams {
    /// Per-contact, per-round infection probability λ.
    pub lambda: f64,
    /// Per-round recovery probability σ.
    pub sigma: f64,
    /// Rounds during which an infected node transmits (ages 0..window).
    pub window: u32,
    /// Fraction of nodes infected at round 0.
    pub init_fraction: f64,
}

impl Default for EpidemicParams {
    /// The reference configuration: λ = σ = 0.1, five-round window, 1%
    /// initially infected.
    fn default() -> Self {
        EpidemicParams {
            lambda: 0.1,
            sigma: 0.1,
            window: 5,
            init_fraction: 0.01,
        }
    }
}

impl EpidemicParams {
    pub fn validate(&self) -> Result<(), EpidemicError> {
        for (name, v) in [
            ("lambda", self.lambda),
            ("sigma", self.sigma),
            ("init_fraction", self.init_fraction),
        ] {
            if !(0.0..=1.0).contains(&v) || v.is_nan() {
                return Err(EpidemicError::ParamRange {
                    name,
                    value: v,
                    range: "[0, 1]",
                });
            }
        }
        if self.window == 0 {
            return Err(EpidemicError::ParamRange {
                name: "window",
                value: 0.0,
                range: "[1, ∞)",
            });
        }
        Ok(())
    }
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum EpidemicError {
    #[error("{name} = {value} outside {range}")]
    ParamRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },
    #[error("cannot seed {requested} infected nodes into a population of {n}")]
    TooManySeeds { requested: usize, n: usize },
    #[error("no extinction within {ROUND_CAP} rounds")]
    RoundCapExceeded,
}

/// Node compartments. The only transitions are S→I (spread), I→R
/// (recovery) and S→I→M / S→M (immunization); R and M are absorbing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Compartment {
    /// Susceptible.
    S,
    /// Infected.
    I,
    /// Resistant (recovered).
    R,
    /// Immunized (removed by a strategy).
    M,
}

impl std::fmt::Display for Compartment {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Compartment::S => "S",
            Compartment::I => "I",
            Compartment::R => "R",
            Compartment::M => "M",
        })
    }
}

/// Compartment sizes at an instant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompartmentCounts {
    pub s: usize,
    pub i: usize,
    pub r: usize,
    pub m: usize,
}

impl CompartmentCounts {
    pub fn total(&self) -> usize {
        self.s + self.i + self.r + self.m
    }
}

/// Full simulation state: per-node compartments and infection ages, the
/// activity flags consumed by the local strategy, and cumulative tallies.
/// All transitions go through methods so the compartment invariants cannot
/// be violated from outside.
#[derive(Debug, Clone)]
pub struct SimState {
    state: Vec<Compartment>,
    /// Rounds since infection; meaningful only while the node is infected.
    infection_age: Vec<u32>,
    /// Activity flags: an inactive node no longer initiates immunization
    /// decisions. Flags only ever drop from active to inactive.
    active: Vec<bool>,
    round: u32,
    ever_infected: Vec<bool>,
    ever_infected_count: usize,
    immunized_count: usize,
    counts: CompartmentCounts,
}

impl SimState {
    /// All-susceptible state over `n` nodes.
    pub fn all_susceptible(n: usize) -> Self {
        SimState {
            state: vec![Compartment::S; n],
            infection_age: vec![0; n],
            active: vec![true; n],
            round: 0,
            ever_infected: vec![false; n],
            ever_infected_count: 0,
            immunized_count: 0,
            counts: CompartmentCounts {
                s: n,
                i: 0,
                r: 0,
                m: 0,
            },
        }
    }

    /// Seeds ⌈init_fraction·n⌉ distinct uniformly drawn nodes as infected
    /// (age 0). Fails if that would infect the whole population or more.
    pub fn seed_infection(
        g: &Graph,
        params: &EpidemicParams,
        rng: &mut Stream,
    ) -> Result<Self, EpidemicError> {
        params.validate()?;
        let n = g.node_count();
        let requested = (params.init_fraction * n as f64).ceil() as usize;
        if requested >= n && requested > 0 {
            return Err(EpidemicError::TooManySeeds { requested, n });
        }
        let mut st = SimState::all_susceptible(n);
        let seeds = rand::seq::index::sample(rng, n, requested);
        for idx in seeds {
            st.infect(NodeId(idx as u32));
        }
        Ok(st)
    }

    /// State with exactly the given nodes infected (age 0); for controlled
    /// setups in tests and examples.
    pub fn with_infected(n: usize, infected: &[NodeId]) -> Self {
        let mut st = SimState::all_susceptible(n);
        for &i in infected {
            st.infect(i);
        }
        st
    }

    fn infect(&mut self, i: NodeId) {
        debug_assert_eq!(self.state[i.index()], Compartment::S);
        self.state[i.index()] = Compartment::I;
        self.infection_age[i.index()] = 0;
        self.counts.s -= 1;
        self.counts.i += 1;
        if !self.ever_infected[i.index()] {
            self.ever_infected[i.index()] = true;
            self.ever_infected_count += 1;
        }
    }

    /// Moves a susceptible or infected node to M. Returns whether a
    /// conversion happened; resistant and already-immunized nodes are left
    /// untouched (R is absorbing).
    pub fn try_immunize(&mut self, i: NodeId) -> bool {
        match self.state[i.index()] {
            Compartment::S => {
                self.state[i.index()] = Compartment::M;
                self.counts.s -= 1;
            }
            Compartment::I => {
                self.state[i.index()] = Compartment::M;
                self.counts.i -= 1;
            }
            Compartment::R | Compartment::M => return false,
        }
        self.counts.m += 1;
        self.immunized_count += 1;
        true
    }

    /// First round step: every infected node with age < window exposes each
    /// susceptible neighbour independently with probability λ. Decisions
    /// are made against the pre-step snapshot — a node infected during the
    /// step neither spreads nor blocks draws aimed at it this round — and
    /// one draw is consumed per (infectious node, snapshot-susceptible
    /// neighbour) pair so the stream position is a function of the snapshot
    /// alone. Returns the number of new infections.
    pub fn spread_step(&mut self, g: &Graph, params: &EpidemicParams, rng: &mut Stream) -> usize {
        let snapshot = self.state.clone();
        let infectious: Vec<bool> = (0..snapshot.len())
            .map(|i| snapshot[i] == Compartment::I && self.infection_age[i] < params.window)
            .collect();
        let mut new_infections = 0;
        for i in 0..snapshot.len() {
            if !infectious[i] {
                continue;
            }
            for &j in g.neighbors(NodeId(i as u32)) {
                if snapshot[j.index()] != Compartment::S {
                    continue;
                }
                let hit = rng.gen::<f64>() < params.lambda;
                if hit && self.state[j.index()] == Compartment::S {
                    self.infect(j);
                    new_infections += 1;
                    debug_assert!(
                        g.neighbors(j).iter().any(|&k| infectious[k.index()]),
                        "infection of {j} without an infectious neighbour"
                    );
                }
            }
        }
        self.debug_check_conservation();
        new_infections
    }

    /// Second round step: each infected node recovers with probability σ;
    /// survivors' infection age increments by one.
    pub fn recovery_step(&mut self, params: &EpidemicParams, rng: &mut Stream) {
        for i in 0..self.state.len() {
            if self.state[i] != Compartment::I {
                continue;
            }
            if rng.gen::<f64>() < params.sigma {
                self.state[i] = Compartment::R;
                self.counts.i -= 1;
                self.counts.r += 1;
            } else {
                self.infection_age[i] += 1;
            }
        }
        self.debug_check_conservation();
    }

    /// True once no infected node remains.
    pub fn is_extinct(&self) -> bool {
        self.counts.i == 0
    }

    pub fn advance_round(&mut self) {
        self.round += 1;
    }

    pub fn round(&self) -> u32 {
        self.round
    }

    pub fn node_count(&self) -> usize {
        self.state.len()
    }

    pub fn compartment(&self, i: NodeId) -> Compartment {
        self.state[i.index()]
    }

    /// Infection age, defined only while the node is infected.
    pub fn infection_age(&self, i: NodeId) -> Option<u32> {
        (self.state[i.index()] == Compartment::I).then(|| self.infection_age[i.index()])
    }

    pub fn is_active(&self, i: NodeId) -> bool {
        self.active[i.index()]
    }

    /// Drops a node's activity flag; flags never come back up.
    pub fn deactivate(&mut self, i: NodeId) {
        self.active[i.index()] = false;
    }

    pub fn counts(&self) -> CompartmentCounts {
        self.counts
    }

    /// Number of distinct nodes that were ever infected, seeds included,
    /// regardless of later recovery or immunization.
    pub fn ever_infected_count(&self) -> usize {
        self.ever_infected_count
    }

    pub fn was_ever_infected(&self, i: NodeId) -> bool {
        self.ever_infected[i.index()]
    }

    pub fn immunized_count(&self) -> usize {
        self.immunized_count
    }

    fn debug_check_conservation(&self) {
        debug_assert_eq!(self.counts.total(), self.state.len());
        #[cfg(debug_assertions)]
        {
            let mut recount = CompartmentCounts {
                s: 0,
                i: 0,
                r: 0,
                m: 0,
            };
            for s in &self.state {
                match s {
                    Compartment::S => recount.s += 1,
                    Compartment::I => recount.i += 1,
                    Compartment::R => recount.r += 1,
                    Compartment::M => recount.m += 1,
                }
            }
            assert_eq!(recount, self.counts, "compartment tallies drifted");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;
    use crate::testutil::{random_graph, star_graph};

    fn params(lambda: f64, sigma: f64) -> EpidemicParams {
        EpidemicParams {
            lambda,
            sigma,
            ..EpidemicParams::default()
        }
    }

    #[test]
    fn seeding_infects_the_rounded_up_fraction() {
        let g = random_graph(5000, 2, 1);
        let mut stream = rng::stream(42, "epidemic/seeding");
        let st = SimState::seed_infection(&g, &EpidemicParams::default(), &mut stream).unwrap();
        assert_eq!(st.counts().i, 50);
        assert_eq!(st.ever_infected_count(), 50);
        assert_eq!(st.counts().s, 4950);
    }

    #[test]
    fn zero_fraction_leaves_all_susceptible() {
        let g = star_graph(4);
        let mut stream = rng::stream(1, "epidemic/seeding");
        let p = EpidemicParams {
            init_fraction: 0.0,
            ..EpidemicParams::default()
        };
        let st = SimState::seed_infection(&g, &p, &mut stream).unwrap();
        assert_eq!(st.counts().s, 5);
        assert!(st.is_extinct());
    }

    #[test]
    fn seeding_is_deterministic() {
        let g = random_graph(400, 10, 7);
        let seed_sets: Vec<Vec<bool>> = (0..2)
            .map(|_| {
                let mut stream = rng::stream(9, "epidemic/seeding");
                let st =
                    SimState::seed_infection(&g, &EpidemicParams::default(), &mut stream).unwrap();
                (0..400).map(|i| st.was_ever_infected(NodeId(i))).collect()
            })
            .collect();
        assert_eq!(seed_sets[0], seed_sets[1]);
    }

    #[test]
    fn seeding_everyone_is_rejected() {
        let g = star_graph(4);
        let mut stream = rng::stream(1, "epidemic/seeding");
        let p = EpidemicParams {
            init_fraction: 1.0,
            ..EpidemicParams::default()
        };
        assert_eq!(
            SimState::seed_infection(&g, &p, &mut stream).unwrap_err(),
            EpidemicError::TooManySeeds { requested: 5, n: 5 }
        );
    }

    #[test]
    fn invalid_params_are_rejected() {
        let bad = EpidemicParams {
            lambda: 1.5,
            ..EpidemicParams::default()
        };
        assert!(bad.validate().is_err());
        let bad = EpidemicParams {
            window: 0,
            ..EpidemicParams::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn zero_lambda_spreads_nothing() {
        let g = star_graph(4);
        let mut st = SimState::with_infected(5, &[NodeId(0)]);
        let mut stream = rng::stream(3, "epidemic/dynamics");
        let new = st.spread_step(&g, &params(0.0, 0.1), &mut stream);
        assert_eq!(new, 0);
        assert_eq!(st.counts().i, 1);
    }

    #[test]
    fn certain_lambda_infects_all_neighbours() {
        let g = star_graph(4);
        let mut st = SimState::with_infected(5, &[NodeId(0)]);
        let mut stream = rng::stream(3, "epidemic/dynamics");
        let new = st.spread_step(&g, &params(1.0, 0.1), &mut stream);
        assert_eq!(new, 4);
        assert_eq!(st.counts().i, 5);
    }

    #[test]
    fn expired_window_stops_transmission() {
        let g = star_graph(4);
        let mut st = SimState::with_infected(5, &[NodeId(0)]);
        let p = params(1.0, 0.0);
        let mut stream = rng::stream(4, "epidemic/dynamics");
        // Age the center past the window without recoveries.
        for _ in 0..5 {
            st.recovery_step(&p, &mut stream);
        }
        assert_eq!(st.infection_age(NodeId(0)), Some(5));
        let new = st.spread_step(&g, &p, &mut stream);
        assert_eq!(new, 0);
    }

    #[test]
    fn newly_infected_do_not_spread_within_the_step() {
        // P3 with only node 0 infected: λ=1 must reach node 1 but not node
        // 2 in a single step.
        let g = crate::testutil::path_graph(3);
        let mut st = SimState::with_infected(3, &[NodeId(0)]);
        let mut stream = rng::stream(5, "epidemic/dynamics");
        st.spread_step(&g, &params(1.0, 0.0), &mut stream);
        assert_eq!(st.compartment(NodeId(1)), Compartment::I);
        assert_eq!(st.compartment(NodeId(2)), Compartment::S);
    }

    #[test]
    fn certain_recovery_empties_the_infected_set() {
        let mut st = SimState::with_infected(5, &[NodeId(0), NodeId(1)]);
        let mut stream = rng::stream(6, "epidemic/dynamics");
        st.recovery_step(&params(0.1, 1.0), &mut stream);
        assert!(st.is_extinct());
        assert_eq!(st.counts().r, 2);
    }

    #[test]
    fn zero_recovery_only_ages() {
        let mut st = SimState::with_infected(3, &[NodeId(1)]);
        let mut stream = rng::stream(7, "epidemic/dynamics");
        st.recovery_step(&params(0.1, 0.0), &mut stream);
        assert_eq!(st.infection_age(NodeId(1)), Some(1));
        assert_eq!(st.counts().i, 1);
    }

    #[test]
    fn extinction_predicate() {
        let mut st = SimState::all_susceptible(3);
        assert!(st.is_extinct());
        st = SimState::with_infected(3, &[NodeId(0)]);
        assert!(!st.is_extinct());
        let mut stream = rng::stream(8, "epidemic/dynamics");
        st.recovery_step(&params(0.1, 1.0), &mut stream);
        assert!(st.try_immunize(NodeId(1)));
        assert!(st.is_extinct()); // only R and M (and S) remain
    }

    #[test]
    fn immunization_respects_absorbing_resistant() {
        let mut st = SimState::with_infected(3, &[NodeId(0)]);
        let mut stream = rng::stream(9, "epidemic/dynamics");
        st.recovery_step(&params(0.1, 1.0), &mut stream);
        assert_eq!(st.compartment(NodeId(0)), Compartment::R);
        assert!(!st.try_immunize(NodeId(0)));
        assert!(st.try_immunize(NodeId(1)));
        assert!(!st.try_immunize(NodeId(1)));
        assert_eq!(st.immunized_count(), 1);
    }

    #[test]
    fn ever_infected_is_stable_under_lambda_zero() {
        let g = random_graph(200, 40, 2);
        let p = params(0.0, 0.1);
        let mut stream = rng::stream(10, "epidemic/seeding");
        let mut st = SimState::seed_infection(&g, &p, &mut stream).unwrap();
        let seeds = st.ever_infected_count();
        let mut dyn_stream = rng::stream(10, "epidemic/dynamics");
        for _ in 0..200 {
            if st.is_extinct() {
                break;
            }
            st.spread_step(&g, &p, &mut dyn_stream);
            st.recovery_step(&p, &mut dyn_stream);
            st.advance_round();
        }
        assert!(st.is_extinct());
        assert_eq!(st.ever_infected_count(), seeds);
    }

    #[test]
    fn trajectories_are_reproducible() {
        let g = random_graph(300, 30, 11);
        let p = EpidemicParams::default();
        let run = |seed: u64| {
            let mut seeding = rng::stream(seed, "epidemic/seeding");
            let mut st = SimState::seed_infection(&g, &p, &mut seeding).unwrap();
            let mut dynamics = rng::stream(seed, "epidemic/dynamics");
            for _ in 0..40 {
                st.spread_step(&g, &p, &mut dynamics);
                st.recovery_step(&p, &mut dynamics);
                st.advance_round();
            }
            (
                st.counts(),
                st.ever_infected_count(),
                (0..300u32)
                    .map(|i| st.compartment(NodeId(i)))
                    .collect::<Vec<_>>(),
            )
        };
        assert_eq!(run(21), run(21));
    }
}
