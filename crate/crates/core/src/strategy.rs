//! Immunization policies, applied as the third step of each round.
//!
//! The local strategy is a per-node rule using only neighbourhood
//! information: every active node nominates its highest-NC neighbour, and
//! if that neighbour is currently infected it is immunized, after which the
//! neighbour and its whole neighbourhood stop initiating decisions (their
//! activity flags drop). The global baselines instead rank all nodes by a
//! centrality once, then immunize the top ⌈f·n⌉ in a single shot.
//!
//! NC scores are computed once on the static topology and never refreshed:
//! the local rule reads degrees, not epidemic state, which is what keeps its
//! per-node cost bounded by c².

use std::fmt;
use std::str::FromStr;

use crate::centrality::{self, CentralityScores};
use crate::epidemic::{Compartment, SimState};
use crate::graph::{Graph, NodeId};
use crate::netgen::CommunityAssignment;

/// Which immunization policy runs in the third step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StrategyKind {
    /// No immunization at all (pure epidemic baseline).
    None,
    /// The local neighbour-centrality rule, applied every round.
    LocalNc,
    /// One-shot global removal of the top nodes by degree.
    GlobalDegree,
    /// One-shot global removal by betweenness.
    GlobalBetweenness,
    /// One-shot global removal by structural (harmonic closeness) score.
    GlobalStructural,
    /// One-shot global removal by intra-community degree.
    GlobalCommunity,
}

impl StrategyKind {
    pub const ALL: [StrategyKind; 6] = [
        StrategyKind::None,
        StrategyKind::LocalNc,
        StrategyKind::GlobalDegree,
        StrategyKind::GlobalBetweenness,
        StrategyKind::GlobalStructural,
        StrategyKind::GlobalCommunity,
    ];

    pub fn is_global(&self) -> bool {
        matches!(
            self,
            StrategyKind::GlobalDegree
                | StrategyKind::GlobalBetweenness
                | StrategyKind::GlobalStructural
                | StrategyKind::GlobalCommunity
        )
    }

    /// The centrality a global kind ranks by.
    pub fn ranking_centrality(&self) -> Option<centrality::CentralityKind> {
        match self {
            StrategyKind::GlobalDegree => Some(centrality::CentralityKind::Degree),
            StrategyKind::GlobalBetweenness => Some(centrality::CentralityKind::Betweenness),
            StrategyKind::GlobalStructural => Some(centrality::CentralityKind::Structural),
            StrategyKind::GlobalCommunity => Some(centrality::CentralityKind::Community),
            StrategyKind::None | StrategyKind::LocalNc => None,
        }
    }
}

impl fmt::Display for StrategyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StrategyKind::None => "none",
            StrategyKind::LocalNc => "local_nc",
            StrategyKind::GlobalDegree => "global_degree",
            StrategyKind::GlobalBetweenness => "global_betweenness",
            StrategyKind::GlobalStructural => "global_structural",
            StrategyKind::GlobalCommunity => "global_community",
        })
    }
}

impl FromStr for StrategyKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "none" => Ok(StrategyKind::None),
            "local_nc" => Ok(StrategyKind::LocalNc),
            "global_degree" => Ok(StrategyKind::GlobalDegree),
            "global_betweenness" => Ok(StrategyKind::GlobalBetweenness),
            "global_structural" => Ok(StrategyKind::GlobalStructural),
            "global_community" => Ok(StrategyKind::GlobalCommunity),
            other => Err(format!(
                "unknown strategy '{other}' (expected none, local_nc, global_degree, global_betweenness, global_structural or global_community)"
            )),
        }
    }
}

/// Immunization budget: a fraction of n, or unbounded (local strategy only,
/// where the spend is an observed outcome rather than an input).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Budget {
    Fraction(f64),
    Unlimited,
}

impl Budget {
    /// Maximum number of nodes the budget allows to immunize.
    pub fn max_immunized(&self, n: usize) -> usize {
        match self {
            Budget::Fraction(f) => (f * n as f64).ceil() as usize,
            Budget::Unlimited => usize::MAX,
        }
    }
}

impl fmt::Display for Budget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Budget::Fraction(v) => write!(f, "{v}"),
            Budget::Unlimited => f.write_str("unlimited"),
        }
    }
}

impl FromStr for Budget {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "unlimited" {
            return Ok(Budget::Unlimited);
        }
        match s.parse::<f64>() {
            Ok(v) if (0.0..=1.0).contains(&v) => Ok(Budget::Fraction(v)),
            Ok(v) => Err(format!("budget {v} outside [0, 1]")),
            Err(_) => Err(format!(
                "budget '{s}' is neither a fraction nor 'unlimited'"
            )),
        }
    }
}

/// A policy plus its budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrategySpec {
    pub kind: StrategyKind,
    pub budget: Budget,
}

impl StrategySpec {
    pub fn new(kind: StrategyKind, budget: Budget) -> Result<Self, StrategyError> {
        let spec = StrategySpec { kind, budget };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), StrategyError> {
        match self.budget {
            Budget::Fraction(f) if !(0.0..=1.0).contains(&f) || f.is_nan() => {
                Err(StrategyError::BudgetRange(f))
            }
            Budget::Unlimited if self.kind.is_global() => {
                Err(StrategyError::UnlimitedGlobal(self.kind))
            }
            _ => Ok(()),
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum StrategyError {
    #[error("budget {0} outside [0, 1]")]
    BudgetRange(f64),
    #[error("strategy {0} requires a finite budget fraction")]
    UnlimitedGlobal(StrategyKind),
    #[error("global immunization already fired for this run")]
    GlobalAlreadyFired,
    #[error(transparent)]
    Centrality(#[from] centrality::CentralityError),
}

/// Precomputed input of the local rule: the NC score of every node, taken
/// once from the static topology. The per-round sweep reads these scores
/// and the live compartments; nothing else.
#[derive(Debug, Clone)]
pub struct LocalStrategyState {
    pub nc: CentralityScores,
}

impl LocalStrategyState {
    pub fn new(g: &Graph) -> Self {
        LocalStrategyState {
            nc: centrality::neighbour_centrality_all(g),
        }
    }
}

/// Per-run strategy state: the caches for whichever policy is active and
/// the fired latch for global one-shot removal.
#[derive(Debug, Clone)]
pub struct StrategyCaches {
    local: Option<LocalStrategyState>,
    global_rank: Option<Vec<NodeId>>,
    fired: bool,
}

impl StrategyCaches {
    /// Builds the caches a spec needs on this graph. Ground-truth community
    /// labels feed the community ranking when given; otherwise a label
    /// propagation pass stands in.
    pub fn new(
        g: &Graph,
        spec: &StrategySpec,
        communities: Option<&CommunityAssignment>,
    ) -> Result<Self, StrategyError> {
        spec.validate()?;
        let local = matches!(spec.kind, StrategyKind::LocalNc).then(|| LocalStrategyState::new(g));
        let global_rank = match spec.kind.ranking_centrality() {
            Some(kind) => Some(centrality::rank(&centrality::compute(
                g,
                kind,
                communities,
            )?)),
            None => None,
        };
        Ok(StrategyCaches {
            local,
            global_rank,
            fired: false,
        })
    }

    /// Assembles caches from precomputed pieces, so a batch runner can
    /// compute each centrality once per network and reuse it across many
    /// budget points. Pass exactly what the spec's kind needs: the local
    /// state for the local policy, the ranked node list for a global one.
    pub fn from_parts(local: Option<LocalStrategyState>, global_rank: Option<Vec<NodeId>>) -> Self {
        StrategyCaches {
            local,
            global_rank,
            fired: false,
        }
    }

    pub fn global_fired(&self) -> bool {
        self.fired
    }

    /// One-shot global removal: the top ⌈f·n⌉ ranked nodes move to M.
    /// Susceptible and infected targets convert (an infected target stays in
    /// the ever-infected tally); resistant targets are left as R, since R is
    /// absorbing. Returns the number of conversions.
    pub fn global_immunize_once(
        &mut self,
        st: &mut SimState,
        spec: &StrategySpec,
    ) -> Result<usize, StrategyError> {
        if self.fired {
            return Err(StrategyError::GlobalAlreadyFired);
        }
        self.fired = true;
        let rank = self
            .global_rank
            .as_ref()
            .expect("global caches built for a non-global spec");
        let quota = match spec.budget {
            Budget::Fraction(f) => (f * st.node_count() as f64).ceil() as usize,
            Budget::Unlimited => unreachable!("validated: global budgets are finite"),
        };
        let mut converted = 0;
        for &t in rank.iter().take(quota) {
            if st.try_immunize(t) {
                converted += 1;
            }
        }
        Ok(converted)
    }

    /// One sweep of the local rule over the live state, ascending node id:
    /// each active, non-immunized node i nominates t = the highest-NC node
    /// among its currently infected neighbours (ties to the lowest id); t is
    /// immunized (budget permitting), then t and all of t's neighbours
    /// deactivate. NC scores come from the static cache; only the infected
    /// filter is live. Working on live state means a node immunized early in
    /// the sweep cannot be immunized again later in it. Returns the number
    /// of immunizations this step.
    pub fn local_immunize_step(&self, g: &Graph, st: &mut SimState, spec: &StrategySpec) -> usize {
        let local = self
            .local
            .as_ref()
            .expect("local caches built for a non-local spec");
        let budget_max = spec.budget.max_immunized(st.node_count());
        let mut immunized = 0;
        for i in 0..st.node_count() {
            let node = NodeId(i as u32);
            if !st.is_active(node) || st.compartment(node) == Compartment::M {
                continue;
            }
            // Neighbours ascend by id, so strict `>` keeps the lowest id on
            // NC ties.
            let mut best: Option<NodeId> = None;
            for &j in g.neighbors(node) {
                if st.compartment(j) == Compartment::I
                    && best.is_none_or(|b| local.nc.values[j.index()] > local.nc.values[b.index()])
                {
                    best = Some(j);
                }
            }
            let Some(t) = best else {
                continue;
            };
            if st.immunized_count() < budget_max {
                let converted = st.try_immunize(t);
                debug_assert!(converted);
                immunized += 1;
                st.deactivate(t);
                for &k in g.neighbors(t) {
                    st.deactivate(k);
                }
            }
        }
        immunized
    }

    /// The round's third step. Local policies run every round; global ones
    /// fire exactly once, in round 1 (or earlier, if the driver already
    /// called [`Self::global_immunize_once`] before the loop). Returns the
    /// immunizations performed this step.
    pub fn third_step(
        &mut self,
        g: &Graph,
        st: &mut SimState,
        spec: &StrategySpec,
        round_index: u32,
    ) -> Result<usize, StrategyError> {
        match spec.kind {
            StrategyKind::None => Ok(0),
            StrategyKind::LocalNc => Ok(self.local_immunize_step(g, st, spec)),
            _ if round_index == 1 && !self.fired => self.global_immunize_once(st, spec),
            _ => Ok(0),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centrality::neighbour_centrality;
    use crate::testutil::{complete_graph, random_graph, star_graph};

    fn local_unlimited() -> StrategySpec {
        StrategySpec::new(StrategyKind::LocalNc, Budget::Unlimited).unwrap()
    }

    /// K20 on nodes 0..20 plus a disjoint star: center 20, leaves 21..41.
    fn clique_and_star() -> Graph {
        let mut edges = Vec::new();
        for u in 0..20u32 {
            for v in (u + 1)..20 {
                edges.push((u, v));
            }
        }
        for leaf in 21..41u32 {
            edges.push((20, leaf));
        }
        Graph::from_edge_list(41, &edges).unwrap()
    }

    #[test]
    fn nc_cache_matches_the_centrality_module() {
        let g = random_graph(50, 120, 4);
        let local = LocalStrategyState::new(&g);
        for i in 0..50u32 {
            assert_eq!(
                local.nc.values[i as usize],
                neighbour_centrality(&g, NodeId(i))
            );
        }
    }

    #[test]
    fn local_step_hand_trace_on_star() {
        // Infected center, susceptible leaves: leaf 1 is the first active
        // node whose best neighbour (the center) is infected, so exactly one
        // immunization happens and the whole star deactivates.
        let g = star_graph(4);
        let spec = local_unlimited();
        let caches = StrategyCaches::new(&g, &spec, None).unwrap();
        let mut st = SimState::with_infected(5, &[NodeId(0)]);
        let immunized = caches.local_immunize_step(&g, &mut st, &spec);
        assert_eq!(immunized, 1);
        assert_eq!(st.compartment(NodeId(0)), Compartment::M);
        for i in 0..5u32 {
            assert!(!st.is_active(NodeId(i)));
        }
        // A second sweep finds nobody active and changes nothing.
        assert_eq!(caches.local_immunize_step(&g, &mut st, &spec), 0);
    }

    #[test]
    fn local_step_without_infected_neighbours_is_identity() {
        let g = star_graph(4);
        let spec = local_unlimited();
        let caches = StrategyCaches::new(&g, &spec, None).unwrap();
        let mut st = SimState::all_susceptible(5);
        assert_eq!(caches.local_immunize_step(&g, &mut st, &spec), 0);
        assert_eq!(st.counts().s, 5);
        for i in 0..5u32 {
            assert!(st.is_active(NodeId(i)));
        }
    }

    #[test]
    fn zero_budget_blocks_local_immunization() {
        let g = star_graph(4);
        let spec = StrategySpec::new(StrategyKind::LocalNc, Budget::Fraction(0.0)).unwrap();
        let caches = StrategyCaches::new(&g, &spec, None).unwrap();
        let mut st = SimState::with_infected(5, &[NodeId(0)]);
        assert_eq!(caches.local_immunize_step(&g, &mut st, &spec), 0);
        assert_eq!(st.immunized_count(), 0);
    }

    #[test]
    fn star_center_outranks_the_clique_and_is_immunized_first() {
        let g = clique_and_star();
        // Global argmax of NC is the star center (NC 20 vs 1 in the clique).
        let nc = crate::centrality::neighbour_centrality_all(&g);
        let ranked = crate::centrality::rank(&nc);
        assert_eq!(ranked[0], NodeId(20));

        // Infect one clique node and the center: the first local sweep
        // catches both — each infected node is the top infected neighbour
        // of some still-active scanner — so the center is immunized in the
        // very first step even though it sits in the smaller component.
        let spec = local_unlimited();
        let caches = StrategyCaches::new(&g, &spec, None).unwrap();
        let mut st = SimState::with_infected(41, &[NodeId(5), NodeId(20)]);
        let immunized = caches.local_immunize_step(&g, &mut st, &spec);
        assert_eq!(immunized, 2);
        assert_eq!(st.compartment(NodeId(20)), Compartment::M);
        assert_eq!(st.compartment(NodeId(5)), Compartment::M);

        // With a budget of one, the sweep spends it on the clique node it
        // reaches first; raising the budget to two restores the center.
        let spec1 = StrategySpec::new(StrategyKind::LocalNc, Budget::Fraction(1.0 / 41.0)).unwrap();
        let caches1 = StrategyCaches::new(&g, &spec1, None).unwrap();
        let mut st1 = SimState::with_infected(41, &[NodeId(5), NodeId(20)]);
        assert_eq!(caches1.local_immunize_step(&g, &mut st1, &spec1), 1);
        assert_eq!(st1.compartment(NodeId(5)), Compartment::M);
        assert_eq!(st1.compartment(NodeId(20)), Compartment::I);
    }

    #[test]
    fn budget_cap_is_respected_across_rounds() {
        let g = random_graph(100, 100, 8);
        let spec = StrategySpec::new(StrategyKind::LocalNc, Budget::Fraction(0.05)).unwrap();
        let cap = spec.budget.max_immunized(100); // ⌈0.05·100⌉ = 5
        assert_eq!(cap, 5);
        let caches = StrategyCaches::new(&g, &spec, None).unwrap();
        let infected: Vec<NodeId> = (0..40).map(NodeId).collect();
        let mut st = SimState::with_infected(100, &infected);
        for _ in 0..10 {
            caches.local_immunize_step(&g, &mut st, &spec);
            assert!(st.immunized_count() <= cap);
        }
    }

    #[test]
    fn activity_flags_never_come_back() {
        let g = random_graph(80, 120, 12);
        let spec = local_unlimited();
        let caches = StrategyCaches::new(&g, &spec, None).unwrap();
        let infected: Vec<NodeId> = (0..20).map(NodeId).collect();
        let mut st = SimState::with_infected(80, &infected);
        let mut prev_active = 80;
        for _ in 0..6 {
            caches.local_immunize_step(&g, &mut st, &spec);
            let active = (0..80u32).filter(|&i| st.is_active(NodeId(i))).count();
            assert!(active <= prev_active);
            prev_active = active;
        }
    }

    #[test]
    fn scaling_nc_scores_changes_no_decision() {
        // The rule only ever compares NC values, so a positive rescale must
        // leave every immunization decision identical.
        let g = random_graph(60, 150, 5);
        let spec = local_unlimited();
        let base = LocalStrategyState::new(&g);
        let mut scaled = base.clone();
        for v in &mut scaled.nc.values {
            *v *= 37.25;
        }
        let infected: Vec<NodeId> = (0..60).step_by(4).map(NodeId).collect();
        let mut st_base = SimState::with_infected(60, &infected);
        let mut st_scaled = st_base.clone();
        let caches_base = StrategyCaches::from_parts(Some(base), None);
        let caches_scaled = StrategyCaches::from_parts(Some(scaled), None);
        for _ in 0..3 {
            let a = caches_base.local_immunize_step(&g, &mut st_base, &spec);
            let b = caches_scaled.local_immunize_step(&g, &mut st_scaled, &spec);
            assert_eq!(a, b);
            for i in 0..60u32 {
                assert_eq!(
                    st_base.compartment(NodeId(i)),
                    st_scaled.compartment(NodeId(i))
                );
                assert_eq!(st_base.is_active(NodeId(i)), st_scaled.is_active(NodeId(i)));
            }
        }
    }

    #[test]
    fn global_immunizes_the_top_ranked_nodes() {
        let g = star_graph(4);
        let spec = StrategySpec::new(StrategyKind::GlobalDegree, Budget::Fraction(0.2)).unwrap();
        let mut caches = StrategyCaches::new(&g, &spec, None).unwrap();
        let mut st = SimState::all_susceptible(5);
        let converted = caches.global_immunize_once(&mut st, &spec).unwrap();
        assert_eq!(converted, 1); // ⌈0.2·5⌉ = 1: exactly the center
        assert_eq!(st.compartment(NodeId(0)), Compartment::M);
    }

    #[test]
    fn global_zero_budget_is_identity() {
        let g = star_graph(4);
        let spec = StrategySpec::new(StrategyKind::GlobalDegree, Budget::Fraction(0.0)).unwrap();
        let mut caches = StrategyCaches::new(&g, &spec, None).unwrap();
        let mut st = SimState::all_susceptible(5);
        assert_eq!(caches.global_immunize_once(&mut st, &spec).unwrap(), 0);
        assert_eq!(st.counts().s, 5);
    }

    #[test]
    fn global_full_budget_immunizes_everyone() {
        let g = complete_graph(6);
        let spec =
            StrategySpec::new(StrategyKind::GlobalBetweenness, Budget::Fraction(1.0)).unwrap();
        let mut caches = StrategyCaches::new(&g, &spec, None).unwrap();
        let mut st = SimState::with_infected(6, &[NodeId(2)]);
        let converted = caches.global_immunize_once(&mut st, &spec).unwrap();
        assert_eq!(converted, 6);
        assert_eq!(st.counts().m, 6);
        assert!(st.is_extinct());
        assert_eq!(st.ever_infected_count(), 1); // the immunized seed still counts
    }

    #[test]
    fn global_cannot_fire_twice() {
        let g = star_graph(4);
        let spec = StrategySpec::new(StrategyKind::GlobalDegree, Budget::Fraction(0.2)).unwrap();
        let mut caches = StrategyCaches::new(&g, &spec, None).unwrap();
        let mut st = SimState::all_susceptible(5);
        caches.global_immunize_once(&mut st, &spec).unwrap();
        assert_eq!(
            caches.global_immunize_once(&mut st, &spec).unwrap_err(),
            StrategyError::GlobalAlreadyFired
        );
    }

    #[test]
    fn third_step_dispatch() {
        let g = star_graph(4);
        let mut st = SimState::with_infected(5, &[NodeId(0)]);

        let none = StrategySpec::new(StrategyKind::None, Budget::Fraction(1.0)).unwrap();
        let mut caches = StrategyCaches::new(&g, &none, None).unwrap();
        assert_eq!(caches.third_step(&g, &mut st, &none, 1).unwrap(), 0);
        assert_eq!(st.counts().i, 1);

        // Global fires in round 1 only; round 2 is an identity.
        let global = StrategySpec::new(StrategyKind::GlobalDegree, Budget::Fraction(0.2)).unwrap();
        let mut caches = StrategyCaches::new(&g, &global, None).unwrap();
        assert_eq!(caches.third_step(&g, &mut st, &global, 1).unwrap(), 1);
        assert!(caches.global_fired());
        assert_eq!(caches.third_step(&g, &mut st, &global, 2).unwrap(), 0);
    }

    #[test]
    fn local_immunization_count_is_monotone_over_rounds() {
        let g = random_graph(120, 80, 3);
        let spec = local_unlimited();
        let mut caches = StrategyCaches::new(&g, &spec, None).unwrap();
        let infected: Vec<NodeId> = (0..30).map(NodeId).collect();
        let mut st = SimState::with_infected(120, &infected);
        let mut prev = 0;
        for round in 1..=5 {
            caches.third_step(&g, &mut st, &spec, round).unwrap();
            assert!(st.immunized_count() >= prev);
            prev = st.immunized_count();
        }
    }

    #[test]
    fn spec_validation() {
        assert!(StrategySpec::new(StrategyKind::GlobalDegree, Budget::Unlimited).is_err());
        assert!(StrategySpec::new(StrategyKind::LocalNc, Budget::Unlimited).is_ok());
        assert_eq!(
            StrategySpec::new(StrategyKind::LocalNc, Budget::Fraction(1.2)).unwrap_err(),
            StrategyError::BudgetRange(1.2)
        );
    }

    #[test]
    fn specs_round_trip_through_strings() {
        for kind in StrategyKind::ALL {
            assert_eq!(kind.to_string().parse::<StrategyKind>(), Ok(kind));
        }
        assert_eq!("unlimited".parse::<Budget>(), Ok(Budget::Unlimited));
        assert_eq!("0.04".parse::<Budget>(), Ok(Budget::Fraction(0.04)));
        assert!("1.5".parse::<Budget>().is_err());
        assert!("lots".parse::<Budget>().is_err());
    }
}
