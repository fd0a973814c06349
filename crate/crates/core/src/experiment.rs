//! Batch orchestration: seeded single runs, budget sweeps over strategies
//! and mixing parameters, time-evolution averaging, and centrality cost
//! instrumentation, all with CSV output.
//!
//! Comparisons are paired: the network for replicate r is generated from a
//! seed derived only from (seed base, r), and the epidemic streams likewise,
//! so every strategy and budget faces the same networks and the same seed
//! infections. Jobs run on a worker pool but results are merged in plan
//! order, making outputs identical regardless of thread count.

use rayon::prelude::*;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use crate::centrality::{self, CentralityKind, OpCounter};
use crate::epidemic::{EpidemicError, EpidemicParams, SimState, ROUND_CAP};
use crate::graph::Graph;
use crate::netgen::{self, NetGenConfig, NetGenError};
use crate::rng;
use crate::strategy::{
    Budget, LocalStrategyState, StrategyCaches, StrategyError, StrategyKind, StrategySpec,
};

#[derive(Debug, thiserror::Error)]
pub enum ExperimentError {
    #[error(transparent)]
    NetGen(#[from] NetGenError),
    #[error(transparent)]
    Epidemic(#[from] EpidemicError),
    #[error(transparent)]
    Strategy(#[from] StrategyError),
    #[error("{what} must not be empty")]
    EmptyPlan { what: &'static str },
    #[error("replicates = 0; at least one replicate is required")]
    NoReplicates,
    #[error("{what} value {value} outside [0, 1]")]
    FractionRange { what: &'static str, value: f64 },
}

/// A single-cell experiment: one strategy on one network family.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub netgen: NetGenConfig,
    pub epidemic: EpidemicParams,
    pub strategy: StrategySpec,
    pub replicates: usize,
    pub budget_grid: Vec<f64>,
    pub seed_base: u64,
    /// Fire global removal before round 1's spread instead of in round 1's
    /// third step.
    pub global_at_start: bool,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), ExperimentError> {
        self.netgen.validate()?;
        self.epidemic.validate()?;
        self.strategy.validate()?;
        if self.replicates == 0 {
            return Err(ExperimentError::NoReplicates);
        }
        for &f in &self.budget_grid {
            if !(0.0..=1.0).contains(&f) || f.is_nan() {
                return Err(ExperimentError::FractionRange {
                    what: "budget_grid",
                    value: f,
                });
            }
        }
        Ok(())
    }
}

/// Compartment sizes and step tallies at the end of one round.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RoundCounts {
    pub round: u32,
    pub s: usize,
    pub i: usize,
    pub r: usize,
    pub m: usize,
    pub new_infections: usize,
    pub immunized: usize,
}

impl RoundCounts {
    fn snapshot(st: &SimState, new_infections: usize, immunized: usize) -> Self {
        let c = st.counts();
        RoundCounts {
            round: st.round(),
            s: c.s,
            i: c.i,
            r: c.r,
            m: c.m,
            new_infections,
            immunized,
        }
    }
}

/// Outcome of one simulation run. `per_round[k]` describes round k, with
/// row 0 the post-seeding state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunResult {
    /// Distinct nodes ever infected, seeds included.
    pub total_infected: usize,
    /// First round with no infected nodes (0 when seeding already left none).
    pub extinction_round: u32,
    pub immunized_total: usize,
    pub per_round: Vec<RoundCounts>,
}

/// Runs the three-step round loop on an already generated network, with the
/// strategy caches supplied by the caller (see
/// [`StrategyCaches::from_parts`] for reusing centralities across runs).
/// Epidemic randomness is drawn from streams derived from
/// (seed_base, replicate) only, the pairing contract.
pub fn run_on_network(
    g: &Graph,
    mut caches: StrategyCaches,
    epidemic: &EpidemicParams,
    spec: &StrategySpec,
    seed_base: u64,
    replicate: u64,
    global_at_start: bool,
) -> Result<RunResult, ExperimentError> {
    let mut seeding = rng::indexed_stream(seed_base, "epidemic/seeding", replicate);
    let mut st = SimState::seed_infection(g, epidemic, &mut seeding)?;
    let mut dynamics = rng::indexed_stream(seed_base, "epidemic/dynamics", replicate);

    let mut immunized_at_start = 0;
    if global_at_start && spec.kind.is_global() {
        immunized_at_start = caches.global_immunize_once(&mut st, spec)?;
    }
    let mut per_round = vec![RoundCounts::snapshot(&st, 0, immunized_at_start)];

    while !st.is_extinct() {
        if st.round() >= ROUND_CAP {
            return Err(EpidemicError::RoundCapExceeded.into());
        }
        st.advance_round();
        let round = st.round();
        let new_infections = st.spread_step(g, epidemic, &mut dynamics);
        st.recovery_step(epidemic, &mut dynamics);
        let immunized = caches.third_step(g, &mut st, spec, round)?;
        per_round.push(RoundCounts::snapshot(&st, new_infections, immunized));
    }

    #[cfg(debug_assertions)]
    {
        // Node accounting at extinction: everyone is either ever-infected,
        // still susceptible, or immunized before infection could reach them.
        let n = st.node_count();
        let mut untouched = 0;
        for i in 0..n {
            let node = crate::graph::NodeId(i as u32);
            let infected = st.was_ever_infected(node);
            match st.compartment(node) {
                crate::epidemic::Compartment::S => untouched += 1,
                crate::epidemic::Compartment::M if !infected => untouched += 1,
                _ => assert!(infected, "non-S node {node} was never infected"),
            }
        }
        assert_eq!(st.ever_infected_count() + untouched, n);
    }

    Ok(RunResult {
        total_infected: st.ever_infected_count(),
        extinction_round: st.round(),
        immunized_total: st.immunized_count(),
        per_round,
    })
}

/// One replicate of the configured experiment, network generation included.
pub fn run_single(cfg: &ExperimentConfig, replicate: usize) -> Result<RunResult, ExperimentError> {
    cfg.validate()?;
    let net_seed = rng::derive_seed(cfg.seed_base, "experiment/network", replicate as u64);
    let net_cfg = NetGenConfig {
        seed: net_seed,
        ..cfg.netgen.clone()
    };
    let gen = netgen::generate(&net_cfg)?;
    let caches = StrategyCaches::new(&gen.graph, &cfg.strategy, Some(&gen.communities))?;
    run_on_network(
        &gen.graph,
        caches,
        &cfg.epidemic,
        &cfg.strategy,
        cfg.seed_base,
        replicate as u64,
        cfg.global_at_start,
    )
}

/// A budget sweep: the cross product of strategies × mixing values × budget
/// grid × replicates.
#[derive(Debug, Clone)]
pub struct SweepPlan {
    /// Template generation config; `mu` and `seed` are overridden per cell.
    pub netgen: NetGenConfig,
    pub epidemic: EpidemicParams,
    pub strategies: Vec<StrategyKind>,
    pub mus: Vec<f64>,
    pub budget_grid: Vec<f64>,
    pub replicates: usize,
    pub seed_base: u64,
    pub global_at_start: bool,
}

impl SweepPlan {
    pub fn validate(&self) -> Result<(), ExperimentError> {
        self.netgen.validate()?;
        self.epidemic.validate()?;
        if self.strategies.is_empty() {
            return Err(ExperimentError::EmptyPlan { what: "strategies" });
        }
        if self.mus.is_empty() {
            return Err(ExperimentError::EmptyPlan { what: "mus" });
        }
        if self.budget_grid.is_empty() {
            return Err(ExperimentError::EmptyPlan {
                what: "budget_grid",
            });
        }
        if self.replicates == 0 {
            return Err(ExperimentError::NoReplicates);
        }
        for (what, values) in [("mus", &self.mus), ("budget_grid", &self.budget_grid)] {
            for &v in values.iter() {
                if !(0.0..=1.0).contains(&v) || v.is_nan() {
                    return Err(ExperimentError::FractionRange { what, value: v });
                }
            }
        }
        Ok(())
    }
}

/// One sweep cell outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct RawRow {
    pub strategy: StrategyKind,
    pub mu: f64,
    pub f: f64,
    pub replicate: usize,
    pub total_infected: usize,
    pub extinction_round: u32,
    pub immunized_total: usize,
}

/// Replicate-aggregated sweep cell: mean and sample standard deviation of
/// each outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregateRow {
    pub strategy: StrategyKind,
    pub mu: f64,
    pub f: f64,
    pub total_infected_mean: f64,
    pub total_infected_sd: f64,
    pub extinction_round_mean: f64,
    pub extinction_round_sd: f64,
    pub immunized_total_mean: f64,
    pub immunized_total_sd: f64,
    pub replicates: usize,
}

#[derive(Debug, Clone)]
pub struct SweepResults {
    pub raw: Vec<RawRow>,
    pub aggregate: Vec<AggregateRow>,
}

/// Per-network shared state for one (mu, replicate) job: the generated
/// network plus each centrality rank computed at most once.
struct NetworkCaches {
    gen: netgen::Generated,
    local: Option<LocalStrategyState>,
    ranks: BTreeMap<CentralityKind, Vec<crate::graph::NodeId>>,
}

impl NetworkCaches {
    fn build(
        netgen_template: &NetGenConfig,
        mu: f64,
        seed_base: u64,
        replicate: usize,
        kinds: &[StrategyKind],
    ) -> Result<Self, ExperimentError> {
        let net_seed = rng::derive_seed(seed_base, "experiment/network", replicate as u64);
        let net_cfg = NetGenConfig {
            mu,
            seed: net_seed,
            ..netgen_template.clone()
        };
        let gen = netgen::generate(&net_cfg)?;
        let local = kinds
            .contains(&StrategyKind::LocalNc)
            .then(|| LocalStrategyState::new(&gen.graph));
        let mut ranks = BTreeMap::new();
        for kind in kinds {
            if let Some(ck) = kind.ranking_centrality() {
                if let std::collections::btree_map::Entry::Vacant(e) = ranks.entry(ck) {
                    let scores = centrality::compute(&gen.graph, ck, Some(&gen.communities))
                        .map_err(StrategyError::from)?;
                    e.insert(centrality::rank(&scores));
                }
            }
        }
        Ok(NetworkCaches { gen, local, ranks })
    }

    fn caches_for(&self, spec: &StrategySpec) -> StrategyCaches {
        let local = matches!(spec.kind, StrategyKind::LocalNc)
            .then(|| self.local.clone().expect("local cache was prepared"));
        let rank = spec
            .kind
            .ranking_centrality()
            .map(|ck| self.ranks[&ck].clone());
        StrategyCaches::from_parts(local, rank)
    }
}

fn strategy_order(kind: StrategyKind) -> usize {
    StrategyKind::ALL
        .iter()
        .position(|&k| k == kind)
        .expect("kind listed in ALL")
}

/// Runs the full sweep. Jobs are one per (mu, replicate) so each network
/// and each centrality is computed once and shared across every strategy
/// and budget; rows come back sorted by (strategy, mu, f, replicate).
pub fn sweep(plan: &SweepPlan) -> Result<SweepResults, ExperimentError> {
    plan.validate()?;
    let jobs: Vec<(f64, usize)> = plan
        .mus
        .iter()
        .flat_map(|&mu| (0..plan.replicates).map(move |rep| (mu, rep)))
        .collect();
    let per_job: Vec<Vec<RawRow>> = jobs
        .par_iter()
        .map(|&(mu, rep)| {
            let net =
                NetworkCaches::build(&plan.netgen, mu, plan.seed_base, rep, &plan.strategies)?;
            let mut rows = Vec::with_capacity(plan.strategies.len() * plan.budget_grid.len());
            for &kind in &plan.strategies {
                for &f in &plan.budget_grid {
                    let spec = StrategySpec::new(kind, Budget::Fraction(f))?;
                    let run = run_on_network(
                        &net.gen.graph,
                        net.caches_for(&spec),
                        &plan.epidemic,
                        &spec,
                        plan.seed_base,
                        rep as u64,
                        plan.global_at_start,
                    )?;
                    rows.push(RawRow {
                        strategy: kind,
                        mu,
                        f,
                        replicate: rep,
                        total_infected: run.total_infected,
                        extinction_round: run.extinction_round,
                        immunized_total: run.immunized_total,
                    });
                }
            }
            Ok(rows)
        })
        .collect::<Result<_, ExperimentError>>()?;

    let mut raw: Vec<RawRow> = per_job.into_iter().flatten().collect();
    raw.sort_by(|a, b| {
        strategy_order(a.strategy)
            .cmp(&strategy_order(b.strategy))
            .then(a.mu.total_cmp(&b.mu))
            .then(a.f.total_cmp(&b.f))
            .then(a.replicate.cmp(&b.replicate))
    });
    let aggregate = aggregate_rows(&raw);
    Ok(SweepResults { raw, aggregate })
}

fn mean_sd(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Groups raw rows by (strategy, mu, f) and reduces each group to means and
/// sample standard deviations. Input order does not matter; output is
/// sorted like [`sweep`]'s raw rows.
pub fn aggregate_rows(raw: &[RawRow]) -> Vec<AggregateRow> {
    let mut groups: BTreeMap<(usize, u64, u64), Vec<&RawRow>> = BTreeMap::new();
    for row in raw {
        groups
            .entry((
                strategy_order(row.strategy),
                row.mu.to_bits(),
                row.f.to_bits(),
            ))
            .or_default()
            .push(row);
    }
    groups
        .into_values()
        .map(|rows| {
            let totals: Vec<f64> = rows.iter().map(|r| r.total_infected as f64).collect();
            let rounds: Vec<f64> = rows.iter().map(|r| r.extinction_round as f64).collect();
            let immunized: Vec<f64> = rows.iter().map(|r| r.immunized_total as f64).collect();
            let (tm, ts) = mean_sd(&totals);
            let (rm, rs) = mean_sd(&rounds);
            let (im, is) = mean_sd(&immunized);
            AggregateRow {
                strategy: rows[0].strategy,
                mu: rows[0].mu,
                f: rows[0].f,
                total_infected_mean: tm,
                total_infected_sd: ts,
                extinction_round_mean: rm,
                extinction_round_sd: rs,
                immunized_total_mean: im,
                immunized_total_sd: is,
                replicates: rows.len(),
            }
        })
        .collect()
}

/// Time-evolution study: full strategy specs (budgets may differ per
/// strategy) on one network family, reported as per-round infected means.
#[derive(Debug, Clone)]
pub struct EvolutionPlan {
    pub netgen: NetGenConfig,
    pub epidemic: EpidemicParams,
    pub strategies: Vec<StrategySpec>,
    pub replicates: usize,
    pub seed_base: u64,
    pub global_at_start: bool,
}

impl EvolutionPlan {
    pub fn validate(&self) -> Result<(), ExperimentError> {
        self.netgen.validate()?;
        self.epidemic.validate()?;
        if self.strategies.is_empty() {
            return Err(ExperimentError::EmptyPlan { what: "strategies" });
        }
        if self.replicates == 0 {
            return Err(ExperimentError::NoReplicates);
        }
        for spec in &self.strategies {
            spec.validate()?;
        }
        Ok(())
    }
}

/// One point of the averaged infection time series.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesRow {
    pub strategy: StrategyKind,
    pub round: u32,
    pub infected_mean: f64,
}

#[derive(Debug, Clone)]
pub struct EvolutionResult {
    /// Per strategy (in plan order), the per-replicate run results.
    pub runs: Vec<(StrategySpec, Vec<RunResult>)>,
    /// Averaged series: rounds 0..=max extinction round per strategy, with
    /// extinct replicates contributing zero infected.
    pub series: Vec<SeriesRow>,
}

pub fn time_evolution(plan: &EvolutionPlan) -> Result<EvolutionResult, ExperimentError> {
    plan.validate()?;
    let kinds: Vec<StrategyKind> = plan.strategies.iter().map(|s| s.kind).collect();
    let per_rep: Vec<Vec<RunResult>> = (0..plan.replicates)
        .into_par_iter()
        .map(|rep| {
            let net =
                NetworkCaches::build(&plan.netgen, plan.netgen.mu, plan.seed_base, rep, &kinds)?;
            plan.strategies
                .iter()
                .map(|spec| {
                    run_on_network(
                        &net.gen.graph,
                        net.caches_for(spec),
                        &plan.epidemic,
                        spec,
                        plan.seed_base,
                        rep as u64,
                        plan.global_at_start,
                    )
                })
                .collect()
        })
        .collect::<Result<_, ExperimentError>>()?;

    // Transpose to per-strategy, then average each round with zero padding
    // past a replicate's extinction.
    let mut runs: Vec<(StrategySpec, Vec<RunResult>)> = plan
        .strategies
        .iter()
        .map(|&spec| (spec, Vec::with_capacity(plan.replicates)))
        .collect();
    for rep_results in per_rep {
        for (slot, run) in runs.iter_mut().zip(rep_results) {
            slot.1.push(run);
        }
    }
    let mut series = Vec::new();
    for (spec, results) in &runs {
        let horizon = results
            .iter()
            .map(|r| r.extinction_round)
            .max()
            .unwrap_or(0);
        for round in 0..=horizon {
            let sum: f64 = results
                .iter()
                .map(|r| {
                    r.per_round
                        .get(round as usize)
                        .map_or(0.0, |counts| counts.i as f64)
                })
                .sum();
            series.push(SeriesRow {
                strategy: spec.kind,
                round,
                infected_mean: sum / results.len() as f64,
            });
        }
    }
    Ok(EvolutionResult { runs, series })
}

/// Cost instrumentation over generated networks.
#[derive(Debug, Clone)]
pub struct CostPlan {
    pub netgen: NetGenConfig,
    pub replicates: usize,
    pub seed_base: u64,
}

/// Deterministic operation counts for neighbour centrality on one network.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostRow {
    pub replicate: usize,
    pub n: usize,
    pub max_degree: usize,
    /// c², the per-node read bound.
    pub c_squared: u64,
    pub max_reads_per_node: u64,
    pub total_reads: u64,
}

/// Wall-clock measurement for one centrality on one network. Timings are
/// environment-dependent, so they are reported separately from the
/// deterministic CSVs.
#[derive(Debug, Clone)]
pub struct TimingRow {
    pub replicate: usize,
    pub kind: CentralityKind,
    pub millis: f64,
}

#[derive(Debug, Clone)]
pub struct CostReport {
    pub rows: Vec<CostRow>,
    pub timings: Vec<TimingRow>,
}

pub fn cost_report(plan: &CostPlan) -> Result<CostReport, ExperimentError> {
    plan.netgen.validate()?;
    if plan.replicates == 0 {
        return Err(ExperimentError::NoReplicates);
    }
    let mut rows = Vec::with_capacity(plan.replicates);
    let mut timings = Vec::new();
    for rep in 0..plan.replicates {
        let net_seed = rng::derive_seed(plan.seed_base, "experiment/network", rep as u64);
        let net_cfg = NetGenConfig {
            seed: net_seed,
            ..plan.netgen.clone()
        };
        let gen = netgen::generate(&net_cfg)?;
        let g = &gen.graph;

        let mut counter = OpCounter::new(g.node_count());
        centrality::neighbour_centrality_counted(g, &mut counter);
        let c = g.max_degree() as u64;
        rows.push(CostRow {
            replicate: rep,
            n: g.node_count(),
            max_degree: g.max_degree(),
            c_squared: c * c,
            max_reads_per_node: counter.max_per_node(),
            total_reads: counter.total(),
        });

        for kind in CentralityKind::ALL {
            let start = Instant::now();
            centrality::compute(g, kind, Some(&gen.communities)).map_err(StrategyError::from)?;
            timings.push(TimingRow {
                replicate: rep,
                kind,
                millis: start.elapsed().as_secs_f64() * 1e3,
            });
        }
    }
    Ok(CostReport { rows, timings })
}

/// CSV text for raw sweep rows.
pub fn raw_csv(rows: &[RawRow]) -> String {
    let mut out =
        String::from("strategy,mu,f,replicate,total_infected,extinction_round,immunized_total\n");
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.strategy,
            r.mu,
            r.f,
            r.replicate,
            r.total_infected,
            r.extinction_round,
            r.immunized_total
        )
        .unwrap();
    }
    out
}

/// CSV text for aggregated sweep rows.
pub fn aggregate_csv(rows: &[AggregateRow]) -> String {
    let mut out = String::from(
        "strategy,mu,f,total_infected_mean,total_infected_sd,extinction_round_mean,extinction_round_sd,immunized_total_mean,immunized_total_sd\n",
    );
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            r.strategy,
            r.mu,
            r.f,
            r.total_infected_mean,
            r.total_infected_sd,
            r.extinction_round_mean,
            r.extinction_round_sd,
            r.immunized_total_mean,
            r.immunized_total_sd
        )
        .unwrap();
    }
    out
}

/// CSV text for the averaged infection time series.
pub fn series_csv(rows: &[SeriesRow]) -> String {
    let mut out = String::from("strategy,round,infected_mean\n");
    for r in rows {
        writeln!(out, "{},{},{}", r.strategy, r.round, r.infected_mean).unwrap();
    }
    out
}

/// CSV text for the deterministic part of the cost report.
pub fn cost_csv(rows: &[CostRow]) -> String {
    let mut out = String::from("replicate,n,max_degree,c_squared,max_reads_per_node,total_reads\n");
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            r.replicate, r.n, r.max_degree, r.c_squared, r.max_reads_per_node, r.total_reads
        )
        .unwrap();
    }
    out
}

/// Plain-text timing lines (wall clock, non-reproducible by nature).
pub fn timings_text(rows: &[TimingRow]) -> String {
    let mut out = String::new();
    for r in rows {
        writeln!(
            out,
            "replicate={} kind={} millis={:.3}",
            r.replicate, r.kind, r.millis
        )
        .unwrap();
    }
    out
}

/// Per-round state dump for a single run (the `--dump-rounds` artifact).
pub fn rounds_csv(result: &RunResult) -> String {
    let mut out = String::from("round,S,I,R,M,new_infections,immunized_this_round\n");
    for c in &result.per_round {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            c.round, c.s, c.i, c.r, c.m, c.new_infections, c.immunized
        )
        .unwrap();
    }
    out
}
