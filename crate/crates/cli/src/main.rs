//! `immunet` — network generation, epidemic simulation, and immunization
//! experiments from one binary.
//!
//! Every subcommand accepts `--config <file>` (key=value lines), with
//! command-line flags taking precedence over file values and built-in
//! defaults filling the rest. The fully resolved settings are echoed to
//! `<out>/config.resolved`; re-running the subcommand with that file alone
//! reproduces the outputs byte for byte.

mod plot;
mod settings;

use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use immunet_core::centrality::{self, CentralityKind};
use immunet_core::epidemic::EpidemicParams;
use immunet_core::experiment::{
    self, CostPlan, EvolutionPlan, ExperimentConfig, RawRow, SweepPlan,
};
use immunet_core::graph::Graph;
use immunet_core::netgen::{self, CommunityAssignment, NetGenConfig};
use immunet_core::strategy::{Budget, StrategyKind, StrategySpec};

use settings::{parse_list, pick, KvFile, Resolved};

#[derive(Parser)]
#[command(
    name = "immunet",
    version,
    about = "Epidemic simulation and immunization experiments on generated networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate one network and write its edge list, metadata, and
    /// community labels.
    Generate(GenerateArgs),
    /// Run a single epidemic replicate and write its summary row.
    Simulate(SimulateArgs),
    /// Budget sweep: strategies x mixing values x budget grid x replicates.
    Sweep(SweepArgs),
    /// Averaged per-round infection series per strategy at a fixed budget.
    Evolve(EvolveArgs),
    /// Neighbour-centrality operation counts and centrality timings.
    Cost(CostArgs),
    /// Render SVG charts from previously written CSVs.
    Plot(PlotArgs),
    /// Score every node of a stored graph with one centrality.
    Centrality(CentralityArgs),
}

#[derive(Args)]
struct Common {
    /// Base RNG seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory (created if missing).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads for batch subcommands (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// key=value config file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Print progress notes to stderr.
    #[arg(short, long)]
    verbose: bool,
}

#[derive(Args)]
struct NetFlags {
    /// Node count.
    #[arg(long)]
    n: Option<usize>,
    /// Target mean degree.
    #[arg(long = "k-avg")]
    k_avg: Option<f64>,
    /// Minimum degree floor (the mean-targeting search may raise it).
    #[arg(long = "k-min")]
    k_min: Option<usize>,
    /// Maximum degree.
    #[arg(long = "k-max")]
    k_max: Option<usize>,
    /// Power-law exponent, in (1, 3].
    #[arg(long)]
    gamma: Option<f64>,
    /// Minimum community count.
    #[arg(long = "communities-min")]
    communities_min: Option<usize>,
    /// Maximum community count.
    #[arg(long = "communities-max")]
    communities_max: Option<usize>,
}

#[derive(Args)]
struct EpiFlags {
    /// Per-contact, per-round infection probability.
    #[arg(long)]
    lambda: Option<f64>,
    /// Per-round recovery probability.
    #[arg(long)]
    sigma: Option<f64>,
    /// Infectious window in rounds.
    #[arg(long)]
    window: Option<u32>,
    /// Initially infected fraction.
    #[arg(long = "init-fraction")]
    init_fraction: Option<f64>,
}

#[derive(Args)]
struct GenerateArgs {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    net: NetFlags,
    /// Mixing parameter.
    #[arg(long)]
    mu: Option<f64>,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    net: NetFlags,
    #[command(flatten)]
    epi: EpiFlags,
    /// Mixing parameter.
    #[arg(long)]
    mu: Option<f64>,
    /// Strategy: none | local_nc | global_degree | global_betweenness |
    /// global_structural | global_community.
    #[arg(long)]
    strategy: Option<String>,
    /// Budget fraction in [0,1], or "unlimited" (local strategy only).
    #[arg(long)]
    budget: Option<String>,
    /// Replicate index (selects the paired network and epidemic seeds).
    #[arg(long)]
    replicate: Option<usize>,
    /// Fire global removal before round 1's spread step.
    #[arg(long = "global-at-start")]
    global_at_start: bool,
    /// Also write the per-round state series to rounds.csv.
    #[arg(long = "dump-rounds")]
    dump_rounds: bool,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    net: NetFlags,
    #[command(flatten)]
    epi: EpiFlags,
    /// Comma-separated strategies.
    #[arg(long)]
    strategies: Option<String>,
    /// Comma-separated mixing values.
    #[arg(long)]
    mus: Option<String>,
    /// Comma-separated budget fractions.
    #[arg(long)]
    budgets: Option<String>,
    /// Replicates per cell.
    #[arg(long)]
    replicates: Option<usize>,
    /// Fire global removal before round 1's spread step.
    #[arg(long = "global-at-start")]
    global_at_start: bool,
}

#[derive(Args)]
struct EvolveArgs {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    net: NetFlags,
    #[command(flatten)]
    epi: EpiFlags,
    /// Mixing parameter.
    #[arg(long)]
    mu: Option<f64>,
    /// Comma-separated strategies.
    #[arg(long)]
    strategies: Option<String>,
    /// Budget fraction applied to every strategy, or "unlimited".
    #[arg(long)]
    budget: Option<String>,
    /// Replicates to average over.
    #[arg(long)]
    replicates: Option<usize>,
    /// Fire global removal before round 1's spread step.
    #[arg(long = "global-at-start")]
    global_at_start: bool,
}

#[derive(Args)]
struct CostArgs {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    net: NetFlags,
    /// Mixing parameter.
    #[arg(long)]
    mu: Option<f64>,
    /// Networks to measure.
    #[arg(long)]
    replicates: Option<usize>,
}

#[derive(Args)]
struct PlotArgs {
    #[command(flatten)]
    common: Common,
    /// Directory holding aggregate.csv and/or evolution.csv.
    #[arg(long)]
    data: Option<PathBuf>,
}

#[derive(Args)]
struct CentralityArgs {
    #[command(flatten)]
    common: Common,
    /// Centrality kind: degree | betweenness | structural | community |
    /// neighbour.
    #[arg(long)]
    kind: Option<String>,
    /// Edge-list file of the graph to score.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Optional node,label CSV with ground-truth communities; without it
    /// the community kind falls back to label propagation.
    #[arg(long)]
    communities: Option<PathBuf>,
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}

fn run() -> Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::Generate(args) => cmd_generate(args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Evolve(args) => cmd_evolve(args),
        Command::Cost(args) => cmd_cost(args),
        Command::Plot(args) => cmd_plot(args),
        Command::Centrality(args) => cmd_centrality(args),
    }
}

/// Loads the config file (if any), checks its recorded subcommand, and
/// prepares the output directory and worker pool.
fn setup(common: &Common, subcommand: &str) -> Result<(KvFile, PathBuf)> {
    let file = match &common.config {
        Some(path) => KvFile::load(path)?,
        None => KvFile::default(),
    };
    file.check_subcommand(subcommand)?;
    let out = common
        .out
        .clone()
        .or_else(|| file.get_raw("out").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("out"));
    std::fs::create_dir_all(&out)
        .with_context(|| format!("cannot create output directory {}", out.display()))?;
    if let Some(jobs) = common.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .context("worker pool")?;
    }
    Ok((file, out))
}

fn write_out(out: &Path, name: &str, contents: &str, verbose: bool) -> Result<()> {
    let path = out.join(name);
    std::fs::write(&path, contents).with_context(|| format!("cannot write {}", path.display()))?;
    if verbose {
        eprintln!("wrote {}", path.display());
    }
    Ok(())
}

/// Netgen settings from flags over file over the reference defaults;
/// `mu` and `seed` are threaded separately by each subcommand.
fn resolve_netgen(net: &NetFlags, file: &KvFile, mu: f64, seed: u64) -> Result<NetGenConfig> {
    let d = NetGenConfig::default();
    Ok(NetGenConfig {
        n: pick(net.n, file.get("n")?, d.n),
        k_avg: pick(net.k_avg, file.get("k_avg")?, d.k_avg),
        k_min: pick(net.k_min, file.get("k_min")?, d.k_min),
        k_max: pick(net.k_max, file.get("k_max")?, d.k_max),
        gamma: pick(net.gamma, file.get("gamma")?, d.gamma),
        mu,
        community_count_range: (
            pick(
                net.communities_min,
                file.get("community_count_min")?,
                d.community_count_range.0,
            ),
            pick(
                net.communities_max,
                file.get("community_count_max")?,
                d.community_count_range.1,
            ),
        ),
        seed,
    })
}

fn resolve_epidemic(epi: &EpiFlags, file: &KvFile) -> Result<EpidemicParams> {
    let d = EpidemicParams::default();
    Ok(EpidemicParams {
        lambda: pick(epi.lambda, file.get("lambda")?, d.lambda),
        sigma: pick(epi.sigma, file.get("sigma")?, d.sigma),
        window: pick(epi.window, file.get("window")?, d.window),
        init_fraction: pick(
            epi.init_fraction,
            file.get("init_fraction")?,
            d.init_fraction,
        ),
    })
}

fn resolve_seed(common: &Common, file: &KvFile) -> Result<u64> {
    Ok(pick(common.seed, file.get("seed")?, 42))
}

fn echo_netgen(r: &mut Resolved, cfg: &NetGenConfig) {
    r.put("n", cfg.n);
    r.put("k_avg", cfg.k_avg);
    r.put("k_min", cfg.k_min);
    r.put("k_max", cfg.k_max);
    r.put("gamma", cfg.gamma);
    r.put("community_count_min", cfg.community_count_range.0);
    r.put("community_count_max", cfg.community_count_range.1);
}

fn echo_epidemic(r: &mut Resolved, p: &EpidemicParams) {
    r.put("lambda", p.lambda);
    r.put("sigma", p.sigma);
    r.put("window", p.window);
    r.put("init_fraction", p.init_fraction);
}

fn parse_budget(raw: &str) -> Result<Budget> {
    if raw == "unlimited" {
        Ok(Budget::Unlimited)
    } else {
        let f: f64 = raw.parse().map_err(|_| {
            anyhow!("budget: expected a fraction in [0,1] or 'unlimited', got '{raw}'")
        })?;
        Ok(Budget::Fraction(f))
    }
}

fn budget_str(b: Budget) -> String {
    match b {
        Budget::Unlimited => "unlimited".to_string(),
        Budget::Fraction(f) => f.to_string(),
    }
}

fn parse_strategies(raw: &str) -> Result<Vec<StrategyKind>> {
    parse_list::<StrategyKind>(raw, "strategies")
}

fn default_strategies() -> Vec<StrategyKind> {
    vec![
        StrategyKind::LocalNc,
        StrategyKind::GlobalDegree,
        StrategyKind::GlobalBetweenness,
        StrategyKind::GlobalStructural,
        StrategyKind::GlobalCommunity,
    ]
}

fn default_budget_grid() -> Vec<f64> {
    (1..=40).map(|i| i as f64 / 100.0).collect()
}

fn cmd_generate(args: GenerateArgs) -> Result<()> {
    let (file, out) = setup(&args.common, "generate")?;
    let seed = resolve_seed(&args.common, &file)?;
    let mu = pick(args.mu, file.get("mu")?, NetGenConfig::default().mu);
    let cfg = resolve_netgen(&args.net, &file, mu, seed)?;

    let mut resolved = Resolved::new("generate");
    echo_netgen(&mut resolved, &cfg);
    resolved.put("mu", cfg.mu);
    resolved.put("seed", cfg.seed);
    resolved.write(&out)?;

    let gen = netgen::generate(&cfg)?;
    write_out(
        &out,
        "graph.edges",
        &gen.graph.to_edge_list_string(),
        args.common.verbose,
    )?;
    write_out(
        &out,
        "graph.meta",
        &netgen::metadata_string(&cfg, &gen.report),
        args.common.verbose,
    )?;
    write_out(
        &out,
        "communities.csv",
        &communities_csv(&gen.communities),
        args.common.verbose,
    )?;
    Ok(())
}

fn communities_csv(communities: &CommunityAssignment) -> String {
    let mut out = String::from("node,label\n");
    for (node, label) in communities.label.iter().enumerate() {
        out.push_str(&format!("{node},{label}\n"));
    }
    out
}

fn read_communities_csv(path: &Path) -> Result<CommunityAssignment> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read communities file {}", path.display()))?;
    let mut lines = text.lines();
    match lines.next() {
        Some("node,label") => {}
        other => bail!(
            "communities file {}: expected header 'node,label', got '{}'",
            path.display(),
            other.unwrap_or("")
        ),
    }
    let mut label = Vec::new();
    for (idx, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let (node, lab) = line
            .split_once(',')
            .ok_or_else(|| anyhow!("communities row {}: expected node,label", idx + 2))?;
        let node: usize = node.parse().context("node column")?;
        if node != label.len() {
            bail!(
                "communities row {}: nodes must be dense and ascending",
                idx + 2
            );
        }
        label.push(lab.parse::<u32>().context("label column")?);
    }
    Ok(CommunityAssignment::from_raw_labels(label))
}

fn cmd_simulate(args: SimulateArgs) -> Result<()> {
    let (file, out) = setup(&args.common, "simulate")?;
    let seed = resolve_seed(&args.common, &file)?;
    let mu = pick(args.mu, file.get("mu")?, NetGenConfig::default().mu);
    let netgen_cfg = resolve_netgen(&args.net, &file, mu, seed)?;
    let epidemic = resolve_epidemic(&args.epi, &file)?;
    let kind: StrategyKind = match args.strategy.as_deref().or(file.get_raw("strategy")) {
        Some(raw) => raw.parse().map_err(|e| anyhow!("strategy: {e}"))?,
        None => StrategyKind::LocalNc,
    };
    let budget = match args.budget.as_deref().or(file.get_raw("budget")) {
        Some(raw) => parse_budget(raw)?,
        None => Budget::Unlimited,
    };
    let replicate = pick(args.replicate, file.get("replicate")?, 0);
    let global_at_start = args.global_at_start || file.get("global_at_start")?.unwrap_or(false);
    let dump_rounds = args.dump_rounds || file.get("dump_rounds")?.unwrap_or(false);
    let strategy = StrategySpec::new(kind, budget)?;

    let mut resolved = Resolved::new("simulate");
    echo_netgen(&mut resolved, &netgen_cfg);
    echo_epidemic(&mut resolved, &epidemic);
    resolved.put("mu", mu);
    resolved.put("seed", seed);
    resolved.put("strategy", kind);
    resolved.put("budget", budget_str(budget));
    resolved.put("replicate", replicate);
    resolved.put("global_at_start", global_at_start);
    resolved.put("dump_rounds", dump_rounds);
    resolved.write(&out)?;

    let cfg = ExperimentConfig {
        netgen: netgen_cfg,
        epidemic,
        strategy,
        replicates: replicate + 1,
        budget_grid: vec![],
        seed_base: seed,
        global_at_start,
    };
    let result = experiment::run_single(&cfg, replicate)?;
    let row = RawRow {
        strategy: kind,
        mu,
        f: match budget {
            Budget::Fraction(f) => f,
            Budget::Unlimited => 1.0,
        },
        replicate,
        total_infected: result.total_infected,
        extinction_round: result.extinction_round,
        immunized_total: result.immunized_total,
    };
    write_out(
        &out,
        "run.csv",
        &experiment::raw_csv(&[row]),
        args.common.verbose,
    )?;
    if dump_rounds {
        write_out(
            &out,
            "rounds.csv",
            &experiment::rounds_csv(&result),
            args.common.verbose,
        )?;
    }
    Ok(())
}

fn cmd_sweep(args: SweepArgs) -> Result<()> {
    let (file, out) = setup(&args.common, "sweep")?;
    let seed = resolve_seed(&args.common, &file)?;
    let strategies = match args.strategies.as_deref().or(file.get_raw("strategies")) {
        Some(raw) => parse_strategies(raw)?,
        None => default_strategies(),
    };
    let mus: Vec<f64> = match args.mus.as_deref().or(file.get_raw("mus")) {
        Some(raw) => parse_list(raw, "mus")?,
        None => vec![0.3, 0.5, 0.7],
    };
    let budgets: Vec<f64> = match args.budgets.as_deref().or(file.get_raw("budgets")) {
        Some(raw) => parse_list(raw, "budgets")?,
        None => default_budget_grid(),
    };
    let replicates = pick(args.replicates, file.get("replicates")?, 10);
    let global_at_start = args.global_at_start || file.get("global_at_start")?.unwrap_or(false);
    let first_mu = mus.first().copied().unwrap_or(0.3);
    let netgen_cfg = resolve_netgen(&args.net, &file, first_mu, seed)?;
    let epidemic = resolve_epidemic(&args.epi, &file)?;

    let mut resolved = Resolved::new("sweep");
    echo_netgen(&mut resolved, &netgen_cfg);
    echo_epidemic(&mut resolved, &epidemic);
    resolved.put_list("strategies", &strategies);
    resolved.put_list("mus", &mus);
    resolved.put_list("budgets", &budgets);
    resolved.put("replicates", replicates);
    resolved.put("global_at_start", global_at_start);
    resolved.put("seed", seed);
    resolved.write(&out)?;

    let plan = SweepPlan {
        netgen: netgen_cfg,
        epidemic,
        strategies,
        mus,
        budget_grid: budgets,
        replicates,
        seed_base: seed,
        global_at_start,
    };
    let results = experiment::sweep(&plan)?;
    write_out(
        &out,
        "raw.csv",
        &experiment::raw_csv(&results.raw),
        args.common.verbose,
    )?;
    write_out(
        &out,
        "aggregate.csv",
        &experiment::aggregate_csv(&results.aggregate),
        args.common.verbose,
    )?;
    Ok(())
}

fn cmd_evolve(args: EvolveArgs) -> Result<()> {
    let (file, out) = setup(&args.common, "evolve")?;
    let seed = resolve_seed(&args.common, &file)?;
    let mu = pick(args.mu, file.get("mu")?, 0.3);
    let netgen_cfg = resolve_netgen(&args.net, &file, mu, seed)?;
    let epidemic = resolve_epidemic(&args.epi, &file)?;
    let kinds = match args.strategies.as_deref().or(file.get_raw("strategies")) {
        Some(raw) => parse_strategies(raw)?,
        None => default_strategies(),
    };
    let budget = match args.budget.as_deref().or(file.get_raw("budget")) {
        Some(raw) => parse_budget(raw)?,
        None => Budget::Fraction(0.04),
    };
    let replicates = pick(args.replicates, file.get("replicates")?, 10);
    let global_at_start = args.global_at_start || file.get("global_at_start")?.unwrap_or(false);
    let strategies = kinds
        .iter()
        .map(|&k| StrategySpec::new(k, budget))
        .collect::<Result<Vec<_>, _>>()?;

    let mut resolved = Resolved::new("evolve");
    echo_netgen(&mut resolved, &netgen_cfg);
    echo_epidemic(&mut resolved, &epidemic);
    resolved.put("mu", mu);
    resolved.put_list("strategies", &kinds);
    resolved.put("budget", budget_str(budget));
    resolved.put("replicates", replicates);
    resolved.put("global_at_start", global_at_start);
    resolved.put("seed", seed);
    resolved.write(&out)?;

    let plan = EvolutionPlan {
        netgen: netgen_cfg,
        epidemic,
        strategies,
        replicates,
        seed_base: seed,
        global_at_start,
    };
    let result = experiment::time_evolution(&plan)?;
    write_out(
        &out,
        "evolution.csv",
        &experiment::series_csv(&result.series),
        args.common.verbose,
    )?;
    Ok(())
}

fn cmd_cost(args: CostArgs) -> Result<()> {
    let (file, out) = setup(&args.common, "cost")?;
    let seed = resolve_seed(&args.common, &file)?;
    let mu = pick(args.mu, file.get("mu")?, NetGenConfig::default().mu);
    let netgen_cfg = resolve_netgen(&args.net, &file, mu, seed)?;
    let replicates = pick(args.replicates, file.get("replicates")?, 10);

    let mut resolved = Resolved::new("cost");
    echo_netgen(&mut resolved, &netgen_cfg);
    resolved.put("mu", mu);
    resolved.put("replicates", replicates);
    resolved.put("seed", seed);
    resolved.write(&out)?;

    let plan = CostPlan {
        netgen: netgen_cfg,
        replicates,
        seed_base: seed,
    };
    let report = experiment::cost_report(&plan)?;
    write_out(
        &out,
        "cost.csv",
        &experiment::cost_csv(&report.rows),
        args.common.verbose,
    )?;
    write_out(
        &out,
        "timings.txt",
        &experiment::timings_text(&report.timings),
        args.common.verbose,
    )?;
    Ok(())
}

fn cmd_plot(args: PlotArgs) -> Result<()> {
    let (file, out) = setup(&args.common, "plot")?;
    let data = args
        .data
        .clone()
        .or_else(|| file.get_raw("data").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("out"));

    let mut resolved = Resolved::new("plot");
    resolved.put("data", data.display());
    resolved.write(&out)?;

    let aggregate_path = data.join("aggregate.csv");
    let evolution_path = data.join("evolution.csv");
    let mut rendered = 0;
    if aggregate_path.is_file() {
        let text = std::fs::read_to_string(&aggregate_path)
            .with_context(|| format!("cannot read {}", aggregate_path.display()))?;
        let records = plot::parse_aggregate_csv(&text)?;
        for (mu, chart) in plot::sweep_charts(&records) {
            let name = format!("sweep_mu{mu}.svg");
            write_out(&out, &name, &chart.to_svg(), args.common.verbose)?;
            rendered += 1;
        }
    }
    if evolution_path.is_file() {
        let text = std::fs::read_to_string(&evolution_path)
            .with_context(|| format!("cannot read {}", evolution_path.display()))?;
        let records = plot::parse_series_csv(&text)?;
        let chart = plot::evolution_chart(&records);
        write_out(&out, "evolution.svg", &chart.to_svg(), args.common.verbose)?;
        rendered += 1;
    }
    if rendered == 0 {
        bail!(
            "nothing to plot: neither {} nor {} exists",
            aggregate_path.display(),
            evolution_path.display()
        );
    }
    Ok(())
}

fn cmd_centrality(args: CentralityArgs) -> Result<()> {
    let (file, out) = setup(&args.common, "centrality")?;
    let kind: CentralityKind = match args.kind.as_deref().or(file.get_raw("kind")) {
        Some(raw) => raw.parse().map_err(|e| anyhow!("kind: {e}"))?,
        None => bail!("centrality requires --kind (degree | betweenness | structural | community | neighbour)"),
    };
    let graph_path = args
        .graph
        .clone()
        .or_else(|| file.get_raw("graph").map(PathBuf::from))
        .ok_or_else(|| anyhow!("centrality requires --graph <edge-list file>"))?;
    let communities_path = args
        .communities
        .clone()
        .or_else(|| file.get_raw("communities").map(PathBuf::from));

    let mut resolved = Resolved::new("centrality");
    resolved.put("kind", kind);
    resolved.put("graph", graph_path.display());
    if let Some(p) = &communities_path {
        resolved.put("communities", p.display());
    }
    resolved.write(&out)?;

    let g = Graph::read_edge_list(&graph_path)?;
    let communities = communities_path
        .as_deref()
        .map(read_communities_csv)
        .transpose()?;
    let scores = centrality::compute(&g, kind, communities.as_ref())?;
    let mut csv = String::from("node,score\n");
    for (node, score) in scores.values.iter().enumerate() {
        csv.push_str(&format!("{node},{score}\n"));
    }
    write_out(&out, "centrality.csv", &csv, args.common.verbose)?;
    Ok(())
}
