//! Scale-free community network generation.
//!
//! The generator follows the usual benchmark recipe: draw a power-law
//! degree sequence, draw power-law community sizes, split each node's stubs
//! into an intra-community share (1−μ) and an inter-community share μ, then
//! match stubs within each pool like a configuration model. Collisions —
//! self-loops, duplicate edges, and same-community pairs in the inter pool —
//! are resolved by bounded rewiring passes; whatever cannot be placed is
//! discarded, within a ±2 per-node degree tolerance.
//!
//! The mean degree is hit by adjusting the minimum degree: expected mean is
//! monotone in the lower cutoff, so the generator either finds an integer
//! cutoff whose expectation lands within 5% of the target, or mixes the two
//! adjacent cutoffs that bracket it (per node, a Bernoulli choice between
//! k' and k'+1), which makes the expected mean exactly the target.
//!
//! Everything is driven by named streams of the run seed — degrees,
//! community layout, and wiring consume independent generators, so a change
//! in one phase's draw count cannot perturb the others.

use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::HashSet;

use crate::graph::{Graph, NodeId};
use crate::rng::{self, Stream};

const SEQUENCE_ATTEMPTS: usize = 100;
const LAYOUT_ATTEMPTS: usize = 50;
const REWIRE_PASSES: usize = 100;
/// Realized per-node degree may fall short of its target by at most this
/// much after stub discard.
pub const DEGREE_TOLERANCE: usize = 2;

/// Generation parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct NetGenConfig {
    pub n: usize,
    /// Target mean degree; the realized mean must land within 5%.
    pub k_avg: f64,
    /// Lower bound on degrees (the mean-targeting search may raise it).
    pub k_min: usize,
    pub k_max: usize,
    /// Power-law exponent, in (1, 3].
    pub gamma: f64,
    /// Mixing parameter: target fraction of each node's edges leaving its
    /// community.
    pub mu: f64,
    /// Inclusive bounds on the community count.
    pub community_count_range: (usize, usize),
    pub seed: u64,
}

impl Default for NetGenConfig {
    /// The reference network: 5000 nodes, mean degree 8, maximum degree
    /// 120, exponent 3, with 10–50 communities.
    fn default() -> Self {
        NetGenConfig {
            n: 5000,
            k_avg: 8.0,
            k_min: 4,
            k_max: 120,
            gamma: 3.0,
            mu: 0.3,
            community_count_range: (10, 50),
            seed: 42,
        }
    }
}

impl NetGenConfig {
    pub fn validate(&self) -> Result<(), NetGenError> {
        let err = |field: &'static str, value: String, requirement: &'static str| {
            Err(NetGenError::ConfigRange {
                field,
                value,
                requirement,
            })
        };
        if self.k_min < 1 {
            return err("k_min", self.k_min.to_string(), ">= 1");
        }
        if (self.k_min as f64) > self.k_avg {
            return err("k_avg", self.k_avg.to_string(), ">= k_min");
        }
        if self.k_avg > self.k_max as f64 {
            return err("k_avg", self.k_avg.to_string(), "<= k_max");
        }
        if self.k_max >= self.n {
            return err("k_max", self.k_max.to_string(), "< n");
        }
        if !(self.gamma > 1.0 && self.gamma <= 3.0) {
            return err("gamma", self.gamma.to_string(), "in (1, 3]");
        }
        if !(0.0..=1.0).contains(&self.mu) || self.mu.is_nan() {
            return err("mu", self.mu.to_string(), "in [0, 1]");
        }
        let (lo, hi) = self.community_count_range;
        if lo < 1 || lo > hi || hi > self.n {
            return err(
                "community_count_range",
                format!("({lo}, {hi})"),
                "1 <= min <= max <= n",
            );
        }
        Ok(())
    }

    /// Intra-community stub count for a node of degree `d`.
    fn intra_stubs(&self, d: usize) -> usize {
        ((1.0 - self.mu) * d as f64).round() as usize
    }
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum NetGenError {
    #[error("{field} = {value} must be {requirement}")]
    ConfigRange {
        field: &'static str,
        value: String,
        requirement: &'static str,
    },
    #[error("no minimum degree in [{k_min}, {k_max}] achieves mean degree {k_avg} (within 5%)")]
    MeanUnreachable {
        k_min: usize,
        k_max: usize,
        k_avg: f64,
    },
    #[error("realized mean degree {got} missed {want} by more than 5% in {attempts} attempts")]
    MeanMissed {
        got: f64,
        want: f64,
        attempts: usize,
    },
    #[error("degree sum could not be made even within [k_min, k_max]")]
    ParityUnfixable,
    #[error(
        "could not fit node {node} (intra-degree {needed}) into any community after {attempts} layouts; increase community sizes or count"
    )]
    CommunityFit {
        node: u32,
        needed: usize,
        attempts: usize,
    },
    #[error(
        "node {node} realized degree {got} vs target {want}, beyond tolerance ±{DEGREE_TOLERANCE}"
    )]
    DegreeTolerance { node: u32, got: usize, want: usize },
}

/// Ground-truth community labels, dense in [0, count).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommunityAssignment {
    pub label: Vec<u32>,
    pub count: usize,
}

impl CommunityAssignment {
    /// Compacts arbitrary labels to dense indices, numbered by first
    /// appearance in node order.
    pub fn from_raw_labels(raw: Vec<u32>) -> Self {
        let mut dense: std::collections::HashMap<u32, u32> = std::collections::HashMap::new();
        let mut next = 0u32;
        let label = raw
            .into_iter()
            .map(|l| {
                *dense.entry(l).or_insert_with(|| {
                    let id = next;
                    next += 1;
                    id
                })
            })
            .collect();
        CommunityAssignment {
            label,
            count: next as usize,
        }
    }

    /// Members of each community, ascending node id within each.
    pub fn members(&self) -> Vec<Vec<NodeId>> {
        let mut out = vec![Vec::new(); self.count];
        for (i, &l) in self.label.iter().enumerate() {
            out[l as usize].push(NodeId(i as u32));
        }
        out
    }
}

/// Realized statistics of a generated network.
#[derive(Debug, Clone, PartialEq)]
pub struct GenReport {
    pub realized_avg_degree: f64,
    pub realized_max_degree: usize,
    /// Mean over degree-≥1 nodes of the fraction of their edges leaving
    /// their community.
    pub realized_mu: f64,
    /// Log–log regression slope of the degree survival function over the
    /// observed unique degrees.
    pub tail_slope_estimate: f64,
    /// Stubs dropped during wiring (0 when the report comes from
    /// [`measure`] on an existing graph).
    pub discarded_stubs: usize,
}

/// A generated network with its ground truth and statistics.
#[derive(Debug, Clone)]
pub struct Generated {
    pub graph: Graph,
    pub communities: CommunityAssignment,
    pub report: GenReport,
}

/// The mean-targeting rule found by [`lower_bound_mixture`]: degrees are
/// drawn with lower cutoff `base`, except a Bernoulli(`bump_prob`) fraction
/// drawn with cutoff `base + 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct CutoffMixture {
    base: usize,
    bump_prob: f64,
}

/// Truncated power-law machinery on [1, k_max]: prefix sums of d^(−γ) and
/// of d·d^(−γ), indexed by degree.
struct PowerLaw {
    weight_prefix: Vec<f64>,
    mean_prefix: Vec<f64>,
    k_max: usize,
}

impl PowerLaw {
    fn new(gamma: f64, k_max: usize) -> Self {
        let mut weight_prefix = vec![0.0; k_max + 1];
        let mut mean_prefix = vec![0.0; k_max + 1];
        for d in 1..=k_max {
            let w = (d as f64).powf(-gamma);
            weight_prefix[d] = weight_prefix[d - 1] + w;
            mean_prefix[d] = mean_prefix[d - 1] + d as f64 * w;
        }
        PowerLaw {
            weight_prefix,
            mean_prefix,
            k_max,
        }
    }

    fn mass(&self, lo: usize, hi: usize) -> f64 {
        self.weight_prefix[hi] - self.weight_prefix[lo - 1]
    }

    /// Expected degree when truncated to [lb, k_max].
    fn expected_mean(&self, lb: usize) -> f64 {
        (self.mean_prefix[self.k_max] - self.mean_prefix[lb - 1]) / self.mass(lb, self.k_max)
    }

    /// Inverse-CDF sample from the law truncated to [lb, k_max].
    fn sample(&self, lb: usize, rng: &mut Stream) -> usize {
        let total = self.mass(lb, self.k_max);
        let target = rng.gen::<f64>() * total;
        // Smallest d in [lb, k_max] with cumulative mass from lb >= target.
        let mut lo = lb;
        let mut hi = self.k_max;
        while lo < hi {
            let mid = (lo + hi) / 2;
            if self.mass(lb, mid) >= target {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        lo
    }
}

/// Finds the lower-cutoff rule whose expected mean matches k_avg: an
/// integer cutoff already within the 5% band if one exists, otherwise the
/// mixture of the two adjacent cutoffs bracketing the target.
fn lower_bound_mixture(cfg: &NetGenConfig, law: &PowerLaw) -> Result<CutoffMixture, NetGenError> {
    let band = 0.05 * cfg.k_avg;
    let mut best: Option<(f64, usize)> = None;
    let mut bracket: Option<(usize, f64, f64)> = None;
    let mut prev: Option<(usize, f64)> = None;
    for lb in cfg.k_min..=cfg.k_max {
        let mean = law.expected_mean(lb);
        let diff = (mean - cfg.k_avg).abs();
        if diff <= band && best.is_none_or(|(d, _)| diff < d) {
            best = Some((diff, lb));
        }
        if let Some((plb, pmean)) = prev {
            if pmean < cfg.k_avg && mean >= cfg.k_avg && bracket.is_none() {
                bracket = Some((plb, pmean, mean));
            }
        }
        prev = Some((lb, mean));
        if mean > cfg.k_avg + band && bracket.is_some() {
            break; // expected mean is increasing in lb; nothing better ahead
        }
    }
    if let Some((_, lb)) = best {
        return Ok(CutoffMixture {
            base: lb,
            bump_prob: 0.0,
        });
    }
    if let Some((lb, lo_mean, hi_mean)) = bracket {
        return Ok(CutoffMixture {
            base: lb,
            bump_prob: (cfg.k_avg - lo_mean) / (hi_mean - lo_mean),
        });
    }
    Err(NetGenError::MeanUnreachable {
        k_min: cfg.k_min,
        k_max: cfg.k_max,
        k_avg: cfg.k_avg,
    })
}

/// Draws a degree sequence with each degree in [k_min, k_max] distributed
/// ∝ d^(−γ), the mean within 5% of k_avg, and an even sum.
pub fn sample_powerlaw_degrees(
    cfg: &NetGenConfig,
    rng: &mut Stream,
) -> Result<Vec<usize>, NetGenError> {
    cfg.validate()?;
    let law = PowerLaw::new(cfg.gamma, cfg.k_max);
    let mixture = lower_bound_mixture(cfg, &law)?;
    let band = 0.05 * cfg.k_avg;
    let mut last_mean = f64::NAN;
    for _ in 0..SEQUENCE_ATTEMPTS {
        let mut degrees: Vec<usize> = (0..cfg.n)
            .map(|_| {
                let lb = if mixture.bump_prob > 0.0 && rng.gen::<f64>() < mixture.bump_prob {
                    mixture.base + 1
                } else {
                    mixture.base
                };
                law.sample(lb, rng)
            })
            .collect();
        fix_parity(cfg, &mut degrees)?;
        let mean = degrees.iter().sum::<usize>() as f64 / cfg.n as f64;
        if (mean - cfg.k_avg).abs() <= band {
            return Ok(degrees);
        }
        last_mean = mean;
    }
    Err(NetGenError::MeanMissed {
        got: last_mean,
        want: cfg.k_avg,
        attempts: SEQUENCE_ATTEMPTS,
    })
}

/// Makes the degree sum even by nudging the lowest-id node with headroom.
fn fix_parity(cfg: &NetGenConfig, degrees: &mut [usize]) -> Result<(), NetGenError> {
    if degrees.iter().sum::<usize>() % 2 == 0 {
        return Ok(());
    }
    if let Some(d) = degrees.iter_mut().find(|d| **d < cfg.k_max) {
        *d += 1;
        return Ok(());
    }
    if let Some(d) = degrees.iter_mut().find(|d| **d > cfg.k_min) {
        *d -= 1;
        return Ok(());
    }
    Err(NetGenError::ParityUnfixable)
}

/// Assigns every node to a community. Community count is uniform over the
/// configured range; sizes follow a power law with exponent 1 (log-uniform
/// raw weights, largest-remainder scaled to n). Nodes are placed in
/// descending intra-stub order, each into a uniformly drawn community that
/// still has a free slot and is large enough to host the node's
/// intra-community edges; if a layout strands a node, a fresh layout is
/// drawn, up to a fixed attempt budget.
pub fn assign_communities(
    cfg: &NetGenConfig,
    degrees: &[usize],
    rng: &mut Stream,
) -> Result<CommunityAssignment, NetGenError> {
    assert_eq!(degrees.len(), cfg.n);
    let (lo, hi) = cfg.community_count_range;
    let mut order: Vec<usize> = (0..cfg.n).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(cfg.intra_stubs(degrees[i])), i));
    let mut last_stuck = (0u32, 0usize);
    for _ in 0..LAYOUT_ATTEMPTS {
        let count = rng.gen_range(lo..=hi);
        let sizes = draw_sizes(cfg.n, count, rng);
        let mut remaining = sizes.clone();
        let mut label = vec![0u32; cfg.n];
        let mut stuck = None;
        for &i in &order {
            let needed = cfg.intra_stubs(degrees[i]);
            let feasible: Vec<usize> = (0..count)
                .filter(|&c| remaining[c] >= 1 && sizes[c] > needed)
                .collect();
            if feasible.is_empty() {
                stuck = Some((i as u32, needed));
                break;
            }
            let pick = feasible[rng.gen_range(0..feasible.len())];
            label[i] = pick as u32;
            remaining[pick] -= 1;
        }
        match stuck {
            None => return Ok(CommunityAssignment::from_raw_labels(label)),
            Some(s) => last_stuck = s,
        }
    }
    Err(NetGenError::CommunityFit {
        node: last_stuck.0,
        needed: last_stuck.1,
        attempts: LAYOUT_ATTEMPTS,
    })
}

/// Community sizes: `count` log-uniform weights scaled to sum to n, largest
/// remainder rounding, every community at least one node.
fn draw_sizes(n: usize, count: usize, rng: &mut Stream) -> Vec<usize> {
    let span = 10.0f64; // largest/smallest raw weight ratio
    let weights: Vec<f64> = (0..count)
        .map(|_| (rng.gen::<f64>() * span.ln()).exp())
        .collect();
    let total: f64 = weights.iter().sum();
    let scaled: Vec<f64> = weights.iter().map(|w| w / total * n as f64).collect();
    let mut sizes: Vec<usize> = scaled.iter().map(|s| s.floor() as usize).collect();
    // Largest-remainder rounding: hand the units lost to flooring (strictly
    // fewer than `count` of them) to the largest fractional parts.
    let leftover = n - sizes.iter().sum::<usize>();
    let mut by_fraction: Vec<usize> = (0..count).collect();
    by_fraction.sort_by(|&a, &b| {
        let fa = scaled[a] - scaled[a].floor();
        let fb = scaled[b] - scaled[b].floor();
        fb.total_cmp(&fa).then(a.cmp(&b))
    });
    for &c in by_fraction.iter().take(leftover) {
        sizes[c] += 1;
    }
    // No empty communities: steal from the largest.
    for c in 0..count {
        while sizes[c] == 0 {
            let donor = (0..count).max_by_key(|&d| sizes[d]).unwrap();
            if sizes[donor] <= 1 {
                break;
            }
            sizes[donor] -= 1;
            sizes[c] += 1;
        }
    }
    sizes
}

/// Wires the degree sequence into a simple graph: each node contributes
/// round((1−μ)·d) stubs to its community's intra pool and the rest to the
/// shared inter pool. Pools are matched by shuffle-and-pair; colliding
/// pairs (self-loop, duplicate, or — in the inter pool — same-community)
/// re-enter the pool for up to 100 passes. Intra leftovers are promoted to
/// the inter pool; inter leftovers go through a double-edge-swap repair and
/// only what remains after that is discarded. Returns the graph and the
/// discarded stub count.
pub fn wire(
    cfg: &NetGenConfig,
    degrees: &[usize],
    communities: &CommunityAssignment,
    rng: &mut Stream,
) -> Result<(Graph, usize), NetGenError> {
    assert_eq!(degrees.len(), cfg.n);
    assert_eq!(communities.label.len(), cfg.n);
    let mut edges: HashSet<(u32, u32)> = HashSet::new();

    let mut inter_stubs: Vec<u32> = Vec::new();
    for members in communities.members() {
        let mut pool: Vec<u32> = Vec::new();
        for &node in &members {
            let intra = cfg.intra_stubs(degrees[node.index()]);
            debug_assert!(
                intra < members.len(),
                "assignment admitted an oversized node"
            );
            pool.extend(std::iter::repeat_n(node.0, intra));
        }
        let leftover = match_pool(&mut pool, &mut edges, rng, |_, _| false);
        inter_stubs.extend(leftover);
    }

    for (i, &d) in degrees.iter().enumerate() {
        let inter = d - cfg.intra_stubs(d);
        inter_stubs.extend(std::iter::repeat_n(i as u32, inter));
    }
    let label = &communities.label;
    let same_community = |u: u32, v: u32| label[u as usize] == label[v as usize];
    let leftover = match_pool(&mut inter_stubs, &mut edges, rng, same_community);
    let leftover = swap_repair(leftover, &mut edges, same_community, |x, y| {
        !same_community(x, y)
    });
    let discarded = leftover.len();

    let pairs: Vec<(u32, u32)> = edges.into_iter().collect();
    let graph = Graph::from_edge_list(cfg.n, &pairs).expect("wiring produced a non-simple graph");
    for (i, &want) in degrees.iter().enumerate() {
        let got = graph.degree(NodeId(i as u32));
        if got.abs_diff(want) > DEGREE_TOLERANCE {
            return Err(NetGenError::DegreeTolerance {
                node: i as u32,
                got,
                want,
            });
        }
    }
    Ok((graph, discarded))
}

/// Shuffle-and-pair matching: repeatedly shuffles the pool, pairs adjacent
/// stubs, keeps valid pairs as edges, and recycles collisions (plus any odd
/// stub) into the next pass. Returns whatever is still unmatched after the
/// pass budget.
fn match_pool(
    pool: &mut Vec<u32>,
    edges: &mut HashSet<(u32, u32)>,
    rng: &mut Stream,
    forbid: impl Fn(u32, u32) -> bool,
) -> Vec<u32> {
    let mut pending = std::mem::take(pool);
    for _ in 0..REWIRE_PASSES {
        if pending.len() < 2 {
            break;
        }
        pending.shuffle(rng);
        let mut retry = Vec::new();
        let mut chunks = pending.chunks_exact(2);
        for pair in &mut chunks {
            let (u, v) = (pair[0], pair[1]);
            let key = (u.min(v), u.max(v));
            if u == v || edges.contains(&key) || forbid(u, v) {
                retry.push(u);
                retry.push(v);
            } else {
                edges.insert(key);
            }
        }
        retry.extend_from_slice(chunks.remainder());
        if retry.is_empty() {
            return Vec::new();
        }
        pending = retry;
    }
    pending
}

fn ordered(u: u32, v: u32) -> (u32, u32) {
    (u.min(v), u.max(v))
}

/// Last-resort placement for stubs the shuffle passes could not pair: a
/// double edge swap. For the leftover stubs a, b at the head of the sorted
/// list, find an existing `breakable` edge (x, y) disjoint from {a, b}
/// whose endpoints accept a and b as new partners, then replace it with
/// (a, x) and (b, y) — x and y keep their degrees and both stubs are
/// settled. Candidates are scanned in sorted order so the outcome never
/// depends on hash iteration order; stubs with no usable swap are returned
/// as unmatched.
fn swap_repair(
    mut stubs: Vec<u32>,
    edges: &mut HashSet<(u32, u32)>,
    forbid: impl Fn(u32, u32) -> bool,
    breakable: impl Fn(u32, u32) -> bool,
) -> Vec<u32> {
    if stubs.is_empty() {
        return stubs;
    }
    stubs.sort_unstable();
    let mut candidates: Vec<(u32, u32)> = edges.iter().copied().collect();
    candidates.sort_unstable();
    let ok = |u: u32, v: u32, edges: &HashSet<(u32, u32)>| {
        u != v && !edges.contains(&ordered(u, v)) && !forbid(u, v)
    };
    let mut unmatched = Vec::new();
    while stubs.len() >= 2 {
        let (a, b) = (stubs[0], stubs[1]);
        if ok(a, b, edges) {
            edges.insert(ordered(a, b));
            stubs.drain(..2);
            continue;
        }
        let mut found = None;
        for (idx, &(x, y)) in candidates.iter().enumerate() {
            if !breakable(x, y) || x == a || x == b || y == a || y == b {
                continue;
            }
            if ok(a, x, edges) && ok(b, y, edges) {
                found = Some((idx, (a, x), (b, y)));
                break;
            }
            if ok(a, y, edges) && ok(b, x, edges) {
                found = Some((idx, (a, y), (b, x)));
                break;
            }
        }
        match found {
            Some((idx, e1, e2)) => {
                let (x, y) = candidates.remove(idx);
                edges.remove(&ordered(x, y));
                edges.insert(ordered(e1.0, e1.1));
                edges.insert(ordered(e2.0, e2.1));
                stubs.drain(..2);
            }
            None => {
                // Set the head aside; the next stub may pair differently.
                unmatched.push(a);
                stubs.remove(0);
            }
        }
    }
    unmatched.extend(stubs);
    unmatched
}

/// Realized statistics of a graph under a community assignment. The
/// `discarded_stubs` field is 0 here; [`generate`] fills it from the wiring
/// step.
pub fn measure(g: &Graph, communities: &CommunityAssignment) -> GenReport {
    assert_eq!(communities.label.len(), g.node_count());
    let n = g.node_count();
    let mut mu_sum = 0.0;
    let mut mu_nodes = 0usize;
    let mut max_degree = 0usize;
    for i in 0..n {
        let node = NodeId(i as u32);
        let d = g.degree(node);
        max_degree = max_degree.max(d);
        if d == 0 {
            continue;
        }
        let crossing = g
            .neighbors(node)
            .iter()
            .filter(|&&j| communities.label[j.index()] != communities.label[i])
            .count();
        mu_sum += crossing as f64 / d as f64;
        mu_nodes += 1;
    }
    GenReport {
        realized_avg_degree: 2.0 * g.edge_count() as f64 / n as f64,
        realized_max_degree: max_degree,
        realized_mu: if mu_nodes == 0 {
            0.0
        } else {
            mu_sum / mu_nodes as f64
        },
        tail_slope_estimate: tail_slope(g),
        discarded_stubs: 0,
    }
}

/// Least-squares slope of ln(survival) against ln(degree) over the unique
/// observed degrees, the usual log–log tail read-out. Returns NaN when
/// fewer than two distinct positive degrees exist.
pub fn tail_slope(g: &Graph) -> f64 {
    let mut degrees: Vec<usize> = (0..g.node_count())
        .map(|i| g.degree(NodeId(i as u32)))
        .filter(|&d| d > 0)
        .collect();
    degrees.sort_unstable();
    let total = degrees.len();
    if total == 0 {
        return f64::NAN;
    }
    let mut points: Vec<(f64, f64)> = Vec::new();
    let mut idx = 0;
    while idx < total {
        let d = degrees[idx];
        // Nodes with degree >= d start at position idx.
        let survival = (total - idx) as f64 / total as f64;
        points.push(((d as f64).ln(), survival.ln()));
        while idx < total && degrees[idx] == d {
            idx += 1;
        }
    }
    if points.len() < 2 {
        return f64::NAN;
    }
    let m = points.len() as f64;
    let sx: f64 = points.iter().map(|p| p.0).sum();
    let sy: f64 = points.iter().map(|p| p.1).sum();
    let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();
    (m * sxy - sx * sy) / (m * sxx - sx * sx)
}

/// Full pipeline: degrees → communities → wiring → measurement.
pub fn generate(cfg: &NetGenConfig) -> Result<Generated, NetGenError> {
    cfg.validate()?;
    let mut degree_rng = rng::stream(cfg.seed, "netgen/degrees");
    let degrees = sample_powerlaw_degrees(cfg, &mut degree_rng)?;
    let mut community_rng = rng::stream(cfg.seed, "netgen/communities");
    let communities = assign_communities(cfg, &degrees, &mut community_rng)?;
    let mut wiring_rng = rng::stream(cfg.seed, "netgen/wiring");
    let (graph, discarded) = wire(cfg, &degrees, &communities, &mut wiring_rng)?;
    let mut report = measure(&graph, &communities);
    report.discarded_stubs = discarded;
    Ok(Generated {
        graph,
        communities,
        report,
    })
}

/// Sidecar metadata for a generated network: sorted key=value lines with
/// the full configuration and the realized statistics.
pub fn metadata_string(cfg: &NetGenConfig, report: &GenReport) -> String {
    let mut pairs = vec![
        (
            "community_count_max".to_string(),
            cfg.community_count_range.1.to_string(),
        ),
        (
            "community_count_min".to_string(),
            cfg.community_count_range.0.to_string(),
        ),
        (
            "discarded_stubs".to_string(),
            report.discarded_stubs.to_string(),
        ),
        ("gamma".to_string(), cfg.gamma.to_string()),
        ("k_avg".to_string(), cfg.k_avg.to_string()),
        ("k_max".to_string(), cfg.k_max.to_string()),
        ("k_min".to_string(), cfg.k_min.to_string()),
        ("mu".to_string(), cfg.mu.to_string()),
        ("n".to_string(), cfg.n.to_string()),
        (
            "realized_avg_degree".to_string(),
            report.realized_avg_degree.to_string(),
        ),
        (
            "realized_max_degree".to_string(),
            report.realized_max_degree.to_string(),
        ),
        ("realized_mu".to_string(), report.realized_mu.to_string()),
        ("seed".to_string(), cfg.seed.to_string()),
        (
            "tail_slope_estimate".to_string(),
            report.tail_slope_estimate.to_string(),
        ),
    ];
    pairs.sort();
    let mut out = String::new();
    for (k, v) in pairs {
        out.push_str(&k);
        out.push('=');
        out.push_str(&v);
        out.push('\n');
    }
    out
}
