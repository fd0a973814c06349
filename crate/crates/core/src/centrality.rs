//! Node centralities: the neighbour centrality driving the local
//! immunization strategy, and the four baselines used for global ranking.
//!
//! Neighbour centrality is the ratio of a node's degree to the mean degree
//! of its neighbours,
//!
//! ```text
//! NC(i) = d_i / (Σ_{j∈N_i} d_j / d_i) = d_i² / Σ_{j∈N_i} d_j
//! ```
//!
//! computed here in the single-division form (algebraically identical; the
//! identity is unit-tested). Structural centrality is harmonic closeness and
//! community centrality is intra-community degree — documented stand-ins for
//! measures the literature leaves underspecified; both rank hubs first on
//! the graphs this crate generates, which is all the global strategies need.
//!
//! Degree-0 nodes score 0 under every kind, keeping [`rank`] total.

use rayon::prelude::*;
use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use crate::graph::{Graph, NodeId};
use crate::netgen::CommunityAssignment;

/// Which centrality a score vector holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CentralityKind {
    Degree,
    Neighbour,
    Betweenness,
    Structural,
    Community,
}

impl CentralityKind {
    pub const ALL: [CentralityKind; 5] = [
        CentralityKind::Degree,
        CentralityKind::Neighbour,
        CentralityKind::Betweenness,
        CentralityKind::Structural,
        CentralityKind::Community,
    ];
}

impl fmt::Display for CentralityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            CentralityKind::Degree => "degree",
            CentralityKind::Neighbour => "neighbour",
            CentralityKind::Betweenness => "betweenness",
            CentralityKind::Structural => "structural",
            CentralityKind::Community => "community",
        };
        f.write_str(name)
    }
}

impl FromStr for CentralityKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "degree" => Ok(CentralityKind::Degree),
            "neighbour" | "nc" => Ok(CentralityKind::Neighbour),
            "betweenness" => Ok(CentralityKind::Betweenness),
            "structural" => Ok(CentralityKind::Structural),
            "community" => Ok(CentralityKind::Community),
            other => Err(format!(
                "unknown centrality kind '{other}' (expected degree, neighbour, betweenness, structural or community)"
            )),
        }
    }
}

/// Per-node scores for one centrality kind.
#[derive(Debug, Clone, PartialEq)]
pub struct CentralityScores {
    pub kind: CentralityKind,
    pub values: Vec<f64>,
}

impl CentralityScores {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Errors from centrality computation.
#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CentralityError {
    #[error("community labels cover {got} nodes, graph has {expected}")]
    LabelCount { expected: usize, got: usize },
}

/// Counts degree lookups during neighbour-centrality evaluation, attributed
/// to the invoking node. One invocation by node i scores i's whole
/// neighbourhood: each NC(j) for j ∈ N_i costs degree(j) reads for its
/// denominator, so reads[i] = Σ_{j∈N_i} degree(j) ≤ degree(i)·c ≤ c² where
/// c is the maximum degree — the cost claim under test. The bound is tight
/// on complete graphs.
#[derive(Debug, Clone)]
pub struct OpCounter {
    pub neighbour_degree_reads: Vec<u64>,
}

impl OpCounter {
    pub fn new(n: usize) -> Self {
        OpCounter {
            neighbour_degree_reads: vec![0; n],
        }
    }

    pub fn total(&self) -> u64 {
        self.neighbour_degree_reads.iter().sum()
    }

    pub fn max_per_node(&self) -> u64 {
        self.neighbour_degree_reads
            .iter()
            .copied()
            .max()
            .unwrap_or(0)
    }
}

/// Neighbour centrality of a single node: d_i² / Σ_{j∈N_i} d_j, or 0 for an
/// isolated node.
pub fn neighbour_centrality(g: &Graph, i: NodeId) -> f64 {
    let d = g.degree(i);
    if d == 0 {
        return 0.0;
    }
    let neighbour_degree_sum: usize = g.neighbors(i).iter().map(|&j| g.degree(j)).sum();
    (d * d) as f64 / neighbour_degree_sum as f64
}

/// Neighbour centrality for every node.
pub fn neighbour_centrality_all(g: &Graph) -> CentralityScores {
    let values = (0..g.node_count())
        .map(|i| neighbour_centrality(g, NodeId(i as u32)))
        .collect();
    CentralityScores {
        kind: CentralityKind::Neighbour,
        values,
    }
}

/// Performs one local scoring invocation per node — node i evaluating NC(j)
/// for every neighbour j, exactly what the local immunization rule does —
/// and records each invocation's degree reads into `counter`. The scores
/// land as a side effect (every non-isolated node is somebody's neighbour),
/// identical to [`neighbour_centrality_all`].
pub fn neighbour_centrality_counted(g: &Graph, counter: &mut OpCounter) -> CentralityScores {
    assert_eq!(counter.neighbour_degree_reads.len(), g.node_count());
    let mut values = vec![0.0; g.node_count()];
    for i in 0..g.node_count() {
        for &j in g.neighbors(NodeId(i as u32)) {
            let mut sum = 0usize;
            for &k in g.neighbors(j) {
                sum += g.degree(k);
                counter.neighbour_degree_reads[i] += 1;
            }
            let d = g.degree(j);
            values[j.index()] = (d * d) as f64 / sum as f64;
        }
    }
    CentralityScores {
        kind: CentralityKind::Neighbour,
        values,
    }
}

/// values[i] = degree(i).
pub fn degree_centrality(g: &Graph) -> CentralityScores {
    let values = (0..g.node_count())
        .map(|i| g.degree(NodeId(i as u32)) as f64)
        .collect();
    CentralityScores {
        kind: CentralityKind::Degree,
        values,
    }
}

/// Brandes betweenness, unnormalized, endpoints excluded, each unordered
/// pair counted once.
///
/// Sources are processed in fixed blocks; each block accumulates into its
/// own buffer and the buffers are folded in ascending block order, so the
/// floating-point summation order — and therefore every output bit — is
/// independent of thread count and scheduling.
pub fn betweenness_centrality(g: &Graph) -> CentralityScores {
    let n = g.node_count();
    const BLOCK: usize = 64;
    let sources: Vec<usize> = (0..n).collect();
    let partials: Vec<Vec<f64>> = sources
        .par_chunks(BLOCK)
        .map(|chunk| {
            let mut acc = vec![0.0f64; n];
            let mut ws = BrandesWorkspace::new(n);
            for &s in chunk {
                brandes_from_source(g, NodeId(s as u32), &mut acc, &mut ws);
            }
            acc
        })
        .collect();

    let mut values = vec![0.0f64; n];
    for partial in partials {
        for (v, p) in values.iter_mut().zip(partial) {
            *v += p;
        }
    }
    // Each unordered pair {s, t} contributed from both endpoints.
    for v in &mut values {
        *v *= 0.5;
    }
    CentralityScores {
        kind: CentralityKind::Betweenness,
        values,
    }
}

struct BrandesWorkspace {
    dist: Vec<i32>,
    sigma: Vec<f64>,
    delta: Vec<f64>,
    preds: Vec<Vec<NodeId>>,
    order: Vec<NodeId>,
    queue: VecDeque<NodeId>,
}

impl BrandesWorkspace {
    fn new(n: usize) -> Self {
        BrandesWorkspace {
            dist: vec![-1; n],
            sigma: vec![0.0; n],
            delta: vec![0.0; n],
            preds: vec![Vec::new(); n],
            order: Vec::with_capacity(n),
            queue: VecDeque::new(),
        }
    }

    fn reset(&mut self) {
        self.dist.fill(-1);
        self.sigma.fill(0.0);
        self.delta.fill(0.0);
        for p in &mut self.preds {
            p.clear();
        }
        self.order.clear();
        self.queue.clear();
    }
}

fn brandes_from_source(g: &Graph, s: NodeId, acc: &mut [f64], ws: &mut BrandesWorkspace) {
    ws.reset();
    ws.dist[s.index()] = 0;
    ws.sigma[s.index()] = 1.0;
    ws.queue.push_back(s);
    while let Some(v) = ws.queue.pop_front() {
        ws.order.push(v);
        let dv = ws.dist[v.index()];
        for &w in g.neighbors(v) {
            if ws.dist[w.index()] < 0 {
                ws.dist[w.index()] = dv + 1;
                ws.queue.push_back(w);
            }
            if ws.dist[w.index()] == dv + 1 {
                ws.sigma[w.index()] += ws.sigma[v.index()];
                ws.preds[w.index()].push(v);
            }
        }
    }
    // Dependency accumulation walks the BFS order backwards (non-increasing
    // distance from s), crediting predecessors fractionally by path count.
    for &w in ws.order.iter().rev() {
        let coeff = (1.0 + ws.delta[w.index()]) / ws.sigma[w.index()];
        for &v in &ws.preds[w.index()] {
            ws.delta[v.index()] += ws.sigma[v.index()] * coeff;
        }
        if w != s {
            acc[w.index()] += ws.delta[w.index()];
        }
    }
}

/// Harmonic closeness: values[i] = Σ_{j≠i} 1/dist(i,j), unreachable pairs
/// contributing 0. Chosen over classic closeness because immunization
/// analysis routinely works with disconnected graphs.
pub fn structural_centrality(g: &Graph) -> CentralityScores {
    let n = g.node_count();
    let values: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|s| {
            let dist = bfs_distances(g, NodeId(s as u32));
            // Summed in ascending node id for a fixed rounding order.
            dist.iter()
                .filter(|&&d| d > 0)
                .map(|&d| 1.0 / d as f64)
                .sum()
        })
        .collect();
    CentralityScores {
        kind: CentralityKind::Structural,
        values,
    }
}

fn bfs_distances(g: &Graph, s: NodeId) -> Vec<i32> {
    let mut dist = vec![-1i32; g.node_count()];
    dist[s.index()] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if dist[w.index()] < 0 {
                dist[w.index()] = dist[v.index()] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Intra-community degree: values[i] = number of neighbours sharing i's
/// label.
pub fn community_centrality(
    g: &Graph,
    communities: &CommunityAssignment,
) -> Result<CentralityScores, CentralityError> {
    if communities.label.len() != g.node_count() {
        return Err(CentralityError::LabelCount {
            expected: g.node_count(),
            got: communities.label.len(),
        });
    }
    let values = (0..g.node_count())
        .map(|i| {
            let own = communities.label[i];
            g.neighbors(NodeId(i as u32))
                .iter()
                .filter(|&&j| communities.label[j.index()] == own)
                .count() as f64
        })
        .collect();
    Ok(CentralityScores {
        kind: CentralityKind::Community,
        values,
    })
}

/// Deterministic synchronous label propagation, the fallback when no
/// ground-truth communities accompany a graph: start with label = own id,
/// repeatedly adopt the most frequent label among neighbours (ties to the
/// smallest label), sweeping nodes in ascending id until a fixed point or
/// the iteration cap.
pub fn label_propagation(g: &Graph) -> CommunityAssignment {
    let n = g.node_count();
    let mut label: Vec<u32> = (0..n as u32).collect();
    let mut next = label.clone();
    let mut counts: std::collections::HashMap<u32, usize> = std::collections::HashMap::new();
    for _ in 0..50 {
        let mut changed = false;
        for i in 0..n {
            let neigh = g.neighbors(NodeId(i as u32));
            if neigh.is_empty() {
                continue;
            }
            counts.clear();
            for &j in neigh {
                *counts.entry(label[j.index()]).or_insert(0) += 1;
            }
            let best = counts
                .iter()
                .map(|(&l, &c)| (c, std::cmp::Reverse(l)))
                .max()
                .map(|(_, std::cmp::Reverse(l))| l)
                .unwrap();
            next[i] = best;
            changed |= best != label[i];
        }
        std::mem::swap(&mut label, &mut next);
        if !changed {
            break;
        }
    }
    CommunityAssignment::from_raw_labels(label)
}

/// Nodes ordered by descending score, ties broken by ascending id.
pub fn rank(scores: &CentralityScores) -> Vec<NodeId> {
    let mut ids: Vec<NodeId> = (0..scores.values.len() as u32).map(NodeId).collect();
    ids.sort_unstable_by(|a, b| {
        scores.values[b.index()]
            .total_cmp(&scores.values[a.index()])
            .then_with(|| a.0.cmp(&b.0))
    });
    ids
}

/// Dispatch helper: compute `kind` on `g`, supplying `communities` for the
/// community kind (label propagation is applied when none are given).
pub fn compute(
    g: &Graph,
    kind: CentralityKind,
    communities: Option<&CommunityAssignment>,
) -> Result<CentralityScores, CentralityError> {
    match kind {
        CentralityKind::Degree => Ok(degree_centrality(g)),
        CentralityKind::Neighbour => Ok(neighbour_centrality_all(g)),
        CentralityKind::Betweenness => Ok(betweenness_centrality(g)),
        CentralityKind::Structural => Ok(structural_centrality(g)),
        CentralityKind::Community => match communities {
            Some(c) => community_centrality(g, c),
            None => community_centrality(g, &label_propagation(g)),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{
        brute_force_betweenness, complete_graph, cycle_graph, path_graph, random_graph, star_graph,
    };

    #[test]
    fn nc_on_star_and_clique() {
        let s5 = star_graph(4);
        assert_eq!(neighbour_centrality(&s5, NodeId(0)), 4.0);
        assert_eq!(neighbour_centrality(&s5, NodeId(3)), 0.25);
        let k4 = complete_graph(4);
        for i in 0..4 {
            assert_eq!(neighbour_centrality(&k4, NodeId(i)), 1.0);
        }
    }

    #[test]
    fn nc_isolated_node_is_zero() {
        let g = Graph::from_edge_list(3, &[(0, 1)]).unwrap();
        assert_eq!(neighbour_centrality(&g, NodeId(2)), 0.0);
    }

    #[test]
    fn nc_identity_holds_on_random_graphs() {
        for seed in 0..25 {
            let g = random_graph(40, 120, seed);
            for i in 0..g.node_count() {
                let node = NodeId(i as u32);
                let d = g.degree(node) as f64;
                if d == 0.0 {
                    continue;
                }
                let sum: usize = g.neighbors(node).iter().map(|&j| g.degree(j)).sum();
                let nc = neighbour_centrality(&g, node);
                let rel = (nc * sum as f64 - d * d).abs() / (d * d);
                assert!(rel <= 1e-12, "identity violated at node {i}: rel={rel}");
            }
        }
    }

    #[test]
    fn nc_is_one_on_regular_graphs() {
        for g in [cycle_graph(7), complete_graph(6)] {
            let scores = neighbour_centrality_all(&g);
            for v in scores.values {
                assert_eq!(v, 1.0);
            }
        }
    }

    #[test]
    fn degree_scores_match_degrees() {
        assert_eq!(
            degree_centrality(&path_graph(3)).values,
            vec![1.0, 2.0, 1.0]
        );
        assert_eq!(
            degree_centrality(&star_graph(4)).values,
            vec![4.0, 1.0, 1.0, 1.0, 1.0]
        );
        let empty = Graph::from_edge_list(3, &[]).unwrap();
        assert_eq!(degree_centrality(&empty).values, vec![0.0, 0.0, 0.0]);
    }

    #[test]
    fn betweenness_on_known_graphs() {
        assert_eq!(
            betweenness_centrality(&path_graph(3)).values,
            vec![0.0, 1.0, 0.0]
        );
        let s5 = betweenness_centrality(&star_graph(4));
        assert_eq!(s5.values[0], 6.0); // C(4,2) leaf pairs route via center
        assert_eq!(
            betweenness_centrality(&cycle_graph(4)).values,
            vec![0.5, 0.5, 0.5, 0.5]
        );
    }

    #[test]
    fn betweenness_matches_brute_force_on_small_graphs() {
        let mut checked = 0;
        for seed in 0..120 {
            let g = random_graph(8, 400, seed);
            let fast = betweenness_centrality(&g);
            let slow = brute_force_betweenness(&g);
            for (a, b) in fast.values.iter().zip(&slow) {
                assert!((a - b).abs() <= 1e-9, "seed {seed}: {a} vs {b}");
            }
            checked += 1;
        }
        assert_eq!(checked, 120);
    }

    #[test]
    fn betweenness_is_bit_reproducible() {
        let g = random_graph(150, 60, 9);
        let a = betweenness_centrality(&g);
        let b = betweenness_centrality(&g);
        assert_eq!(a.values, b.values);
    }

    #[test]
    fn structural_on_known_graphs() {
        assert_eq!(
            structural_centrality(&path_graph(3)).values,
            vec![1.5, 2.0, 1.5]
        );
        let iso = Graph::from_edge_list(2, &[]).unwrap();
        assert_eq!(structural_centrality(&iso).values, vec![0.0, 0.0]);
        assert_eq!(
            structural_centrality(&complete_graph(4)).values,
            vec![3.0; 4]
        );
    }

    #[test]
    fn community_single_label_equals_degree() {
        let g = star_graph(5);
        let labels = CommunityAssignment::from_raw_labels(vec![0; 6]);
        let c = community_centrality(&g, &labels).unwrap();
        assert_eq!(c.values, degree_centrality(&g).values);
    }

    #[test]
    fn community_bipartite_sides_score_zero() {
        // K_{2,2}: sides {0,1} and {2,3}, every edge crosses.
        let g = Graph::from_edge_list(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let labels = CommunityAssignment::from_raw_labels(vec![0, 0, 1, 1]);
        let c = community_centrality(&g, &labels).unwrap();
        assert_eq!(c.values, vec![0.0; 4]);
    }

    #[test]
    fn community_on_cycle_split() {
        let g = cycle_graph(4); // edges 0-1, 1-2, 2-3, 0-3
        let labels = CommunityAssignment::from_raw_labels(vec![0, 0, 1, 1]);
        let c = community_centrality(&g, &labels).unwrap();
        assert_eq!(c.values, vec![1.0; 4]);
    }

    #[test]
    fn community_rejects_short_labels() {
        let g = path_graph(3);
        let labels = CommunityAssignment::from_raw_labels(vec![0, 0]);
        assert_eq!(
            community_centrality(&g, &labels),
            Err(CentralityError::LabelCount {
                expected: 3,
                got: 2
            })
        );
    }

    #[test]
    fn label_propagation_separates_two_cliques() {
        // Two K5s joined by a single bridge edge 4-5.
        let mut edges = Vec::new();
        for u in 0..5u32 {
            for v in (u + 1)..5 {
                edges.push((u, v));
                edges.push((u + 5, v + 5));
            }
        }
        edges.push((4, 5));
        let g = Graph::from_edge_list(10, &edges).unwrap();
        let communities = label_propagation(&g);
        assert_eq!(communities.count, 2);
        let first = communities.label[0];
        for i in 0..5 {
            assert_eq!(communities.label[i], first);
        }
        for i in 5..10 {
            assert_ne!(communities.label[i], first);
        }
    }

    #[test]
    fn rank_breaks_ties_by_id() {
        let scores = CentralityScores {
            kind: CentralityKind::Degree,
            values: vec![3.0, 1.0, 3.0],
        };
        assert_eq!(rank(&scores), vec![NodeId(0), NodeId(2), NodeId(1)]);

        let equal = CentralityScores {
            kind: CentralityKind::Degree,
            values: vec![2.0; 4],
        };
        assert_eq!(
            rank(&equal),
            vec![NodeId(0), NodeId(1), NodeId(2), NodeId(3)]
        );
    }

    #[test]
    fn rank_puts_star_center_first() {
        let ranked = rank(&degree_centrality(&star_graph(4)));
        assert_eq!(ranked[0], NodeId(0));
    }

    #[test]
    fn rank_on_complete_graph_is_id_order_for_all_kinds() {
        let g = complete_graph(6);
        let labels = CommunityAssignment::from_raw_labels(vec![0; 6]);
        let expected: Vec<NodeId> = (0..6).map(NodeId).collect();
        for kind in CentralityKind::ALL {
            let scores = compute(&g, kind, Some(&labels)).unwrap();
            assert_eq!(rank(&scores), expected, "kind {kind}");
        }
    }

    #[test]
    fn op_counter_reads_match_examples() {
        let s5 = star_graph(4);
        let mut counter = OpCounter::new(5);
        neighbour_centrality_counted(&s5, &mut counter);
        assert_eq!(counter.neighbour_degree_reads[0], 4);

        let k4 = complete_graph(4);
        let mut counter = OpCounter::new(4);
        neighbour_centrality_counted(&k4, &mut counter);
        let c = k4.max_degree() as u64;
        for &reads in &counter.neighbour_degree_reads {
            assert_eq!(reads, c * c); // 9: the bound is tight on cliques
        }
    }

    #[test]
    fn op_counter_bounded_by_c_squared() {
        let g = random_graph(60, 150, 3);
        let c = g.max_degree() as u64;
        let mut counter = OpCounter::new(60);
        let counted = neighbour_centrality_counted(&g, &mut counter);
        assert!(counter.max_per_node() <= c * c);
        assert_eq!(counted.values, neighbour_centrality_all(&g).values);
    }

    #[test]
    fn kind_round_trips_through_strings() {
        for kind in CentralityKind::ALL {
            assert_eq!(kind.to_string().parse::<CentralityKind>(), Ok(kind));
        }
        assert!("pagerank".parse::<CentralityKind>().is_err());
    }
}
