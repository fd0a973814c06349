//! Small graph constructors and brute-force reference implementations
//! shared by the unit tests of several modules.

#![allow(dead_code)]

use crate::graph::{Graph, NodeId};

/// Path graph 0 - 1 - ... - (n-1).
pub fn path_graph(n: u32) -> Graph {
    let edges: Vec<(u32, u32)> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
    Graph::from_edge_list(n as usize, &edges).unwrap()
}

/// Star with node 0 at the centre and `leaves` spokes.
pub fn star_graph(leaves: u32) -> Graph {
    let edges: Vec<(u32, u32)> = (1..=leaves).map(|i| (0, i)).collect();
    Graph::from_edge_list(leaves as usize + 1, &edges).unwrap()
}

/// Complete graph on n nodes.
pub fn complete_graph(n: u32) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            edges.push((u, v));
        }
    }
    Graph::from_edge_list(n as usize, &edges).unwrap()
}

/// Cycle 0 - 1 - ... - (n-1) - 0. Requires n >= 3.
pub fn cycle_graph(n: u32) -> Graph {
    assert!(n >= 3);
    let mut edges: Vec<(u32, u32)> = (0..n - 1).map(|i| (i, i + 1)).collect();
    edges.push((0, n - 1));
    Graph::from_edge_list(n as usize, &edges).unwrap()
}

/// Brute-force betweenness by enumerating all shortest paths with BFS paths
/// counting done the slow, obvious way: for every ordered pair (s, t) walk
/// every shortest path and credit interior nodes. Each unordered pair is
/// counted once. Only usable on tiny graphs.
pub fn brute_force_betweenness(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    let mut score = vec![0.0f64; n];
    for s in 0..n {
        for t in (s + 1)..n {
            let paths = all_shortest_paths(g, NodeId(s as u32), NodeId(t as u32));
            if paths.is_empty() {
                continue;
            }
            let total = paths.len() as f64;
            for p in &paths {
                for &node in &p[1..p.len() - 1] {
                    score[node.index()] += 1.0 / total;
                }
            }
        }
    }
    score
}

/// All shortest s-t paths, as node sequences, via BFS layering and
/// recursive enumeration of predecessor links.
pub fn all_shortest_paths(g: &Graph, s: NodeId, t: NodeId) -> Vec<Vec<NodeId>> {
    let n = g.node_count();
    let mut dist = vec![usize::MAX; n];
    let mut preds: Vec<Vec<NodeId>> = vec![Vec::new(); n];
    dist[s.index()] = 0;
    let mut frontier = std::collections::VecDeque::from([s]);
    while let Some(u) = frontier.pop_front() {
        for &v in g.neighbors(u) {
            if dist[v.index()] == usize::MAX {
                dist[v.index()] = dist[u.index()] + 1;
                preds[v.index()].push(u);
                frontier.push_back(v);
            } else if dist[v.index()] == dist[u.index()] + 1 {
                preds[v.index()].push(u);
            }
        }
    }
    if dist[t.index()] == usize::MAX {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut stack = vec![t];
    unwind(&preds, s, t, &mut stack, &mut out);
    out
}

fn unwind(
    preds: &[Vec<NodeId>],
    s: NodeId,
    at: NodeId,
    stack: &mut Vec<NodeId>,
    out: &mut Vec<Vec<NodeId>>,
) {
    if at == s {
        let mut path = stack.clone();
        path.reverse();
        out.push(path);
        return;
    }
    for &p in &preds[at.index()] {
        stack.push(p);
        unwind(preds, s, p, stack, out);
        stack.pop();
    }
}

/// Deterministic Erdos-Renyi-ish graph for property tests: each pair is an
/// edge iff a hash of (seed, u, v) clears the threshold. Connectivity is not
/// guaranteed.
pub fn random_graph(n: u32, p_millis: u32, seed: u64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            let h = splitmix(seed ^ ((u as u64) << 32) ^ v as u64);
            if (h % 1000) < p_millis as u64 {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edge_list(n as usize, &edges).unwrap()
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors_have_expected_shape() {
        assert_eq!(path_graph(4).edge_count(), 3);
        assert_eq!(star_graph(6).degree(NodeId(0)), 6);
        assert_eq!(complete_graph(5).edge_count(), 10);
        assert_eq!(cycle_graph(5).edge_count(), 5);
    }

    #[test]
    fn brute_betweenness_on_path() {
        // P4: interior nodes sit on 2 and 2 of the C(4,2)=6 pairs' paths.
        let bc = brute_force_betweenness(&path_graph(4));
        assert_eq!(bc, vec![0.0, 2.0, 2.0, 0.0]);
    }

    #[test]
    fn brute_betweenness_on_cycle() {
        // C4: opposite-corner pairs have two shortest paths, each interior
        // node gets 1/2 from exactly one such pair.
        let bc = brute_force_betweenness(&cycle_graph(4));
        assert_eq!(bc, vec![0.5, 0.5, 0.5, 0.5]);
    }

    #[test]
    fn shortest_path_enumeration_counts() {
        let g = cycle_graph(4);
        let paths = all_shortest_paths(&g, NodeId(0), NodeId(2));
        assert_eq!(paths.len(), 2);
        for p in paths {
            assert_eq!(p.len(), 3);
            assert_eq!(p[0], NodeId(0));
            assert_eq!(p[2], NodeId(2));
        }
    }
}
