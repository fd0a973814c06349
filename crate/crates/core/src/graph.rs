//! Undirected simple graph storage and queries.
//!
//! Graphs are immutable after construction and safe to share across worker
//! threads. Adjacency lists are stored sorted ascending; every iteration
//! order elsewhere in the crate derives from that single canonical order.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;

use thiserror::Error;

/// Dense node index, valid for graphs with at most `u32::MAX` nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge ({0}, {1}) references a node out of range (n = {2})")]
    OutOfRange(u32, u32, usize),
    #[error("self-loop at node {0}")]
    SelfLoop(u32),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(u32, u32),
    #[error("edge-list parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("i/o error: {0}")]
    Io(String),
}

/// Undirected simple graph: no self-loops, no parallel edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<NodeId>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph from an explicit edge list.
    ///
    /// Self-loops, duplicate pairs (in either orientation), and out-of-range
    /// indices are rejected; generation code must produce simple graphs
    /// explicitly so generator bugs surface here.
    pub fn from_edge_list(n: usize, pairs: &[(u32, u32)]) -> Result<Graph, GraphError> {
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in pairs {
            if u as usize >= n || v as usize >= n {
                return Err(GraphError::OutOfRange(u, v, n));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adjacency[u as usize].push(NodeId(v));
            adjacency[v as usize].push(NodeId(u));
        }
        for (u, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let v = w[0].0;
                let u = u as u32;
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
        }
        Ok(Graph {
            adjacency,
            edge_count: pairs.len(),
        })
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        (0..self.adjacency.len() as u32).map(NodeId)
    }

    /// Neighbours of `i` in ascending index order.
    ///
    /// Panics if `i` is not a node of this graph; node ids are dense and
    /// produced by the graph itself, so an invalid id is a caller bug.
    #[inline]
    pub fn neighbors(&self, i: NodeId) -> &[NodeId] {
        &self.adjacency[i.index()]
    }

    #[inline]
    pub fn degree(&self, i: NodeId) -> usize {
        self.adjacency[i.index()].len()
    }

    /// Highest nodal degree; 0 for the empty graph.
    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.adjacency[u.index()].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, ascending by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, list)| {
            let u = NodeId(u as u32);
            list.iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// Partitions the nodes into connected components via BFS.
    ///
    /// Components are ordered by their smallest member; members ascending.
    pub fn connected_components(&self) -> Vec<Vec<NodeId>> {
        let n = self.node_count();
        let mut seen = vec![false; n];
        let mut components = Vec::new();
        let mut queue = std::collections::VecDeque::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(NodeId(start as u32));
            let mut component = Vec::new();
            while let Some(v) = queue.pop_front() {
                component.push(v);
                for &w in self.neighbors(v) {
                    if !seen[w.index()] {
                        seen[w.index()] = true;
                        queue.push_back(w);
                    }
                }
            }
            component.sort_unstable();
            components.push(component);
        }
        components
    }

    /// Serializes to the edge-list text format: first line `n m`, then one
    /// `u v` line per edge with `u < v`, ASCII decimal, newline-terminated.
    pub fn to_edge_list_string(&self) -> String {
        let mut out = String::with_capacity(12 * (self.edge_count + 1));
        out.push_str(&format!("{} {}\n", self.node_count(), self.edge_count()));
        for (u, v) in self.edges() {
            out.push_str(&format!("{} {}\n", u, v));
        }
        out
    }

    pub fn write_edge_list(&self, path: &Path) -> Result<(), GraphError> {
        let mut file = fs::File::create(path).map_err(|e| GraphError::Io(e.to_string()))?;
        file.write_all(self.to_edge_list_string().as_bytes())
            .map_err(|e| GraphError::Io(e.to_string()))
    }

    pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or(GraphError::Parse {
            line: 1,
            reason: "empty file".into(),
        })?;
        let mut parts = header.split_whitespace();
        let n: usize = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or(GraphError::Parse {
                line: 1,
                reason: "expected `n m` header".into(),
            })?;
        let m: usize = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or(GraphError::Parse {
                line: 1,
                reason: "expected `n m` header".into(),
            })?;
        let mut pairs = Vec::with_capacity(m);
        for (idx, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace();
            let parse = |s: Option<&str>| -> Option<u32> { s.and_then(|t| t.parse().ok()) };
            let (u, v) = match (parse(parts.next()), parse(parts.next())) {
                (Some(u), Some(v)) => (u, v),
                _ => {
                    return Err(GraphError::Parse {
                        line: idx + 1,
                        reason: format!("expected `u v`, got {line:?}"),
                    })
                }
            };
            if u >= v {
                return Err(GraphError::Parse {
                    line: idx + 1,
                    reason: format!("edges must satisfy u < v, got {u} {v}"),
                });
            }
            pairs.push((u, v));
        }
        if pairs.len() != m {
            return Err(GraphError::Parse {
                line: 1,
                reason: format!("header declared {m} edges, found {}", pairs.len()),
            });
        }
        Graph::from_edge_list(n, &pairs)
    }

    pub fn read_edge_list(path: &Path) -> Result<Graph, GraphError> {
        let text = fs::read_to_string(path).map_err(|e| GraphError::Io(e.to_string()))?;
        Graph::parse_edge_list(&text)
    }
}
