//! Simple connected undirected graphs with unit edge lengths.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::tree::{NodeId, Tree};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    Empty,
    OutOfRange { edge: usize, node: u64, node_count: usize },
    SelfLoop { edge: usize, node: NodeId },
    DuplicateEdge { edge: usize, u: NodeId, v: NodeId },
    Disconnected { unreachable: NodeId },
    TooLarge { node_count: usize },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::Empty => write!(f, "graph has no vertices"),
            GraphError::OutOfRange { edge, node, node_count } => write!(
                f,
                "edge {edge}: vertex {node} out of range for {node_count} vertices"
            ),
            GraphError::SelfLoop { edge, node } => write!(f, "edge {edge}: self loop at {node}"),
            GraphError::DuplicateEdge { edge, u, v } => {
                write!(f, "edge {edge}: duplicate edge {u}-{v}")
            }
            GraphError::Disconnected { unreachable } => {
                write!(f, "vertex {unreachable} is not reachable from vertex 0")
            }
            GraphError::TooLarge { node_count } => {
                write!(f, "{node_count} vertices exceed the supported id range")
            }
        }
    }
}

impl core::error::Error for GraphError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<NodeId>>,
}

impl Graph {
    pub fn from_edges(node_count: usize, edges: &[(u64, u64)]) -> Result<Graph, GraphError> {
        if node_count == 0 {
            return Err(GraphError::Empty);
        }
        if node_count > u32::MAX as usize / 2 {
            return Err(GraphError::TooLarge { node_count });
        }
        let mut keyed: Vec<(NodeId, NodeId, usize)> = Vec::with_capacity(edges.len());
        for (i, &(u, v)) in edges.iter().enumerate() {
            for x in [u, v] {
                if x >= node_count as u64 {
                    return Err(GraphError::OutOfRange { edge: i, node: x, node_count });
                }
            }
            let (u, v) = (u as NodeId, v as NodeId);
            if u == v {
                return Err(GraphError::SelfLoop { edge: i, node: u });
            }
            keyed.push((u.min(v), u.max(v), i));
        }
        keyed.sort_unstable();
        for w in keyed.windows(2) {
            if w[0].0 == w[1].0 && w[0].1 == w[1].1 {
                let edge = w[0].2.max(w[1].2);
                let (u, v) = (edges[edge].0 as NodeId, edges[edge].1 as NodeId);
                return Err(GraphError::DuplicateEdge { edge, u, v });
            }
        }
        let mut adj: Vec<Vec<NodeId>> = vec![Vec::new(); node_count];
        for &(u, v) in edges {
            adj[u as usize].push(v as NodeId);
            adj[v as usize].push(u as NodeId);
        }
        let g = Graph { adj };
        let d = g.bfs(0);
        if let Some(v) = d.iter().position(|&x| x == u32::MAX) {
            return Err(GraphError::Disconnected { unreachable: v as NodeId });
        }
        Ok(g)
    }

    pub fn from_tree(t: &Tree) -> Graph {
        Graph {
            adj: (0..t.node_count() as NodeId).map(|v| t.neighbors(v).to_vec()).collect(),
        }
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.adj[v as usize]
    }

    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, ns)| {
            ns.iter()
                .filter(move |&&v| (u as NodeId) < v)
                .map(move |&v| (u as NodeId, v))
        })
    }

    /// Distances from `root`; `u32::MAX` marks unreachable vertices.
    pub fn bfs(&self, root: NodeId) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.node_count()];
        let mut queue = VecDeque::new();
        dist[root as usize] = 0;
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            for &v in self.neighbors(u) {
                if dist[v as usize] == u32::MAX {
                    dist[v as usize] = dist[u as usize] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Subgraph induced by `vertices`, relabelled `0..len` in the given order.
    /// The caller must ensure it is connected.
    pub fn induced(&self, vertices: &[NodeId]) -> Graph {
        let mut local = vec![NodeId::MAX; self.node_count()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v as usize] = i as NodeId;
        }
        let adj = vertices
            .iter()
            .map(|&v| {
                self.neighbors(v)
                    .iter()
                    .filter_map(|&w| {
                        let l = local[w as usize];
                        (l != NodeId::MAX).then_some(l)
                    })
                    .collect()
            })
            .collect();
        Graph { adj }
    }
}
